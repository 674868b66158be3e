"""Randomized and exhaustive law checking for every module.

Each suite checks the laws of one area against brute-force evidence:
independently randomized reduction strategies, swap-closure enumerations,
exhaustive small-domain scans and constructed model configurations.  Suites
are deterministic given their configuration; bounded-only checks (triangle,
divisibility, strong-reduct enumeration) are labeled "sampled/bounded" in the
report notes.  Failure records carry the serialized inputs so any failure
re-runs standalone.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field

from . import flags as FL
from . import space as SP
from . import words as W
from .errors import SearchBoundExceededError, UnknownSuiteError
from .letters import Letter, all_letters, commutes, index_set_to_letters
from .space import BOTTOM, TOP, ColoredSpace
from .words import Word

SUITE_NAMES = [
    "words-confluence",
    "words-absorption",
    "words-decomposition",
    "words-strong",
    "words-order",
    "space-axioms",
    "flags-paths",
    "flags-forking",
    "ranks",
    "ample",
]


@dataclass
class SuiteConfig:
    suite: str
    seed: int = 0
    cases: int = 1000
    n_max: int = 3
    word_len_max: int = 8
    split_len_max: int = 3

    def __post_init__(self):
        if self.cases < 1 or self.n_max < 1 or self.word_len_max < 1 or self.split_len_max < 1:
            raise ValueError("all suite bounds must be >= 1")


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases_run: int
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases_run": self.cases_run,
            "pass": self.passed,
            "failures": self.failures,
            "notes": self.notes,
            "elapsed": round(self.elapsed, 3),
        }


def run_suite(config: SuiteConfig) -> SuiteReport:
    try:
        fn = _SUITES[config.suite]
    except KeyError:
        raise UnknownSuiteError(f"unknown suite {config.suite!r}; choose from {SUITE_NAMES}")
    report = SuiteReport(config.suite, config.seed, 0)
    started = time.monotonic()
    fn(config, report)
    report.elapsed = time.monotonic() - started
    return report


# ---------------------------------------------------------------------------
# generators


def random_letter(rng: random.Random, n: int) -> Letter:
    return rng.choice(all_letters(n))


def random_word(rng: random.Random, n: int, max_len: int) -> Word:
    length = rng.randint(0, max_len)
    return Word(tuple(random_letter(rng, n) for _ in range(length)), n)


def random_reduced_word(rng: random.Random, n: int, max_len: int) -> Word:
    return W.reduce(random_word(rng, n, max_len))


def random_dimension(rng: random.Random, n_max: int) -> int:
    return rng.randint(1, n_max)


def random_script(rng: random.Random, n_max: int, max_ops: int = 8) -> dict:
    """A random build script; anchors drawn uniformly among valid pairs."""
    n = random_dimension(rng, n_max)
    space = ColoredSpace(n)
    ops = []
    for _ in range(rng.randint(1, max_ops)):
        choices = _applicable_ops(space)
        if not choices:
            break
        letter, lo, hi = rng.choice(choices)
        space.apply_alpha(letter, lo, hi)
        ops.append({"letter": str(letter), "lo": lo, "hi": hi})
    return {"n": n, "ops": ops}


def _applicable_ops(space: ColoredSpace):
    out = []
    for letter in all_letters(space.n):
        los = [BOTTOM] if letter.lo == 0 else [
            v for v in space.vertices if space.level(v) == letter.lo - 1
        ]
        his = [TOP] if letter.hi == space.n else [
            v for v in space.vertices if space.level(v) == letter.hi + 1
        ]
        for lo in los:
            for hi in his:
                if space.is_real(lo) and space.is_real(hi) and not space.lies_over(lo, hi):
                    continue
                out.append((letter, lo, hi))
    return out


def random_strategy_reduce(rng: random.Random, u: Word) -> Word:
    """Maximal cancellation with randomly chosen deletions and interleaved
    random commutations; independent of the deterministic reducer."""
    letters = list(u.letters)
    while True:
        # random commutations
        for _ in range(rng.randint(0, 4)):
            if len(letters) < 2:
                break
            i = rng.randrange(len(letters) - 1)
            if commutes(letters[i], letters[i + 1]):
                letters[i], letters[i + 1] = letters[i + 1], letters[i]
        key = tuple(s.key for s in letters)
        candidates = [i for i in range(len(letters)) if _kernel_absorbed(key, i)]
        if not candidates:
            return W.normal_form(Word(tuple(letters), u.n))
        del letters[rng.choice(candidates)]


def _kernel_absorbed(key, i):
    from . import kernels

    return kernels.absorbed_at(key, i)


def _fail(report: SuiteReport, law: str, inputs, observed) -> None:
    report.failures.append({"law": law, "inputs": inputs, "observed": observed})


# ---------------------------------------------------------------------------
# word suites


def _suite_words_confluence(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    for _ in range(config.cases):
        n = random_dimension(rng, config.n_max)
        u = random_word(rng, n, config.word_len_max)
        report.cases_run += 1
        r1 = random_strategy_reduce(rng, u)
        r2 = random_strategy_reduce(rng, u)
        det = W.reduce(u)
        if not (r1 == r2 == det):
            _fail(report, "reduct-uniqueness", {"n": n, "u": str(u)},
                  {"r1": str(r1), "r2": str(r2), "det": str(det)})
        if not W.is_reduced(det):
            _fail(report, "reduce-is-reduced", {"n": n, "u": str(u)}, str(det))
        nf = W.normal_form(u)
        if W.normal_form(nf) != nf:
            _fail(report, "normal-form-idempotent", {"n": n, "u": str(u)}, str(nf))
        if not W.equivalent(u, nf):
            _fail(report, "normal-form-equivalent", {"n": n, "u": str(u)}, str(nf))
        shuffled = _random_permutation(rng, u)
        if W.normal_form(shuffled) != nf:
            _fail(report, "normal-form-class-invariant",
                  {"n": n, "u": str(u), "perm": str(shuffled)}, str(W.normal_form(shuffled)))
        if W.parse_word(str(u), n) != u:
            _fail(report, "parse-print-roundtrip", {"n": n, "u": str(u)}, None)


def _random_permutation(rng: random.Random, u: Word) -> Word:
    letters = list(u.letters)
    for _ in range(3 * len(letters)):
        if len(letters) < 2:
            break
        i = rng.randrange(len(letters) - 1)
        if commutes(letters[i], letters[i + 1]):
            letters[i], letters[i + 1] = letters[i + 1], letters[i]
    return Word(tuple(letters), u.n)


def _enumerate_words(n: int, max_len: int):
    alphabet = all_letters(n)
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield Word(combo, n)


def _suite_words_absorption(config: SuiteConfig, report: SuiteReport) -> None:
    # exhaustive on N <= 2, length <= 3, regardless of `cases`
    report.notes.append("exhaustive: N <= 2, word length <= 3")
    for n in (1, 2):
        reduced = [u for u in _enumerate_words(n, 3) if W.is_reduced(u)]
        for u in reduced:
            for v in reduced:
                report.cases_run += 1
                lhs = W.equivalent(W.concat_reduce(u, v), v)
                rhs = W.absorbs_left(v, u)
                if lhs != rhs:
                    _fail(report, "absorption-law", {"n": n, "u": str(u), "v": str(v)},
                          {"uv=v": lhs, "absorbs": rhs})
                w = W.concat_reduce(u, v)
                if not W.right_stabilizer(v) <= W.right_stabilizer(w):
                    _fail(report, "sr-monotone", {"n": n, "u": str(u), "v": str(v)},
                          {"sr(v)": sorted(W.right_stabilizer(v)),
                           "sr(w)": sorted(W.right_stabilizer(w))})
                if W.is_reduced(u.concat(v)):
                    wob = W.wobbling(u, v)
                    for s in index_set_to_letters(wob):
                        if not (W.properly_absorbs_right(u, Word((s,), n))
                                and W.properly_absorbs_left(v, Word((s,), n))):
                            _fail(report, "wobbling-proper", {"n": n, "u": str(u), "v": str(v)},
                                  str(s))
        for u in reduced:
            commuting = all(
                commutes(a, b) for a, b in itertools.combinations(u.letters, 2)
            )
            if W.absorbs_left(u, u) != commuting:
                _fail(report, "commuting-idempotent", {"n": n, "u": str(u)},
                      {"absorbs-self": W.absorbs_left(u, u), "commuting": commuting})
        # absorption witnesses are unique; non-commuting absorbed letters share one
        for v in _enumerate_words(n, 3):
            absorbed = []
            for s in all_letters(n):
                witnesses = [
                    j for j in range(len(v.letters))
                    if (v.letters[j].lo <= s.lo and s.hi <= v.letters[j].hi
                        and all(commutes(s, t) for t in v.letters[:j]))
                ]
                if witnesses:
                    absorbed.append((s, witnesses[0]))
                if len(witnesses) > 1:
                    _fail(report, "absorption-witness-unique",
                          {"n": n, "v": str(v), "s": str(s)}, witnesses)
            for (s, js), (t, jt) in itertools.combinations(absorbed, 2):
                if not commutes(s, t) and js != jt:
                    _fail(report, "absorption-shared-witness",
                          {"n": n, "v": str(v), "s": str(s), "t": str(t)}, [js, jt])


def check_fine_decomposition(u: Word, v: Word) -> list[str]:
    """All stated conditions of the fine and symmetric decompositions."""
    bad = []
    d = W.decompose_fine(u, v)
    if not W.equivalent(u, d.u1.concat(d.u_prime)):
        bad.append("u != u1.u'")
    if not W.equivalent(v, d.v_prime.concat(d.v1)):
        bad.append("v != v'.v1")
    if not W.absorbs_left(d.v1, d.u_prime):
        bad.append("u' not left-absorbed by v1")
    if not W.properly_absorbs_right(d.u1, d.v_prime):
        bad.append("v' not properly right-absorbed by u1")
    if not all(commutes(a, b) for a in d.u_prime.letters for b in d.v_prime.letters):
        bad.append("u', v' do not commute")
    if not W.is_reduced(d.u1.concat(d.v1)):
        bad.append("u1.v1 not reduced")
    if not W.equivalent(W.concat_reduce(u, v), d.u1.concat(d.v1)):
        bad.append("reduct != u1.v1")
    s = W.decompose_symmetric(u, v)
    w = s.w
    if not W.equivalent(u, s.u1.concat(s.u_prime).concat(w)):
        bad.append("u != u1.u'.w")
    if not W.equivalent(v, w.concat(s.v_prime).concat(s.v1)):
        bad.append("v != w.v'.v1")
    if not W.properly_absorbs_left(s.v1, s.u_prime):
        bad.append("u' not properly left-absorbed by v1 (symmetric)")
    if not W.properly_absorbs_right(s.u1, s.v_prime):
        bad.append("v' not properly right-absorbed by u1 (symmetric)")
    parts = [s.u_prime.letters, w.letters, s.v_prime.letters]
    for p1, p2 in itertools.combinations(range(3), 2):
        if not all(commutes(a, b) for a in parts[p1] for b in parts[p2]):
            bad.append("u', w, v' do not pairwise commute")
            break
    if not all(commutes(a, b) for a, b in itertools.combinations(w.letters, 2)):
        bad.append("w not a commuting word")
    mid = s.u1.concat(w).concat(s.v1)
    if not W.is_reduced(mid):
        bad.append("u1.w.v1 not reduced")
    if not W.equivalent(W.concat_reduce(u, v), mid):
        bad.append("reduct != u1.w.v1")
    return bad


def _suite_words_decomposition(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    for _ in range(config.cases):
        n = random_dimension(rng, config.n_max)
        u = random_reduced_word(rng, n, config.word_len_max)
        v = random_reduced_word(rng, n, config.word_len_max)
        report.cases_run += 1
        bad = check_fine_decomposition(u, v)
        if bad:
            _fail(report, "decomposition", {"n": n, "u": str(u), "v": str(v)}, bad)


def _suite_words_strong(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    report.notes.append("sampled/bounded: strong-reduct enumeration is budgeted")
    for _ in range(config.cases):
        n = random_dimension(rng, config.n_max)
        u = random_reduced_word(rng, n, 3)
        v = random_reduced_word(rng, n, 3)
        report.cases_run += 1
        plain = W.concat_reduce(u, v)
        result = W.strong_reducts_bounded(u.concat(v), config.split_len_max, 50_000)
        for x in sorted(result.words, key=str):
            if W.equivalent(x, plain):
                continue
            try:
                ok = W.prec(x, plain, bound=40)
            except SearchBoundExceededError:
                continue
            if not ok:
                _fail(report, "splitting-penalty", {"n": n, "u": str(u), "v": str(v)},
                      {"reduct": str(x), "plain": str(plain)})
        # inverse cancellation
        inv = W.strong_reducts_bounded(u.concat(W.inverse(u)), config.split_len_max, 50_000)
        if Word.one(n) not in inv.words and not inv.exhausted:
            _fail(report, "inverse-cancellation", {"n": n, "u": str(u)}, inv.as_strings())
        if Word.one(n) in W.strong_reducts_bounded(
            u.concat(v), config.split_len_max, 50_000
        ).words:
            if not W.equivalent(v, W.inverse(u)):
                _fail(report, "inverse-uniqueness", {"n": n, "u": str(u), "v": str(v)}, None)
        # triangle, widened by one splitting width
        tri = W.strong_reducts_bounded(u.concat(v), config.split_len_max, 20_000)
        for r in sorted(tri.words, key=str)[:3]:
            c = W.inverse(r)
            back = W.strong_reducts_bounded(c.concat(u), config.split_len_max + 1, 50_000)
            if W.normal_form(W.inverse(v)) not in {
                W.normal_form(x) for x in back.words
            } and not back.exhausted:
                _fail(report, "triangle", {"n": n, "a": str(u), "b": str(v), "c": str(c)},
                      back.as_strings())


def _suite_words_order(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    report.notes.append("sampled/bounded: prec instances capped")
    for _ in range(config.cases):
        n = random_dimension(rng, config.n_max)
        u = random_reduced_word(rng, n, 4)
        v = random_reduced_word(rng, n, 4)
        w = random_reduced_word(rng, n, 3)
        report.cases_run += 1
        try:
            if W.prec(u, v):
                if not W.ord_rank(u) < W.ord_rank(v):
                    _fail(report, "prec-implies-ord", {"n": n, "u": str(u), "v": str(v)},
                          {"ord(u)": str(W.ord_rank(u)), "ord(v)": str(W.ord_rank(v))})
                # compatibility with the product
                left_u = W.concat_reduce(w, u)
                left_v = W.concat_reduce(w, v)
                if not W.preceq(left_u, left_v, bound=40):
                    _fail(report, "prec-product-compatible",
                          {"n": n, "u": str(u), "v": str(v), "w": str(w)},
                          {"wu": str(left_u), "wv": str(left_v)})
        except SearchBoundExceededError:
            continue
        # cancellation order: w.v reduced and w.v <= w.v' implies v <= v'
        v2 = random_reduced_word(rng, n, 4)
        wv = w.concat(v)
        if W.is_reduced(wv):
            try:
                if W.preceq(wv, w.concat(v2), bound=40) and not W.preceq(v, v2, bound=40):
                    _fail(report, "cancellation-order",
                          {"n": n, "w": str(w), "v": str(v), "v2": str(v2)}, None)
            except SearchBoundExceededError:
                pass
        # left division: u divides reduce(u.w) with a bounded witness
        prod = W.concat_reduce(u, w)
        res = W.divides_left_bounded(u, prod, max_len=len(w) + 2)
        if res.witness is None and res.conclusive:
            _fail(report, "divides-own-product", {"n": n, "u": str(u), "w": str(w)},
                  str(prod))
        try:
            if not W.preceq(u, prod, bound=40):
                _fail(report, "u-below-uv", {"n": n, "u": str(u), "w": str(w)}, str(prod))
        except SearchBoundExceededError:
            pass


# ---------------------------------------------------------------------------
# space and flag suites


def _suite_space_axioms(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    for _ in range(config.cases):
        script = random_script(rng, config.n_max)
        report.cases_run += 1
        _check_one_space(report, script)


def _check_one_space(report: SuiteReport, script: dict) -> None:
    space = ColoredSpace(script["n"])
    inputs = {"script": script}
    for op in script["ops"]:
        before_vertices = list(space.vertices)
        distances = _all_distances(space)
        space.apply_alpha(
            Letter(*_letter_key(op["letter"])), op["lo"], op["hi"]
        )
        for (x, y, t), d in distances.items():
            if space.distance(x, y, set(range(t[0], t[1] + 1))) != d:
                _fail(report, "distance-stability", inputs, {"x": x, "y": y, "t": t})
        if before_vertices and SP.nice_witness(space, set(before_vertices), exact=True):
            _fail(report, "prior-set-wunderbar", inputs,
                  SP.nice_witness(space, set(before_vertices), exact=True))
    witness = SP.simply_connected_witness(space)
    if witness is not None:
        _fail(report, "simply-connected", inputs, repr(witness))
    if not SP.is_complete(space):
        _fail(report, "complete", inputs, None)
    for level in range(space.n):
        if not _is_forest(space, level):
            _fail(report, "adjacent-level-forest", inputs, level)
    # amalgam on the first two ops applicable to the base space
    base = ColoredSpace(script["n"])
    candidates = _applicable_ops(base)
    if len(candidates) >= 1 and script["ops"]:
        op1 = script["ops"][0]
        base.apply_alpha(Letter(*_letter_key(op1["letter"])), op1["lo"], op1["hi"])
        pair = _applicable_ops(ColoredSpace(script["n"]))
        if len(pair) >= 2:
            o1, o2 = pair[0], pair[1]
            fresh = ColoredSpace(script["n"])
            if not SP.amalgam_isomorphic(
                fresh, SP.BuildOp(o1[0], o1[1], o1[2], ()), SP.BuildOp(o2[0], o2[1], o2[2], ())
            ):
                _fail(report, "amalgam", inputs, None)


def _letter_key(text: str) -> tuple[int, int]:
    from .letters import parse_letter

    s = parse_letter(text)
    return (s.lo, s.hi)


def _all_distances(space: ColoredSpace) -> dict:
    out = {}
    verts = space.vertices
    for lo in range(space.n + 1):
        for hi in range(lo, space.n + 1):
            levels = set(range(lo, hi + 1))
            pts = [v for v in verts if space.level(v) in levels]
            for x in pts:
                dist = space.distances_from(x, levels=levels)
                for y in pts:
                    if y > x:
                        out[(x, y, (lo, hi))] = dist.get(y, SP.INF)
    return out


def _is_forest(space: ColoredSpace, level: int) -> bool:
    levels = {level, level + 1}
    pts = [v for v in space.vertices if space.level(v) in levels]
    edges = sum(
        1 for v in pts for w in space.neighbors(v) if w > v and space.level(w) in levels
    )
    components = 0
    seen: set[int] = set()
    for v in pts:
        if v in seen:
            continue
        components += 1
        seen.update(space.distances_from(v, levels=levels))
    return edges == len(pts) - components


def _suite_flags_paths(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    report.notes.append("flag enumeration capped at 24 flags per space")
    for _ in range(config.cases):
        script = random_script(rng, config.n_max)
        report.cases_run += 1
        space = ColoredSpace.from_script(script)
        all_flags = FL.enumerate_flags(space)
        if len(all_flags) > 24:
            all_flags = all_flags[:24]
        inputs = {"script": script}
        for f in all_flags:
            for g in all_flags:
                path = FL.flag_path(space, f, g)
                if path.stuck:
                    _fail(report, "path-stuck-on-built-space", inputs,
                          {"f": str(f), "g": str(g)})
                if not W.is_reduced(path.word):
                    _fail(report, "path-word-reduced", inputs,
                          {"f": str(f), "g": str(g), "word": str(path.word)})
                if f == g and len(path.word) > 0:
                    _fail(report, "closed-path-trivial", inputs, str(f))
                if f != g and len(path.word) == 0:
                    _fail(report, "distinct-flags-nontrivial-word", inputs,
                          {"f": str(f), "g": str(g)})
                alt = FL.flag_path(space, f, g, reverse_ties=True)
                if not W.equivalent(alt.word, path.word):
                    _fail(report, "path-word-invariance", inputs,
                          {"f": str(f), "g": str(g), "w1": str(path.word), "w2": str(alt.word)})
                _check_scaffold(report, space, FL.flag_path(space, f, g), inputs)
        # flags inside a path's vertex set occur in some permutation of it
        if len(all_flags) >= 2:
            f, g = all_flags[0], all_flags[-1]
            path = FL.flag_path(space, f, g)
            _check_flags_in_path(report, space, path, inputs)
            _check_wobbling(report, space, path, inputs)
        _check_nice_characterization(report, space, all_flags, rng, inputs)


def _check_scaffold(report: SuiteReport, space, path, inputs) -> None:
    if len(path.word) == 0:
        return
    vertex_set = path.vertex_set()
    if SP.nice_witness(space, vertex_set) is not None:
        _fail(report, "scaffold-nice", inputs, sorted(vertex_set))
        return
    last = path.flags[-1]
    _, segment = W.final_segment(path.word)
    expected_pairs = set()
    for s in segment.letters:
        lo = last[s.lo - 1] if s.lo > 0 else BOTTOM
        hi = last[s.hi + 1] if s.hi < space.n else TOP
        expected_pairs.add((lo, hi))
    anchors = set(last.vertices) | {BOTTOM, TOP}
    observed = {
        (a, b)
        for a, b in SP.open_pairs(space, vertex_set)
        if a in anchors and b in anchors
    }
    if observed != expected_pairs:
        _fail(report, "scaffold-open-pairs", inputs,
              {"expected": sorted(map(str, expected_pairs)),
               "observed": sorted(map(str, observed)),
               "word": str(path.word)})


def _check_flags_in_path(report: SuiteReport, space, path, inputs) -> None:
    vertex_set = path.vertex_set()
    inside = FL.enumerate_flags(space, within=vertex_set)
    permutations = _word_class(path.word)
    for k in inside:
        found = False
        for perm in permutations:
            try:
                p2 = FL.permute_path(space, path, perm)
            except Exception:
                continue
            if k in p2.flags:
                found = True
                break
        if not found:
            _fail(report, "flags-in-path", inputs, {"flag": str(k), "word": str(path.word)})


def _word_class(u: Word) -> list[Word]:
    """Full commutation class via swap closure (desk-scale words only)."""
    seen = {u.letters}
    frontier = [u.letters]
    while frontier:
        cur = frontier.pop()
        for i in range(len(cur) - 1):
            if commutes(cur[i], cur[i + 1]):
                nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2 :]
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return [Word(ls, u.n) for ls in sorted(seen)]


def _check_wobbling(report: SuiteReport, space, path, inputs) -> None:
    """Mid flags of equal-word paths agree outside the wobbling set."""
    word = path.word
    if len(word) < 2:
        return
    f, g = path.flags[0], path.flags[-1]
    for i in range(1, len(word)):
        prefix = Word(word.letters[:i], word.n)
        suffix = Word(word.letters[i:], word.n)
        wob = W.wobbling(prefix, suffix)
        reference = path.flags[i]
        for candidate in FL.enumerate_flags(space):
            if candidate == reference:
                continue
            u1 = FL.flag_path(space, f, candidate).word
            u2 = FL.flag_path(space, candidate, g).word
            if not (W.equivalent(u1, prefix) and W.equivalent(u2, suffix)):
                continue
            diff = {
                j for j in range(space.n + 1) if candidate[j] != reference[j]
            }
            if not diff <= set(wob):
                _fail(report, "wobbling-determines-midflags", inputs,
                      {"word": str(word), "i": i, "diff": sorted(diff),
                       "wob": sorted(wob)})


def _check_nice_characterization(report, space, all_flags, rng, inputs) -> None:
    if not all_flags:
        return
    sample = rng.sample(all_flags, min(len(all_flags), 3))
    union: set[int] = set()
    for f in sample:
        union.update(f.vertices)
    nice = SP.is_nice(space, union)
    connected = all(
        _reduced_path_inside(space, union, f, g)
        for f in sample
        for g in sample
    )
    if nice != connected:
        _fail(report, "nice-iff-flag-connected", inputs,
              {"union": sorted(union), "nice": nice, "connected": connected})


def _reduced_path_inside(space, region: set[int], f, g) -> bool:
    """Search a reduced flag path from f to g through flags inside the region."""
    word = FL.flag_path(space, f, g).word
    inside = FL.enumerate_flags(space, within=region)
    if f not in inside or g not in inside:
        return False
    for perm in _word_class(word):
        if _walk_word(space, inside, f, g, perm.letters):
            return True
    return False


def _walk_word(space, inside, current, goal, letters) -> bool:
    if not letters:
        return current == goal
    s = letters[0]
    for nxt in inside:
        diff = {i for i in range(space.n + 1) if current[i] != nxt[i]}
        if diff != set(range(s.lo, s.hi + 1)):
            continue
        if not FL.is_global_step(space, current, nxt, s):
            continue
        if _walk_word(space, inside, nxt, goal, letters[1:]):
            return True
    return False


def _suite_flags_forking(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    for _ in range(config.cases):
        n = random_dimension(rng, config.n_max)
        report.cases_run += 1
        space = ColoredSpace(n)
        base = FL.Flag(tuple(space.apply_alpha(Letter(0, n))))
        u = random_reduced_word(rng, n, 3)
        v = random_reduced_word(rng, n, 3)
        inputs = {"n": n, "u": str(u), "v": str(v)}
        f = FL.realize_type(space, base, u)
        h = FL.realize_type(space, base, v)
        # the connecting words are what realize_type promises
        if not W.equivalent(FL.flag_path(space, f, base).word, u):
            _fail(report, "realize-word-roundtrip", inputs,
                  str(FL.flag_path(space, f, base).word))
        # independence via the word criterion matches the basepoint criterion
        path_gh = FL.flag_path(space, base, h)
        region = set(base.vertices) | path_gh.vertex_set()
        word_indep = FL.indep(space, f, base, h)
        set_indep = FL.indep_over_set(space, f, base, region)
        if word_indep != set_indep:
            _fail(report, "forking-criteria-agree", inputs,
                  {"word": word_indep, "set": set_indep})
        # independence from the whole witness path
        if word_indep:
            for mid in path_gh.flags:
                if not FL.indep(space, f, base, mid):
                    _fail(report, "indep-from-path", inputs, str(mid))
        _check_basepoint_chain(report, space, f, base, inputs)
        _check_basepoint_support(report, space, f, base, inputs)
        _check_transitivity(report, space, rng, n, inputs)
    _check_counterexample(report, config)
    _check_two_realizations(report, config)


def _check_basepoint_chain(report, space, f, base, inputs) -> None:
    path = FL.flag_path(space, f, base)
    region = set(base.vertices)
    if not FL.indep_over_set(space, f, base, region):
        return
    # every step is a global application over the remaining tail plus region
    for i in range(len(path.flags) - 1):
        tail: set[int] = set(region)
        for g in path.flags[i + 1 :]:
            tail.update(g.vertices)
        new_vertices = set(path.flags[i].vertices) - set(path.flags[i + 1].vertices)
        s = FL._step_letter(space, path.flags[i], path.flags[i + 1])
        lo, hi = FL._anchors_for(space, path.flags[i], s)
        members = space.between(lo, hi)
        for b in new_vertices:
            dist = space.distances_from(b, within=members)
            if any(t in dist for t in tail & members):
                _fail(report, "basepoint-chain-global", inputs, {"step": i})
                return
    union = set(region)
    for g in path.flags:
        union.update(g.vertices)
    if SP.nice_witness(space, union) is not None:
        _fail(report, "basepoint-chain-nice", inputs, sorted(union))


def _check_basepoint_support(report, space, f, base, inputs) -> None:
    path = FL.flag_path(space, f, base)
    word = path.word
    region = set(base.vertices)
    if not FL.indep_over_set(space, f, base, region):
        return
    region_flags = FL.enumerate_flags(space, within=region)
    for i in range(1, len(path.flags) - 1):
        mid = path.flags[i]
        suffix = Word(word.letters[i:], word.n)
        for size in range(space.n + 2):
            for modulus in itertools.combinations(range(space.n + 1), size):
                cls = FL.FlagClass(mid, frozenset(modulus))
                in_region = any(
                    FL.FlagClass(g, frozenset(modulus)) == cls for g in region_flags
                )
                if in_region and not W.support(suffix) <= set(modulus):
                    _fail(report, "basepoint-word-support", inputs,
                          {"i": i, "modulus": list(modulus),
                           "support": sorted(W.support(suffix))})


def _check_transitivity(report, space, rng, n, inputs) -> None:
    flags = FL.enumerate_flags(space)
    if len(flags) > 8:
        flags = rng.sample(flags, 8)
    cache: dict[tuple, Word] = {}

    def word(a, b) -> Word:
        k = (a.vertices, b.vertices)
        if k not in cache:
            cache[k] = FL.flag_path(space, a, b).word
        return cache[k]

    def ind(a, b, c) -> bool:
        return W.equivalent(W.concat_reduce(word(a, b), word(b, c)), word(a, c))

    for f, f0, h0, h in itertools.islice(itertools.product(flags, repeat=4), 512):
        if ind(f, f0, h0) and ind(f, h0, h):
            if not ind(f, f0, h):
                _fail(report, "transitivity-forward", inputs,
                      {"f": str(f), "f0": str(f0), "h0": str(h0), "h": str(h)})
        # converse along reduced two-step paths
        if W.is_reduced(word(f0, h0).concat(word(h0, h))) and ind(f0, h0, h) and ind(
            f, f0, h
        ):
            if not (ind(f, f0, h0) and ind(f, h0, h)):
                _fail(report, "transitivity-converse", inputs,
                      {"f": str(f), "f0": str(f0), "h0": str(h0), "h": str(h)})


def _check_counterexample(report: SuiteReport, config: SuiteConfig) -> None:
    """The proper-subletter diagram rejecting the unreduced converse."""
    n = 2
    space = ColoredSpace(n)
    h0 = FL.Flag(tuple(space.apply_alpha(Letter(0, n))))
    s_word = W.parse_word("[1,2]", n)
    t_word = W.parse_word("[1]", n)
    f0 = FL.realize_type(space, h0, s_word)
    h = FL.realize_type(space, f0, t_word)
    f = FL.realize_type(space, h0, t_word)
    expect = {
        ("w(F0,H0)", str(FL.flag_path(space, f0, h0).word), "[1,2]"),
        ("w(H0,H)", str(FL.flag_path(space, h0, h).word), "[1,2]"),
        ("w(F0,H)", str(FL.flag_path(space, f0, h).word), "[1]"),
        ("indep(F,F0,H)", FL.indep(space, f, f0, h), True),
        ("indep(F,F0,H0)", FL.indep(space, f, f0, h0), False),
        ("indep(F,H0,H)", FL.indep(space, f, h0, h), True),
    }
    report.cases_run += 1
    for name, got, want in sorted(expect, key=lambda x: x[0]):
        if got != want:
            _fail(report, "unreduced-converse-counterexample",
                  {"check": name}, {"got": got, "want": want})


def _check_two_realizations(report: SuiteReport, config: SuiteConfig) -> None:
    """Two independent realizations determine the mid flag modulo sr(u)."""
    rng = random.Random(config.seed + 1)
    for _ in range(min(config.cases, 50)):
        n = random_dimension(rng, config.n_max)
        space = ColoredSpace(n)
        g = FL.Flag(tuple(space.apply_alpha(Letter(0, n))))
        u = random_reduced_word(rng, n, 3)
        if len(u) == 0:
            continue
        report.cases_run += 1
        f1 = FL.realize_type(space, g, u)
        f2 = FL.realize_type(space, g, u)
        if not FL.indep(space, f1, g, f2):
            # two fresh realizations are independent over the basepoint
            _fail(report, "two-realizations-indep", {"n": n, "u": str(u)}, None)
            continue
        between = FL.flag_path(space, f1, f2).word
        expected = W.concat_reduce(u, W.inverse(u))
        if not W.equivalent(between, expected):
            _fail(report, "two-realizations-word", {"n": n, "u": str(u)},
                  {"between": str(between), "expected": str(expected)})
        sr = W.right_stabilizer(u)
        remainder, segment = W.final_segment(u)
        split_order = remainder.concat(segment)
        mid1 = FL.permute_path(
            space, FL.flag_path(space, f1, g), split_order
        ).flags[len(remainder)]
        mid2 = FL.permute_path(
            space, FL.flag_path(space, f2, g), split_order
        ).flags[len(remainder)]
        if FL.FlagClass(mid1, sr) != FL.FlagClass(mid2, sr):
            _fail(report, "two-realizations-midflag", {"n": n, "u": str(u)},
                  {"mid1": str(mid1), "mid2": str(mid2), "sr": sorted(sr)})


# ---------------------------------------------------------------------------
# rank and ample suites


def _suite_ranks(config: SuiteConfig, report: SuiteReport) -> None:
    rng = random.Random(config.seed)
    fixed = [
        ("ord_rank", "[0,1].[1,3]", 3, "w^2+w"),
        ("ord_rank", "1", 3, "0"),
        ("rd_closed_form", "[0,2]", 2, "w^2"),
        ("rd_closed_form", "[0,2].[2,3].[1]", 3, "w^2+w+1"),
    ]
    for fn, text, n, expected in fixed:
        report.cases_run += 1
        u = W.parse_word(text, n)
        value = W.ord_rank(u) if fn == "ord_rank" else W.rd_closed_form(u)
        if str(value) != expected:
            _fail(report, f"{fn}-pinned-value", {"u": text, "n": n},
                  {"got": str(value), "want": expected})
    report.cases_run += 1
    tr = FL.type_rank(W.parse_word("[0,1].[1,3]", 3))
    if tr.u_rank is not None or str(tr.ord_bound) != "w^2+w":
        _fail(report, "nonmonotone-type-rank", {"u": "[0,1].[1,3]"},
              {"u_rank": str(tr.u_rank), "ord": str(tr.ord_bound)})
    for _ in range(config.cases):
        n = random_dimension(rng, config.n_max)
        u = random_reduced_word(rng, n, config.word_len_max)
        report.cases_run += 1
        sizes = [s.size for s in u.letters]
        if sizes == sorted(sizes, reverse=True):
            if W.rd_closed_form(u) != W.ord_rank(u):
                _fail(report, "monotone-rd-equals-ord", {"n": n, "u": str(u)},
                      {"rd": str(W.rd_closed_form(u)), "ord": str(W.ord_rank(u))})
        try:
            v = random_reduced_word(rng, n, config.word_len_max)
            if W.prec(u, v) and not W.ord_rank(u) < W.ord_rank(v):
                _fail(report, "prec-ord-strict", {"n": n, "u": str(u), "v": str(v)}, None)
        except SearchBoundExceededError:
            pass


def _suite_ample(config: SuiteConfig, report: SuiteReport) -> None:
    for n in range(1, max(2, config.n_max) + 1):
        report.cases_run += 1
        for check in FL.ample_report(n):
            if not check["pass"]:
                _fail(report, "ample-identity", {"n": n}, check)


_SUITES = {
    "words-confluence": _suite_words_confluence,
    "words-absorption": _suite_words_absorption,
    "words-decomposition": _suite_words_decomposition,
    "words-strong": _suite_words_strong,
    "words-order": _suite_words_order,
    "space-axioms": _suite_space_axioms,
    "flags-paths": _suite_flags_paths,
    "flags-forking": _suite_flags_forking,
    "ranks": _suite_ranks,
    "ample": _suite_ample,
}


def report_to_text(report: SuiteReport) -> str:
    status = "PASS" if report.passed else "FAIL"
    lines = [
        f"suite {report.suite}: {status} ({report.cases_run} cases, "
        f"{len(report.failures)} failures, {report.elapsed:.2f}s)"
    ]
    for note in report.notes:
        lines.append(f"  note: {note}")
    for failure in report.failures[:20]:
        lines.append("  " + json.dumps(failure, default=str))
    return "\n".join(lines)
