"""Forking calculus on constructed configurations."""

import itertools
import random

import pseudospace.flags as FL
import pseudospace.space as SP
import pseudospace.words as W
from pseudospace.flags import Flag
from pseudospace.letters import Letter
from pseudospace.space import ColoredSpace
from pseudospace.words import parse_word


def fresh_base(n=2):
    sp = ColoredSpace(n)
    return sp, Flag(tuple(sp.apply_alpha(Letter(0, n))))


def test_commuting_fresh_steps_are_independent():
    sp, g = fresh_base()
    f = FL.realize_type(sp, g, parse_word("[0]", 2))
    h = FL.realize_type(sp, g, parse_word("[2]", 2))
    assert FL.indep(sp, f, g, h)
    assert str(FL.flag_path(sp, f, h).word) == "[0].[2]"


def test_two_generic_realizations_stay_connected():
    sp, g = fresh_base()
    for text in ["[1,2]", "[0,2]", "[0]"]:
        u = parse_word(text, 2)
        f1 = FL.realize_type(sp, g, u)
        f2 = FL.realize_type(sp, g, u)
        assert FL.indep(sp, f1, g, f2)
        between = FL.flag_path(sp, f1, f2).word
        assert W.equivalent(between, W.concat_reduce(u, W.inverse(u)))


def test_flag_forks_with_itself():
    sp, g = fresh_base()
    f = FL.realize_type(sp, g, parse_word("[1,2]", 2))
    assert not FL.indep(sp, f, g, f)


def test_unreduced_converse_counterexample():
    # s = [1,2], t = [1] proper subletter; the diagram rejects the converse
    # of transitivity along the unreduced path F0 -s-> H0 -s-> H
    sp, h0 = fresh_base()
    f0 = FL.realize_type(sp, h0, parse_word("[1,2]", 2))
    h = FL.realize_type(sp, f0, parse_word("[1]", 2))
    f = FL.realize_type(sp, h0, parse_word("[1]", 2))
    assert str(FL.flag_path(sp, f0, h0).word) == "[1,2]"
    assert str(FL.flag_path(sp, h0, h).word) == "[1,2]"
    assert str(FL.flag_path(sp, f0, h).word) == "[1]"
    assert FL.indep(sp, f, f0, h)
    assert FL.indep(sp, f, h0, h)
    assert not FL.indep(sp, f, f0, h0)


def test_restricted_transitivity_on_chains():
    rng = random.Random(51)
    for _ in range(60):
        n = rng.randint(1, 3)
        sp, base = fresh_base(n)
        for text_len in range(2):
            u = W.reduce(
                parse_word(
                    ".".join(
                        str(Letter(lo, rng.randint(lo, n)))
                        for lo in [rng.randint(0, n) for _ in range(2)]
                    ),
                    n,
                )
            )
            FL.realize_type(sp, base, u)
        flags = FL.enumerate_flags(sp)
        if len(flags) > 6:
            flags = rng.sample(flags, 6)
        for f, f0, h0, h in itertools.islice(
            itertools.product(flags, repeat=4), 200
        ):
            if FL.indep(sp, f, f0, h0) and FL.indep(sp, f, h0, h):
                assert FL.indep(sp, f, f0, h)
            v = FL.flag_path(sp, f0, h0).word
            w = FL.flag_path(sp, h0, h).word
            if W.is_reduced(v.concat(w)) and FL.indep(sp, f0, h0, h):
                if FL.indep(sp, f, f0, h):
                    assert FL.indep(sp, f, f0, h0)
                    assert FL.indep(sp, f, h0, h)


def test_basepoint_gives_independence_from_all_region_flags():
    sp, g = fresh_base()
    b1 = sp.apply_alpha(Letter(1, 1), g[0], g[2])[0]
    region = set(g.vertices) | {b1}
    f = FL.realize_type(sp, g, parse_word("[0,2]", 2))
    bp, u = FL.basepoint(sp, f, region)
    for h in FL.enumerate_flags(sp, within=region):
        # the connecting word to every region flag is the reduct of u.v
        v = FL.flag_path(sp, bp, h).word
        assert W.equivalent(
            FL.flag_path(sp, f, h).word, W.concat_reduce(u, v)
        )
        assert FL.indep(sp, f, bp, h)


def test_independence_from_witness_path():
    sp, g = fresh_base()
    h = FL.realize_type(sp, g, parse_word("[0,1].[1,2]", 2))
    f = FL.realize_type(sp, g, parse_word("[2]", 2))
    if FL.indep(sp, f, g, h):
        path = FL.flag_path(sp, g, h)
        for mid in path.flags:
            assert FL.indep(sp, f, g, mid)


def test_basepoint_chain_is_nice():
    sp, g = fresh_base()
    f = FL.realize_type(sp, g, parse_word("[0,1].[1,2]", 2))
    path = FL.flag_path(sp, f, g)
    union = set(g.vertices) | path.vertex_set()
    assert SP.is_nice(sp, union)


def test_canonical_base_well_defined_across_basepoints():
    # two sr-equivalent basepoints give the same canonical base class
    sp, g = fresh_base()
    b1 = sp.apply_alpha(Letter(1, 1), g[0], g[2])[0]
    g2 = Flag((g[0], b1, g[2]))
    region = set(g.vertices) | {b1}
    u = parse_word("[1,2]", 2)
    f = FL.realize_type(sp, g, u)
    cls = FL.canonical_base(sp, f, region)
    sr = W.right_stabilizer(u)
    assert cls == FL.FlagClass(g, sr) == FL.FlagClass(g2, sr)


def test_midpath_class_constrains_word_support():
    # if a mid-path class lies in the region then the rest of the word
    # only moves levels inside the modulus
    sp, g = fresh_base()
    u = parse_word("[0,1].[1,2]", 2)
    f = FL.realize_type(sp, g, u)
    path = FL.flag_path(sp, f, g)
    region = set(g.vertices)
    region_flags = FL.enumerate_flags(sp, within=region)
    word = path.word
    for i in range(1, len(path.flags) - 1):
        mid = path.flags[i]
        suffix = W.Word(word.letters[i:], word.n)
        for size in range(sp.n + 2):
            for modulus in itertools.combinations(range(sp.n + 1), size):
                cls = FL.FlagClass(mid, frozenset(modulus))
                if any(
                    FL.FlagClass(x, frozenset(modulus)) == cls for x in region_flags
                ):
                    assert W.support(suffix) <= set(modulus)


def _all_reduced_path_words(space, f, g, max_len):
    """Exhaustive DFS over global steps, independent of flag_path."""
    flags = FL.enumerate_flags(space)
    found = []

    def steps_from(x):
        for y in flags:
            if y == x:
                continue
            diff = sorted(i for i in range(space.n + 1) if x[i] != y[i])
            if diff != list(range(diff[0], diff[-1] + 1)):
                continue
            s = Letter(diff[0], diff[-1])
            if FL.is_global_step(space, x, y, s):
                yield s, y

    def dfs(x, word):
        if len(word) > max_len:
            return
        if x == g and W.is_reduced(W.Word(tuple(word), space.n)):
            found.append(W.Word(tuple(word), space.n))
        if x == g:
            return
        for s, y in steps_from(x):
            word.append(s)
            if W.is_reduced(W.Word(tuple(word), space.n)):
                dfs(y, word)
            word.pop()

    dfs(f, [])
    return found


def test_path_words_unique_against_exhaustive_search():
    rng = random.Random(61)
    from pseudospace.oracle import random_script

    checked = 0
    for _ in range(8):
        sp = ColoredSpace.from_script(random_script(rng, 3))
        flags = FL.enumerate_flags(sp)
        if len(flags) > 5:
            flags = rng.sample(flags, 5)
        for f, g in itertools.combinations(flags, 2):
            ref = FL.flag_path(sp, f, g).word
            words = _all_reduced_path_words(sp, f, g, max_len=len(ref) + 1)
            assert words
            assert all(W.equivalent(w, ref) for w in words)
            checked += 1
    assert checked > 10
