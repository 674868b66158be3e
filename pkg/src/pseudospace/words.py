"""The monoid of interval letters: reduction, normal forms, stabilizers,
decompositions, strong reduction and rank functions.

Words multiply modulo two relations: commuting letters swap, and a letter
absorbs any of its subletters that reaches it (generalized cancellation).
Every word has a unique reduct up to commutation, and every commutation class
has a unique normal form, so monoid elements are compared by normal forms of
reducts.  All operations return normal-form output.

Strong reduction additionally allows splitting a repeated letter ``s.s`` into
a product of proper subletters of ``s``; it is not confluent, so only a
bounded, sound enumeration of strong reducts is provided.

The order ``prec`` (replace at least one letter by a product of proper
subletters, up to commutation) is implemented exactly as a one-step relation;
that relation is already transitive, so no closure is computed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from . import kernels
from .errors import (
    DimensionError,
    NotMonotoneError,
    NotReducedError,
    ParseError,
    SearchBoundExceededError,
)
from .letters import (
    IndexSet,
    Letter,
    centralizer,
    check_dimension,
    commutes,
    contains,
    parse_letter,
    proper_subletters,
)
from .ordinals import CnfOrdinal, cnf_from_counts

PREC_DEFAULT_BOUND = 12
SPLIT_LEN_DEFAULT = 3
SPLIT_STEPS_DEFAULT = 50_000


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters in ambient dimension ``n``."""

    letters: tuple[Letter, ...]
    n: int

    def __post_init__(self):
        check_dimension(self.n)
        for s in self.letters:
            if not s.valid_for(self.n):
                raise DimensionError(f"letter {s} exceeds dimension {self.n}")

    @classmethod
    def from_letters(cls, letters: Iterable[Letter], n: int) -> "Word":
        return cls(tuple(letters), n)

    @classmethod
    def one(cls, n: int) -> "Word":
        return cls((), n)

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(s.key for s in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return ".".join(str(s) for s in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r}, n={self.n})"

    def concat(self, other: "Word") -> "Word":
        _same_dimension(self, other)
        return Word(self.letters + other.letters, self.n)


def _same_dimension(u: Word, v: Word) -> int:
    if u.n != v.n:
        raise DimensionError(f"mixed dimensions {u.n} and {v.n}")
    return u.n


def _from_key(key: tuple[tuple[int, int], ...], n: int) -> Word:
    return Word(tuple(Letter(lo, hi) for lo, hi in key), n)


def parse_word(text: str, n: int) -> Word:
    """Parse dotted letter syntax; "1" is the empty word."""
    text = text.strip()
    if text == "1":
        return Word.one(n)
    if not text:
        raise ParseError("empty word text (use '1')")
    return Word(tuple(parse_letter(p) for p in text.split(".")), n)


# ---------------------------------------------------------------------------
# reduction / normal form / equivalence


def is_reduced(u: Word) -> bool:
    return kernels.is_reduced(u.key)


def reduce(u: Word) -> Word:
    """The unique reduct (generalized cancellation to fixpoint), normalized."""
    return _from_key(kernels.reduce_word(u.key), u.n)


def normal_form(u: Word) -> Word:
    """Canonical representative of the commutation class (no cancellation)."""
    return _from_key(kernels.normal_form(u.key), u.n)


def equivalent(u: Word, v: Word) -> bool:
    _same_dimension(u, v)
    return kernels.normal_form(u.key) == kernels.normal_form(v.key)


def inverse(u: Word) -> Word:
    return Word(tuple(reversed(u.letters)), u.n)


def support(u: Word) -> IndexSet:
    out: set[int] = set()
    for s in u.letters:
        out.update(range(s.lo, s.hi + 1))
    return frozenset(out)


def concat_reduce(u: Word, v: Word) -> Word:
    _same_dimension(u, v)
    return reduce(u.concat(v))


def final_segment(u: Word) -> tuple[Word, Word]:
    """Split ``u ~ remainder . segment``; the segment letters commute with
    everything after their position (hence pairwise)."""
    seg_idx = [
        i
        for i, s in enumerate(u.letters)
        if all(commutes(s, t) for t in u.letters[i + 1 :])
    ]
    seg = set(seg_idx)
    remainder = tuple(s for i, s in enumerate(u.letters) if i not in seg)
    segment = tuple(u.letters[i] for i in seg_idx)
    return Word(remainder, u.n), Word(segment, u.n)


# ---------------------------------------------------------------------------
# stabilizers and absorption


def left_stabilizer(v: Word) -> IndexSet:
    """Union over positions j of ``letter_j`` intersected with the
    centralizer of the prefix before j."""
    out: set[int] = set()
    cent = set(range(v.n + 1))
    for s in v.letters:
        out.update(cent & set(range(s.lo, s.hi + 1)))
        cent = {i for i in cent if i <= s.lo - 2 or i >= s.hi + 2}
    return frozenset(out)


def right_stabilizer(v: Word) -> IndexSet:
    return left_stabilizer(inverse(v))


def absorbs_left(v: Word, u: Word) -> bool:
    """True iff ``v`` absorbs ``u`` on the left, i.e. support(u) inside sL(v)."""
    _same_dimension(u, v)
    return support(u) <= left_stabilizer(v)


def absorbs_right(v: Word, u: Word) -> bool:
    _same_dimension(u, v)
    return support(u) <= right_stabilizer(v)


def left_absorption_witness(v: Word, s: Letter) -> int | None:
    """Position in ``v`` of the (unique) letter absorbing ``s``, else None."""
    for j, t in enumerate(v.letters):
        if contains(t, s):
            return j
        if not commutes(s, t):
            return None
    return None


def properly_absorbs_left(v: Word, u: Word) -> bool:
    """Every letter of ``u`` is absorbed by a strictly larger letter of ``v``."""
    for s in u.letters:
        j = left_absorption_witness(v, s)
        if j is None or v.letters[j] == s:
            return False
    return True


def properly_absorbs_right(v: Word, u: Word) -> bool:
    return properly_absorbs_left(inverse(v), inverse(u))


def bites_from_right(v: Word, u: Word) -> bool:
    """True iff ``v`` left-absorbs some letter of the final segment of ``u``."""
    sl = left_stabilizer(v)
    _, seg = final_segment(u)
    return any(s.levels() <= sl for s in seg.letters)


def wobbling(u: Word, v: Word) -> IndexSet:
    _same_dimension(u, v)
    return right_stabilizer(u) & left_stabilizer(v)


def split_absorbed(u: Word, absorbed_into: IndexSet) -> tuple[Word, Word]:
    """Split ``u ~ u1.u2`` where every letter of ``u2`` is contained in the
    given index set and commutes past the rest of ``u1``, and no final-segment
    letter of ``u1`` is contained in it.  Unique up to commutation and only
    depends on the set."""
    stay: list[Letter] = []
    moved: list[Letter] = []
    for s in reversed(u.letters):
        if s.levels() <= absorbed_into and all(commutes(s, t) for t in stay):
            moved.append(s)
        else:
            stay.append(s)
    return Word(tuple(reversed(stay)), u.n), Word(tuple(reversed(moved)), u.n)


# ---------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class FineDecomposition:
    """``u ~ u1.u_prime`` and ``v ~ v_prime.v1`` with the product reducing to
    ``u1.v1``; the symmetric variant additionally extracts the commuting word
    ``w`` with ``u ~ u1.u_prime.w`` and ``v ~ w.v_prime.v1``."""

    u1: Word
    u_prime: Word
    v_prime: Word
    v1: Word
    w: Word | None = None

    def reduct(self) -> Word:
        mid = self.w if self.w is not None else Word.one(self.u1.n)
        return normal_form(self.u1.concat(mid).concat(self.v1))


def decompose_fine(u: Word, v: Word) -> FineDecomposition:
    """Fine decomposition of a product of reduced words."""
    _same_dimension(u, v)
    if not is_reduced(u) or not is_reduced(v):
        raise NotReducedError("decompose_fine requires reduced inputs")
    u1, u_prime = split_absorbed(u, left_stabilizer(v))
    v1_rev, v_prime_rev = split_absorbed(inverse(v), right_stabilizer(u1))
    return FineDecomposition(u1, u_prime, inverse(v_prime_rev), inverse(v1_rev))


def decompose_symmetric(u: Word, v: Word) -> FineDecomposition:
    """Symmetric decomposition: the non-proper part of the absorbed word is a
    commuting word ``w`` shared by both sides."""
    fine = decompose_fine(u, v)
    u_bar, v1_bar = fine.u_prime, fine.v1
    w_letters: list[Letter] = []
    u_letters: list[Letter] = []
    witness_positions: list[int] = []
    for s in u_bar.letters:
        j = left_absorption_witness(v1_bar, s)
        if j is not None and v1_bar.letters[j] == s:
            w_letters.append(s)
            witness_positions.append(j)
        else:
            u_letters.append(s)
    v1 = Word(
        tuple(t for j, t in enumerate(v1_bar.letters) if j not in witness_positions),
        v.n,
    )
    return FineDecomposition(
        fine.u1,
        Word(tuple(u_letters), u.n),
        fine.v_prime,
        v1,
        w=Word(tuple(w_letters), u.n),
    )


# ---------------------------------------------------------------------------
# the subletter-replacement order


def prec(u: Word, v: Word, bound: int = PREC_DEFAULT_BOUND) -> bool:
    """One parallel replacement step: some permutation of ``u`` is obtained
    from ``v`` by replacing at least one letter by a (possibly empty) product
    of its proper subletters."""
    _same_dimension(u, v)
    if len(u) + len(v) > bound:
        raise SearchBoundExceededError(
            f"prec instance of combined length {len(u) + len(v)} exceeds bound {bound}"
        )
    src = u.letters
    m = len(src)
    commuting = [[commutes(a, b) for b in src] for a in src]

    def available(mask: int) -> list[int]:
        # positions whose letter commutes with every remaining earlier letter
        out = []
        for p in range(m):
            if not mask & (1 << p):
                continue
            if all(commuting[p][q] for q in range(p) if mask & (1 << q)):
                out.append(p)
        return out

    @lru_cache(maxsize=None)
    def match(i: int, mask: int, replaced: bool) -> bool:
        if i == len(v.letters):
            return mask == 0 and replaced
        t = v.letters[i]
        avail = available(mask)
        # keep the letter as is
        for p in avail:
            if src[p] == t and match(i + 1, mask & ~(1 << p), replaced):
                return True
        # replace it by a (possibly empty) product of proper subletters
        return block(i, mask)

    @lru_cache(maxsize=None)
    def block(i: int, mask: int) -> bool:
        if match(i + 1, mask, True):
            return True
        t = v.letters[i]
        for p in available(mask):
            if contains(t, src[p], proper=True) and block(i, mask & ~(1 << p)):
                return True
        return False

    return match(0, (1 << m) - 1, False)


def preceq(u: Word, v: Word, bound: int = PREC_DEFAULT_BOUND) -> bool:
    return equivalent(u, v) or prec(u, v, bound)


# ---------------------------------------------------------------------------
# ranks


def ord_rank(u: Word) -> CnfOrdinal:
    """``sum over i of w^i * (number of letters of size i+1)``."""
    counts: dict[int, int] = {}
    for s in u.letters:
        counts[s.size - 1] = counts.get(s.size - 1, 0) + 1
    return cnf_from_counts(counts)


def rd_closed_form(u: Word) -> CnfOrdinal:
    """``w^(|s_1|-1) + ... + w^(|s_n|-1)`` for reduced words with
    non-increasing letter sizes; equals the foundation ranks of both the
    left-division and the replacement orders there."""
    if not is_reduced(u):
        raise NotReducedError(f"{u} is not reduced")
    sizes = [s.size for s in u.letters]
    if any(a < b for a, b in zip(sizes, sizes[1:])):
        raise NotMonotoneError(f"letter sizes increase in {u}")
    out = CnfOrdinal.zero()
    for size in sizes:
        out = out + CnfOrdinal.omega_power(size - 1)
    return out


# ---------------------------------------------------------------------------
# strong reduction (bounded enumeration)


@lru_cache(maxsize=None)
def _split_products(letter_key: tuple[int, int], max_len: int) -> tuple[tuple, ...]:
    """Normal forms of all reduced products of at most ``max_len`` proper
    subletters of the letter."""
    subs = [s.key for s in proper_subletters(Letter(*letter_key))]
    seen: set[tuple] = set()
    for length in range(max_len + 1):
        for combo in itertools.product(subs, repeat=length):
            if kernels.is_reduced(combo):
                seen.add(kernels.normal_form(combo))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class StrongReductionResult:
    """Reduced words reachable within the exploration budget.  ``exhausted``
    distinguishes a truncated search from a completed one."""

    words: frozenset[Word]
    exhausted: bool
    steps: int

    def as_strings(self) -> list[str]:
        return sorted(str(w) for w in self.words)


def _strong_successors(key: tuple, max_split_len: int) -> Iterator[tuple]:
    n = len(key)
    # generalized cancellations
    for i in range(n):
        if kernels.absorbed_at(key, i):
            yield kernels.normal_form(key[:i] + key[i + 1 :])
    # generalized splittings: equal pair with commuting letters between
    for i in range(n):
        for j in range(i + 1, n):
            if key[i] == key[j] and all(
                _commutes_raw(key[i], key[k]) for k in range(i + 1, j)
            ):
                for product in _split_products(key[i], max_split_len):
                    yield kernels.normal_form(
                        key[:i] + product + key[i + 1 : j] + key[j + 1 :]
                    )


def _commutes_raw(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return b[0] >= a[1] + 2 or a[0] >= b[1] + 2


def strong_reducts_bounded(
    u: Word,
    max_split_len: int = SPLIT_LEN_DEFAULT,
    max_steps: int = SPLIT_STEPS_DEFAULT,
) -> StrongReductionResult:
    """All reduced words reachable by commutation, cancellation and bounded
    splitting.  Sound always; complete only when not ``exhausted``."""
    start = kernels.normal_form(u.key)
    seen = {start}
    stack = [start]
    reducts: set[tuple] = set()
    steps = 0
    exhausted = False
    while stack:
        key = stack.pop()
        if kernels.is_reduced(key):
            reducts.add(key)
            continue
        for succ in _strong_successors(key, max_split_len):
            steps += 1
            if steps > max_steps:
                exhausted = True
                stack.clear()
                break
            if succ not in seen:
                seen.add(succ)
                stack.append(succ)
    return StrongReductionResult(
        frozenset(_from_key(k, u.n) for k in reducts), exhausted, steps
    )


# ---------------------------------------------------------------------------
# bounded left division


@dataclass(frozen=True)
class DivisionResult:
    """Outcome of the bounded divisor search.  ``witness`` is a reduced word
    with ``u . witness -> v`` when found; otherwise ``conclusive`` tells a
    proven non-existence apart from an exhausted length bound."""

    witness: Word | None
    conclusive: bool
    explored: int


def divides_left_bounded(u: Word, v: Word, max_len: int | None = None) -> DivisionResult:
    """Search for reduced ``w`` with ``concat_reduce(u, w) ~ v`` by BFS over
    right multiplication by single letters, pruning states that are not below
    ``v`` in the replacement order."""
    _same_dimension(u, v)
    if not is_reduced(u) or not is_reduced(v):
        raise NotReducedError("divides_left_bounded requires reduced inputs")
    if max_len is None:
        max_len = len(v) + 4
    target = normal_form(v)
    target_support = support(v)
    alphabet = [
        Letter(lo, hi) for lo in range(u.n + 1) for hi in range(lo, u.n + 1)
    ]

    def below_target(x: Word) -> bool:
        if not (support(x) <= target_support):
            return False
        if ord_rank(x) > ord_rank(target):
            return False
        try:
            return preceq(x, target)
        except SearchBoundExceededError:
            return True  # cannot prune soundly, keep exploring

    start = reduce(u)
    if not below_target(start):
        return DivisionResult(None, True, 0)
    if equivalent(start, target):
        return DivisionResult(Word.one(u.n), True, 1)
    frontier: list[tuple[Word, tuple[Letter, ...]]] = [(start, ())]
    visited = {start.key}
    explored = 0
    for depth in range(1, max_len + 1):
        next_frontier: list[tuple[Word, tuple[Letter, ...]]] = []
        for state, path in frontier:
            for t in alphabet:
                candidate = reduce(state.concat(Word((t,), u.n)))
                explored += 1
                if candidate.key in visited or not below_target(candidate):
                    continue
                new_path = path + (t,)
                if equivalent(candidate, target):
                    witness = reduce(Word(new_path, u.n))
                    return DivisionResult(witness, True, explored)
                visited.add(candidate.key)
                next_frontier.append((candidate, new_path))
        frontier = next_frontier
        if not frontier:
            return DivisionResult(None, True, explored)
    return DivisionResult(None, False, explored)
