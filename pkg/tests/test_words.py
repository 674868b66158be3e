import itertools
import random

import pytest

import pseudospace.words as W
from brute import brute_prec, exhaustive_reducts, swap_closure
from pseudospace.errors import (
    DimensionError,
    NotMonotoneError,
    NotReducedError,
    ParseError,
    SearchBoundExceededError,
)
from pseudospace.letters import all_letters, commutes
from pseudospace.words import Word, parse_word


def pw(text, n=3):
    return parse_word(text, n)


def test_parse_and_print():
    assert str(pw("1")) == "1"
    assert str(pw("[0,1].[1,3]")) == "[0,1].[1,3]"
    with pytest.raises(ParseError):
        pw("")
    with pytest.raises(ParseError):
        pw("[0]..[1]")
    with pytest.raises(DimensionError):
        pw("[0,4]", 3)


def test_is_reduced_examples():
    assert W.is_reduced(pw("[0,1].[1,3]")) is True
    assert W.is_reduced(pw("[0].[2,3].[0,1]")) is False
    assert W.is_reduced(pw("1")) is True


def test_reduce_examples():
    assert str(W.reduce(pw("[0].[2,3].[0,1]"))) == "[2,3].[0,1]"
    assert str(W.reduce(pw("[0,1].[0,1]"))) == "[0,1]"
    assert str(W.reduce(pw("[0,2]"))) == "[0,2]"


def test_reduce_matches_exhaustive_closure():
    # confluence: the brute-force closure reaches exactly one reduct class
    rng = random.Random(5)
    alphabet = all_letters(3)
    for _ in range(300):
        u = Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 6))), 3)
        classes = exhaustive_reducts(u)
        assert classes == {W.reduce(u).key}


def test_normal_form_examples():
    assert str(W.normal_form(pw("[2,3].[0]"))) == "[0].[2,3]"
    assert str(W.normal_form(pw("[0,1].[1,3]"))) == "[0,1].[1,3]"
    assert str(W.normal_form(pw("1"))) == "1"


def test_normal_form_is_class_canonical():
    rng = random.Random(6)
    alphabet = all_letters(3)
    for _ in range(100):
        u = Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 6))), 3)
        cls = swap_closure(u)
        nf = W.normal_form(u).letters
        assert nf in cls
        assert all(W.normal_form(Word(m, 3)).letters == nf for m in cls)
        # the normal form is the unique member without commuting inversions
        no_inversion = [
            m
            for m in cls
            if all(not (m[i].lo >= m[i + 1].hi + 2) for i in range(len(m) - 1))
        ]
        assert no_inversion == [nf]


def test_equivalent_examples():
    assert W.equivalent(pw("[0].[2,3]"), pw("[2,3].[0]"))
    assert not W.equivalent(pw("[0].[1]"), pw("[1].[0]"))
    assert W.equivalent(pw("1"), pw("1"))


def test_inverse_examples():
    assert str(W.inverse(pw("[0].[1,2]"))) == "[1,2].[0]"
    assert str(W.inverse(pw("1"))) == "1"
    u = pw("[0,1].[1,3]")
    assert W.inverse(W.inverse(u)) == u


def test_support_examples():
    assert W.support(pw("[0].[2,3]")) == {0, 2, 3}
    assert W.support(pw("1")) == frozenset()
    assert W.support(pw("[0,1].[1,3]")) == {0, 1, 2, 3}


def test_final_segment_examples():
    rem, seg = W.final_segment(pw("[0].[2,3]"))
    assert (str(rem), str(seg)) == ("1", "[0].[2,3]")
    rem, seg = W.final_segment(pw("[0,1].[1,3]"))
    assert (str(rem), str(seg)) == ("[0,1]", "[1,3]")
    rem, seg = W.final_segment(pw("1"))
    assert (str(rem), str(seg)) == ("1", "1")


def test_final_segment_recombines():
    rng = random.Random(7)
    alphabet = all_letters(3)
    for _ in range(200):
        u = Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 6))), 3)
        rem, seg = W.final_segment(u)
        assert W.equivalent(rem.concat(seg), u)
        # the segment is a commuting word
        assert all(
            commutes(a, b) for a, b in itertools.combinations(seg.letters, 2)
        )


def test_stabilizer_examples():
    assert W.left_stabilizer(pw("[1,2].[0,3]")) == {1, 2}
    assert W.right_stabilizer(parse_word("[0,1].[1,2]", 2)) == {1, 2}
    assert W.right_stabilizer(pw("[0,1].[2,3]")) == {0, 2, 3}


def test_absorption_examples():
    assert W.absorbs_left(pw("[0,1]"), pw("[0]"))
    assert not W.absorbs_left(pw("[1,2].[0,3]"), pw("[0]"))
    assert W.absorbs_left(pw("[1,2].[0,3]"), pw("1"))


def test_split_absorbed_examples():
    u1, u2 = W.split_absorbed(pw("[2].[0,1]"), frozenset({0, 1}))
    assert (str(u1), str(u2)) == ("[2]", "[0,1]")
    u1, u2 = W.split_absorbed(pw("[0,1].[1,3]"), frozenset({1, 2, 3}))
    assert (str(u1), str(u2)) == ("[0,1]", "[1,3]")
    u = pw("[0,1].[1,3]")
    u1, u2 = W.split_absorbed(u, frozenset())
    assert (u1, str(u2)) == (u, "1")


def test_split_absorbed_laws():
    rng = random.Random(8)
    alphabet = all_letters(3)
    for _ in range(300):
        u = Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 6))), 3)
        S = frozenset(rng.sample(range(4), rng.randint(0, 4)))
        u1, u2 = W.split_absorbed(u, S)
        assert W.equivalent(u1.concat(u2), u)
        assert all(s.levels() <= S for s in u2.letters)
        _, seg = W.final_segment(u1)
        assert not any(s.levels() <= S for s in seg.letters)


def test_concat_reduce_examples():
    assert str(W.concat_reduce(pw("[0,1]"), pw("[0]"))) == "[0,1]"
    assert str(W.concat_reduce(pw("[0]"), pw("[2]"))) == "[0].[2]"
    assert str(W.concat_reduce(pw("[2].[0,1]"), pw("[0].[3]"))) == "[2].[0,1].[3]"


def test_wobbling_examples():
    assert W.wobbling(parse_word("[0,1]", 2), parse_word("[1,2]", 2)) == {1}
    assert W.wobbling(pw("1"), pw("[1,2].[0,3]")) == frozenset()
    assert W.wobbling(pw("[0]"), pw("[2]")) == frozenset()


def test_prec_examples():
    assert W.prec(pw("[0].[3]"), pw("[0,1].[1,3]"))
    assert not W.prec(pw("[0,1]"), pw("[0,1]"))
    assert W.prec(pw("1"), pw("[0]"))


def test_prec_matches_brute_force():
    rng = random.Random(9)
    alphabet = all_letters(2)
    for _ in range(400):
        u = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3))), 2))
        v = Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3))), 2)
        assert W.prec(u, v) == brute_prec(u, v)


def test_prec_bound():
    long = Word(tuple(all_letters(3)[:1]) * 7, 3)
    with pytest.raises(SearchBoundExceededError):
        W.prec(long, long)
    assert W.prec(long, long, bound=20) is False


def test_absorption_law_exhaustive_n1():
    words = [
        Word(c, 1)
        for k in range(3)
        for c in itertools.product(all_letters(1), repeat=k)
    ]
    reduced = [u for u in words if W.is_reduced(u)]
    for u in reduced:
        for v in reduced:
            assert W.equivalent(W.concat_reduce(u, v), v) == W.absorbs_left(v, u)


def test_ord_rank_examples():
    assert str(W.ord_rank(pw("[0,1].[1,3]"))) == "w^2+w"
    assert str(W.ord_rank(pw("1"))) == "0"
    assert str(W.ord_rank(pw("[0,2].[1,2].[3]"))) == "w^2+w+1"


def test_rd_closed_form_examples():
    assert str(W.rd_closed_form(pw("[0,2].[2,3].[1]"))) == "w^2+w+1"
    assert str(W.rd_closed_form(parse_word("[0,2]", 2))) == "w^2"
    with pytest.raises(NotMonotoneError):
        W.rd_closed_form(pw("[0,1].[1,3]"))
    with pytest.raises(NotReducedError):
        W.rd_closed_form(pw("[0,2].[1,2].[3]"))


def test_prec_implies_ord_drop():
    rng = random.Random(10)
    alphabet = all_letters(3)
    checked = 0
    for _ in range(500):
        u = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 4))), 3))
        v = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 4))), 3))
        if W.prec(u, v):
            checked += 1
            assert W.ord_rank(u) < W.ord_rank(v)
    assert checked > 10
