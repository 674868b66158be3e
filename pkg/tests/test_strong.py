import random

import pytest

import pseudospace.words as W
from brute import brute_divisors
from pseudospace.errors import NotReducedError
from pseudospace.letters import all_letters
from pseudospace.words import Word, parse_word


def pw(text, n=3):
    return parse_word(text, n)


def test_splitting_example_from_double_letter():
    result = W.strong_reducts_bounded(pw("[0,1].[0,1]"), 2, 1000)
    assert not result.exhausted
    assert set(result.as_strings()) >= {"[0,1]", "1", "[0]", "[1]", "[0].[1]", "[1].[0]"}


def test_interleaved_splitting_example():
    # s.t.t.s.t strongly reduces to s.t
    u = parse_word("[0,1].[1,2].[1,2].[0,1].[1,2]", 2)
    result = W.strong_reducts_bounded(u, 2, 10_000)
    assert "[0,1].[1,2]" in result.as_strings()


def test_no_splitting_means_unique_reduct():
    u = pw("[0].[2,3].[0,1]")
    result = W.strong_reducts_bounded(u, 3, 1000)
    assert result.words == {W.reduce(u)}


def test_budget_exhaustion_is_reported():
    u = parse_word("[0,3].[0,3]", 3)
    full = W.strong_reducts_bounded(u, 3, 100_000)
    assert not full.exhausted
    truncated = W.strong_reducts_bounded(u, 3, 5)
    assert truncated.exhausted
    assert truncated.words <= full.words


def test_soundness_every_reduct_is_reduced():
    rng = random.Random(21)
    alphabet = all_letters(3)
    for _ in range(100):
        u = Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 5))), 3)
        result = W.strong_reducts_bounded(u, 2, 20_000)
        for x in result.words:
            assert W.is_reduced(x)


def test_splitting_penalty_sampled():
    rng = random.Random(22)
    alphabet = all_letters(3)
    for _ in range(200):
        u = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3))), 3))
        v = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3))), 3))
        plain = W.concat_reduce(u, v)
        result = W.strong_reducts_bounded(u.concat(v), 3, 50_000)
        for x in result.words:
            if not W.equivalent(x, plain):
                assert W.prec(x, plain, bound=40)


def test_inverse_cancellation():
    rng = random.Random(23)
    alphabet = all_letters(3)
    for _ in range(100):
        u = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3))), 3))
        result = W.strong_reducts_bounded(u.concat(W.inverse(u)), 3, 50_000)
        assert result.exhausted or Word.one(3) in result.words


def test_divides_left_examples():
    res = W.divides_left_bounded(pw("[0,1]"), pw("[0,1].[1,3]"), 2)
    assert str(res.witness) == "[1,3]"
    res = W.divides_left_bounded(pw("[0]"), pw("[0]"), 2)
    assert str(res.witness) == "1"
    res = W.divides_left_bounded(pw("[1,3]"), pw("[0]"), 3)
    assert res.witness is None and res.conclusive


def test_divides_rejects_non_reduced():
    with pytest.raises(NotReducedError):
        W.divides_left_bounded(pw("[0].[0,1]"), pw("[0,1]"), 2)


def test_divides_matches_brute_force():
    rng = random.Random(24)
    alphabet = all_letters(2)
    for _ in range(60):
        u = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 2))), 2))
        v = W.reduce(Word(tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 3))), 2))
        res = W.divides_left_bounded(u, v, 2)
        brute = brute_divisors(u, v, 2)
        if res.witness is not None:
            assert any(W.equivalent(res.witness, w) for w in brute)
            assert W.equivalent(W.concat_reduce(u, res.witness), v)
        elif res.conclusive:
            assert brute == []
