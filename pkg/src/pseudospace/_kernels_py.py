"""Pure-Python word kernels.

These are the hot inner loops of the whole toolkit: reducedness testing,
generalized cancellation and normal-form sorting.  They operate on raw words,
i.e. tuples of ``(lo, hi)`` integer pairs, so the compiled extension in
``_speedups.pyx`` can implement the very same contract.  Everything here is
pure and total.

Conventions (letters are closed level intervals):
  * ``a`` and ``b`` commute iff ``b[0] >= a[1] + 2 or a[0] >= b[1] + 2``.
  * ``a`` contains ``b`` iff ``a[0] <= b[0] and b[1] <= a[1]`` (non-strict:
    a repeated letter absorbs its twin, letters are idempotent).
  * A word is reduced iff no letter is absorbed: there is no pair of
    positions ``i != j`` with ``w[i]`` contained in ``w[j]`` and ``w[i]``
    commuting with every letter strictly between them.
  * The normal form of a word is the unique commutation-equivalent word in
    which every adjacent commuting pair increases.
"""

from __future__ import annotations

RawWord = tuple  # tuple of (lo, hi) pairs

BACKEND_NAME = "pure"


def _commutes(a, b) -> bool:
    return b[0] >= a[1] + 2 or a[0] >= b[1] + 2


def _contains(a, b) -> bool:
    return a[0] <= b[0] and b[1] <= a[1]


def absorbed_at(word: RawWord, i: int) -> bool:
    """True iff the letter at ``i`` can be deleted by generalized cancellation."""
    s = word[i]
    for j in range(i + 1, len(word)):
        if _contains(word[j], s):
            return True
        if not _commutes(s, word[j]):
            break
    for j in range(i - 1, -1, -1):
        if _contains(word[j], s):
            return True
        if not _commutes(s, word[j]):
            break
    return False


def is_reduced(word: RawWord) -> bool:
    return not any(absorbed_at(word, i) for i in range(len(word)))


def reduce_word(word: RawWord) -> RawWord:
    """Delete absorbed letters (leftmost first) until reduced; normalize."""
    letters = list(word)
    i = 0
    while i < len(letters):
        if absorbed_at(tuple(letters), i):
            del letters[i]
            i = 0
        else:
            i += 1
    return normal_form(tuple(letters))


def normal_form(word: RawWord) -> RawWord:
    """Bubble adjacent commuting inversions until increasing."""
    letters = list(word)
    n = len(letters)
    swapped = True
    while swapped:
        swapped = False
        for i in range(n - 1):
            a, b = letters[i], letters[i + 1]
            # commuting pair out of order: b entirely below a
            if a[0] >= b[1] + 2:
                letters[i], letters[i + 1] = b, a
                swapped = True
    return tuple(letters)
