"""Index-pair combinatorics over the symmetric group.

A permutation sigma of {1..n} is stored as a tuple of length n with
sigma[i-1] = sigma(i).  For a level l between 2 and n, the pair set
S(n, l, sigma) collects the positions where one of two bound conditions
holds; every permutation admits at least one, and pairing each even
permutation with its swap at the minimal pair tiles the whole group.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Optional, Sequence

from ..errors import InputError, SoundnessAlarm

Permutation = tuple[int, ...]


class ChiWitness(NamedTuple):
    n: int
    l: int
    sigma: Permutation
    case: str           # "A" or "B"
    indices: tuple[int, int]   # (i, j) for case B, (i, l) for case A


def _validate(n: int, l: int, sigma: Sequence[int]) -> Permutation:
    if n < 2:
        raise InputError("n must be at least 2")
    if not (2 <= l <= n):
        raise InputError("l must satisfy 2 <= l <= n")
    sig = tuple(sigma)
    if sorted(sig) != list(range(1, n + 1)):
        raise InputError(f"not a permutation of 1..{n}: {sig}")
    return sig


def case_a(n: int, l: int, sigma: Permutation, i: int) -> bool:
    return i < l and l + max(sigma[i - 1], sigma[l - 1]) <= n + 2


def case_b(n: int, sigma: Permutation, i: int, j: int) -> bool:
    return i < j and j + max(sigma[i - 1], sigma[j - 1]) <= n + 1


def pair_set(n: int, l: int, sigma: Sequence[int]) -> list[tuple[int, int]]:
    """S(n, l, sigma): pairs (i, j) satisfying the second-kind bound,
    plus pairs (i, l) satisfying the first-kind bound, sorted by
    (i + j, i)."""
    sig = _validate(n, l, sigma)
    out = set()
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if case_b(n, sig, i, j):
            out.add((i, j))
        if j == l and case_a(n, l, sig, i):
            out.add((i, j))
    return sorted(out, key=lambda p: (p[0] + p[1], p[0]))


def chi_check(n: int, l: int, sigma: Sequence[int]) -> ChiWitness:
    """A witness pair; existence is a theorem, so an empty pair set is a
    soundness alarm, not a result."""
    sig = _validate(n, l, sigma)
    pairs = pair_set(n, l, sig)
    if not pairs:
        raise SoundnessAlarm(
            f"no admissible pair for n={n}, l={l}, sigma={sig}"
        )
    i, j = pairs[0]
    if case_b(n, sig, i, j):
        return ChiWitness(n, l, sig, "B", (i, j))
    return ChiWitness(n, l, sig, "A", (i, l))


def min_pair(n: int, l: int, sigma: Sequence[int]) -> tuple[int, int]:
    """Minimum of the pair set under graded lex: compare i+j, then i."""
    pairs = pair_set(n, l, sigma)
    if not pairs:
        raise SoundnessAlarm(
            f"no admissible pair for n={n}, l={l}, sigma={tuple(sigma)}"
        )
    return pairs[0]


def swap_at(sigma: Permutation, pair: tuple[int, int]) -> Permutation:
    """Compose with the transposition of positions i and j: the entries
    at those positions trade places."""
    i, j = pair
    out = list(sigma)
    out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


def is_even(sigma: Permutation) -> bool:
    inversions = sum(
        1
        for a in range(len(sigma))
        for b in range(a + 1, len(sigma))
        if sigma[a] > sigma[b]
    )
    return inversions % 2 == 0


def sn_partition(n: int, l: int) -> list[tuple[Permutation, Permutation]]:
    """Pair every even permutation with its swap at the minimal pair and
    certify the pairs tile the symmetric group exactly."""
    if n < 2:
        raise InputError("n must be at least 2")
    if not (2 <= l <= n):
        raise InputError("l must satisfy 2 <= l <= n")
    pairs: list[tuple[Permutation, Permutation]] = []
    seen: set[Permutation] = set()
    for perm in itertools.permutations(range(1, n + 1)):
        if not is_even(perm):
            continue
        partner = swap_at(perm, min_pair(n, l, perm))
        if min_pair(n, l, partner) != min_pair(n, l, perm):
            raise SoundnessAlarm(
                f"minimal pair not stable under its own swap: {perm} at l={l}"
            )
        if perm in seen or partner in seen or perm == partner:
            raise SoundnessAlarm(f"overlapping pair {perm} / {partner}")
        seen.add(perm)
        seen.add(partner)
        pairs.append((perm, partner))
    import math

    if len(seen) != math.factorial(n):
        raise SoundnessAlarm(
            f"pairs cover {len(seen)} of {math.factorial(n)} permutations"
        )
    return pairs
