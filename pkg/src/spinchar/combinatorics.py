"""Exact integer combinatorics of partitions, cycle types, and the
partition <-> occupation-bit-string encoding used by the spin-chain engines.

All arithmetic in this module is exact (Python ints); nothing here touches
floating point.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import InternalError, InvalidArgumentError

# Full enumeration refuses above this (p(60) is already ~1e6 partitions).
ENUMERATION_CAP = 60
# Bounded-part iteration (used by granularity sweeps) is allowed further out.
BOUNDED_ITERATION_CAP = 200


@dataclass(frozen=True, order=True)
class Partition:
    """A partition: non-increasing positive integer parts.

    Labels both irreps and conjugacy classes of the symmetric group.  The
    empty partition (no parts, n=0) is allowed; it shows up as the result of
    decoding the staircase string and as the recursion base of the
    Murnaghan-Nakayama rule.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        prev = None
        for p in self.parts:
            if not isinstance(p, int) or p < 1:
                raise InvalidArgumentError(f"partition parts must be positive integers, got {self.parts!r}")
            if prev is not None and p > prev:
                raise InvalidArgumentError(f"partition parts must be non-increasing, got {self.parts!r}")
            prev = p

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(tuple(cols))


def parse_partition(text: str) -> Partition:
    """Parse the textual grammar `part ("," part)*`, whitespace ignored.

    Parts are sorted into canonical non-increasing order.
    """
    stripped = "".join(text.split())
    if not stripped:
        raise InvalidArgumentError("empty partition string")
    parts = []
    for tok in stripped.split(","):
        if not tok.isdigit():
            raise InvalidArgumentError(f"bad partition component {tok!r} in {text!r}")
        val = int(tok)
        if val < 1:
            raise InvalidArgumentError(f"partition parts must be >= 1, got {val}")
        parts.append(val)
    return Partition(tuple(sorted(parts, reverse=True)))


def iter_partitions(n: int, max_parts: int | None = None) -> Iterator[Partition]:
    """Yield partitions of n in lexicographically decreasing order.

    With `max_parts` set, only partitions with at most that many parts are
    produced (still in the same order); this keeps sweeps over short cycle
    types tractable far beyond the full-enumeration cap.
    """
    cap = ENUMERATION_CAP if max_parts is None else BOUNDED_ITERATION_CAP
    if n < 1 or n > cap:
        raise InvalidArgumentError(f"partition enumeration needs 1 <= n <= {cap}, got {n}")
    if max_parts is not None and max_parts < 1:
        raise InvalidArgumentError("max_parts must be >= 1")

    def rec(remaining: int, bound: int, prefix: list[int], room: int):
        if remaining == 0:
            yield Partition(tuple(prefix))
            return
        if room == 0:
            return
        top = min(bound, remaining)
        # With `room` parts left, the largest feasible first part must leave
        # the rest coverable: remaining - first <= first * (room - 1).
        low = -(-remaining // room)  # ceil division
        for first in range(top, low - 1, -1):
            prefix.append(first)
            yield from rec(remaining - first, first, prefix, room - 1)
            prefix.pop()

    yield from rec(n, n, [], n if max_parts is None else max_parts)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, lexicographically decreasing, length p(n)."""
    return list(iter_partitions(n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence, exact."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def cycle_multiplicities(nu: Partition) -> dict[int, int]:
    """Map cycle length -> multiplicity; satisfies sum(l * a_l) = n."""
    return dict(Counter(nu.parts))


def centralizer_size(nu: Partition) -> int:
    """Order of the centralizer of a permutation with cycle type nu:
    prod_l (a_l!) * l**a_l, exact."""
    size = 1
    for ell, mult in cycle_multiplicities(nu).items():
        size *= math.factorial(mult) * ell**mult
    return size


def hook_length_dimension(lam: Partition) -> int:
    """Irrep dimension d_lambda via the hook length formula, exact."""
    if not lam.parts:
        return 1
    conj = lam.conjugate().parts
    hook_product = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hook_product *= (row - j) + (conj[j] - i) - 1
    dim, rem = divmod(math.factorial(lam.n), hook_product)
    if rem:
        raise InternalError(f"hook product {hook_product} does not divide {lam.n}!")
    return dim


def permutation_sign(nu: Partition) -> int:
    """Sign of any permutation with cycle type nu: (-1)**(n - #cycles)."""
    return -1 if (nu.n - len(nu.parts)) % 2 else 1


def encode_occupation(lam: Partition, n: int) -> str:
    """Encode lam (zero-padded to n parts) as a weight-n bit string of
    length 2n with bit (lam_j + n - j) set for j = 1..n.

    The empty partition encodes to the staircase string '1'*n + '0'*n.
    Site 0 is the leftmost character.
    """
    if n < 1:
        raise InvalidArgumentError(f"need n >= 1, got {n}")
    if len(lam.parts) > n:
        raise InvalidArgumentError(f"partition {lam} has more than {n} parts")
    if lam.parts and lam.parts[0] > n:
        raise InvalidArgumentError(f"partition {lam} does not fit in a {n}x{n} box")
    padded = list(lam.parts) + [0] * (n - len(lam.parts))
    bits = [0] * (2 * n)
    for j, part in enumerate(padded, start=1):
        site = part + n - j
        if bits[site]:
            raise InternalError(f"support collision at site {site} encoding {lam}")
        bits[site] = 1
    return "".join(map(str, bits))


def decode_occupation(x: str) -> Partition:
    """Inverse of encode_occupation; trailing zero parts stripped."""
    if len(x) % 2 or any(c not in "01" for c in x):
        raise InvalidArgumentError(f"occupation string must be even-length binary, got {x!r}")
    n = len(x) // 2
    support = [site for site, c in enumerate(x) if c == "1"]
    if len(support) != n:
        raise InvalidArgumentError(f"occupation string must have weight {n}, got {len(support)}")
    support.sort(reverse=True)
    parts = []
    for j, site in enumerate(support, start=1):
        part = site - (n - j)
        if part < 0:
            raise InternalError(f"negative part decoding {x!r}")
        if part > 0:
            parts.append(part)
    return Partition(tuple(parts))
