"""Brute-force ground truth, fully integer-valued.

Three independent routes into the same numbers: the Murnaghan-Nakayama
border-strip recursion for characters, exhaustive semistandard-tableau
counting for Kostka numbers, and a dense fixed-particle-number simulator of
the hopping-operator products.  No floating point anywhere in this module.
"""

from __future__ import annotations

from functools import lru_cache

from .combinatorics import Partition, centralizer_size, encode_occupation
from .errors import ResourceLimitError

MN_CAP = 14
SSYT_CAP = 12
DENSE_CAP = 8
CROSSCHECK_CAP = 5


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], nu: tuple[int, ...]) -> int:
    if not nu:
        return 1 if not lam else 0
    strip, rest = nu[0], nu[1:]
    m = len(lam)
    # First-column hook lengths ("beta numbers"): strictly decreasing,
    # beta_j = lam_j + m - j for 1-indexed j.  Removing a size-t border strip
    # moves one bead down by t; the sign counts beads jumped over.
    beta = [lam[j] + m - 1 - j for j in range(m)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        target = b - strip
        if target < 0 or target in beta_set:
            continue
        height = sum(1 for other in beta if target < other < b)
        new_beta = sorted((beta_set - {b}) | {target}, reverse=True)
        new_lam = tuple(
            part
            for j, val in enumerate(new_beta)
            if (part := val - (m - 1 - j)) > 0
        )
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def mn_character(lam: Partition, nu: Partition, cap: int = MN_CAP) -> int:
    """Exact character via the Murnaghan-Nakayama border-strip recursion."""
    if lam.n != nu.n:
        raise ValueError(f"size mismatch: {lam} vs {nu}")
    if lam.n > cap:
        raise ResourceLimitError(f"MN oracle capped at n={cap}, got {lam.n}")
    return _mn(lam.parts, tuple(sorted(nu.parts, reverse=True)))


def ssyt_count(lam: Partition, mu: Partition, cap: int = SSYT_CAP) -> int:
    """Count semistandard tableaux of shape lam and content mu by exhaustive
    cell-by-cell backtracking (rows weakly increasing, columns strictly)."""
    if lam.n != mu.n:
        raise ValueError(f"size mismatch: {lam} vs {mu}")
    if lam.n > cap:
        raise ResourceLimitError(f"SSYT oracle capped at n={cap}, got {lam.n}")
    shape = lam.parts
    if not shape:
        return 1
    remaining = list(mu.parts)
    letters = len(remaining)
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    grid = [[0] * row for row in shape]

    def fill(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        left = grid[i][j - 1] if j > 0 else 1
        above = grid[i - 1][j] + 1 if i > 0 else 1
        count = 0
        for v in range(max(left, above), letters + 1):
            if remaining[v - 1] == 0:
                continue
            remaining[v - 1] -= 1
            grid[i][j] = v
            count += fill(idx + 1)
            remaining[v - 1] += 1
        grid[i][j] = 0
        return count

    return fill(0)


def _hop_all(state: dict[str, int], ell: int) -> dict[str, int]:
    """Apply the sum over k of (create at k+ell)(annihilate at k) to an
    integer-coefficient statevector on occupation strings, with the fermionic
    sign (-1)**(occupied sites strictly between k and k+ell)."""
    out: dict[str, int] = {}
    for bits, coeff in state.items():
        sites = len(bits)
        for k in range(sites - ell):
            if bits[k] == "1" and bits[k + ell] == "0":
                crossings = bits.count("1", k + 1, k + ell)
                moved = bits[:k] + "0" + bits[k + 1 : k + ell] + "1" + bits[k + ell + 1 :]
                sign = -1 if crossings % 2 else 1
                out[moved] = out.get(moved, 0) + sign * coeff
    return {b: c for b, c in out.items() if c}


def dense_character_state(nu: Partition, n: int, cap: int = DENSE_CAP) -> dict[str, int]:
    """Integer statevector of the hopping-product state on 2n sites,
    keyed by weight-n occupation strings."""
    if nu.n != n:
        raise ValueError(f"{nu} is not a partition of {n}")
    if n > cap:
        raise ResourceLimitError(f"dense oracle capped at n={cap}, got {n}")
    state = {"1" * n + "0" * n: 1}
    for ell in sorted(nu.parts):
        state = _hop_all(state, ell)
    return state


def dense_state_norm_squared(state: dict[str, int]) -> int:
    return sum(c * c for c in state.values())


def character_from_dense(lam: Partition, nu: Partition, n: int) -> int:
    state = dense_character_state(nu, n)
    return state.get(encode_occupation(lam, n), 0)


def jordan_wigner_crosscheck(nu: Partition, n: int, cap: int = CROSSCHECK_CAP) -> bool:
    """Validate the sign rule of dense_character_state against explicit
    2**(2n)-dimensional Jordan-Wigner matrices built by Kronecker products."""
    import numpy as np
    from scipy import sparse

    if nu.n != n:
        raise ValueError(f"{nu} is not a partition of {n}")
    if n > cap:
        raise ResourceLimitError(f"JW crosscheck capped at n={cap}, got {n}")

    sites = 2 * n
    lower = sparse.csr_matrix(np.array([[0, 1], [0, 0]], dtype=np.int64))
    z = sparse.csr_matrix(np.array([[1, 0], [0, -1]], dtype=np.int64))
    eye = sparse.identity(2, dtype=np.int64, format="csr")

    def mode_op(k: int, local) -> sparse.csr_matrix:
        # site 0 is the leftmost (most significant) tensor factor
        op = sparse.identity(1, dtype=np.int64, format="csr")
        for j in range(sites):
            if j < k:
                factor = z
            elif j == k:
                factor = local
            else:
                factor = eye
            op = sparse.kron(op, factor, format="csr")
        return op

    annihilate = [mode_op(k, lower) for k in range(sites)]
    create = [a.T.tocsr() for a in annihilate]

    vec = np.zeros(2**sites, dtype=np.int64)
    vec[int("1" * n + "0" * n, 2)] = 1
    for ell in sorted(nu.parts):
        current = sparse.csr_matrix((2**sites, 2**sites), dtype=np.int64)
        for k in range(sites - ell):
            current = current + create[k + ell] @ annihilate[k]
        vec = current @ vec

    expected = dense_character_state(nu, n)
    for idx in range(2**sites):
        bits = format(idx, f"0{sites}b")
        if int(vec[idx]) != expected.get(bits, 0):
            return False
    return True
