"""Open-boundary MPS/MPO core.

Site tensors are plain float64 numpy arrays: rank 3 (left, physical, right)
for states, rank 4 (left, phys-out, phys-in, right) for operators, boundary
bonds of size 1.  States are unnormalized throughout; amplitudes are the
quantities of interest and may be large integers represented in doubles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np

from .errors import InvalidArgumentError, NumericalError, ResourceLimitError

# Singular values at or below this fraction of the leading one are treated as
# numerical zeros and dropped at any epsilon, including epsilon = 0.  Genuine
# Schmidt coefficients of the integer-structured states handled here sit many
# orders of magnitude above accumulated roundoff (~1e-16 relative).
ZERO_TOL = 1e-14

DENSE_SITE_CAP = 14


def _check_chain(tensors: Sequence[np.ndarray], rank: int, kind: str) -> None:
    if not tensors:
        raise InvalidArgumentError(f"{kind} needs at least one site")
    for i, t in enumerate(tensors):
        if t.ndim != rank:
            raise InvalidArgumentError(f"{kind} site {i} has rank {t.ndim}, expected {rank}")
    if tensors[0].shape[0] != 1 or tensors[-1].shape[-1] != 1:
        raise InvalidArgumentError(f"{kind} boundary bonds must have dimension 1")
    for i in range(len(tensors) - 1):
        if tensors[i].shape[-1] != tensors[i + 1].shape[0]:
            raise InvalidArgumentError(
                f"{kind} bond mismatch between sites {i} and {i + 1}: "
                f"{tensors[i].shape[-1]} vs {tensors[i + 1].shape[0]}"
            )


@dataclass(frozen=True, eq=False)
class MPS:
    """Tensor train of rank-3 site tensors (left, physical=2, right).

    `center` is the canonical-center site index, or None when no canonical
    form is guaranteed.  Instances are treated as immutable.
    """

    sites: tuple[np.ndarray, ...]
    center: int | None = None

    def __post_init__(self):
        _check_chain(self.sites, 3, "MPS")

    def __len__(self) -> int:
        return len(self.sites)


@dataclass(frozen=True, eq=False)
class MPO:
    """Tensor train of rank-4 site tensors (left, phys-out, phys-in, right)."""

    sites: tuple[np.ndarray, ...]

    def __post_init__(self):
        _check_chain(self.sites, 4, "MPO")

    def __len__(self) -> int:
        return len(self.sites)


@dataclass(frozen=True)
class TruncationPolicy:
    """Relative singular-value truncation: at each cut, discard the longest
    tail whose sum is at most epsilon times the total singular-value sum.
    `max_bond`, when set, additionally clamps every kept bond (lossy)."""

    epsilon: float = 0.0
    max_bond: int | None = None

    def __post_init__(self):
        if self.epsilon < 0:
            raise InvalidArgumentError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.max_bond is not None and self.max_bond < 1:
            raise InvalidArgumentError(f"max_bond must be >= 1, got {self.max_bond}")


@dataclass
class BlockCache:
    """Cache of contracted per-block matrix products for amplitude batches,
    keyed by (block index, bit substring)."""

    matrices: dict[tuple[int, str], np.ndarray] = field(default_factory=dict)
    hits: int = 0
    misses: int = 0


@dataclass
class CompressionStats:
    """Per-cut diagnostics from one compression sweep."""

    discarded_sums: list[float] = field(default_factory=list)
    kept_bonds: list[int] = field(default_factory=list)


def product_state(x: str) -> MPS:
    """Bond-1 MPS equal to the computational basis state |x>."""
    if not x or any(c not in "01" for c in x):
        raise InvalidArgumentError(f"need a nonempty binary string, got {x!r}")
    tensors = []
    for c in x:
        t = np.zeros((1, 2, 1))
        t[0, int(c), 0] = 1.0
        tensors.append(t)
    return MPS(tuple(tensors), center=0)


def mpo_apply(op: MPO, state: MPS) -> MPS:
    """Exact MPO application; bond dimensions multiply."""
    if len(op) != len(state):
        raise InvalidArgumentError(f"site count mismatch: MPO {len(op)} vs MPS {len(state)}")
    tensors = []
    for w, a in zip(op.sites, state.sites):
        t = np.einsum("lpqr,aqb->laprb", w, a)
        wl, al, p, wr, ar = t.shape
        tensors.append(t.reshape(wl * al, p, wr * ar))
    return MPS(tuple(tensors), center=None)


def _kept_count(sv: np.ndarray, policy: TruncationPolicy) -> tuple[int, float]:
    """Number of singular values to keep at one cut, and the discarded sum."""
    total = float(sv.sum())
    if total <= 0.0:
        return 1, 0.0
    significant = int(np.searchsorted(-sv, -sv[0] * ZERO_TOL))
    significant = max(significant, 1)
    # tails[k] = sum of sv[k:]
    tails = np.concatenate([np.cumsum(sv[::-1])[::-1], [0.0]])
    k_eps = int(np.searchsorted(-tails, -policy.epsilon * total))
    keep = max(1, min(significant, k_eps if k_eps > 0 else 1))
    if policy.max_bond is not None:
        keep = min(keep, policy.max_bond)
    return keep, float(tails[keep])


def compress(state: MPS, policy: TruncationPolicy, return_stats: bool = False):
    """Mixed-canonical compression: left-to-right QR, then right-to-left SVD
    truncating by the relative rule at every cut.  The result has canonical
    center 0 (all sites to the right are right-isometries)."""
    tensors = [t for t in state.sites]
    count = len(tensors)
    for s in range(count - 1):
        dl, d, dr = tensors[s].shape
        q, r = np.linalg.qr(tensors[s].reshape(dl * d, dr))
        tensors[s] = q.reshape(dl, d, -1)
        tensors[s + 1] = np.tensordot(r, tensors[s + 1], axes=(1, 0))

    stats = CompressionStats()
    for s in range(count - 1, 0, -1):
        dl, d, dr = tensors[s].shape
        mat = tensors[s].reshape(dl, d * dr)
        try:
            u, sv, vt = np.linalg.svd(mat, full_matrices=False)
        except np.linalg.LinAlgError:
            try:
                from scipy.linalg import svd as scipy_svd

                u, sv, vt = scipy_svd(mat, full_matrices=False, lapack_driver="gesvd")
            except Exception as exc:
                raise NumericalError(f"SVD failed at cut {s - 1}|{s}: {exc}") from exc
        keep, discarded = _kept_count(sv, policy)
        if float(sv.sum()) <= 0.0:
            # zero state: keep a single zero column so bonds stay valid
            tensors[s] = np.zeros((1, d, dr))
            tensors[s - 1] = np.zeros(tensors[s - 1].shape[:2] + (1,))
            stats.discarded_sums.append(0.0)
            stats.kept_bonds.append(1)
            continue
        tensors[s] = vt[:keep].reshape(keep, d, dr)
        tensors[s - 1] = np.tensordot(tensors[s - 1], u[:, :keep] * sv[:keep], axes=(2, 0))
        stats.discarded_sums.append(discarded)
        stats.kept_bonds.append(keep)

    result = MPS(tuple(tensors), center=0)
    if return_stats:
        stats.discarded_sums.reverse()
        stats.kept_bonds.reverse()
        return result, stats
    return result


def amplitude(state: MPS, x: str) -> float:
    """<x|state> by the ordered product of physical-index-selected matrices."""
    if len(x) != len(state):
        raise InvalidArgumentError(f"string length {len(x)} != site count {len(state)}")
    vec = state.sites[0][:, int(x[0]), :]
    for s in range(1, len(state)):
        vec = vec @ state.sites[s][:, int(x[s]), :]
    return float(vec[0, 0])


def _block_bounds(count: int, blocks: int = 4) -> list[tuple[int, int]]:
    size = -(-count // blocks)  # ceil
    bounds = []
    start = 0
    while start < count:
        end = min(start + size, count)
        bounds.append((start, end))
        start = end
    return bounds


def _block_matrix(state: MPS, start: int, end: int, bits: str) -> np.ndarray:
    mat = state.sites[start][:, int(bits[0]), :]
    for s in range(start + 1, end):
        mat = mat @ state.sites[s][:, int(bits[s - start]), :]
    return mat


def amplitude_batch(
    state: MPS, xs: Sequence[str], cache: BlockCache | None = None
) -> list[float]:
    """Amplitudes for many basis strings, caching per-block matrix products.

    The chain is split into four blocks (remainder in the last); repeated
    block substrings across queries reuse the cached contraction.
    """
    if cache is None:
        cache = BlockCache()
    bounds = _block_bounds(len(state))
    out = []
    for x in xs:
        if len(x) != len(state):
            raise InvalidArgumentError(f"string length {len(x)} != site count {len(state)}")
        vec = np.ones((1, 1))
        for b, (start, end) in enumerate(bounds):
            sub = x[start:end]
            key = (b, sub)
            mat = cache.matrices.get(key)
            if mat is None:
                mat = _block_matrix(state, start, end, sub)
                cache.matrices[key] = mat
                cache.misses += 1
            else:
                cache.hits += 1
            vec = vec @ mat
        out.append(float(vec[0, 0]))
    return out


def norm_squared(state: MPS) -> float:
    """<state|state> by the transfer contraction (never basis enumeration)."""
    env = np.ones((1, 1))
    for a in state.sites:
        env = np.einsum("ab,apc,bpd->cd", env, a, a, optimize=True)
    return float(env[0, 0])


def max_bond(state: MPS | MPO) -> int:
    return max(t.shape[-1] for t in state.sites[:-1]) if len(state) > 1 else 1


def dense_vector(state: MPS) -> np.ndarray:
    """Full 2**sites amplitude vector (testing helper, guarded)."""
    if len(state) > DENSE_SITE_CAP:
        raise ResourceLimitError(f"dense vector limited to {DENSE_SITE_CAP} sites, got {len(state)}")
    vec = state.sites[0][0]  # (2, D)
    for a in state.sites[1:]:
        vec = np.tensordot(vec, a, axes=(-1, 0))
        vec = vec.reshape(-1, a.shape[-1])
    return vec[:, 0]


def dense_materialize(op: MPO) -> np.ndarray:
    """Full 2**sites square matrix of an MPO; memory-guarded."""
    count = len(op)
    if count > DENSE_SITE_CAP:
        raise ResourceLimitError(f"dense materialization limited to {DENSE_SITE_CAP} sites, got {count}")
    half = count // 2

    left = op.sites[0][0]  # (2, 2, D)
    for w in op.sites[1:half]:
        left = np.einsum("xyd,dpqe->xpyqe", left, w)
        o1, o2, i1, i2, bond = left.shape
        left = left.reshape(o1 * o2, i1 * i2, bond)
    if half == 0:
        left = np.ones((1, 1, op.sites[0].shape[0]))

    right = op.sites[-1][..., 0]  # (D, 2, 2)
    for w in reversed(op.sites[half:-1]):
        right = np.einsum("dpqe,exy->dpxqy", w, right)
        bond, o1, o2, i1, i2 = right.shape
        right = right.reshape(bond, o1 * o2, i1 * i2)

    full = np.einsum("xyd,dzw->xzyw", left, right)
    dim = full.shape[0] * full.shape[1]
    return full.reshape(dim, dim)


def dump_mps(state: MPS, stream: IO[str]) -> None:
    """Debug dump: header line, then per site bond sizes and row-major entries."""
    stream.write(f"sites={len(state)}\n")
    for t in state.sites:
        stream.write(f"{t.shape[0]} {t.shape[2]}\n")
        stream.write(" ".join(repr(v) for v in t.ravel().tolist()) + "\n")
