"""Dense complex tensors and the multilinear primitives built on them.

Storage is a C-ordered (last index fastest) ``numpy`` array of complex128.
Mode labels, permutations, entry multi-indices and block multi-indices are
1-based everywhere in the public API, matching the standard tensor-analysis
notation; the underlying array is indexed 0-based as usual for numpy.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "ComplexTensor",
    "RankOneFactors",
    "Permutation",
    "BlockPartition",
    "from_sparse",
    "from_array",
    "zeros",
    "norm",
    "inner",
    "rank_one",
    "overlap",
    "contract_excluding",
    "contract_excluding_conj",
    "transpose_p",
    "block",
    "tensor_to_json",
    "tensor_from_json",
]

_AXIS_LETTERS = string.ascii_lowercase


@dataclass(frozen=True)
class ComplexTensor:
    """Immutable dense tensor of complex entries.

    ``data`` is a read-only complex128 array; ``dims`` are the mode sizes.
    All entries must be finite.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.data, dtype=np.complex128))
        if arr.ndim < 1:
            raise ValueError("tensor must have at least one mode")
        if any(d < 1 for d in arr.shape):
            raise ValueError(f"every mode size must be >= 1, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("tensor entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def order(self) -> int:
        return self.data.ndim

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexTensor):
            return NotImplemented
        return self.dims == other.dims and bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.dims, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"ComplexTensor(dims={self.dims}, norm={norm(self):.6g})"


@dataclass(frozen=True)
class RankOneFactors:
    """Tuple of per-mode complex vectors defining a rank-one tensor.

    ``normalization`` records the convention the vectors are held in:
    ``"per_vector"`` (each vector has unit norm), ``"joint"`` (the squared
    norms sum to one) or ``None`` (no claim).
    """

    vectors: tuple[np.ndarray, ...]
    normalization: str | None = None

    def __post_init__(self):
        if self.normalization not in (None, "per_vector", "joint"):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        vecs = []
        for v in self.vectors:
            arr = np.asarray(v, dtype=np.complex128).reshape(-1)
            if not np.all(np.isfinite(arr)):
                raise ValueError("factor entries must be finite")
            arr.flags.writeable = False
            vecs.append(arr)
        if not vecs:
            raise ValueError("at least one factor vector is required")
        object.__setattr__(self, "vectors", tuple(vecs))

    @classmethod
    def per_vector(cls, vectors: Iterable[np.ndarray]) -> "RankOneFactors":
        """Normalize each vector to unit norm."""
        vecs = []
        for v in vectors:
            arr = np.asarray(v, dtype=np.complex128).reshape(-1)
            nrm = np.linalg.norm(arr)
            if nrm == 0:
                raise ValueError("cannot normalize a zero factor vector")
            vecs.append(arr / nrm)
        return cls(tuple(vecs), normalization="per_vector")

    @classmethod
    def joint(cls, vectors: Iterable[np.ndarray]) -> "RankOneFactors":
        """Scale all vectors so their squared norms sum to one."""
        vecs = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
        total = np.sqrt(sum(float(np.real(np.vdot(v, v))) for v in vecs))
        if total == 0:
            raise ValueError("cannot normalize all-zero factors")
        return cls(tuple(v / total for v in vecs), normalization="joint")

    def __len__(self) -> int:
        return len(self.vectors)

    def norms(self) -> tuple[float, ...]:
        return tuple(float(np.linalg.norm(v)) for v in self.vectors)

    def check_normalization(self, tol: float = 1e-10) -> bool:
        """True when the declared normalization holds within ``tol``."""
        if self.normalization == "per_vector":
            return all(abs(n - 1.0) <= tol for n in self.norms())
        if self.normalization == "joint":
            total = sum(n * n for n in self.norms())
            return abs(total - 1.0) <= tol
        return True


@dataclass(frozen=True)
class Permutation:
    """A rearrangement of the mode labels 1..m."""

    map: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.map)
        if sorted(p) != list(range(1, len(p) + 1)):
            raise ValueError(f"{p} is not a permutation of 1..{len(p)}")
        object.__setattr__(self, "map", p)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    def __len__(self) -> int:
        return len(self.map)

    @property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self.map)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.map)
        for pos, val in enumerate(self.map, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def apply_to_index(self, idx: Sequence[int]) -> tuple[int, ...]:
        """Map a multi-index j to (j_{p1}, ..., j_{pm})."""
        if len(idx) != len(self.map):
            raise ValueError("index length does not match permutation size")
        return tuple(idx[q] for q in self.zero_based)


@dataclass(frozen=True)
class BlockPartition:
    """Per-mode partition of index ranges into consecutive blocks.

    ``lengths[k]`` lists the block lengths of mode k+1; offsets are the
    running sums, so block i of mode k covers rows
    offsets[k][i-1]+1 .. offsets[k][i-1]+lengths[k][i-1] in 1-based terms.
    """

    lengths: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        out = []
        for mode_lengths in self.lengths:
            lens = tuple(int(x) for x in mode_lengths)
            if not lens or any(x < 1 for x in lens):
                raise ValueError("block lengths must be positive")
            out.append(lens)
        if not out:
            raise ValueError("partition needs at least one mode")
        object.__setattr__(self, "lengths", tuple(out))

    @classmethod
    def trivial(cls, dims: Sequence[int]) -> "BlockPartition":
        """One full-size block per mode."""
        return cls(tuple((int(d),) for d in dims))

    @classmethod
    def uniform(cls, dims: Sequence[int], order: int) -> "BlockPartition":
        """Each of ``order`` modes partitioned into blocks of sizes ``dims``."""
        return cls((tuple(int(d) for d in dims),) * order)

    @property
    def order(self) -> int:
        return len(self.lengths)

    @property
    def block_counts(self) -> tuple[int, ...]:
        return tuple(len(lens) for lens in self.lengths)

    @property
    def mode_sizes(self) -> tuple[int, ...]:
        return tuple(sum(lens) for lens in self.lengths)

    def offsets(self, mode: int) -> tuple[int, ...]:
        """Cumulative offsets of mode ``mode`` (1-based); first entry is 0."""
        lens = self.lengths[mode - 1]
        out = [0]
        for x in lens[:-1]:
            out.append(out[-1] + x)
        return tuple(out)

    def permuted(self, p: "Permutation") -> "BlockPartition":
        """Partition of the p-transposed tensor: mode a inherits mode p_a."""
        return BlockPartition(tuple(self.lengths[q] for q in p.zero_based))


def _as_vectors(factors) -> tuple[np.ndarray | None, ...]:
    """Accept RankOneFactors or a plain sequence of vectors (None allowed)."""
    if isinstance(factors, RankOneFactors):
        return factors.vectors
    return tuple(
        None if v is None else np.asarray(v, dtype=np.complex128).reshape(-1)
        for v in factors
    )


def _check_factor_dims(T: ComplexTensor, vecs, skip: int | None = None):
    if len(vecs) != T.order:
        raise ValueError(f"expected {T.order} factor vectors, got {len(vecs)}")
    for i, (v, d) in enumerate(zip(vecs, T.dims), start=1):
        if skip is not None and i == skip:
            continue
        if v is None:
            raise ValueError(f"factor for mode {i} is missing")
        if v.shape[0] != d:
            raise ValueError(f"factor {i} has length {v.shape[0]}, mode size is {d}")


@lru_cache(maxsize=None)
def _overlap_subscript(m: int) -> str:
    letters = _AXIS_LETTERS[:m]
    return letters + "," + ",".join(letters) + "->"

@lru_cache(maxsize=None)
def _exclude_subscript(m: int, k0: int) -> str:
    letters = _AXIS_LETTERS[:m]
    kept = ",".join(letters[i] for i in range(m) if i != k0)
    return f"{letters},{kept}->{letters[k0]}"


def _contract_all(conj_data: np.ndarray, vecs: Sequence[np.ndarray]) -> complex:
    """sum conj(T) * x1 ... xm, on a pre-conjugated array."""
    return complex(np.einsum(_overlap_subscript(conj_data.ndim), conj_data, *vecs))


def _contract_excluding(conj_data: np.ndarray, vecs, k0: int) -> np.ndarray:
    """Mode-k0 vector of sums conj(T) * prod_{i != k0} xi (k0 zero-based)."""
    ops = [vecs[i] for i in range(conj_data.ndim) if i != k0]
    return np.einsum(_exclude_subscript(conj_data.ndim, k0), conj_data, *ops)


def from_sparse(dims: Sequence[int], entries) -> ComplexTensor:
    """Build a dense tensor from 1-based (multi-index, value) entries.

    ``entries`` may be a mapping {index tuple: value} or an iterable of
    (index tuple, value) pairs. Unlisted entries are zero. Duplicate or
    out-of-range indices are rejected.
    """
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("dims must be nonempty")
    if any(d < 1 for d in dims):
        raise ValueError(f"every mode size must be >= 1, got {dims}")
    data = np.zeros(dims, dtype=np.complex128)
    seen: set[tuple[int, ...]] = set()
    items = entries.items() if isinstance(entries, Mapping) else entries
    for idx, value in items:
        idx = tuple(int(i) for i in (idx if isinstance(idx, (tuple, list)) else (idx,)))
        if len(idx) != len(dims):
            raise ValueError(f"index {idx} has wrong length for dims {dims}")
        if any(i < 1 or i > d for i, d in zip(idx, dims)):
            raise ValueError(f"index {idx} out of range for dims {dims}")
        if idx in seen:
            raise ValueError(f"duplicate index {idx}")
        seen.add(idx)
        data[tuple(i - 1 for i in idx)] = value
    return ComplexTensor(data)


def from_array(data) -> ComplexTensor:
    """Wrap an array-like (copied) as a ComplexTensor."""
    return ComplexTensor(np.array(data, dtype=np.complex128))


def zeros(dims: Sequence[int]) -> ComplexTensor:
    return ComplexTensor(np.zeros(tuple(int(d) for d in dims), dtype=np.complex128))


def norm(T: ComplexTensor) -> float:
    """Frobenius norm: sqrt of the sum of squared entry moduli."""
    return float(np.linalg.norm(T.data.ravel()))


def inner(X: ComplexTensor, Y: ComplexTensor) -> complex:
    """Inner product sum conj(X) * Y over all entries (conjugate-linear in X)."""
    if X.dims != Y.dims:
        raise ValueError(f"dimension mismatch: {X.dims} vs {Y.dims}")
    return complex(np.vdot(X.data, Y.data))


def rank_one(factors) -> ComplexTensor:
    """Outer product tensor with entries x1_{i1} * ... * xm_{im}."""
    vecs = _as_vectors(factors)
    if any(v is None for v in vecs):
        raise ValueError("all factor vectors are required")
    return ComplexTensor(reduce(np.multiply.outer, vecs))


def overlap(T: ComplexTensor, factors) -> complex:
    """Inner product of T with the rank-one tensor of ``factors``.

    Equals sum over all indices of conj(T) * x1 * ... * xm.
    """
    vecs = _as_vectors(factors)
    _check_factor_dims(T, vecs)
    return _contract_all(np.conj(T.data), vecs)


def contract_excluding(T: ComplexTensor, factors, k: int) -> np.ndarray:
    """Vector over mode k: contract conj(T) against every factor but the k-th.

    ``k`` is a 1-based mode label; the k-th entry of ``factors`` is ignored
    and may be None.
    """
    if not 1 <= k <= T.order:
        raise ValueError(f"mode {k} out of range 1..{T.order}")
    vecs = _as_vectors(factors)
    _check_factor_dims(T, vecs, skip=k)
    return _contract_excluding(np.conj(T.data), vecs, k - 1)


def contract_excluding_conj(T: ComplexTensor, factors, k: int) -> np.ndarray:
    """Componentwise conjugate of :func:`contract_excluding`."""
    return np.conj(contract_excluding(T, factors, k))


def transpose_p(T: ComplexTensor, p) -> ComplexTensor:
    """Relabel modes by permutation p: output entry at p(j) is T at j.

    With p(j) = (j_{p1}, ..., j_{pm}), the output mode sizes are
    (n_{p1}, ..., n_{pm}).
    """
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    if len(p) != T.order:
        raise ValueError(f"permutation of length {len(p)} on order-{T.order} tensor")
    return ComplexTensor(np.transpose(T.data, axes=p.zero_based).copy())


def block(T: ComplexTensor, part: BlockPartition, i: Sequence[int]) -> ComplexTensor:
    """Extract the subtensor at 1-based block multi-index ``i``."""
    if part.order != T.order:
        raise ValueError("partition order does not match tensor order")
    if part.mode_sizes != T.dims:
        raise ValueError(
            f"partition sizes {part.mode_sizes} do not match dims {T.dims}"
        )
    i = tuple(int(x) for x in i)
    if len(i) != T.order:
        raise ValueError("block index has wrong length")
    slices = []
    for mode, bi in enumerate(i, start=1):
        count = part.block_counts[mode - 1]
        if not 1 <= bi <= count:
            raise ValueError(f"block index {bi} out of range 1..{count} in mode {mode}")
        off = part.offsets(mode)[bi - 1]
        slices.append(slice(off, off + part.lengths[mode - 1][bi - 1]))
    return ComplexTensor(T.data[tuple(slices)].copy())


def tensor_to_json(T: ComplexTensor) -> dict:
    """JSON-ready dict {dims, entries} with 1-based indices; zeros omitted."""
    entries = []
    for idx in np.argwhere(T.data != 0):
        val = T.data[tuple(idx)]
        entries.append(
            {
                "idx": [int(i) + 1 for i in idx],
                "re": float(val.real),
                "im": float(val.imag),
            }
        )
    return {"dims": [int(d) for d in T.dims], "entries": entries}


def tensor_from_json(obj: dict | str) -> ComplexTensor:
    """Inverse of :func:`tensor_to_json`; accepts a dict or a JSON string."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "dims" not in obj:
        raise ValueError("tensor JSON must be an object with a 'dims' field")
    entries = [
        (tuple(e["idx"]), complex(e.get("re", 0.0), e.get("im", 0.0)))
        for e in obj.get("entries", [])
    ]
    return from_sparse(obj["dims"], entries)
