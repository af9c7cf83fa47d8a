"""Symmetric embedding of a non-symmetric tensor and eigenpair conversion.

An order-m tensor A with mode sizes (n1, ..., nm) embeds into a symmetric
cubical tensor S of size n = n1 + ... + nm per mode: partition each mode of S
into m blocks with lengths (n1, ..., nm); the block at multi-index i equals
the i-transposition of A when i is a permutation of 1..m and is zero
otherwise. Eigenpairs of S with a single symmetric eigenvector convert back
to eigenpairs of A with one vector per mode.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .tensor import (
    BlockPartition,
    ComplexTensor,
    RankOneFactors,
    tensor_from_json,
    tensor_to_json,
)

__all__ = [
    "EmbeddedTensor",
    "LiftedEigenpair",
    "sym_embed",
    "is_symmetric",
    "lift_eigenpair",
    "shift_to_embedded",
    "embedded_to_json",
    "embedded_from_json",
]


@dataclass(frozen=True)
class EmbeddedTensor:
    """The symmetric embedding of a source tensor, with its block partition."""

    tensor: ComplexTensor
    partition: BlockPartition
    source_dims: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.tensor.dims[0]


@dataclass(frozen=True)
class LiftedEigenpair:
    """Eigenvalue and per-mode unit factors recovered from an embedded pair.

    ``block_norms`` are the norms of the eigenvector blocks before
    rescaling; for a true embedded eigenpair they all equal 1/sqrt(m).
    """

    eigenvalue: float
    factors: RankOneFactors
    block_norms: tuple[float, ...]


def sym_embed(A: ComplexTensor) -> EmbeddedTensor:
    """Construct the symmetric embedding of ``A``.

    The result is cubical with side n = sum of A's mode sizes. Blocks
    indexed by permutations of 1..m (enumerated in lexicographic order)
    hold the corresponding transpositions of A; all other blocks are zero.
    """
    if A.order < 2:
        raise ValueError("symmetric embedding needs an order >= 2 tensor")
    dims = A.dims
    m = A.order
    n = sum(dims)
    offsets = np.concatenate(([0], np.cumsum(dims)))
    data = np.zeros((n,) * m, dtype=np.complex128)
    for perm in itertools.permutations(range(m)):
        slices = tuple(slice(offsets[q], offsets[q] + dims[q]) for q in perm)
        data[slices] = np.transpose(A.data, axes=perm)
    return EmbeddedTensor(
        tensor=ComplexTensor(data),
        partition=BlockPartition.uniform(dims, m),
        source_dims=dims,
    )


def is_symmetric(S: ComplexTensor, tol: float = 1e-12) -> bool:
    """True when S is invariant under every mode permutation within ``tol``.

    Checks the adjacent-swap generators, which suffices since they generate
    the full permutation group. The deviation is the entrywise max modulus.
    """
    m = S.order
    if len(set(S.dims)) > 1:
        raise ValueError(f"symmetry is only defined for cubical tensors, got {S.dims}")
    if m == 1:
        return True
    for k in range(m - 1):
        axes = list(range(m))
        axes[k], axes[k + 1] = axes[k + 1], axes[k]
        if np.max(np.abs(S.data - np.transpose(S.data, axes))) > tol:
            return False
    return True


def lift_eigenpair(
    lambda_s: float,
    x: np.ndarray,
    source_dims: Sequence[int],
    block_norm_tol: float = 1e-6,
    check_block_norms: bool = True,
) -> LiftedEigenpair:
    """Convert an embedded eigenpair (lambda_s, x) back to the source tensor.

    Splits x into per-mode blocks, checks every block norm is 1/sqrt(m)
    within ``block_norm_tol`` (a failed check signals x is not an embedded
    eigenvector), and returns eigenvalue (sqrt(m))^m / m! * lambda_s with
    unit factors sqrt(m) * block. ``lambda_s`` must be nonzero: the
    correspondence is undefined at a zero eigenvalue.
    """
    if lambda_s == 0:
        raise ValueError("cannot lift an eigenpair with zero eigenvalue")
    dims = tuple(int(d) for d in source_dims)
    m = len(dims)
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.shape[0] != sum(dims):
        raise ValueError(f"vector length {x.shape[0]} != sum of dims {sum(dims)}")
    offsets = np.concatenate(([0], np.cumsum(dims)))
    blocks = [x[offsets[i] : offsets[i + 1]] for i in range(m)]
    block_norms = tuple(float(np.linalg.norm(b)) for b in blocks)
    target = 1.0 / math.sqrt(m)
    if check_block_norms:
        worst = max(abs(bn - target) for bn in block_norms)
        if worst > block_norm_tol:
            raise ValueError(
                f"block norms {block_norms} deviate from 1/sqrt({m})={target:.6f} "
                f"by {worst:.3e} (tol {block_norm_tol:.1e}); "
                "input is not an embedded eigenvector"
            )
    lambda_a = math.sqrt(m) ** m / math.factorial(m) * float(lambda_s)
    factors = RankOneFactors.per_vector(blocks)
    return LiftedEigenpair(lambda_a, factors, block_norms)


def shift_to_embedded(alpha_a: float, m: int) -> float:
    """Shift for the embedded iteration matching a source-side shift:
    alpha_s = m! (m-1)! alpha_a."""
    if alpha_a <= 0:
        raise ValueError(f"shift must be positive, got {alpha_a}")
    if m < 1:
        raise ValueError("order must be >= 1")
    return float(math.factorial(m) * math.factorial(m - 1) * alpha_a)


def embedded_to_json(emb: EmbeddedTensor) -> dict:
    obj = tensor_to_json(emb.tensor)
    obj["source_dims"] = [int(d) for d in emb.source_dims]
    return obj


def embedded_from_json(obj: dict | str) -> EmbeddedTensor:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if "source_dims" not in obj:
        raise ValueError("embedded tensor JSON requires a 'source_dims' field")
    source_dims = tuple(int(d) for d in obj["source_dims"])
    tensor = tensor_from_json({k: v for k, v in obj.items() if k != "source_dims"})
    m = tensor.order
    return EmbeddedTensor(
        tensor=tensor,
        partition=BlockPartition.uniform(source_dims, m),
        source_dims=source_dims,
    )
