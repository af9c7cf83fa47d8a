"""Fixture catalog: deterministic builder functions for the benchmark states
and tensors, plus seeded random instances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .entanglement import PureState
from .tensor import ComplexTensor, from_sparse

__all__ = [
    "CatalogEntry",
    "CATALOG",
    "ids",
    "get",
    "build",
    "example_4_1",
    "example_4_2",
    "example_4_3",
    "example_4_6",
    "example_4_7",
    "trig_tensor",
    "trig_prenormalization",
    "random_state",
]


def example_4_1() -> PureState:
    """Three-qubit state with amplitudes sqrt(1/3) at |001> and sqrt(2/3) at |100>."""
    tensor = from_sparse(
        (2, 2, 2),
        {(1, 1, 2): math.sqrt(1 / 3), (2, 1, 1): math.sqrt(2 / 3)},
    )
    return PureState(tensor, label="example_4_1")


def example_4_2() -> PureState:
    """2x3x3 state with six equal amplitudes sqrt(1/6)."""
    value = math.sqrt(1 / 6)
    entries = {
        (1, 1, 1): value,
        (2, 1, 2): value,
        (1, 2, 3): value,
        (2, 2, 1): value,
        (1, 3, 2): value,
        (2, 3, 3): value,
    }
    return PureState(from_sparse((2, 3, 3), entries), label="example_4_2")


def example_4_3() -> PureState:
    """Five-qubit absolutely maximally entangled state; eight amplitudes
    of modulus 1/(2 sqrt 2) with two negative signs."""
    c = 1 / (2 * math.sqrt(2))
    plus = ["11111", "11122", "12211", "22121", "22112", "21221"]
    minus = ["12222", "21212"]
    entries = {tuple(int(ch) for ch in s): c for s in plus}
    entries.update({tuple(int(ch) for ch in s): -c for s in minus})
    return PureState(from_sparse((2,) * 5, entries), label="example_4_3")


_EX46_KETS = [
    "000000", "001121", "010220", "012011", "021210", "022101",
    "111110", "112201", "121000", "120121", "102020", "100211",
    "222220", "220011", "202110", "201201", "210100", "211021",
]


def example_4_6() -> PureState:
    """3x3x3x3x3x2 state with eighteen equal amplitudes 1/(3 sqrt 2)."""
    c = 1 / (3 * math.sqrt(2))
    entries = {tuple(int(ch) + 1 for ch in ket): c for ket in _EX46_KETS}
    return PureState(from_sparse((3, 3, 3, 3, 3, 2), entries), label="example_4_6")


def example_4_7() -> ComplexTensor:
    """10x8x5x7 tensor with four mutually orthogonal rank-one terms."""
    return from_sparse(
        (10, 8, 5, 7),
        {
            (8, 7, 2, 6): math.sqrt(1 / 6),
            (9, 5, 4, 3): math.sqrt(1 / 3),
            (1, 2, 2, 1): 1j * math.sqrt(1 / 6),
            (3, 8, 1, 2): -math.sqrt(1 / 3),
        },
    )


def _trig_raw(n: int) -> np.ndarray:
    # 1-based indices inside the trig arguments
    i1, i2, i3 = np.ogrid[1 : n + 1, 1 : n + 1, 1 : n + 1]
    return (np.cos(i1 - i2 + i3) + 1j * np.sin(i1 + i2 - i3)) / n**1.5


def trig_tensor(n: int) -> PureState:
    """n x n x n state with entries (cos(i1-i2+i3) + i sin(i1+i2-i3)) / sqrt(n^3).

    The raw scaling is already exactly unit norm (the squared-cosine and
    squared-sine cross terms cancel); the final rescaling only absorbs
    floating-point rounding.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    raw = _trig_raw(n)
    data = raw / np.linalg.norm(raw.ravel())
    return PureState(ComplexTensor(data), label=f"trig_{n}")


def trig_prenormalization(n: int) -> float:
    """Norm of the raw trig tensor before the rescaling (equals 1 up to
    floating-point rounding)."""
    return float(np.linalg.norm(_trig_raw(n).ravel()))


def random_state(dims: Sequence[int], seed: int) -> PureState:
    """Unit-norm state with seeded complex standard-normal entries.

    Real parts are drawn first, then imaginary parts, from
    ``default_rng(SeedSequence(seed))``; identical seeds give identical
    states.
    """
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("dims must be nonempty")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    data = rng.standard_normal(dims) + 1j * rng.standard_normal(dims)
    data /= np.linalg.norm(data.ravel())
    return PureState(ComplexTensor(data), label=f"random{dims}#{seed}")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dims: tuple[int, ...]
    builder: Callable[[], PureState | ComplexTensor]
    kind: str  # "state" | "tensor"
    expected_lambda: float | None = None
    expected_gme: float | None = None
    description: str = ""


CATALOG: dict[str, CatalogEntry] = {
    entry.id: entry
    for entry in [
        CatalogEntry(
            "example_4_1", (2, 2, 2), example_4_1, "state",
            expected_lambda=0.8165, expected_gme=0.6058,
            description="three-qubit state, two amplitudes",
        ),
        CatalogEntry(
            "example_4_2", (2, 3, 3), example_4_2, "state",
            expected_lambda=0.5774, expected_gme=0.9194,
            description="2x3x3 state, six equal amplitudes",
        ),
        CatalogEntry(
            "example_4_3", (2, 2, 2, 2, 2), example_4_3, "state",
            expected_lambda=0.3626, expected_gme=1.1291,
            description="five-qubit AME state",
        ),
        CatalogEntry(
            "example_4_6", (3, 3, 3, 3, 3, 2), example_4_6, "state",
            expected_gme=1.2364,
            description="order-6 state, eighteen equal amplitudes",
        ),
        CatalogEntry(
            "example_4_7", (10, 8, 5, 7), example_4_7, "tensor",
            expected_lambda=0.5774,
            description="four orthogonal rank-one terms",
        ),
        CatalogEntry(
            "trig_2", (2, 2, 2), lambda: trig_tensor(2), "state",
            expected_lambda=0.8895, expected_gme=0.4701,
            description="trigonometric family, n=2",
        ),
        CatalogEntry(
            "trig_5", (5, 5, 5), lambda: trig_tensor(5), "state",
            expected_lambda=0.7815, expected_gme=0.6611,
            description="trigonometric family, n=5",
        ),
        CatalogEntry(
            "trig_10", (10, 10, 10), lambda: trig_tensor(10), "state",
            expected_lambda=0.7072, expected_gme=0.7652,
            description="trigonometric family, n=10",
        ),
        CatalogEntry(
            "trig_15", (15, 15, 15), lambda: trig_tensor(15), "state",
            expected_lambda=0.7243, expected_gme=0.7425,
            description="trigonometric family, n=15 (slow)",
        ),
        CatalogEntry(
            "trig_20", (20, 20, 20), lambda: trig_tensor(20), "state",
            expected_lambda=0.7175, expected_gme=0.7516,
            description="trigonometric family, n=20 (slow)",
        ),
    ]
}


def ids() -> list[str]:
    return list(CATALOG)


def get(catalog_id: str) -> CatalogEntry:
    try:
        return CATALOG[catalog_id]
    except KeyError:
        raise KeyError(
            f"unknown catalog id {catalog_id!r}; valid ids: {', '.join(CATALOG)}"
        ) from None


def build(catalog_id: str) -> PureState | ComplexTensor:
    return get(catalog_id).builder()
