"""Exact constructions of commuting / noncommuting families with equal low-order data.

Each constructor returns a :class:`CounterexamplePair` whose two families
agree on every word of ``scenario`` although only the first one commutes.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .invariants import Scenario, scenario_w2, scenario_w2n, scenario_w3, scenario_wle3n
from .linalg import hermitian_eig
from .states import PAULI_X, PAULI_Z, StateFamily, new_density, pad_family

# qutrit bases: commuting (D1, D2) and noncommuting (A, B), HS-orthonormal
QUTRIT_D1 = np.diag([1.0, -1.0, 0.0]).astype(np.complex128) / math.sqrt(2)
QUTRIT_D2 = np.diag([1.0, 1.0, -2.0]).astype(np.complex128) / math.sqrt(6)
QUTRIT_A = QUTRIT_D1.copy()
QUTRIT_B = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=np.complex128) / math.sqrt(2)

# four-dimensional bases with equal quadratic and vanishing cubic trace tensors
D4_D1 = np.diag([1.0, -1.0, 0.0, 0.0]).astype(np.complex128) / math.sqrt(2)
D4_D2 = np.diag([0.0, 0.0, 1.0, -1.0]).astype(np.complex128) / math.sqrt(2)
D4_A = np.kron(PAULI_Z, np.eye(2)) / 2
D4_B = np.kron(PAULI_X, np.eye(2)) / 2

COLLINEAR_TOL = 1e-12


class FamilyKind(enum.Enum):
    QUTRIT_W2 = "QutritW2"
    D4_ORDER3 = "D4Order3"

    @property
    def dim(self) -> int:
        return 3 if self is FamilyKind.QUTRIT_W2 else 4

    @property
    def classical_basis(self) -> tuple[np.ndarray, np.ndarray]:
        return (QUTRIT_D1, QUTRIT_D2) if self is FamilyKind.QUTRIT_W2 else (D4_D1, D4_D2)

    @property
    def quantum_basis(self) -> tuple[np.ndarray, np.ndarray]:
        return (QUTRIT_A, QUTRIT_B) if self is FamilyKind.QUTRIT_W2 else (D4_A, D4_B)


class CollinearWarning(UserWarning):
    """All r-vectors lie on one line, so the "coherent" family commutes too."""


def default_r_vectors(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n == 2:
        return np.array([[1.0, 0.0], [0.0, 1.0]])
    k = np.arange(n)
    return np.column_stack([np.cos(2 * np.pi * k / n), np.sin(2 * np.pi * k / n)])


def is_collinear(r_vectors, tol: float = COLLINEAR_TOL) -> bool:
    r = np.asarray(r_vectors, dtype=np.float64)
    dets = np.outer(r[:, 0], r[:, 1]) - np.outer(r[:, 1], r[:, 0])
    return bool(np.all(np.abs(dets) < tol))


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of the many-state constructions: ``rho_k = I/d + eps (a_k X + b_k Y)``."""

    r_vectors: np.ndarray
    epsilon: float | None
    kind: FamilyKind

    def __post_init__(self):
        r = np.asarray(self.r_vectors, dtype=np.float64)
        if r.ndim != 2 or r.shape[1] != 2 or len(r) == 0:
            raise ValueError(f"r_vectors must be a nonempty list of 2-vectors, got shape {r.shape}")
        object.__setattr__(self, "r_vectors", r)
        object.__setattr__(self, "kind", FamilyKind(self.kind))

    def directions(self, basis) -> list[np.ndarray]:
        x, y = basis
        return [a * x + b * y for a, b in self.r_vectors]


def epsilon_max(spec: GeneratorSpec) -> float:
    """Largest safe ``eps``: 0.9 times the smallest ``1 / (d |lambda_min(X_k)|)``
    over both bases, so that every ``I/d + eps X_k`` stays positive."""
    d = spec.kind.dim
    bounds = []
    for basis in (spec.kind.classical_basis, spec.kind.quantum_basis):
        for x in spec.directions(basis):
            lmin = hermitian_eig(x).eigenvalues[0]
            if lmin < 0:
                bounds.append(1.0 / (d * abs(lmin)))
    if not bounds:
        raise ValueError("all r-vectors are zero")
    return 0.9 * min(bounds)


@dataclass(frozen=True)
class CounterexamplePair:
    name: str
    commuting: StateFamily
    coherent: StateFamily
    scenario: Scenario
    spec: GeneratorSpec | None = None

    @property
    def epsilon(self) -> float | None:
        return None if self.spec is None else self.spec.epsilon

    def padded(self, target_dim: int) -> "CounterexamplePair":
        return CounterexamplePair(
            self.name,
            pad_family(self.commuting, target_dim),
            pad_family(self.coherent, target_dim),
            self.scenario,
            self.spec,
        )


def prop_qutrit_w2() -> CounterexamplePair:
    """Qutrit pairs with equal purities and overlap, one commuting and one not."""
    rho0 = np.diag([0.5, 0.5, 0.0])
    sigma0 = np.diag([0.5, 0.0, 0.5])
    rho1 = np.diag([0.5, 0.5, 0.0])
    sigma1 = np.array([[0.25, 0, 0.25], [0, 0.25, 0], [0.25, 0, 0.5]])
    return CounterexamplePair(
        "prop-qutrit-w2",
        StateFamily([rho0, sigma0]),
        StateFamily([rho1, sigma1]),
        scenario_w2(),
    )


def prop_d4_w3() -> CounterexamplePair:
    """Four-dimensional pairs with identical order <= 3 data; ``(rho, sigma1)`` does not commute."""
    rho = np.diag([1.0, 1.0, 0.0, 0.0]) / 2
    sigma0 = np.diag([1.0, 0.0, 1.0, 0.0]) / 2
    e = np.eye(4)
    # |eta><eta| with eta = (e_i + e_j)/sqrt(2), kept exact as outer(e_i + e_j)/2
    eta1, eta2 = e[0] + e[2], e[1] + e[3]
    sigma1 = (np.outer(eta1, eta1) + np.outer(eta2, eta2)) / 4
    return CounterexamplePair(
        "prop-d4-w3",
        StateFamily([rho, sigma0]),
        StateFamily([rho, sigma1]),
        scenario_w3(),
    )


def _resolve_spec(kind: FamilyKind, n: int, r_vectors, epsilon) -> GeneratorSpec:
    r = default_r_vectors(n) if r_vectors is None else np.asarray(r_vectors, dtype=np.float64)
    if len(r) != n:
        raise ValueError(f"got {len(r)} r-vectors for n = {n}")
    if n < 2:
        raise ValueError(f"need n >= 2 states, got {n}")
    spec = GeneratorSpec(r, None, kind)
    emax = epsilon_max(spec)
    if epsilon is None:
        epsilon = emax / 2
    elif not 0 < epsilon <= emax:
        raise ValueError(f"epsilon must lie in (0, {emax:.6g}], got {epsilon!r}")
    if is_collinear(r):
        warnings.warn(
            "r-vectors are collinear; the second family will commute as well",
            CollinearWarning,
            stacklevel=3,
        )
    return GeneratorSpec(r, float(epsilon), kind)


def _families(spec: GeneratorSpec) -> tuple[StateFamily, StateFamily]:
    d = spec.kind.dim
    eps = spec.epsilon
    centre = np.eye(d) / d
    cl = StateFamily(new_density(centre + eps * x) for x in spec.directions(spec.kind.classical_basis))
    qu = StateFamily(new_density(centre + eps * x) for x in spec.directions(spec.kind.quantum_basis))
    return cl, qu


def appendix_qutrit_family(
    n: int = 2, r_vectors: Sequence | None = None, epsilon: float | None = None
) -> CounterexamplePair:
    """``n``-state qutrit families with equal pairwise overlaps (all of ``W2^(n)``)."""
    spec = _resolve_spec(FamilyKind.QUTRIT_W2, n, r_vectors, epsilon)
    cl, qu = _families(spec)
    return CounterexamplePair("appendix-qutrit", cl, qu, scenario_w2n(n), spec)


def appendix_d4_family(
    n: int = 2, r_vectors: Sequence | None = None, epsilon: float | None = None
) -> CounterexamplePair:
    """``n``-state four-dimensional families agreeing on every pairwise word of order <= 3."""
    spec = _resolve_spec(FamilyKind.D4_ORDER3, n, r_vectors, epsilon)
    cl, qu = _families(spec)
    return CounterexamplePair("appendix-d4", cl, qu, scenario_wle3n(n), spec)


GENERATORS = {
    "prop-qutrit-w2": prop_qutrit_w2,
    "prop-d4-w3": prop_d4_w3,
    "appendix-qutrit": appendix_qutrit_family,
    "appendix-d4": appendix_d4_family,
}
