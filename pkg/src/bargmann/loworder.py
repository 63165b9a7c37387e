"""Second- and third-order decision procedures for two-state families.

For qubits the purities and overlap ``(x, y, z)`` decide commutativity
through the Cauchy-Schwarz inequality on Bloch vectors.  For qutrits the
order <= 3 data fix both spectra (the first three moments determine a 3x3
characteristic polynomial), and the mixed moments ``z, c, d`` must then be
reproduced by some pairing of the two spectra.
"""

from __future__ import annotations

import enum
import math
from dataclasses import astuple, dataclass
from itertools import permutations
from typing import NamedTuple

import numpy as np

from .invariants import InvariantTuple

TOL_RESIDUAL = 1e-8
TOL_RANGE = 1e-8
TOL_SPEC = 1e-7
TOL_MOMENT = 1e-8


class InvalidMoments(ValueError):
    """The moments do not come from a qutrit spectrum in [0, 1]."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


# -- qubits -------------------------------------------------------------------


class RegionClass(enum.Enum):
    OUTSIDE_B = "OutsideB"
    BOUNDARY_C = "BoundaryC"
    INTERIOR_I = "InteriorI"


@dataclass(frozen=True)
class QubitW2Tuple:
    x: float
    y: float
    z: float

    @classmethod
    def from_invariants(cls, t: InvariantTuple) -> "QubitW2Tuple":
        return cls(t.real("11"), t.real("22"), t.real("12"))


def qubit_w2_classify(t: QubitW2Tuple, tol: float = 1e-8) -> RegionClass:
    """Place ``(x, y, z)`` relative to the qubit attainable and commuting sets.

    With ``lhs = (2z-1)^2`` and ``rhs = (2x-1)(2y-1)``: outside when a purity
    leaves ``[1/2, 1]`` or ``lhs > rhs + tol``; boundary (commuting) when
    ``|lhs - rhs| <= tol``; interior (noncommuting) otherwise.
    """
    x, y, z = t.x, t.y, t.z
    lo, hi = 0.5 - tol, 1.0 + tol
    if not (lo <= x <= hi and lo <= y <= hi):
        return RegionClass.OUTSIDE_B
    lhs = (2 * z - 1) ** 2
    rhs = (2 * x - 1) * (2 * y - 1)
    if lhs > rhs + tol:
        return RegionClass.OUTSIDE_B
    if abs(lhs - rhs) <= tol:
        return RegionClass.BOUNDARY_C
    return RegionClass.INTERIOR_I


# -- qutrits ------------------------------------------------------------------


@dataclass(frozen=True)
class QutritW3Tuple:
    """``(Tr r^2, Tr s^2, Tr rs, Tr r^3, Tr s^3, Tr r^2 s, Tr r s^2)``."""

    x: float
    y: float
    z: float
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def from_invariants(cls, t: InvariantTuple) -> "QutritW3Tuple":
        return cls(*(t.real(w) for w in ("11", "22", "12", "111", "222", "112", "122")))

    def as_tuple(self) -> tuple[float, ...]:
        return astuple(self)


def _cubic_real_roots(e2: float, e3: float) -> np.ndarray:
    """Real roots of ``t^3 - t^2 + e2 t - e3``, forced real by clamping.

    Uses the trigonometric form of the depressed cubic.  Near a multiple root
    roundoff can push the discriminant slightly positive; clamping returns the
    nearest real configuration, and the caller checks the moment residual.
    """
    # t = s + 1/3 gives s^3 + p s + q = 0
    p = min(e2 - 1.0 / 3.0, 0.0)
    q = -2.0 / 27.0 + e2 / 3.0 - e3
    if p == 0.0:
        s = np.zeros(3)
    else:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = min(1.0, max(-1.0, 3.0 * q / (p * m)))
        theta = math.acos(arg) / 3.0
        s = m * np.cos(theta - 2.0 * math.pi * np.arange(3) / 3.0)
    return s + 1.0 / 3.0


def qutrit_eigs_from_moments(
    x: float, a: float, tol_residual: float = TOL_RESIDUAL, tol_range: float = TOL_RANGE
) -> np.ndarray:
    """Spectrum of a qutrit state from ``Tr rho^2 = x`` and ``Tr rho^3 = a``.

    The eigenvalues are the roots of ``t^3 - t^2 + (1-x)/2 t - (1-3x+2a)/6``,
    returned in descending order and clamped to ``[0, 1]`` when within
    ``tol_range`` of it.  Raises :class:`InvalidMoments` when no real spectrum
    reproduces ``(1, x, a)`` within ``tol_residual`` (complex roots), or when a
    root falls outside ``[0, 1]``.
    """
    e2 = (1.0 - x) / 2.0
    e3 = (1.0 - 3.0 * x + 2.0 * a) / 6.0
    roots = np.sort(_cubic_real_roots(e2, e3))[::-1]
    residual = max(
        abs(roots.sum() - 1.0), abs(np.sum(roots**2) - x), abs(np.sum(roots**3) - a)
    )
    if residual > tol_residual:
        raise InvalidMoments(
            f"no real spectrum reproduces the moments (residual {residual:.3e}); "
            "the characteristic cubic has complex roots",
            residual,
        )
    excess = max(0.0, -roots.min(), roots.max() - 1.0)
    if excess > tol_range:
        raise InvalidMoments(f"root outside [0, 1] by {excess:.3e}", excess)
    return np.clip(roots, 0.0, 1.0)


def _group_labels(vals: np.ndarray, tol: float) -> list[int]:
    """Label values so that neighbours (in sorted order) within ``tol`` share a label."""
    order = np.argsort(vals)
    labels = [0] * len(vals)
    g = 0
    for prev, cur in zip(order, order[1:]):
        if vals[cur] - vals[prev] > tol:
            g += 1
        labels[cur] = g
    return labels


def distinct_assignments(p: np.ndarray, q: np.ndarray, tol_spec: float = TOL_SPEC):
    """Permutations ``pi`` pairing ``p[i]`` with ``q[pi[i]]``, one per distinct
    matching of eigenvalue groups."""
    gp, gq = _group_labels(p, tol_spec), _group_labels(q, tol_spec)
    seen = set()
    for pi in permutations(range(len(q))):
        key = tuple(sorted((gp[i], gq[pi[i]]) for i in range(len(p))))
        if key not in seen:
            seen.add(key)
            yield pi


class QutritW3Result(NamedTuple):
    compatible: bool
    assignment: tuple[int, ...] | None
    rho_spectrum: np.ndarray
    sigma_spectrum: np.ndarray
    residual: float


def qutrit_w3_incoherent_compatible(
    t: QutritW3Tuple,
    tol: float = TOL_MOMENT,
    tol_spec: float = TOL_SPEC,
    tol_residual: float = TOL_RESIDUAL,
) -> QutritW3Result:
    """Test whether qutrit ``W3`` data admit a simultaneously diagonal realization.

    Both spectra are recovered from their moments, then every distinct
    pairing of the spectra (equal eigenvalues grouped within ``tol_spec``) is
    tried against the mixed moments ``z, c, d``.  The data are assumed to come
    from some qutrit pair; that is not checked.

    ``residual`` is the smallest worst-moment mismatch over all pairings.
    """
    p = qutrit_eigs_from_moments(t.x, t.a, tol_residual)
    q = qutrit_eigs_from_moments(t.y, t.b, tol_residual)
    best = math.inf
    for pi in distinct_assignments(p, q, tol_spec):
        qp = q[list(pi)]
        err = max(
            abs(t.z - np.dot(p, qp)),
            abs(t.c - np.dot(p**2, qp)),
            abs(t.d - np.dot(p, qp**2)),
        )
        if err <= tol:
            return QutritW3Result(True, pi, p, q, err)
        best = min(best, err)
    return QutritW3Result(False, None, p, q, best)


def diagonal_realization(res: QutritW3Result) -> tuple[np.ndarray, np.ndarray]:
    """The commuting diagonal pair witnessing a compatible result."""
    if not res.compatible:
        raise ValueError("no witnessing assignment")
    return np.diag(res.rho_spectrum), np.diag(res.sigma_spectrum[list(res.assignment)])
