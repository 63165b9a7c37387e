"""Density matrices, state families and the transformations used on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
import numpy.typing as npt

from .linalg import (
    HERM_RTOL,
    ComplexMatrix,
    NotHermitianError,
    as_matrix,
    hermitian_eig,
    hermitize,
    hermiticity_residual,
)

PSD_TOL = 1e-10
TRACE_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


class InvalidStateError(ValueError):
    """Base class for density-matrix validation failures.

    ``invariant`` names the violated condition and ``residual`` is the
    measured amount by which it fails.
    """

    invariant = "state"

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class NotHermitian(InvalidStateError):
    invariant = "hermitian"


class NotPSD(InvalidStateError):
    invariant = "positive-semidefinite"


class TraceNotOne(InvalidStateError):
    invariant = "unit-trace"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated quantum state; use :func:`new_density` to construct."""

    mat: ComplexMatrix

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def new_density(m, tol: float = PSD_TOL) -> DensityMatrix:
    """Validate ``m`` as a density matrix.

    Raises :class:`NotHermitian`, :class:`NotPSD` or :class:`TraceNotOne`.
    The stored matrix is the Hermitian part of ``m`` and is read-only.
    """
    m = as_matrix(m)
    try:
        h = hermitize(m, HERM_RTOL)
    except NotHermitianError as exc:
        raise NotHermitian(str(exc), hermiticity_residual(m)) from None
    tr = float(np.trace(h).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr!r}, expected 1 (|Tr - 1| = {abs(tr - 1):.3e})", abs(tr - 1))
    lmin = float(hermitian_eig(h).eigenvalues[0])
    if lmin < -tol:
        raise NotPSD(f"minimum eigenvalue {lmin:.3e} is below -{tol:g}", -lmin)
    h.setflags(write=False)
    return DensityMatrix(h)


@dataclass(frozen=True)
class StateFamily(Sequence[DensityMatrix]):
    """An ordered family of density matrices of one common dimension."""

    states: tuple[DensityMatrix, ...]

    def __init__(self, states: Iterable):
        states = tuple(s if isinstance(s, DensityMatrix) else new_density(s) for s in states)
        if not states:
            raise ValueError("a state family needs at least one state")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise ValueError(f"states have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def __len__(self) -> int:
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def __iter__(self) -> Iterator[DensityMatrix]:
        return iter(self.states)

    def matrices(self) -> list[ComplexMatrix]:
        return [s.mat for s in self.states]


# -- Bloch form ---------------------------------------------------------------


def bloch_vector(r) -> npt.NDArray[np.float64]:
    """Validate a real 3-vector of length at most one."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (3,):
        raise ValueError(f"Bloch vector must have shape (3,), got {r.shape}")
    if np.linalg.norm(r) > 1 + 1e-12:
        raise ValueError(f"|r| = {np.linalg.norm(r)!r} exceeds 1")
    return r


def from_bloch(r) -> DensityMatrix:
    r = bloch_vector(r)
    m = np.eye(2, dtype=np.complex128) + sum(ri * p for ri, p in zip(r, PAULIS))
    return new_density(m / 2)


def to_bloch(rho: DensityMatrix) -> npt.NDArray[np.float64]:
    if rho.dim != 2:
        raise ValueError(f"Bloch form needs a qubit state, got dim {rho.dim}")
    return np.array([np.trace(rho.mat @ p).real for p in PAULIS])


# -- transformations ----------------------------------------------------------


def depolarize(rho: DensityMatrix, p: float) -> DensityMatrix:
    """Mix ``rho`` with the maximally mixed state: ``(1-p) rho + p I/d``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing weight must lie in [0, 1], got {p!r}")
    d = rho.dim
    return new_density((1 - p) * rho.mat + p * np.eye(d) / d)


def pad_embed(rho: DensityMatrix, target_dim: int) -> DensityMatrix:
    """Direct sum of ``rho`` with a zero block, giving a ``target_dim`` state."""
    if target_dim < rho.dim:
        raise ValueError(f"cannot pad dim {rho.dim} down to {target_dim}")
    m = np.zeros((target_dim, target_dim), dtype=np.complex128)
    m[: rho.dim, : rho.dim] = rho.mat
    return new_density(m)


def pad_family(fam: StateFamily, target_dim: int) -> StateFamily:
    return StateFamily(pad_embed(s, target_dim) for s in fam)


# -- random sampling ----------------------------------------------------------


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _ginibre(d: int, rng: np.random.Generator) -> ComplexMatrix:
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_density(dim: int, seed=None) -> DensityMatrix:
    """Sample from the Hilbert-Schmidt measure as ``G G^dagger / Tr(G G^dagger)``.

    ``seed`` is anything accepted by :func:`numpy.random.default_rng`, including
    a ``Generator`` which is then advanced in place.
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    g = _ginibre(dim, _rng(seed))
    w = g @ g.conj().T
    return new_density(w / np.trace(w).real)


def random_unitary(dim: int, seed=None) -> ComplexMatrix:
    """Haar-random unitary from the phase-corrected QR of a Ginibre matrix."""
    q, r = np.linalg.qr(_ginibre(dim, _rng(seed)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_commuting_family(dim: int, n: int, seed=None) -> StateFamily:
    """``n`` random spectra conjugated by one shared Haar unitary."""
    if dim < 1 or n < 1:
        raise ValueError(f"need dim, n >= 1, got dim={dim}, n={n}")
    rng = _rng(seed)
    u = random_unitary(dim, rng)
    spectra = rng.dirichlet(np.ones(dim), size=n)
    return StateFamily(new_density((u * p) @ u.conj().T) for p in spectra)


def random_family(dim: int, n: int, seed=None) -> StateFamily:
    rng = _rng(seed)
    return StateFamily(random_density(dim, rng) for _ in range(n))


# -- JSON format --------------------------------------------------------------


class FamilyFormatError(ValueError):
    """The JSON document does not follow the family schema."""


def family_to_dict(fam: StateFamily) -> dict:
    return {
        "dimension": fam.dim,
        "states": [
            {"matrix": [[[float(z.real), float(z.imag)] for z in row] for row in s.mat]}
            for s in fam
        ],
    }


def _parse_matrix(raw, d: int, k: int) -> ComplexMatrix:
    try:
        arr = np.array(raw, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise FamilyFormatError(f"state {k}: matrix is not numeric: {exc}") from None
    if arr.shape != (d, d, 2):
        raise FamilyFormatError(
            f"state {k}: expected {d}x{d} entries of [re, im] pairs, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise FamilyFormatError(f"state {k}: non-finite entry")
    return arr[..., 0] + 1j * arr[..., 1]


def family_from_dict(doc) -> StateFamily:
    """Parse and validate a family document.

    Schema problems raise :class:`FamilyFormatError`; well-formed matrices
    that are not states raise :class:`InvalidStateError`.
    """
    if not isinstance(doc, dict) or "dimension" not in doc or "states" not in doc:
        raise FamilyFormatError('expected an object with "dimension" and "states"')
    d = doc["dimension"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FamilyFormatError(f"dimension must be a positive integer, got {d!r}")
    states = doc["states"]
    if not isinstance(states, list) or not states:
        raise FamilyFormatError('"states" must be a nonempty list')
    mats = []
    for k, entry in enumerate(states, start=1):
        if not isinstance(entry, dict) or "matrix" not in entry:
            raise FamilyFormatError(f'state {k}: expected an object with a "matrix" key')
        mats.append(_parse_matrix(entry["matrix"], d, k))
    out = []
    for k, m in enumerate(mats, start=1):
        try:
            out.append(new_density(m))
        except InvalidStateError as exc:
            exc.args = (f"state {k}: {exc.args[0]}",)
            raise
    return StateFamily(out)


def save_family(fam: StateFamily, path) -> None:
    Path(path).write_text(json.dumps(family_to_dict(fam), indent=1) + "\n")


def load_family(path) -> StateFamily:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"invalid JSON: {exc}") from None
    return family_from_dict(doc)
