"""Words, cyclic canonical forms, Bargmann scenarios and their value maps.

A word ``i1 i2 ... im`` over 1-based state labels stands for the invariant
``Tr(rho_i1 rho_i2 ... rho_im)``.  Rotating a word leaves the invariant
unchanged, so every word is stored by its least lexicographic rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .states import StateFamily

#: Imaginary parts below this are treated as roundoff by :meth:`InvariantTuple.real`.
IMAG_TOL = 1e-10


class WordError(ValueError):
    """Malformed word, or a label that the family does not have."""


class Word(tuple):
    """A nonempty sequence of 1-based state labels."""

    def __new__(cls, labels: Iterable[int] | str):
        if isinstance(labels, str):
            return cls.parse(labels)
        labels = tuple(labels)
        if not labels:
            raise WordError("a word needs at least one label")
        for x in labels:
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or x < 1:
                raise WordError(f"word labels must be integers >= 1, got {x!r}")
        return super().__new__(cls, (int(x) for x in labels))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Read ``"1,2,1,2"`` or the compact digit form ``"1212"``."""
        text = text.strip()
        try:
            if "," in text:
                return cls([int(t) for t in text.split(",")])
            if text.isdigit():
                return cls([int(ch) for ch in text])
        except ValueError:
            pass
        raise WordError(f"cannot parse word {text!r}")

    def __str__(self) -> str:
        if max(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def rotate(self, k: int) -> "Word":
        k %= len(self)
        return Word(self[k:] + self[:k])

    def reversed(self) -> "Word":
        return Word(self[::-1])


def as_word(w) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return Word.parse(w)
    return Word(w)


def canonical(w) -> Word:
    """Least lexicographic rotation of ``w``."""
    w = as_word(w)
    return min(w.rotate(k) for k in range(len(w)))


def _check_labels(w: Word, n: int) -> None:
    if max(w) > n:
        raise WordError(f"word {w} uses label {max(w)} but the family has {n} states")


def _word_trace(w: Word, mats: list, dtype=np.complex128):
    prod = mats[w[0] - 1].astype(dtype)
    for i in w[1:]:
        prod = prod @ mats[i - 1].astype(dtype)
    return np.trace(prod)


def delta(w, fam: StateFamily) -> complex:
    """The Bargmann invariant of ``w``, multiplied left to right in canonical order."""
    w = canonical(w)
    _check_labels(w, len(fam))
    return complex(_word_trace(w, fam.matrices()))


def delta_extended(w, fam: StateFamily) -> np.clongdouble:
    """Like :func:`delta` but accumulated in ``numpy.clongdouble``."""
    w = canonical(w)
    _check_labels(w, len(fam))
    return _word_trace(w, fam.matrices(), np.clongdouble)


@dataclass(frozen=True)
class Scenario:
    """A finite ordered set of words, deduplicated up to rotation."""

    words: tuple[Word, ...]

    def __init__(self, words: Iterable):
        seen: dict[Word, None] = {}
        for w in words:
            seen.setdefault(canonical(w), None)
        if not seen:
            raise ValueError("a scenario needs at least one word")
        object.__setattr__(self, "words", tuple(seen))

    @property
    def n_min(self) -> int:
        """Smallest family size the scenario can be evaluated on."""
        return max(max(w) for w in self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return canonical(w) in self.words

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.words)) + "}"


@dataclass(frozen=True)
class InvariantTuple(Mapping):
    """Evaluated scenario data keyed by canonical word."""

    data: dict

    def __getitem__(self, w) -> complex:
        return self.data[canonical(w)]

    def __iter__(self):
        return iter(self.data)

    def __len__(self) -> int:
        return len(self.data)

    def real(self, w) -> float:
        z = self[w]
        if abs(z.imag) > IMAG_TOL:
            raise ValueError(f"invariant {canonical(w)} has imaginary part {z.imag:.3e}")
        return z.real

    def as_array(self) -> np.ndarray:
        """Real parts in scenario order (imaginary parts checked)."""
        return np.array([self.real(w) for w in self.data])


def evaluate(sc: Scenario, fam: StateFamily) -> InvariantTuple:
    for w in sc:
        _check_labels(w, len(fam))
    return InvariantTuple({w: delta(w, fam) for w in sc})


# -- the scenarios used in the hierarchy --------------------------------------


def _need_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"n-state scenarios need n >= 2, got {n}")


def scenario_w2() -> Scenario:
    return Scenario(["11", "22", "12"])


def scenario_w3() -> Scenario:
    return Scenario(["11", "22", "12", "111", "222", "112", "122"])


def scenario_w4() -> Scenario:
    return Scenario(["1122", "1212"])


def scenario_w2n(n: int) -> Scenario:
    """All pairwise overlaps ``ij`` with ``i <= j``."""
    _need_n(n)
    return Scenario((i, j) for i in range(1, n + 1) for j in range(i, n + 1))


def scenario_wle3n(n: int) -> Scenario:
    """Union over pairs ``i < j`` of the order <= 3 words ``ii, jj, ij, iii, jjj, iij, ijj``."""
    _need_n(n)
    words = []
    for i, j in combinations(range(1, n + 1), 2):
        words += [(i, i), (j, j), (i, j), (i, i, i), (j, j, j), (i, i, j), (i, j, j)]
    return Scenario(words)


def scenario_w4n(n: int) -> Scenario:
    """The pairwise fourth-order words ``iijj`` and ``ijij`` for ``i < j``."""
    _need_n(n)
    words = []
    for i, j in combinations(range(1, n + 1), 2):
        words += [(i, i, j, j), (i, j, i, j)]
    return Scenario(words)


SCENARIOS = {
    "w2": lambda n: scenario_w2(),
    "w3": lambda n: scenario_w3(),
    "w4": lambda n: scenario_w4(),
    "w2n": scenario_w2n,
    "wle3n": scenario_wle3n,
    "w4n": scenario_w4n,
}
