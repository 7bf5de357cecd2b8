"""Finite monomial sums in z and zbar."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from types import MappingProxyType

import numpy as np
from numpy.typing import ArrayLike, NDArray

Term = tuple[int, int]


class MonomialSeries:
    """Sum of c_{a,b} z^a zbar^b with finitely many nonzero coefficients.

    Instances are immutable; zero coefficients are never stored, so the empty
    mapping is the zero function.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Term, complex] | None = None) -> None:
        cleaned: dict[Term, complex] = {}
        for (a, b), c in (coeffs or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"Exponents must be non-negative, got ({a}, {b})")
            value = complex(c)
            if value != 0:
                cleaned[(int(a), int(b))] = value
        self._coeffs = MappingProxyType(dict(sorted(cleaned.items())))

    @classmethod
    def monomial(cls, a: int, b: int = 0, c: complex = 1.0) -> MonomialSeries:
        return cls({(a, b): c})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int, complex]]) -> MonomialSeries:
        """Build a series from (a, b, c) triples, summing repeated exponents."""
        acc: dict[Term, complex] = {}
        for a, b, c in terms:
            acc[(a, b)] = acc.get((a, b), 0.0) + complex(c)
        return cls(acc)

    @property
    def coeffs(self) -> Mapping[Term, complex]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """max(a + b) over stored terms; -1 for the zero series."""
        return max((a + b for a, b in self._coeffs), default=-1)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def is_holomorphic(self) -> bool:
        return all(b == 0 for _, b in self._coeffs)

    def items(self) -> Iterator[tuple[Term, complex]]:
        return iter(self._coeffs.items())

    def to_holo(self) -> HoloSeries:
        """Restrict to a HoloSeries; fails if any zbar power is present."""
        if not self.is_holomorphic:
            raise ValueError("Series contains zbar powers and is not holomorphic")
        coeffs = np.zeros(self.degree + 1, dtype=complex)
        for (a, _), c in self._coeffs.items():
            coeffs[a] = c
        return HoloSeries(coeffs)

    def __add__(self, other: MonomialSeries) -> MonomialSeries:
        acc = dict(self._coeffs)
        for key, c in other.items():
            acc[key] = acc.get(key, 0.0) + c
        return MonomialSeries(acc)

    def __neg__(self) -> MonomialSeries:
        return MonomialSeries({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: MonomialSeries) -> MonomialSeries:
        return self + (-other)

    def __mul__(self, scalar: complex) -> MonomialSeries:
        return MonomialSeries({k: scalar * c for k, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HoloSeries):
            other = other.to_monomial()
        if not isinstance(other, MonomialSeries):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "MonomialSeries(0)"
        parts = [f"({c})*z^{a}*zbar^{b}" for (a, b), c in self._coeffs.items()]
        return f"MonomialSeries({' + '.join(parts)})"


class HoloSeries:
    """Holomorphic polynomial sum g_n z^n stored as a dense coefficient array."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: ArrayLike = ()) -> None:
        arr = np.array(coeffs, dtype=complex).ravel()
        nonzero = np.flatnonzero(arr)
        arr = arr[: nonzero[-1] + 1] if nonzero.size else arr[:0]
        arr.setflags(write=False)
        self._coeffs: NDArray[np.complex128] = arr

    @property
    def coeffs(self) -> NDArray[np.complex128]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self._coeffs) == 0

    def to_monomial(self) -> MonomialSeries:
        return MonomialSeries({(n, 0): c for n, c in enumerate(self._coeffs)})

    def __add__(self, other: HoloSeries) -> HoloSeries:
        size = max(len(self._coeffs), len(other._coeffs))
        out = np.zeros(size, dtype=complex)
        out[: len(self._coeffs)] += self._coeffs
        out[: len(other._coeffs)] += other._coeffs
        return HoloSeries(out)

    def __mul__(self, scalar: complex) -> HoloSeries:
        return HoloSeries(scalar * self._coeffs)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MonomialSeries):
            return self.to_monomial() == other
        if not isinstance(other, HoloSeries):
            return NotImplemented
        return bool(np.array_equal(self._coeffs, other._coeffs))

    def __hash__(self) -> int:
        return hash(self.to_monomial())

    def __repr__(self) -> str:
        return f"HoloSeries({self._coeffs.tolist()})"
