"""Free abelian groups ℤⁿ / ℤ_ω, finitely generated subgroups and the group algebra.

Scalars are restricted to the rationals. Elements are sparse so that points of
ℤⁿ and of the weak direct product ℤ_ω share a single representation.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, reduce
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import hermite_columns, integer_rank
from .polyexpr import PolyExpr, Rational


@dataclass(frozen=True)
class GroupElement:
    """Finitely supported integer sequence; ``coords`` holds only nonzero entries."""

    coords: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        raw = self.coords.items() if isinstance(self.coords, Mapping) else self.coords
        merged: Dict[int, int] = {}
        for index, value in raw:
            if index < 0:
                raise ValueError(f"coordinate index must be nonnegative, got {index}")
            merged[int(index)] = merged.get(int(index), 0) + int(value)
        object.__setattr__(self, "coords", tuple(sorted((i, v) for i, v in merged.items() if v)))

    @classmethod
    def zero(cls) -> "GroupElement":
        return cls(())

    @classmethod
    def from_dense(cls, values: Sequence[int]) -> "GroupElement":
        return cls(tuple(enumerate(values)))

    @classmethod
    def unit(cls, index: int, value: int = 1) -> "GroupElement":
        return cls(((index, value),))

    def as_mapping(self) -> Mapping[int, int]:
        return MappingProxyType(dict(self.coords))

    def __getitem__(self, index: int) -> int:
        return dict(self.coords).get(index, 0)

    @property
    def is_zero(self) -> bool:
        return not self.coords

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.coords)

    @property
    def ambient_dim(self) -> int:
        return self.coords[-1][0] + 1 if self.coords else 0

    def dense(self, n: int) -> List[int]:
        if self.ambient_dim > n:
            raise ValueError(f"element {self.coords} does not fit in Z^{n}")
        values = [0] * n
        for index, value in self.coords:
            values[index] = value
        return values

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.coords + other.coords)

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple((i, -v) for i, v in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, factor: int) -> "GroupElement":
        return GroupElement(tuple((i, v * factor) for i, v in self.coords))

    __rmul__ = __mul__

    def sort_key(self) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
        return sum(abs(v) for _, v in self.coords), self.coords

    def to_dict(self) -> dict:
        return {str(i + 1): v for i, v in self.coords}


class Measure:
    """Finitely supported rational-valued function on the group (element of ℚG)."""

    __slots__ = ("_atoms",)

    def __init__(self, atoms: Optional[Mapping[GroupElement, Rational]] = None) -> None:
        clean: Dict[GroupElement, Fraction] = {}
        for point, coeff in (atoms or {}).items():
            value = clean.get(point, Fraction(0)) + Fraction(coeff)
            clean[point] = value
        self._atoms = {p: c for p, c in clean.items() if c}

    @classmethod
    def zero(cls) -> "Measure":
        return cls()

    @classmethod
    def delta(cls, point: GroupElement, coeff: Rational = 1) -> "Measure":
        return cls({point: coeff})

    @classmethod
    def identity(cls) -> "Measure":
        return cls.delta(GroupElement.zero())

    @property
    def atoms(self) -> Mapping[GroupElement, Fraction]:
        return MappingProxyType(self._atoms)

    @property
    def is_zero(self) -> bool:
        return not self._atoms

    def __add__(self, other: "Measure") -> "Measure":
        merged = dict(self._atoms)
        for point, coeff in other._atoms.items():
            merged[point] = merged.get(point, Fraction(0)) + coeff
        return Measure(merged)

    def __neg__(self) -> "Measure":
        return self.scale(-1)

    def __sub__(self, other: "Measure") -> "Measure":
        return self + (-other)

    def scale(self, factor: Rational) -> "Measure":
        return Measure({p: c * Fraction(factor) for p, c in self._atoms.items()})

    def __mul__(self, other: "Measure") -> "Measure":
        return convolve(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self._atoms == other._atoms

    def __hash__(self) -> int:
        return hash(frozenset(self._atoms.items()))

    def sorted_atoms(self) -> List[Tuple[GroupElement, Fraction]]:
        return sorted(self._atoms.items(), key=lambda item: item[0].sort_key())

    def to_dict(self) -> List[dict]:
        return [{"at": point.to_dict(), "coeff": str(coeff)} for point, coeff in self.sorted_atoms()]

    def __repr__(self) -> str:
        body = ", ".join(f"{dict(p.coords)}: {c}" for p, c in self.sorted_atoms())
        return f"Measure({{{body}}})"


def convolve(mu: Measure, nu: Measure) -> Measure:
    """``(mu * nu)(x) = sum_y mu(x - y) nu(y)``."""
    out: Dict[GroupElement, Fraction] = {}
    for a, ca in mu.atoms.items():
        for b, cb in nu.atoms.items():
            point = a + b
            out[point] = out.get(point, Fraction(0)) + ca * cb
    return Measure(out)


def difference_measure(y: GroupElement) -> Measure:
    """``Δ_y = δ_{-y} - δ_o``; the zero measure for ``y = o``."""
    if y.is_zero:
        return Measure.zero()
    return Measure({-y: 1, GroupElement.zero(): -1})


def iterated_difference(ys: Sequence[GroupElement]) -> Measure:
    """``Δ_{y1} * ... * Δ_{yk}``."""
    if not ys:
        raise ValueError("empty difference chain")
    return reduce(convolve, (difference_measure(y) for y in ys))


def translate_measure(shift: GroupElement) -> Measure:
    """``δ_{-s}``, whose action is ``f -> f(· + s)``."""
    return Measure.delta(-shift)


def apply_measure(mu: Measure, f: PolyExpr) -> PolyExpr:
    """``(mu * f)(x) = sum_y f(x - y) mu(y)``."""
    total = PolyExpr.zero()
    for point, coeff in mu.sorted_atoms():
        total = total + f.translate((-point).as_mapping()).scale(coeff)
    return total


# ----------------------------------------------------------------------
# Subgroups
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subgroup:
    """Subgroup of ℤⁿ generated by the columns of an integer matrix.

    Equality and hashing go through the column Hermite normal form, so two
    generating sets of the same lattice compare equal.
    """

    generators: Tuple[GroupElement, ...]
    ambient_dim: int

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if self.ambient_dim < 0:
            raise ValueError("ambient dimension must be nonnegative")
        for gen in gens:
            if gen.ambient_dim > self.ambient_dim:
                raise ValueError(f"generator {gen.coords} lies outside Z^{self.ambient_dim}")

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], ambient_dim: Optional[int] = None) -> "Subgroup":
        lengths = {len(c) for c in columns}
        if len(lengths) > 1:
            raise ValueError("generator columns must all have the same length")
        n = ambient_dim if ambient_dim is not None else (lengths.pop() if lengths else 0)
        return cls(tuple(GroupElement.from_dense(c) for c in columns), n)

    @classmethod
    def full(cls, n: int) -> "Subgroup":
        return cls(tuple(GroupElement.unit(i) for i in range(n)), n)

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int) -> "Subgroup":
        return cls(tuple(GroupElement.unit(i) for i in indices), n)

    @classmethod
    def trivial(cls, n: int) -> "Subgroup":
        return cls((), n)

    def matrix(self) -> List[List[int]]:
        """``ambient_dim x len(generators)`` matrix with the generators as columns."""
        dense = [g.dense(self.ambient_dim) for g in self.generators]
        return [[column[i] for column in dense] for i in range(self.ambient_dim)]

    @cached_property
    def rank(self) -> int:
        return integer_rank(self.matrix(), len(self.generators))

    @cached_property
    def hermite_basis(self) -> Tuple[GroupElement, ...]:
        columns = hermite_columns(self.matrix(), len(self.generators))
        return tuple(GroupElement.from_dense(c) for c in columns)

    @cached_property
    def basis(self) -> Tuple[GroupElement, ...]:
        """A ℤ-basis: the given generators when independent, else the Hermite basis."""
        nonzero = tuple(g for g in self.generators if not g.is_zero)
        if len(nonzero) == self.rank and len(nonzero) == len(self.generators):
            return nonzero
        return self.hermite_basis

    @cached_property
    def canonical_key(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Hermite basis in sparse form; independent of the ambient padding."""
        return tuple(g.coords for g in self.hermite_basis)

    def witness_key(self) -> Tuple[int, int, Tuple[Tuple[Tuple[int, int], ...], ...]]:
        """Order used to break ties between witnesses: size of entries, then entries."""
        basis = self.hermite_basis
        size = sum(abs(v) for g in basis for _, v in g.coords)
        return len(basis), size, self.canonical_key

    def padded(self, n: int) -> "Subgroup":
        if n < self.ambient_dim:
            raise ValueError(f"cannot shrink Z^{self.ambient_dim} to Z^{n}")
        return Subgroup(self.generators, n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.canonical_key == other.canonical_key

    def __hash__(self) -> int:
        return hash(self.canonical_key)

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "generators": [g.dense(self.ambient_dim) for g in self.generators],
            "hermite_basis": [g.dense(self.ambient_dim) for g in self.hermite_basis],
            "rank": self.rank,
        }


def subgroup_rank(subgroup: Subgroup) -> int:
    return subgroup.rank


def restrict(f: PolyExpr, subgroup: Subgroup) -> PolyExpr:
    """``q(t) = f(B t)`` for the basis matrix ``B`` of the subgroup (rank-many parameters)."""
    basis = subgroup.basis
    images: Dict[int, PolyExpr] = {}
    for index in f.variables:
        images[index] = PolyExpr.linear_form({j: g[index] for j, g in enumerate(basis) if g[index]})
    return f.substitute(images)


# ----------------------------------------------------------------------
# Group descriptors
# ----------------------------------------------------------------------

class GroupKind(str, Enum):
    """Supported ambient groups."""

    FREE = "Zn"
    OMEGA = "Zomega"


_FREE_PATTERN = re.compile(r"^\s*(?:Z|ℤ)\s*(?:\^\s*(\d+)|(\d+))?\s*$")
_OMEGA_PATTERN = re.compile(r"^\s*(?:Z|ℤ)\s*_?\s*(?:omega|ω|w)\s*$", re.IGNORECASE)
_DESCRIPTOR_SHAPE = re.compile(r"^\s*[A-Zℤℚℝℂ]\s*(?:[\^_]|\d*\s*$)")


@dataclass(frozen=True)
class GroupDescriptor:
    kind: GroupKind
    n: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "GroupDescriptor":
        if _OMEGA_PATTERN.match(text):
            return cls(GroupKind.OMEGA)
        match = _FREE_PATTERN.match(text)
        if match:
            exponent = match.group(1) or match.group(2)
            return cls(GroupKind.FREE, int(exponent) if exponent is not None else 1)
        raise ValueError(f"Unsupported group descriptor: {text!r} (expected Z^n or Z_omega)")

    @staticmethod
    def looks_like(text: str) -> bool:
        """Whether ``text`` has the shape of a group (``Q^2``, ``R``) rather than a function."""
        return bool(_DESCRIPTOR_SHAPE.match(text))

    def render(self) -> str:
        return "Z_omega" if self.kind is GroupKind.OMEGA else f"Z^{self.n}"


def hom_dimension(descriptor: Union[GroupDescriptor, str]) -> Union[int, float]:
    """``dim Hom(G, Q)``: n for ℤⁿ, ``math.inf`` for ℤ_ω."""
    if isinstance(descriptor, str):
        descriptor = GroupDescriptor.parse(descriptor)
    if descriptor.kind is GroupKind.OMEGA:
        return math.inf
    if descriptor.kind is GroupKind.FREE and descriptor.n is not None and descriptor.n >= 0:
        return descriptor.n
    raise ValueError(f"Unsupported group descriptor: {descriptor}")
