"""Sparse multivariate polynomials with exact rational coefficients.

Variables are addressed by 0-based coordinate index; naming (``x1``, ``y2_1``,
...) is a rendering concern only. A monomial is a tuple of ``(index, exponent)``
pairs sorted by index with positive exponents, so the constant monomial is ``()``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Protocol, Tuple, Union

Monomial = Tuple[Tuple[int, int], ...]
Rational = Union[int, Fraction]

ONE: Monomial = ()


class SupportsCoords(Protocol):
    """Anything exposing sparse integer coordinates (e.g. a GroupElement)."""

    def as_mapping(self) -> Mapping[int, int]:
        ...


def make_monomial(exponents: Union[Mapping[int, int], Iterable[Tuple[int, int]]]) -> Monomial:
    """Canonical monomial from an index -> exponent mapping (zeros dropped)."""
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    merged: Dict[int, int] = {}
    for index, exp in items:
        if exp < 0:
            raise ValueError(f"negative exponent {exp} for variable {index}")
        merged[index] = merged.get(index, 0) + exp
    return tuple(sorted((i, e) for i, e in merged.items() if e))


def monomial_degree(mono: Monomial) -> int:
    return sum(exp for _, exp in mono)


def grlex_key(mono: Monomial) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Ascending graded-lex key: lower degree first, then x1 > x2 > ... within a degree."""
    return monomial_degree(mono), tuple((index, -exp) for index, exp in mono)


def _render_key(mono: Monomial) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    return -monomial_degree(mono), tuple((index, -exp) for index, exp in mono)


def multiply_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for index, exp in b:
        merged[index] = merged.get(index, 0) + exp
    return tuple(sorted(merged.items()))


def divisors(mono: Monomial) -> List[Monomial]:
    """All monomials dividing ``mono`` (including ``()`` and ``mono`` itself)."""
    ranges = [range(exp + 1) for _, exp in mono]
    indices = [index for index, _ in mono]
    return [
        tuple((i, e) for i, e in zip(indices, exps) if e)
        for exps in product(*ranges)
    ]


def monomial_factorial(mono: Monomial) -> int:
    result = 1
    for _, exp in mono:
        result *= factorial(exp)
    return result


def default_namer(index: int) -> str:
    return f"x{index + 1}"


class PolyExpr:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Rational]] = None) -> None:
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            value = Fraction(coeff)
            if value:
                clean[mono] = value
        self._terms = clean
        self._hash: Optional[int] = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Fraction]) -> "PolyExpr":
        poly = cls.__new__(cls)
        poly._terms = {m: c for m, c in terms.items() if c}
        poly._hash = None
        return poly

    @classmethod
    def zero(cls) -> "PolyExpr":
        return cls._wrap({})

    @classmethod
    def constant(cls, value: Rational) -> "PolyExpr":
        return cls._wrap({ONE: Fraction(value)})

    @classmethod
    def variable(cls, index: int, coeff: Rational = 1) -> "PolyExpr":
        if index < 0:
            raise ValueError(f"variable index must be nonnegative, got {index}")
        return cls._wrap({((index, 1),): Fraction(coeff)})

    @classmethod
    def monomial(cls, exponents: Mapping[int, int], coeff: Rational = 1) -> "PolyExpr":
        return cls._wrap({make_monomial(exponents): Fraction(coeff)})

    @classmethod
    def linear_form(cls, coefficients: Mapping[int, Rational]) -> "PolyExpr":
        return cls._wrap({((i, 1),): Fraction(c) for i, c in coefficients.items()})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def total_degree(self) -> Optional[int]:
        """Maximum exponent sum over the terms; ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(monomial_degree(m) for m in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(ONE, Fraction(0))

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({index for mono in self._terms for index, _ in mono}))

    @property
    def ambient_dim(self) -> int:
        """Smallest n such that every variable index is below n."""
        indices = self.variables
        return indices[-1] + 1 if indices else 0

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending graded-lex order (the rendering order)."""
        return sorted(self._terms.items(), key=lambda item: _render_key(item[0]))

    def is_homogeneous(self, degree: int) -> bool:
        return all(monomial_degree(m) == degree for m in self._terms)

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> Optional["PolyExpr"]:
        if isinstance(other, PolyExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return PolyExpr.constant(other)
        return None

    def __add__(self, other: object) -> "PolyExpr":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in rhs._terms.items():
            out[mono] = out.get(mono, 0) + coeff
        return PolyExpr._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyExpr":
        return PolyExpr._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: object) -> "PolyExpr":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "PolyExpr":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "PolyExpr":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PolyExpr):
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = multiply_monomials(m1, m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return PolyExpr._wrap(out)

    __rmul__ = __mul__

    def scale(self, factor: Rational) -> "PolyExpr":
        factor = Fraction(factor)
        if not factor:
            return PolyExpr.zero()
        return PolyExpr._wrap({m: c * factor for m, c in self._terms.items()})

    def __pow__(self, exponent: int) -> "PolyExpr":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = PolyExpr.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ------------------------------------------------------------------
    # Evaluation and composition
    # ------------------------------------------------------------------

    def evaluate(self, point: Union[Mapping[int, Rational], "SupportsCoords"]) -> Fraction:
        """Exact value at a point given as index -> value (missing indices are 0)."""
        values: Mapping[int, Rational] = getattr(point, "as_mapping", lambda: point)()
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = coeff
            for index, exp in mono:
                value = values.get(index, 0)
                if not value:
                    term = Fraction(0)
                    break
                term *= Fraction(value) ** exp
            total += term
        return total

    def substitute(self, mapping: Mapping[int, "PolyExpr"]) -> "PolyExpr":
        """Replace each mapped variable by a polynomial; unmapped variables stay."""
        powers: Dict[Tuple[int, int], PolyExpr] = {}

        def power(index: int, exp: int) -> PolyExpr:
            key = (index, exp)
            if key not in powers:
                powers[key] = mapping[index] ** exp
            return powers[key]

        out: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            kept = tuple((i, e) for i, e in mono if i not in mapping)
            piece = PolyExpr._wrap({kept: coeff})
            for index, exp in mono:
                if index in mapping:
                    piece = piece * power(index, exp)
                    if piece.is_zero:
                        break
            for m, c in piece._terms.items():
                out[m] = out.get(m, 0) + c
        return PolyExpr._wrap(out)

    def translate(self, shift: Union[Mapping[int, Rational], "SupportsCoords"]) -> "PolyExpr":
        """The translate ``x -> p(x + shift)``."""
        values: Mapping[int, Rational] = getattr(shift, "as_mapping", lambda: shift)()
        present = set(self.variables)
        mapping = {
            index: PolyExpr.variable(index) + Fraction(value)
            for index, value in values.items()
            if value and index in present
        }
        if not mapping:
            return self
        return self.substitute(mapping)

    def rename(self, mapping: Mapping[int, int]) -> "PolyExpr":
        """Relabel variables; indices missing from ``mapping`` are unchanged."""
        out: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            renamed = make_monomial([(mapping.get(i, i), e) for i, e in mono])
            out[renamed] = out.get(renamed, 0) + coeff
        return PolyExpr._wrap(out)

    # ------------------------------------------------------------------
    # Calculus
    # ------------------------------------------------------------------

    def partial(self, beta: Monomial) -> "PolyExpr":
        """Formal partial derivative ∂^beta."""
        if not beta:
            return self
        needed = dict(beta)
        out: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            exps = dict(mono)
            factor = coeff
            for index, order in needed.items():
                exp = exps.get(index, 0)
                if exp < order:
                    factor = Fraction(0)
                    break
                factor *= factorial(exp) // factorial(exp - order)
                exps[index] = exp - order
            if factor:
                reduced = make_monomial(exps)
                out[reduced] = out.get(reduced, 0) + factor
        return PolyExpr._wrap(out)

    def homogeneous_part(self, degree: int) -> "PolyExpr":
        return PolyExpr._wrap({m: c for m, c in self._terms.items() if monomial_degree(m) == degree})

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def render(self, namer: Callable[[int], str] = default_namer) -> str:
        """Canonical text: descending graded-lex, explicit rational coefficients."""
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for position, (mono, coeff) in enumerate(self.sorted_terms()):
            magnitude = abs(coeff)
            factors = [namer(i) if e == 1 else f"{namer(i)}^{e}" for i, e in mono]
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if position == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PolyExpr({self.render()!r})"


# ----------------------------------------------------------------------
# Functional forms
# ----------------------------------------------------------------------

def arith(op: str, p: PolyExpr, q: Union[PolyExpr, Rational]) -> PolyExpr:
    """Dispatch for ``add``, ``sub``, ``mul`` and ``scale``."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        if isinstance(q, PolyExpr):
            raise ValueError("scale expects a rational factor")
        return p.scale(q)
    raise ValueError(f"Unsupported polynomial operation: {op}")


def evaluate(p: PolyExpr, point) -> Fraction:
    return p.evaluate(point)


def total_degree(p: PolyExpr) -> Optional[int]:
    return p.total_degree


def homogeneous_part(p: PolyExpr, k: int) -> PolyExpr:
    return p.homogeneous_part(k)


def shift_expand(q: PolyExpr) -> List[Tuple[Monomial, PolyExpr]]:
    """Taylor family: ``q(t + s) = sum_beta s^beta h_beta(t)`` with ``h_beta = ∂^beta q / beta!``.

    Only nonzero ``h_beta`` are returned, in ascending graded-lex order of beta,
    so ``h_()`` = q comes first.
    """
    betas = {beta for mono in q.terms for beta in divisors(mono)}
    family = []
    for beta in sorted(betas, key=grlex_key):
        h = q.partial(beta).scale(Fraction(1, monomial_factorial(beta)))
        if not h.is_zero:
            family.append((beta, h))
    return family


def reassemble_shift(family: List[Tuple[Monomial, PolyExpr]], offset: int) -> PolyExpr:
    """``sum_beta s^beta h_beta(t)`` with the s-variables placed at ``offset + index``."""
    total = PolyExpr.zero()
    for beta, h in family:
        shifted = make_monomial([(offset + i, e) for i, e in beta])
        total = total + h * PolyExpr.monomial(dict(shifted))
    return total
