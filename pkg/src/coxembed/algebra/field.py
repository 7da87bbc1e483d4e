"""Rational functions in the configuration parameters.

A :class:`ParamElement` is a reduced fraction ``num/den`` of polynomials over
the rationals.  The denominator is monic in graded-lex order and coprime to
the numerator, so equality of canonical elements is structural.  Polynomial
gcds are delegated to sympy's sparse ``ZZ`` rings.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping, Union

from sympy.polys.domains import ZZ
from sympy.polys.rings import ring

from .poly import MultiPolynomial, Scalar, _as_fraction, pack, unpack


class DegenerateSpecialization(ZeroDivisionError):
    """A denominator vanished: the chosen parameters are not general enough."""


@lru_cache(maxsize=64)
def _zz_ring(nvars: int):
    names = ",".join(f"t{i}" for i in range(nvars))
    return ring(names, ZZ)[0]


def _to_ring(p: MultiPolynomial, positions: list[int], R):
    terms, _ = p.integer_terms()
    n = p.nvars
    out = {}
    for k, c in terms.items():
        exps = unpack(k, n)
        out[tuple(exps[i] for i in positions)] = c
    return R.from_dict(out)


def _from_ring(f, variables: tuple[str, ...], positions: list[int], den: int) -> MultiPolynomial:
    n = len(variables)
    terms = {}
    for mon, c in f.items():
        exps = [0] * n
        for i, e in zip(positions, mon):
            exps[i] = e
        terms[pack(exps, n)] = int(c)
    return MultiPolynomial._raw(variables, terms, den)


def poly_gcd(p: MultiPolynomial, q: MultiPolynomial) -> MultiPolynomial:
    """Monic gcd of two polynomials in the same universe."""
    if p.is_zero():
        return q.monic() if not q.is_zero() else q
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return MultiPolynomial.one(p.variables)
    positions = sorted(set(p.used_positions()) | set(q.used_positions()))
    R = _zz_ring(len(positions))
    h = _to_ring(p, positions, R).gcd(_to_ring(q, positions, R))
    return _from_ring(h, p.variables, positions, 1).monic()


def cancel(p: MultiPolynomial, q: MultiPolynomial) -> tuple[MultiPolynomial, MultiPolynomial]:
    """Remove the common factor of ``p`` and ``q``; ``q`` is returned monic."""
    if q.is_zero():
        raise DegenerateSpecialization("zero denominator")
    if p.is_zero():
        return p, MultiPolynomial.one(p.variables)
    if q.is_constant():
        return p / q.constant_value(), MultiPolynomial.one(p.variables)
    if not p.is_constant():
        positions = sorted(set(p.used_positions()) | set(q.used_positions()))
        R = _zz_ring(len(positions))
        _, dp = p.integer_terms()
        _, dq = q.integer_terms()
        h, cp, cq = _to_ring(p, positions, R).cofactors(_to_ring(q, positions, R))
        if not h.is_ground:
            p = _from_ring(cp, p.variables, positions, dp)
            q = _from_ring(cq, p.variables, positions, dq)
    lc = q.leading_coefficient()
    if lc != 1:
        p = p * (1 / lc)
        q = q * (1 / lc)
    return p, q


Coercible = Union["ParamElement", MultiPolynomial, int, Fraction]


class ParamElement:
    """Element of the rational function field Q(variables)."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPolynomial, den: MultiPolynomial | None = None, *, reduce: bool = True):
        if den is None:
            den = MultiPolynomial.one(num.variables)
        elif den.variables != num.variables:
            raise ValueError("numerator and denominator live in different universes")
        if den.is_zero():
            raise DegenerateSpecialization("zero denominator")
        if reduce:
            num, den = cancel(num, den)
        self.num = num
        self.den = den

    @classmethod
    def _canonical(cls, num: MultiPolynomial, den: MultiPolynomial) -> "ParamElement":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def constant(cls, variables, value: Scalar) -> "ParamElement":
        variables = tuple(variables)
        return cls._canonical(MultiPolynomial.constant(variables, value), MultiPolynomial.one(variables))

    @classmethod
    def variable(cls, variables, name: str) -> "ParamElement":
        variables = tuple(variables)
        return cls._canonical(MultiPolynomial.variable(variables, name), MultiPolynomial.one(variables))

    @classmethod
    def from_poly(cls, p: MultiPolynomial) -> "ParamElement":
        return cls._canonical(p, MultiPolynomial.one(p.variables))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("element is not constant")
        return self.num.constant_value()

    def variables_used(self) -> tuple[str, ...]:
        used = set(self.num.variables_used()) | set(self.den.variables_used())
        return tuple(v for v in self.variables if v in used)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "ParamElement":
        if isinstance(other, ParamElement):
            if other.variables != self.variables:
                raise ValueError("elements live in different variable universes")
            return other
        if isinstance(other, MultiPolynomial):
            if other.variables != self.variables:
                raise ValueError("elements live in different variable universes")
            return ParamElement.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return ParamElement.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1.is_one() and d2.is_one():
            return ParamElement._canonical(n1 + n2, d1)
        # n1/d1 + n2 with n1, d1 coprime stays reduced
        if d2.is_one():
            return ParamElement._canonical(n1 + n2 * d1, d1)
        if d1.is_one():
            return ParamElement._canonical(n1 * d2 + n2, d2)
        if d1 == d2:
            return ParamElement(n1 + n2, d1)
        return ParamElement(n1 * d2 + n2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return ParamElement._canonical(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamElement.constant(self.variables, 0)
            return ParamElement._canonical(self.num * other, self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero() or n2.is_zero():
            return ParamElement.constant(self.variables, 0)
        if d1.is_one() and d2.is_one():
            return ParamElement._canonical(n1 * n2, d1)
        # cross-cancel; the quotients of monic polynomials by monic gcds stay monic
        if not d2.is_one() and not n1.is_constant():
            g = poly_gcd(n1, d2)
            if not g.is_one():
                n1, d2 = n1.exquo(g), d2.exquo(g)
        if not d1.is_one() and not n2.is_constant():
            g = poly_gcd(n2, d1)
            if not g.is_one():
                n2, d1 = n2.exquo(g), d1.exquo(g)
        return ParamElement._canonical(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "ParamElement":
        if self.num.is_zero():
            raise DegenerateSpecialization("inverse of zero")
        lc = self.num.leading_coefficient()
        return ParamElement._canonical(self.den * (1 / lc), self.num * (1 / lc))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DegenerateSpecialization("division by zero")
            return ParamElement._canonical(self.num * (1 / _as_fraction(other)), self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise ValueError("only integer powers are supported")
        if e < 0:
            return self.inverse() ** (-e)
        return ParamElement._canonical(self.num**e, self.den**e)

    # -- substitution ---------------------------------------------------------

    def subs(self, mapping: Mapping[str, Coercible]) -> "ParamElement":
        """Substitute rational scalars, polynomials or rational functions.

        Rational values are handled by homogenizing in each substituted
        variable, so only polynomial arithmetic is needed before the final
        reduction.
        """
        values = {k: self._coerce(v) for k, v in mapping.items()}
        num = _subs_poly(self.num, values)
        den = _subs_poly(self.den, values)
        return num / den

    def evaluate(self, mapping: Mapping[str, Scalar]) -> Fraction:
        num = self.num.evaluate(mapping)
        den = self.den.evaluate(mapping)
        if not den:
            raise DegenerateSpecialization("denominator vanishes at the given point")
        return num / den

    def embed(self, variables) -> "ParamElement":
        return ParamElement._canonical(self.num.embed(variables), self.den.embed(variables))

    # -- comparison and display -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, MultiPolynomial):
            return self.den.is_one() and self.num == other
        if not isinstance(other, ParamElement):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __getstate__(self):
        return (self.num, self.den)

    def __setstate__(self, state):
        self.num, self.den = state

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den) > 1 or not self.den.is_monomial():
            den = f"({den})"
        elif self.den.leading_coefficient() != 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"ParamElement({self})"


def _subs_poly(p: MultiPolynomial, values: Mapping[str, ParamElement]) -> ParamElement:
    """Simultaneous substitution into a polynomial."""
    used = set(p.variables_used())
    names = [n for n in values if n in used]
    if not names:
        return ParamElement.from_poly(p)
    index = {n: i for i, n in enumerate(p.variables)}
    one = MultiPolynomial.one(p.variables)
    tops = [p.degree_in(n) for n in names]
    nums = [values[n].num for n in names]
    dens = [values[n].den for n in names]
    cache: dict[tuple[int, int, int], MultiPolynomial] = {}

    def power(i: int, which: int, e: int) -> MultiPolynomial:
        if e == 0:
            return one
        key = (i, which, e)
        if key not in cache:
            base = nums[i] if which == 0 else dens[i]
            cache[key] = power(i, which, e - 1) * base
        return cache[key]

    _, pden = p.integer_terms()
    acc = MultiPolynomial.zero(p.variables)
    for sub, rest in p._split([index[n] for n in names]).items():
        part = MultiPolynomial._raw(p.variables, rest, pden)
        for i, e in enumerate(sub):
            part = part * power(i, 0, e)
            if not dens[i].is_one():
                part = part * power(i, 1, tops[i] - e)
        acc = acc + part
    den = one
    for i in range(len(names)):
        if not dens[i].is_one():
            den = den * power(i, 1, tops[i])
    return ParamElement(acc, den)


def lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = lcm(out, _as_fraction(v).denominator)
    return out
