"""Sparse multivariate polynomials over the rationals.

Monomials are packed into a single Python integer: the total degree sits in
the top field and the exponents follow, first variable most significant, each
in a ``BITS``-wide field.  Integer comparison of two keys is therefore graded
lexicographic comparison, and monomial multiplication is key addition.

Coefficients are stored as integers over one common positive denominator,
reduced so that the denominator shares no factor with the integer content.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Union

from . import kernels

BITS = 16
MASK = (1 << BITS) - 1

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def _layout(variables: tuple[str, ...]) -> tuple[dict[str, int], int]:
    index = {name: i for i, name in enumerate(variables)}
    if len(index) != len(variables):
        raise ValueError(f"duplicate variable names in {variables!r}")
    return index, len(variables) * BITS


def pack(exps: Iterable[int], nvars: int) -> int:
    key = 0
    deg = 0
    count = 0
    for e in exps:
        if e < 0 or e > MASK:
            raise ValueError(f"exponent {e} out of range")
        key = (key << BITS) | e
        deg += e
        count += 1
    if count != nvars:
        raise ValueError(f"expected {nvars} exponents, got {count}")
    return key | (deg << (nvars * BITS))


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> ((nvars - 1 - i) * BITS)) & MASK for i in range(nvars))


def _field(key: int, pos: int, nvars: int) -> int:
    return (key >> ((nvars - 1 - pos) * BITS)) & MASK


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class MultiPolynomial:
    """Immutable polynomial in a fixed, ordered tuple of variables."""

    __slots__ = ("variables", "_terms", "_den", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], Scalar] | None = None):
        variables = tuple(variables)
        _layout(variables)
        n = len(variables)
        acc: dict[int, Fraction] = {}
        for exps, c in (terms or {}).items():
            c = _as_fraction(c)
            if c:
                k = pack(exps, n)
                acc[k] = acc.get(k, 0) + c
        den = 1
        for c in acc.values():
            den = lcm(den, c.denominator)
        ints = {k: c.numerator * (den // c.denominator) for k, c in acc.items() if c}
        self._init(variables, ints, den)

    def _init(self, variables, ints, den):
        if not ints:
            den = 1
        elif den != 1:
            g = kernels.content_gcd(ints, den)
            if g != 1:
                ints = kernels.exact_div_terms(ints, g)
                den //= g
        self.variables = variables
        self._terms = ints
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, variables, ints, den=1) -> "MultiPolynomial":
        obj = object.__new__(cls)
        if den < 0:
            ints = kernels.scale_terms(ints, -1)
            den = -den
        obj._init(variables, ints, den)
        return obj

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, variables: Iterable[str], value: Scalar) -> "MultiPolynomial":
        variables = tuple(variables)
        _layout(variables)
        value = _as_fraction(value)
        if not value:
            return cls._raw(variables, {}, 1)
        return cls._raw(variables, {0: value.numerator}, value.denominator)

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MultiPolynomial":
        return cls.constant(variables, 0)

    @classmethod
    def one(cls, variables: Iterable[str]) -> "MultiPolynomial":
        return cls.constant(variables, 1)

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> "MultiPolynomial":
        variables = tuple(variables)
        index, _ = _layout(variables)
        exps = [0] * len(variables)
        exps[index[name]] = 1
        return cls._raw(variables, {pack(exps, len(variables)): 1}, 1)

    @classmethod
    def monomial(cls, variables: Iterable[str], powers: Mapping[str, int], coeff: Scalar = 1) -> "MultiPolynomial":
        variables = tuple(variables)
        index, _ = _layout(variables)
        exps = [0] * len(variables)
        for name, e in powers.items():
            exps[index[name]] += e
        return cls(variables, {tuple(exps): coeff})

    # -- inspection -----------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Exponent tuple -> coefficient, in descending graded-lex order."""
        n = self.nvars
        den = self._den
        return {unpack(k, n): Fraction(self._terms[k], den) for k in sorted(self._terms, reverse=True)}

    def integer_terms(self) -> tuple[dict[int, int], int]:
        """Packed integer representation ``(terms, denominator)``; read-only."""
        return self._terms, self._den

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def is_one(self) -> bool:
        return self._den == 1 and self._terms == {0: 1}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self._terms.get(0, 0), self._den)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(self._terms) >> (self.nvars * BITS)

    def degree_in(self, name: str) -> int:
        index, _ = _layout(self.variables)
        pos = index[name]
        n = self.nvars
        return max((_field(k, pos, n) for k in self._terms), default=-1)

    def used_positions(self) -> list[int]:
        n = self.nvars
        low = (1 << (n * BITS)) - 1
        acc = 0
        for k in self._terms:
            acc |= k & low
        return [i for i in range(n) if _field(acc, i, n)]

    def variables_used(self) -> tuple[str, ...]:
        return tuple(self.variables[i] for i in self.used_positions())

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._terms)
        return unpack(k, self.nvars), Fraction(self._terms[k], self._den)

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def monic(self) -> "MultiPolynomial":
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient())

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "MultiPolynomial":
        if isinstance(other, MultiPolynomial):
            if other.variables != self.variables:
                raise ValueError("polynomials live in different variable universes")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPolynomial.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            return MultiPolynomial._raw(self.variables, kernels.lincomb_terms(self._terms, 1, other._terms, 1), d1)
        m = lcm(d1, d2)
        terms = kernels.lincomb_terms(self._terms, m // d1, other._terms, m // d2)
        return MultiPolynomial._raw(self.variables, terms, m)

    __radd__ = __add__

    def __neg__(self):
        return MultiPolynomial._raw(self.variables, kernels.scale_terms(self._terms, -1), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        m = lcm(d1, d2)
        terms = kernels.lincomb_terms(self._terms, m // d1, other._terms, -(m // d2))
        return MultiPolynomial._raw(self.variables, terms, m)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if not other:
                return MultiPolynomial._raw(self.variables, {}, 1)
            return MultiPolynomial._raw(
                self.variables, kernels.scale_terms(self._terms, other.numerator), self._den * other.denominator
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return MultiPolynomial._raw(self.variables, {}, 1)
        if self.total_degree() + other.total_degree() > MASK:
            raise OverflowError("total degree exceeds the packed exponent width")
        return MultiPolynomial._raw(self.variables, kernels.mul_terms(self._terms, other._terms), self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / _as_fraction(other))
        if isinstance(other, MultiPolynomial) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPolynomial.one(self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exquo(self, other: "MultiPolynomial") -> "MultiPolynomial":
        """Exact quotient ``self / other``; raises ArithmeticError if inexact."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("exact division by the zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        n = self.nvars
        lead = max(other._terms)
        lead_exps = unpack(lead, n)
        lead_c = Fraction(other._terms[lead], other._den)
        divisor = [(k, Fraction(c, other._den)) for k, c in other._terms.items()]
        rem = {k: Fraction(c, self._den) for k, c in self._terms.items()}
        quot: dict[int, Fraction] = {}
        while rem:
            k = max(rem)
            exps = unpack(k, n)
            if any(e < f for e, f in zip(exps, lead_exps)):
                raise ArithmeticError("polynomial division is not exact")
            shift = k - lead
            c = rem[k] / lead_c
            quot[shift] = c
            for kk, cc in divisor:
                key = shift + kk
                v = rem.get(key, 0) - c * cc
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        den = 1
        for c in quot.values():
            den = lcm(den, c.denominator)
        return MultiPolynomial._raw(self.variables, {k: c.numerator * (den // c.denominator) for k, c in quot.items()}, den)

    def divides(self, other: "MultiPolynomial") -> bool:
        try:
            other.exquo(self)
        except ArithmeticError:
            return False
        return True

    # -- substitution ---------------------------------------------------------

    def _split(self, positions: list[int]) -> dict[tuple[int, ...], dict[int, int]]:
        """Group terms by the exponents at ``positions``; the rest keeps its key."""
        n = self.nvars
        top = n * BITS
        groups: dict[tuple[int, ...], dict[int, int]] = {}
        shifts = [(n - 1 - p) * BITS for p in positions]
        for k, c in self._terms.items():
            sub = tuple((k >> s) & MASK for s in shifts)
            rest = k
            total = 0
            for e, s in zip(sub, shifts):
                if e:
                    rest -= e << s
                    total += e
            rest -= total << top
            groups.setdefault(sub, {})[rest] = c
        return groups

    def coefficients_by(self, names: Iterable[str]) -> dict[tuple[int, ...], "MultiPolynomial"]:
        """Coefficients as polynomials in the remaining variables, keyed by exponents of ``names``."""
        index, _ = _layout(self.variables)
        positions = [index[name] for name in names]
        return {
            sub: MultiPolynomial._raw(self.variables, rest, self._den)
            for sub, rest in sorted(self._split(positions).items(), reverse=True)
        }

    def subs(self, mapping: Mapping[str, object]) -> "MultiPolynomial":
        """Substitute scalars or polynomials (same universe) for variables."""
        if not mapping:
            return self
        index, _ = _layout(self.variables)
        names = list(mapping)
        positions = [index[name] for name in names]
        values = [mapping[name] for name in names]
        groups = self._split(positions)
        if all(isinstance(v, (int, Fraction)) for v in values):
            fvals = [_as_fraction(v) for v in values]
            factors = {}
            den = 1
            for sub in groups:
                f = Fraction(1)
                for v, e in zip(fvals, sub):
                    if e:
                        f *= v**e
                factors[sub] = f
                den = lcm(den, f.denominator)
            acc: dict[int, int] = {}
            for sub, rest in groups.items():
                f = factors[sub]
                if not f:
                    continue
                scale = f.numerator * (den // f.denominator)
                acc = kernels.lincomb_terms(acc, 1, rest, scale)
            return MultiPolynomial._raw(self.variables, acc, self._den * den)
        polys = [self._coerce(v) if not isinstance(v, MultiPolynomial) else self._coerce(v) for v in values]
        power_cache: dict[tuple[int, int], MultiPolynomial] = {}

        def power(i: int, e: int) -> MultiPolynomial:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = polys[i] if e == 1 else power(i, e - 1) * polys[i]
            return power_cache[key]

        result = MultiPolynomial.zero(self.variables)
        for sub, rest in groups.items():
            part = MultiPolynomial._raw(self.variables, rest, self._den)
            for i, e in enumerate(sub):
                if e:
                    part = part * power(i, e)
            result = result + part
        return result

    def evaluate(self, mapping: Mapping[str, Scalar]) -> Fraction:
        result = self.subs({k: v for k, v in mapping.items() if k in _layout(self.variables)[0]})
        if not result.is_constant():
            missing = set(result.variables_used())
            raise ValueError(f"unassigned variables {sorted(missing)}")
        return result.constant_value()

    def embed(self, variables: Iterable[str]) -> "MultiPolynomial":
        """Re-express in another universe containing every used variable."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        new_index, _ = _layout(variables)
        n_old, n_new = self.nvars, len(variables)
        targets = []
        for i in self.used_positions():
            name = self.variables[i]
            if name not in new_index:
                raise ValueError(f"variable {name!r} missing from target universe")
            targets.append((i, new_index[name]))
        terms = {}
        for k, c in self._terms.items():
            exps = [0] * n_new
            for i, j in targets:
                exps[j] = _field(k, i, n_old)
            terms[pack(exps, n_new)] = c
        return MultiPolynomial._raw(variables, terms, self._den)

    # -- comparison and display -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPolynomial):
            return NotImplemented
        return self.variables == other.variables and self._den == other._den and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, self._den, frozenset(self._terms.items())))
        return self._hash

    def __getstate__(self):
        return (self.variables, self._terms, self._den)

    def __setstate__(self, state):
        variables, terms, den = state
        self.variables = variables
        self._terms = terms
        self._den = den
        self._hash = None

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms.items():
            mon = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.variables, exps) if e
            )
            if not mon:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}*{mon}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPolynomial({self})"
