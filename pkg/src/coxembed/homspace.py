"""Equations of the affine cones over E6/P6 and E7/P7.

Coordinates are indexed by (-1)-curves.  On the cubic surface the cone is cut
out by the 27 partial derivatives of the E6 cubic form; in degree 2 by 70
quadrics ``u^{ijkl}``, 56 quadrics ``v^i_j`` and 8 quadrics ``v^i_i`` written
in the coordinates ``x^{ab}, y_{ab}`` (``a < b`` in ``1..8``), which are
identified with curves via ``x^{i8} = eta_i``, ``x^{kl} = nu_kl``,
``y_{kl} = mu_kl`` and ``y_{i8} = lam_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .algebra import DegenerateSpecialization, ParamElement
from .lattice import (
    CurveLabel,
    DivisorClass,
    Ruling,
    enumerate_minus_one_curves,
    neighbors,
    ruling_from_symbol,
    ruling_of,
)

E = lambda i: CurveLabel("E", (i,))  # noqa: E731
m = lambda i, j: CurveLabel("m", (min(i, j), max(i, j)))  # noqa: E731
Q6 = lambda i: CurveLabel("Q", (i,))  # noqa: E731

Pair = tuple[CurveLabel, CurveLabel]


def _pair(a: CurveLabel, b: CurveLabel) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class ConeEquation:
    """Quadric ``sum coeff * xi'(a) * xi'(b)`` with its ruling tag."""

    tag: str
    ruling: Ruling
    terms: tuple[tuple[Pair, Fraction], ...]

    @property
    def r(self) -> int:
        return self.ruling.r

    def coefficient(self, pair: Pair) -> Fraction:
        pair = _pair(*pair)
        for p, c in self.terms:
            if p == pair:
                return c
        return Fraction(0)

    def signs(self) -> dict[Pair, int]:
        """``epsilon`` of each pair (defined when all coefficients are +-1)."""
        out = {}
        for p, c in self.terms:
            if abs(c) != 1:
                raise ValueError(f"{self.tag} has non-unit coefficients")
            out[p] = int(c)
        return out

    def evaluate(self, point: Mapping[CurveLabel, object]):
        total = 0
        for (a, b), c in self.terms:
            total = point[a] * point[b] * c + total
        return total

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "ruling": self.ruling.name,
            "class": list(self.ruling.divisor.vector),
            "monomials": [
                {"curves": [str(a), str(b)], "coordinates": [a.symbol(), b.symbol()], "coefficient": str(c)}
                for (a, b), c in self.terms
            ],
        }

    def __str__(self) -> str:
        parts = []
        for (a, b), c in self.terms:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(("- " if c < 0 else "+ ") + f"{mag}{a.symbol()}'*{b.symbol()}'")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _collect(tag: str, ruling: Ruling, raw: Sequence[tuple[Pair, Fraction]]) -> ConeEquation:
    acc: dict[Pair, Fraction] = {}
    for (a, b), c in raw:
        p = _pair(a, b)
        acc[p] = acc.get(p, Fraction(0)) + c
    order = {p: i for i, p in enumerate(ruling.pairs)}
    terms = sorted(((p, c) for p, c in acc.items() if c), key=lambda t: (order.get(t[0], len(order)), t[0][0].sort_key(), t[0][1].sort_key()))
    return ConeEquation(tag, ruling, tuple(terms))


# -- E6 -----------------------------------------------------------------------


def e6_matrices() -> tuple[list[list[CurveLabel]], list[list[CurveLabel]], list[list[CurveLabel]]]:
    M1 = [[E(1), Q6(1), m(2, 3)], [E(2), Q6(2), m(1, 3)], [E(3), Q6(3), m(1, 2)]]
    M2 = [[Q6(4), Q6(5), Q6(6)], [E(4), E(5), E(6)], [m(5, 6), m(4, 6), m(4, 5)]]
    M3 = [[m(1, 4), m(2, 4), m(3, 4)], [m(1, 5), m(2, 5), m(3, 5)], [m(1, 6), m(2, 6), m(3, 6)]]
    return M1, M2, M3


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


Cubic = dict[tuple[CurveLabel, CurveLabel, CurveLabel], int]


@lru_cache(maxsize=None)
def _e6_cubic() -> tuple[tuple[tuple[CurveLabel, CurveLabel, CurveLabel], int], ...]:
    acc: dict[tuple, int] = {}

    def add(labels, c):
        key = tuple(sorted(labels))
        acc[key] = acc.get(key, 0) + c

    for M in e6_matrices():
        for perm in permutations(range(3)):
            add([M[i][perm[i]] for i in range(3)], _perm_sign(perm))
    M1, M2, M3 = e6_matrices()
    for i in range(3):
        for j in range(3):
            for k in range(3):
                add([M1[i][j], M2[j][k], M3[k][i]], -1)
    return tuple(sorted(((k, v) for k, v in acc.items() if v), key=lambda t: [x.sort_key() for x in t[0]]))


def e6_cubic_form() -> Cubic:
    """``det M1 + det M2 + det M3 - tr(M1 M2 M3)`` as a map from sorted curve triples to coefficients."""
    return dict(_e6_cubic())


@lru_cache(maxsize=None)
def h6_equations() -> tuple[ConeEquation, ...]:
    """The 27 partial derivatives of the cubic form, tagged ``-K6 - E``."""
    cubic = _e6_cubic()
    minus_k = DivisorClass.anticanonical(6)
    out = []
    for curve in enumerate_minus_one_curves(6):
        raw = []
        for triple, c in cubic:
            if curve in triple:
                rest = list(triple)
                rest.remove(curve)
                raw.append(((rest[0], rest[1]), Fraction(c)))
        ruling = ruling_of(minus_k - curve.divisor_class(6), 1)
        out.append(_collect(f"d/d{curve.symbol()}", ruling, raw))
    return tuple(out)


# -- E7 -----------------------------------------------------------------------


def x_coord(a: int, b: int) -> tuple[int, CurveLabel]:
    """``x^{ab}`` as ``(sign, curve)`` using ``x^{ba} = -x^{ab}``."""
    if a == b:
        raise ValueError("x^{aa} is not a coordinate")
    sign = 1 if a < b else -1
    a, b = min(a, b), max(a, b)
    return sign, (CurveLabel("E", (a,)) if b == 8 else CurveLabel("Q", (a, b)))


def y_coord(a: int, b: int) -> tuple[int, CurveLabel]:
    """``y_{ab}`` as ``(sign, curve)`` using ``y_{ba} = -y_{ab}``."""
    if a == b:
        raise ValueError("y_{aa} is not a coordinate")
    sign = 1 if a < b else -1
    a, b = min(a, b), max(a, b)
    return sign, (CurveLabel("C", (a,)) if b == 8 else CurveLabel("m", (a, b)))


def _xx(a, b, c, d) -> tuple[Pair, Fraction]:
    s1, e1 = x_coord(a, b)
    s2, e2 = x_coord(c, d)
    return (e1, e2), Fraction(s1 * s2)


def _yy(a, b, c, d) -> tuple[Pair, Fraction]:
    s1, e1 = y_coord(a, b)
    s2, e2 = y_coord(c, d)
    return (e1, e2), Fraction(s1 * s2)


def _xy(a, b, c, d) -> tuple[Pair, Fraction]:
    s1, e1 = x_coord(a, b)
    s2, e2 = y_coord(c, d)
    return (e1, e2), Fraction(s1 * s2)


def _scale(term, k) -> tuple[Pair, Fraction]:
    return term[0], term[1] * k


def u_equation(i: int, j: int, k: int, l: int) -> ConeEquation:
    if not 1 <= i < j < k < l <= 8:
        raise ValueError("u^{ijkl} needs 1 <= i < j < k < l <= 8")
    a, b, c, d = [t for t in range(1, 9) if t not in (i, j, k, l)]
    sigma = _perm_sign([t - 1 for t in (i, j, k, l, a, b, c, d)])
    raw = [
        _xx(i, j, k, l),
        _scale(_xx(i, k, j, l), -1),
        _xx(i, l, j, k),
        _scale(_yy(a, b, c, d), sigma),
        _scale(_yy(a, c, b, d), -sigma),
        _scale(_yy(a, d, b, c), sigma),
    ]
    symbol = f"D(2)_{i},{j},{k}" if l == 8 else f"D(4)_{i},{j},{k},{l}"
    return _collect(f"u^{i}{j}{k}{l}", ruling_of(ruling_from_symbol(symbol), 1), raw)


def v_equation(i: int, j: int) -> ConeEquation:
    if i == j:
        return v_diagonal(i)
    raw = [_xy(i, k, k, j) for k in range(1, 9) if k not in (i, j)]
    if i == 8:
        symbol = f"D(1)_{j}"
    elif j == 8:
        symbol = f"D(5)_{i}"
    else:
        symbol = f"D(3)_{i},{j}"
    return _collect(f"v^{i}_{j}", ruling_of(ruling_from_symbol(symbol), 1), raw)


def v_diagonal(i: int) -> ConeEquation:
    others = [t for t in range(1, 9) if t != i]
    raw = [_scale(_xy(i, j, i, j), Fraction(-3, 4)) for j in others]
    raw += [_scale(_xy(j, k, j, k), Fraction(1, 4)) for j, k in combinations(others, 2)]
    return _collect(f"v^{i}_{i}", ruling_of(DivisorClass.anticanonical(7), 2), raw)


@lru_cache(maxsize=None)
def h7_equations() -> tuple[ConeEquation, ...]:
    """70 ``u``, 56 ``v^i_j`` and 8 ``v^i_i`` equations, in that order."""
    out = [u_equation(*idx) for idx in combinations(range(1, 9), 4)]
    out += [v_equation(i, j) for i in range(1, 9) for j in range(1, 9) if i != j]
    out += [v_diagonal(i) for i in range(1, 9)]
    return tuple(out)


def cone_equations(r: int) -> tuple[ConeEquation, ...]:
    if r == 6:
        return h6_equations()
    if r == 7:
        return h7_equations()
    raise ValueError("cone equations are implemented for r in {6, 7}")


def equation_for(ruling: Ruling | DivisorClass) -> ConeEquation:
    """The equation ``p_D`` of a (1)-ruling (``v^1_1`` for ``-K7``)."""
    D = ruling.divisor if isinstance(ruling, Ruling) else ruling
    for eq in cone_equations(D.r):
        if eq.ruling.divisor == D:
            return eq
    raise KeyError(f"no cone equation for {D}")


def equation_by_tag(r: int, tag: str) -> ConeEquation:
    for eq in cone_equations(r):
        if eq.tag == tag:
            return eq
    raise KeyError(tag)


# -- the parametrization Psi and its inverse Phi --------------------------------


def free_curves(r: int) -> tuple[CurveLabel, ...]:
    """Curves whose coordinates are free inputs of ``Psi``: ``E1`` and ``N(E1)_0``."""
    return (E(1),) + neighbors(E(1), 0, r)


def _solve_for(eq: ConeEquation, target: CurveLabel, values: dict):
    """Solve ``eq`` for the coordinate ``target``, which occurs only together with ``E1``."""
    num = 0
    coeff = None
    for (a, b), c in eq.terms:
        if target in (a, b):
            other = b if a == target else a
            if coeff is not None or other != E(1):
                raise ValueError(f"{eq.tag} is not linear in {target} with cofactor eta1")
            coeff = c
            continue
        num = values[a] * values[b] * c + num
    if coeff is None:
        raise ValueError(f"{target} does not occur in {eq.tag}")
    eta1 = values[E(1)]
    if _is_zero(eta1):
        raise DegenerateSpecialization("eta1' must be nonzero")
    return -num / (eta1 * coeff)


def psi_parametrize(r: int, free: Mapping[CurveLabel, object], use_v21: bool = False) -> dict[CurveLabel, object]:
    """Complete the coordinates of ``E1`` and ``N(E1)_0`` to a point of the cone.

    Values may be ParamElements, rationals or anything supporting field
    arithmetic.  Each ``xi'(E)`` with ``E`` in ``N(E1)_1`` comes from
    ``p_{E1+E}``; in degree 2 ``lam1'`` then comes from ``v^1_1`` (or from
    ``v^2_1`` with ``use_v21``).
    """
    needed = free_curves(r)
    missing = [str(c) for c in needed if c not in free]
    if missing:
        raise ValueError(f"missing free coordinates: {', '.join(missing)}")
    values = {c: free[c] for c in needed}
    d1 = E(1).divisor_class(r)
    for curve in neighbors(E(1), 1, r):
        eq = equation_for(d1 + curve.divisor_class(r))
        values[curve] = _solve_for(eq, curve, values)
    if r == 7:
        target = CurveLabel("C", (1,))
        eq = equation_by_tag(7, "v^2_1" if use_v21 else "v^1_1")
        if use_v21:
            values[target] = _solve_linear_in(eq, target, E(2), values)
        else:
            values[target] = _solve_for(eq, target, values)
    return {c: values[c] for c in enumerate_minus_one_curves(r)}


def _solve_linear_in(eq: ConeEquation, target: CurveLabel, partner: CurveLabel, values: dict):
    num = 0
    coeff = None
    for (a, b), c in eq.terms:
        if target in (a, b):
            if partner not in (a, b):
                raise ValueError(f"{target} pairs with an unexpected curve in {eq.tag}")
            coeff = c
            continue
        num = values[a] * values[b] * c + num
    return -num / (values[partner] * coeff)


def phi_project(r: int, point: Mapping[CurveLabel, object]) -> dict[CurveLabel, object]:
    """Projection to the coordinates of ``E1`` and ``N(E1)_0``."""
    return {c: point[c] for c in free_curves(r)}


def symbolic_free_values(r: int, universe: Sequence[str], eta_one: bool = True) -> dict[CurveLabel, ParamElement]:
    """Free coordinates as variables named ``<symbol>p``; ``eta' = 1`` if requested."""
    out = {}
    for c in free_curves(r):
        if c.kind == "E" and eta_one:
            out[c] = ParamElement.constant(universe, 1)
        else:
            out[c] = ParamElement.variable(universe, primed(c))
    return out


def primed(curve: CurveLabel) -> str:
    return curve.symbol() + "p"


def primed_universe(r: int) -> tuple[str, ...]:
    return tuple(primed(c) for c in enumerate_minus_one_curves(r))


@dataclass(frozen=True)
class ResidualReport:
    r: int
    residuals: tuple[tuple[str, object], ...]

    @property
    def nonzero(self) -> list[str]:
        return [tag for tag, v in self.residuals if not _is_zero(v)]

    @property
    def ok(self) -> bool:
        return not self.nonzero


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def verify_on_cone(point: Mapping[CurveLabel, object], r: int, equations: Sequence[ConeEquation] | None = None) -> ResidualReport:
    eqs = cone_equations(r) if equations is None else equations
    return ResidualReport(r, tuple((eq.tag, eq.evaluate(point)) for eq in eqs))


def export_equations(r: int) -> list[dict]:
    return [eq.to_json() for eq in cone_equations(r)]
