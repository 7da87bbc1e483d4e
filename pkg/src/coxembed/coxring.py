"""Point configurations, Cox generators as plane curves, and their relations.

The blown-up points are ``p1 = (1:0:0)``, ``p2 = (0:1:0)``, ``p3 = (0:0:1)``,
``p4 = (1:1:1)`` followed by ``(1:a:b), (1:c:d)`` on the cubic surface and
``(1:a1:b1), (1:a2:b2), (1:a3:b3)`` in degree 2.  Each (-1)-curve ``E`` gets a
section ``xi(E)``: 1 for ``E_i``, and otherwise the determinant of the
evaluation matrix of the curve's defining conditions stacked on the monomial
row, i.e. a fixed representative of the unique plane curve through the points.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .algebra import DegenerateSpecialization, ParamElement, cofactor_row, determinant, kernel_basis, rank
from .algebra.parse import parse_rational
from .lattice import CurveLabel, Ruling, enumerate_minus_one_curves

PLANE = ("x", "y", "z")
DEFAULT_PARAMS = {6: ("a", "b", "c", "d"), 7: ("a1", "b1", "a2", "b2", "a3", "b3")}
MAX_RETRIES = 100


class GeneralPositionError(ValueError):
    """The configuration violates general position; ``witness`` names the failure."""

    def __init__(self, witness: str):
        super().__init__(f"points are not in general position: {witness}")
        self.witness = witness


class DegeneracyExhausted(RuntimeError):
    """Random sampling kept hitting degenerate specializations."""


class TorsorPointError(ValueError):
    """The plane point lies on the image of a (-1)-curve."""


Point = tuple[ParamElement, ParamElement, ParamElement]


@dataclass(frozen=True)
class PointConfig:
    r: int
    points: tuple[Point, ...]
    params: tuple[str, ...]
    bindings: tuple[tuple[str, Fraction], ...] = ()
    universe: tuple[str, ...] = field(default=(), compare=False)

    @property
    def mode(self) -> str:
        return "specialized" if self.bindings else "symbolic"

    @property
    def binding_dict(self) -> dict[str, Fraction]:
        return dict(self.bindings)

    @classmethod
    def symbolic(cls, r: int, extra: Sequence[str] = ()) -> "PointConfig":
        params = DEFAULT_PARAMS[_check_r(r)]
        universe = params + PLANE + tuple(extra)
        var = lambda name: ParamElement.variable(universe, name)  # noqa: E731
        return cls(r, _base_points(universe) + _extra_points(r, var), params, (), universe)

    @classmethod
    def specialized(cls, r: int, values: Mapping[str, object], extra: Sequence[str] = ()) -> "PointConfig":
        params = DEFAULT_PARAMS[_check_r(r)]
        missing = [p for p in params if p not in values]
        unknown = [k for k in values if k not in params]
        if missing or unknown:
            raise ValueError(f"parameters for r={r} are {', '.join(params)}; missing {missing}, unknown {unknown}")
        bound = {k: _to_fraction(values[k]) for k in params}
        universe = PLANE + tuple(extra)
        const = lambda name: ParamElement.constant(universe, bound[name])  # noqa: E731
        bindings = tuple((k, bound[k]) for k in params)
        return cls(r, _base_points(universe) + _extra_points(r, const), (), bindings, universe)

    def with_extra(self, extra: Sequence[str]) -> "PointConfig":
        """Same configuration in a universe extended by ``extra`` symbols."""
        if self.bindings:
            return PointConfig.specialized(self.r, self.binding_dict, extra)
        return PointConfig.symbolic(self.r, extra)

    def specialize(self, values: Mapping[str, object], extra: Sequence[str] = ()) -> "PointConfig":
        return PointConfig.specialized(self.r, values, extra)

    def element(self, value) -> ParamElement:
        if isinstance(value, ParamElement):
            return value.embed(self.universe) if value.variables != self.universe else value
        return ParamElement.constant(self.universe, _to_fraction(value))

    def to_json(self) -> dict:
        if self.bindings:
            return {"r": self.r, "mode": "specialized", "params": {k: str(v) for k, v in self.bindings}}
        return {"r": self.r, "mode": "symbolic", "params": list(self.params)}


def _check_r(r: int) -> int:
    if r not in DEFAULT_PARAMS:
        raise ValueError(f"point configurations are implemented for r in {{6, 7}}, got {r!r}")
    return r


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not parameter values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


def _base_points(universe) -> tuple[Point, ...]:
    c = lambda v: ParamElement.constant(universe, v)  # noqa: E731
    return ((c(1), c(0), c(0)), (c(0), c(1), c(0)), (c(0), c(0), c(1)), (c(1), c(1), c(1)))


def _extra_points(r: int, value) -> tuple[Point, ...]:
    names = DEFAULT_PARAMS[r]
    out = []
    for k in range(0, len(names), 2):
        first = value(names[k])
        out.append((ParamElement.constant(first.variables, 1), first, value(names[k + 1])))
    return tuple(out)


def load_config(source: str | Mapping, extra: Sequence[str] = ()) -> PointConfig:
    """Read a configuration from a JSON string, file path or mapping.

    ``{"r": 6, "mode": "symbolic"}`` or ``{"r": 6, "params": {"a": "2", ...}}``.
    """
    if isinstance(source, str):
        text = source
        if not source.lstrip().startswith("{"):
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        source = json.loads(text)
    r = int(source["r"])
    params = source.get("params")
    if source.get("mode", "specialized" if isinstance(params, Mapping) else "symbolic") == "symbolic":
        return PointConfig.symbolic(r, extra)
    if not isinstance(params, Mapping):
        raise ValueError("specialized configurations need a 'params' mapping")
    return PointConfig.specialized(r, params, extra)


# -- monomials and evaluation rows ---------------------------------------------


@lru_cache(maxsize=None)
def plane_monomials(degree: int) -> tuple[tuple[int, int, int], ...]:
    """Exponents of degree-``degree`` monomials in ``x, y, z``.

    Lines use ``x, y, z`` and conics ``x^2, y^2, z^2, xy, xz, yz``; higher
    degrees are in descending lexicographic order.
    """
    if degree == 1:
        return ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    if degree == 2:
        return ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))
    out = [(i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)]
    return tuple(out)


def _eval_monomial(point: Point, exps) -> ParamElement:
    out = None
    for coord, e in zip(point, exps):
        if e:
            term = coord**e
            out = term if out is None else out * term
    return out if out is not None else point[0] * 0 + 1


def veronese_row(point: Point, degree: int) -> list[ParamElement]:
    return [_eval_monomial(point, e) for e in plane_monomials(degree)]


def derivative_rows(point: Point, degree: int) -> list[list[ParamElement]]:
    """Rows of the three partial derivatives of each monomial at ``point``."""
    zero = point[0] * 0
    rows = []
    for axis in range(3):
        row = []
        for exps in plane_monomials(degree):
            e = exps[axis]
            if e == 0:
                row.append(zero)
                continue
            lowered = list(exps)
            lowered[axis] -= 1
            row.append(_eval_monomial(point, lowered) * e)
        rows.append(row)
    return rows


def _det3(u: Point, v: Point, w: Point) -> ParamElement:
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


# -- general position -----------------------------------------------------------


def general_position(config: PointConfig) -> tuple[bool, str | None]:
    """Check that no three points are collinear, no six lie on a conic, and
    (seven points) every cubic through all points singular at one is unique.

    Returns ``(True, None)`` or ``(False, witness)``.
    """
    pts = config.points
    n = len(pts)
    for i, j, k in combinations(range(n), 3):
        if _det3(pts[i], pts[j], pts[k]).is_zero():
            return False, f"collinear p{i + 1}, p{j + 1}, p{k + 1}"
    for subset in combinations(range(n), 6):
        if determinant([veronese_row(pts[i], 2) for i in subset]).is_zero():
            return False, "conic through " + ", ".join(f"p{i + 1}" for i in subset)
    if n == 7:
        for i in range(n):
            if len(kernel_basis(_cubic_conditions(config, i + 1))) != 1:
                return False, f"cubic through all points singular at p{i + 1} is not unique"
    return True, None


def require_general_position(config: PointConfig) -> None:
    ok, witness = general_position(config)
    if not ok:
        raise GeneralPositionError(witness or "unknown")


def random_config(r: int, rng: random.Random, extra: Sequence[str] = (), bound: int = 9) -> PointConfig:
    """Random general-position configuration with small integer and half-integer values.

    Resamples on degeneracy; gives up after ``MAX_RETRIES`` attempts.
    """
    params = DEFAULT_PARAMS[_check_r(r)]
    for _ in range(MAX_RETRIES):
        values = {}
        for p in params:
            num = rng.randint(-bound, bound)
            den = rng.choice((1, 1, 2, 3))
            values[p] = Fraction(num, den)
        config = PointConfig.specialized(r, values, extra)
        if general_position(config)[0]:
            return config
    raise DegeneracyExhausted(f"no general-position configuration found in {MAX_RETRIES} draws")


# -- sections -------------------------------------------------------------------


@dataclass(frozen=True)
class SectionRealization:
    label: CurveLabel
    degree: int
    coefficients: tuple[ParamElement, ...]
    polynomial: ParamElement

    def evaluate_at(self, q: Sequence[ParamElement]) -> ParamElement:
        if self.degree == 0:
            return self.coefficients[0]
        total = None
        for c, exps in zip(self.coefficients, plane_monomials(self.degree)):
            if c.is_zero():
                continue
            term = c * _eval_monomial(tuple(q), exps)
            total = term if total is None else total + term
        return total if total is not None else self.coefficients[0] * 0


def _cubic_conditions(config: PointConfig, i: int) -> list[list[ParamElement]]:
    pts = config.points
    rows = [veronese_row(pts[j - 1], 3) for j in range(1, config.r + 1) if j != i]
    return rows + derivative_rows(pts[i - 1], 3)


def _condition_matrix(label: CurveLabel, config: PointConfig) -> tuple[int, list[list[ParamElement]]]:
    pts = config.points
    r = config.r
    if label.kind == "m":
        return 1, [list(pts[i - 1]) for i in label.indices]
    if label.kind == "Q":
        through = [j for j in range(1, r + 1) if j not in label.indices]
        return 2, [veronese_row(pts[j - 1], 2) for j in through]
    if label.kind == "C":
        return 3, _cubic_conditions(config, label.indices[0])
    raise ValueError(f"no condition matrix for {label}")


def realize_section(label: CurveLabel, config: PointConfig) -> SectionRealization:
    """Plane curve representing ``xi(label)``.

    The coefficient vector is the row of cofactors of the evaluation matrix,
    so the section is ``det(conditions; monomials)``.  For lines this is
    ``det(p_i, p_j, X)`` with ``i < j``.
    """
    return _sections(config)[label]


@lru_cache(maxsize=32)
def _sections(config: PointConfig) -> dict[CurveLabel, SectionRealization]:
    universe = config.universe
    one = ParamElement.constant(universe, 1)
    xyz = [ParamElement.variable(universe, v) for v in PLANE]
    out = {}
    for label in enumerate_minus_one_curves(config.r):
        if label.kind == "E":
            out[label] = SectionRealization(label, 0, (one,), one)
            continue
        degree, rows = _condition_matrix(label, config)
        coeffs = cofactor_row(rows)
        if all(c.is_zero() for c in coeffs):
            raise GeneralPositionError(f"curve {label} is not unique")
        poly = SectionRealization(label, degree, tuple(coeffs), one).evaluate_at(xyz)
        out[label] = SectionRealization(label, degree, tuple(coeffs), poly)
    return out


def all_sections(config: PointConfig) -> dict[CurveLabel, SectionRealization]:
    return dict(_sections(config))


# -- relations ------------------------------------------------------------------


@dataclass(frozen=True)
class CoxRelation:
    """``sum_k coefficients[k] * xi(pair_k)`` vanishes in the Cox ring."""

    ruling: Ruling
    index: int
    coefficients: tuple[ParamElement, ...]
    anchors: tuple[int, int] | None = None

    @property
    def alpha(self) -> ParamElement:
        return self.coefficients[self.anchors[0]]

    @property
    def beta(self) -> ParamElement:
        return self.coefficients[self.anchors[1]]

    def nonzero_positions(self) -> list[int]:
        return [k for k, c in enumerate(self.coefficients) if not c.is_zero()]


def pair_products(ruling: Ruling, config: PointConfig) -> list[ParamElement]:
    secs = _sections(config)
    return [secs[a].polynomial * secs[b].polynomial for a, b in ruling.pairs]


def _coefficient_matrix(products: Sequence[ParamElement], universe) -> list[list[ParamElement]]:
    columns = []
    monomials: set[tuple[int, ...]] = set()
    for p in products:
        coeffs = p.num.coefficients_by(PLANE)
        den = ParamElement.from_poly(p.den)
        col = {mon: ParamElement.from_poly(c) / den for mon, c in coeffs.items()}
        monomials.update(col)
        columns.append(col)
    zero = ParamElement.constant(universe, 0)
    return [[col.get(mon, zero) for col in columns] for mon in sorted(monomials, reverse=True)]


def realization_matrix(ruling: Ruling, config: PointConfig) -> list[list[ParamElement]]:
    """Coefficients of the pair products (columns) over the plane monomials (rows)."""
    return _coefficient_matrix(pair_products(ruling, config), config.universe)


def ruling_relations(
    ruling: Ruling, config: PointConfig, anchors: tuple[int, int] | None = None
) -> list[CoxRelation]:
    """Relations among the pair products of ``ruling``.

    With ``anchors = (a1, a2)`` (a (1)-ruling) each non-anchor product ``j``
    gives ``xi_j + alpha_j xi_a1 + beta_j xi_a2`` with ``alpha_j, beta_j != 0``.
    Without anchors the reduced kernel basis is returned.
    """
    matrix = realization_matrix(ruling, config)
    npairs = len(ruling.pairs)
    expected = npairs - 2 if ruling.k == 1 else npairs - 3
    rk = rank(matrix)
    if npairs - rk != expected:
        raise DegenerateSpecialization(
            f"ruling {ruling.name}: kernel dimension {npairs - rk}, expected {expected}"
        )
    zero = ParamElement.constant(config.universe, 0)
    if anchors is None:
        return [
            CoxRelation(ruling, k, tuple(vec), None) for k, vec in enumerate(kernel_basis(matrix))
        ]
    a1, a2 = anchors
    if a1 == a2 or not (0 <= a1 < npairs and 0 <= a2 < npairs):
        raise ValueError(f"invalid anchors {anchors} for ruling {ruling.name}")
    out = []
    for j in range(npairs):
        if j in anchors:
            continue
        sub = [[row[j], row[a1], row[a2]] for row in matrix]
        basis = kernel_basis(sub)
        if len(basis) != 1 or any(c.is_zero() for c in basis[0]):
            raise DegenerateSpecialization(f"ruling {ruling.name}: pair {j} is not a combination of the anchors")
        coeffs = [zero] * npairs
        coeffs[j], coeffs[a1], coeffs[a2] = basis[0]
        out.append(CoxRelation(ruling, j, tuple(coeffs), (a1, a2)))
    return out


def relation_residual(relation: CoxRelation, point: Mapping[CurveLabel, ParamElement]) -> ParamElement:
    total = None
    for c, (a, b) in zip(relation.coefficients, relation.ruling.pairs):
        if c.is_zero():
            continue
        term = c * point[a] * point[b]
        total = term if total is None else total + term
    return total


# -- torsor points --------------------------------------------------------------


def torsor_point(config: PointConfig, q: Sequence) -> dict[CurveLabel, ParamElement]:
    """Coordinates ``xi(E)(q)`` of the torsor point above the plane point ``q``."""
    if len(q) != 3:
        raise ValueError("a plane point has three homogeneous coordinates")
    qe = tuple(config.element(v) for v in q)
    if all(v.is_zero() for v in qe):
        raise ValueError("(0:0:0) is not a point")
    out = {}
    for label, sec in _sections(config).items():
        value = sec.evaluate_at(qe)
        if value.is_zero():
            raise TorsorPointError(f"q lies on the curve {label}")
        out[label] = value
    return out


def random_plane_point(config: PointConfig, rng: random.Random, bound: int = 20) -> tuple[int, int, int]:
    """Integer plane point off every (-1)-curve image."""
    for _ in range(MAX_RETRIES):
        q = (rng.randint(1, bound), rng.randint(-bound, bound), rng.randint(-bound, bound))
        try:
            torsor_point(config, q)
        except TorsorPointError:
            continue
        return q
    raise DegeneracyExhausted(f"no admissible plane point found in {MAX_RETRIES} draws")


def all_relations(config: PointConfig, rulings: Iterable[Ruling]) -> list[CoxRelation]:
    """Unanchored relations of every ruling (4 per (1)-ruling and 25 for ``-K7`` in degree 2)."""
    out = []
    for R in rulings:
        out.extend(ruling_relations(R, config))
    return out
