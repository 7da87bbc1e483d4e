"""Good rescalings: conditions, their staged solution, and certificates.

A rescaling multiplies each Cox generator ``xi(E)`` by a nonzero factor
``xi''(E)``.  For every ruling ``D`` of the membership set the cone equation
``p_D = sum eps_i xi'_i`` must lie in the span of the Cox relations
``F_{D,j} = xi_j + alpha_j xi_a1 + beta_j xi_a2``, which is equivalent to

    g_{D,1} = eps_a1 xi''_a1 - sum_j eps_j alpha_j xi''_j = 0
    g_{D,2} = eps_a2 xi''_a2 - sum_j eps_j beta_j  xi''_j = 0

where ``xi''_i`` is the product of the factors of the ``i``-th pair.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import DegenerateSpecialization, MultiPolynomial, ParamElement, poly_gcd
from .coxring import (
    PointConfig,
    TorsorPointError,
    all_sections,
    random_plane_point,
    require_general_position,
    ruling_relations,
    torsor_point,
)
from .homspace import ConeEquation, cone_equations, equation_for
from .lattice import (
    CurveLabel,
    DivisorClass,
    Ruling,
    enumerate_minus_one_curves,
    intersection,
    membership_set,
    n_curves,
    neighbors,
)

E1 = CurveLabel("E", (1,))
E2 = CurveLabel("E", (2,))


class SolverError(RuntimeError):
    """The staged elimination met a nonzero leftover, a zero factor, or got stuck."""


def rescaling_symbol(curve: CurveLabel) -> str:
    return curve.symbol() + "pp"


def rescaling_symbols(r: int) -> tuple[str, ...]:
    return tuple(rescaling_symbol(c) for c in enumerate_minus_one_curves(r))


def count_free_parameters(r: int) -> int:
    """Size of the family of good rescalings: ``N_{r-2} + 2``."""
    if r not in (6, 7):
        raise ValueError("r must be 6 or 7")
    return n_curves(r - 2) + 2


def image_family_dimension(r: int) -> int:
    """Dimension of the family of images of the torsor in the cone: ``N_{r-2} - r + 1``."""
    if r not in (5, 6, 7):
        raise ValueError("r must be 5, 6 or 7")
    return n_curves(r - 2) - r + 1


def xi_sets(r: int) -> dict[tuple[int, int], tuple[CurveLabel, ...]]:
    """Curves grouped by ``((E1, E), (E2, E))``."""
    out: dict[tuple[int, int], list[CurveLabel]] = {}
    d1, d2 = E1.divisor_class(r), E2.divisor_class(r)
    for c in enumerate_minus_one_curves(r):
        dc = c.divisor_class(r)
        out.setdefault((intersection(d1, dc), intersection(d2, dc)), []).append(c)
    return {k: tuple(v) for k, v in out.items()}


def free_rescaling_curves(r: int) -> tuple[CurveLabel, ...]:
    """``eta''_1, eta''_2`` and the curves meeting neither ``E1`` nor ``E2``."""
    return (E1, E2) + xi_sets(r)[(0, 0)]


def bound_rescaling_curves(r: int) -> tuple[CurveLabel, ...]:
    free = set(free_rescaling_curves(r))
    return tuple(c for c in enumerate_minus_one_curves(r) if c not in free)


# -- anchors --------------------------------------------------------------------

_E = lambda i: CurveLabel("E", (i,))  # noqa: E731
_m = lambda i, j: CurveLabel("m", (i, j))  # noqa: E731
_Q = lambda *i: CurveLabel("Q", tuple(i))  # noqa: E731
_C = lambda i: CurveLabel("C", (i,))  # noqa: E731

# Cubic surface: for D = E1 + E, the pairs whose products are kept as the
# spanning pair of H^0(O(D)).  Chosen to reproduce the classical listing.
_ANCHORS_6 = {
    _m(1, 2): ((_E(3), _m(2, 3)), (_E(1), _m(1, 2))),
    _m(1, 3): ((_E(1), _m(1, 3)), (_E(2), _m(2, 3))),
    _m(1, 4): ((_E(1), _m(1, 4)), (_E(2), _m(2, 4))),
    _m(1, 5): ((_E(2), _m(2, 5)), (_E(1), _m(1, 5))),
    _m(1, 6): ((_E(1), _m(1, 6)), (_E(2), _m(2, 6))),
    _Q(2): ((_m(3, 4), _m(5, 6)), (_m(3, 5), _m(4, 6))),
    _Q(3): ((_m(2, 4), _m(5, 6)), (_m(2, 5), _m(4, 6))),
    _Q(4): ((_m(2, 3), _m(5, 6)), (_m(2, 5), _m(3, 6))),
    _Q(5): ((_m(2, 4), _m(3, 6)), (_m(2, 3), _m(4, 6))),
    _Q(6): ((_m(2, 4), _m(3, 5)), (_m(2, 3), _m(4, 5))),
}


def _index_of_pair(ruling: Ruling, a: CurveLabel, b: CurveLabel) -> int:
    target = (a, b) if a < b else (b, a)
    for i, p in enumerate(ruling.pairs):
        if p == target:
            return i
    raise KeyError(f"({a}, {b}) is not a pair of {ruling.name}")


def _first_other(ruling: Ruling, taken: int) -> int:
    return next(i for i in range(len(ruling.pairs)) if i != taken)


def anchors_for(ruling: Ruling) -> tuple[int, int]:
    """Pair indices ``(a1, a2)`` of the spanning products for a ruling in the membership set.

    If ``D = E1 + E`` with ``(E2, E) = 0`` the products through ``E1`` and
    ``E2`` are kept, so that ``g_{D,1}``, ``g_{D,2}`` solve for both new
    factors at once.  Otherwise the product through ``E1`` is the second
    anchor and ``g_{D,2}`` solves for ``xi''(E)``.
    """
    r = ruling.r
    D = ruling.divisor
    e = D - E1.divisor_class(r)
    try:
        curve = CurveLabel.from_class(e)
    except ValueError:
        curve = None
    if r == 6:
        if curve is None or curve not in _ANCHORS_6:
            raise KeyError(f"{ruling.name} is not in the membership set")
        p1, p2 = _ANCHORS_6[curve]
        return _index_of_pair(ruling, *p1), _index_of_pair(ruling, *p2)
    if ruling.symbol == "D(3)_2,1":
        a2 = _index_of_pair(ruling, _E(2), _C(1))
        return _first_other(ruling, a2), a2
    if curve is None or intersection(E1.divisor_class(r), curve.divisor_class(r)) != 1:
        raise KeyError(f"{ruling.name} is not in the membership set")
    meet2 = intersection(E2.divisor_class(r), curve.divisor_class(r))
    a_e1 = _index_of_pair(ruling, E1, curve)
    if meet2 == 0:
        other = CurveLabel.from_class(D - E2.divisor_class(r))
        return a_e1, _index_of_pair(ruling, E2, other)
    if curve.kind == "Q":
        i, j = curve.indices
        return _index_of_pair(ruling, _E(j), _Q(1, i)), a_e1
    return _first_other(ruling, a_e1), a_e1


# -- conditions -----------------------------------------------------------------


@dataclass(frozen=True)
class ConditionPair:
    ruling: Ruling
    curve: CurveLabel | None
    anchors: tuple[int, int]
    g1: ParamElement
    g2: ParamElement

    @property
    def name(self) -> str:
        if self.curve is not None:
            return f"E1+{self.curve}"
        return self.ruling.name

    def conditions(self) -> tuple[ParamElement, ParamElement]:
        return self.g1, self.g2


def _pair_factor(pair, universe) -> ParamElement:
    a, b = pair
    return ParamElement.variable(universe, rescaling_symbol(a)) * ParamElement.variable(universe, rescaling_symbol(b))


def build_conditions(
    ruling: Ruling,
    config: PointConfig,
    relations=None,
    cone_eq: ConeEquation | None = None,
    anchors: tuple[int, int] | None = None,
) -> ConditionPair:
    """``g_{D,1}``, ``g_{D,2}`` for a (1)-ruling in the membership set."""
    universe = config.universe
    missing = [s for s in rescaling_symbols(config.r) if s not in universe]
    if missing:
        raise ValueError("configuration universe lacks the rescaling symbols; build it with extra=rescaling_symbols(r)")
    anchors = anchors or anchors_for(ruling)
    cone_eq = cone_eq or equation_for(ruling)
    if cone_eq.ruling.divisor != ruling.divisor or {p for p, _ in cone_eq.terms} != set(ruling.pairs):
        raise ValueError(f"cone equation {cone_eq.tag} does not match ruling {ruling.name}")
    if relations is None:
        relations = ruling_relations(ruling, config, anchors)
    if any(rel.anchors != anchors for rel in relations):
        raise ValueError(f"relations of {ruling.name} use different anchors than {anchors}")
    eps = cone_eq.signs()
    a1, a2 = anchors
    pairs = ruling.pairs
    g1 = _pair_factor(pairs[a1], universe) * eps[pairs[a1]]
    g2 = _pair_factor(pairs[a2], universe) * eps[pairs[a2]]
    for rel in relations:
        j = rel.index
        term = _pair_factor(pairs[j], universe) * eps[pairs[j]]
        g1 = g1 - term * rel.alpha
        g2 = g2 - term * rel.beta
    try:
        curve = CurveLabel.from_class(ruling.divisor - E1.divisor_class(ruling.r))
    except ValueError:
        curve = None
    return ConditionPair(ruling, curve, anchors, g1, g2)


def membership_conditions(config: PointConfig) -> list[ConditionPair]:
    return [build_conditions(R, config) for R in membership_set(config.r)]


# -- solving --------------------------------------------------------------------


@dataclass
class RescalingAssignment:
    """Solution of the conditions with ``eta'' = 1``, extended by the torus action.

    ``base`` maps every curve to its factor as a function of the free
    symbols ``xi''(E)`` for ``E`` meeting neither ``E1`` nor ``E2``
    (``eta''`` set to 1).  :meth:`values` and :meth:`expressions` restore
    arbitrary ``eta''``.
    """

    r: int
    universe: tuple[str, ...]
    free: tuple[CurveLabel, ...]
    base: dict[CurveLabel, ParamElement]
    stages: dict[CurveLabel, int]
    leftovers: tuple[tuple[str, ParamElement], ...]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def bound(self) -> tuple[CurveLabel, ...]:
        return tuple(c for c in enumerate_minus_one_curves(self.r) if c in self.stages)

    def free_symbols(self) -> list[str]:
        return [rescaling_symbol(c) for c in self.free]

    def _torus_weight(self, curve: CurveLabel, eta: Sequence) -> object:
        D = curve.divisor_class(self.r)
        w = 1
        for t, c in zip(eta, D.c):
            if c:
                w = w * (t**c if c > 0 else 1 / t ** (-c))
        return w

    def values(self, free_values: Mapping[CurveLabel, object]) -> dict[CurveLabel, ParamElement]:
        """Factors for explicit free values (rationals or ParamElements)."""
        missing = [str(c) for c in self.free if c not in free_values]
        if missing:
            raise ValueError(f"missing free values: {', '.join(missing)}")
        eta = [_as_element(free_values[_E(i)], self.universe) for i in range(1, self.r + 1)]
        if any(t.is_zero() for t in eta):
            raise ValueError("rescaling factors must be nonzero")
        subs = {}
        for c in self.free:
            if c.kind == "E":
                continue
            subs[rescaling_symbol(c)] = _as_element(free_values[c], self.universe) / self._torus_weight(c, eta)
        out = {}
        for c in enumerate_minus_one_curves(self.r):
            out[c] = self.base[c].subs(subs) * self._torus_weight(c, eta)
        return out

    def expressions(self) -> dict[CurveLabel, ParamElement]:
        """Factors with every free symbol, including ``eta''``, left symbolic."""
        return self.values({c: ParamElement.variable(self.universe, rescaling_symbol(c)) for c in self.free})

    def base_expressions(self) -> dict[CurveLabel, ParamElement]:
        return dict(self.base)

    def digest(self) -> str:
        h = hashlib.sha256()
        for c in enumerate_minus_one_curves(self.r):
            h.update(f"{c}={self.base[c]};".encode())
        return h.hexdigest()


def _as_element(value, universe) -> ParamElement:
    if isinstance(value, ParamElement):
        return value
    if isinstance(value, MultiPolynomial):
        return ParamElement.from_poly(value)
    return ParamElement.constant(universe, Fraction(value))


def _linear_parts(g: ParamElement, unknowns: Sequence[str]) -> list[ParamElement] | None:
    """``[c0, c_u1, c_u2, ...]`` with ``g = c0 + sum c_u u``; None if ``g`` is not linear."""
    den = ParamElement.from_poly(g.den)
    if any(u in g.den.variables_used() for u in unknowns):
        return None
    parts = g.num.coefficients_by(unknowns)
    zero = ParamElement.constant(g.variables, 0)
    out = [zero] * (len(unknowns) + 1)
    for exps, coeff in parts.items():
        deg = sum(exps)
        if deg > 1:
            return None
        pos = 0 if deg == 0 else 1 + exps.index(1)
        out[pos] = ParamElement.from_poly(coeff) / den
    return out


def solve_system(r: int, conditions: Sequence[ConditionPair]) -> RescalingAssignment:
    """Staged elimination with ``eta'' = 1``.

    In each pass every ruling whose two conditions involve at most two
    unsolved factors (given the previous passes) is solved: two unknowns by
    Cramer's rule, one unknown from ``g_{D,2}`` (or ``g_{D,1}`` if it does
    not occur there).  The remaining conditions are leftovers and must
    vanish identically.
    """
    t0 = time.perf_counter()
    if not conditions:
        raise ValueError("no conditions")
    universe = conditions[0].g1.variables
    one = ParamElement.constant(universe, 1)
    eta_subs = {rescaling_symbol(_E(i)): one for i in range(1, r + 1)}
    free = free_rescaling_curves(r)
    free_set = set(free)
    unknown_names = {rescaling_symbol(c) for c in enumerate_minus_one_curves(r) if c not in free_set}
    pending = [(cp, [cp.g1.subs(eta_subs), cp.g2.subs(eta_subs)]) for cp in conditions]
    bound: dict[str, ParamElement] = {}
    stages: dict[str, int] = {}
    leftovers: list[tuple[str, ParamElement]] = []
    stage = 0
    while pending:
        stage += 1
        snapshot = set(bound)
        remaining = []
        for cp, gs in pending:
            unknowns = sorted(
                {v for g in gs for v in g.variables_used() if v in unknown_names and v not in snapshot},
                key=universe.index,
            )
            if len(unknowns) > 2:
                remaining.append((cp, gs))
                continue
            current = {k: v for k, v in bound.items() if any(k in g.variables_used() for g in gs)}
            gs_sub = [g.subs(current) if current else g for g in gs]
            unknowns = sorted({v for g in gs_sub for v in g.variables_used() if v in unknown_names}, key=universe.index)
            parts = [_linear_parts(g, unknowns) for g in gs_sub]
            if any(p is None for p in parts):
                remaining.append((cp, gs))
                continue
            used = [False, False]
            if len(unknowns) == 2:
                (c0, a, b), (d0, c, d) = parts
                det = a * d - b * c
                if det.is_zero():
                    remaining.append((cp, gs))
                    continue
                u = (b * d0 - c0 * d) / det
                v = (c0 * c - a * d0) / det
                bound[unknowns[0]], bound[unknowns[1]] = u, v
                used = [True, True]
            elif len(unknowns) == 1:
                k = 1 if not parts[1][1].is_zero() else 0
                bound[unknowns[0]] = -parts[k][0] / parts[k][1]
                used[k] = True
            for u in unknowns:
                stages[u] = stage
            for k, g in enumerate(gs_sub):
                if not used[k]:
                    leftovers.append((f"g_{cp.name},{k + 1}", g))
        if len(remaining) == len(pending):
            names = ", ".join(cp.name for cp, _ in remaining)
            raise SolverError(f"elimination stuck at stage {stage} on {names}")
        pending = remaining
    # leftovers were reduced with the bindings known when they arose
    final_leftovers = []
    for name, g in leftovers:
        current = {k: v for k, v in bound.items() if k in g.variables_used()}
        value = g.subs(current) if current else g
        if not value.is_zero():
            raise SolverError(f"leftover condition {name} does not vanish: {value}")
        final_leftovers.append((name, value))
    base: dict[CurveLabel, ParamElement] = {}
    stage_map: dict[CurveLabel, int] = {}
    for c in enumerate_minus_one_curves(r):
        s = rescaling_symbol(c)
        if c.kind == "E":
            base[c] = one
        elif c in free_set:
            base[c] = ParamElement.variable(universe, s)
        elif s in bound:
            if bound[s].is_zero():
                raise SolverError(f"factor {s} is identically zero")
            base[c] = bound[s]
            stage_map[c] = stages[s]
        else:
            raise SolverError(f"factor {s} was not determined")
    expected_left = n_curves(r) - 2 * n_curves(r - 1) + n_curves(r - 2)
    if len(final_leftovers) != expected_left:
        raise SolverError(f"{len(final_leftovers)} leftover conditions, expected {expected_left}")
    return RescalingAssignment(
        r,
        universe,
        free,
        base,
        stage_map,
        tuple(final_leftovers),
        {"solve": time.perf_counter() - t0},
    )


def solve_configuration(config: PointConfig) -> tuple[list[ConditionPair], RescalingAssignment]:
    """Conditions for the membership set of ``config`` and their solution."""
    require_general_position(config)
    t0 = time.perf_counter()
    conds = membership_conditions(config)
    t1 = time.perf_counter()
    assignment = solve_system(config.r, conds)
    assignment.timings["conditions"] = t1 - t0
    return conds, assignment


# -- certification --------------------------------------------------------------


def equations_for_scope(r: int, scope: str) -> tuple[ConeEquation, ...]:
    if scope == "all":
        return cone_equations(r)
    if scope in ("M", "M_r", "membership"):
        return tuple(equation_for(R) for R in membership_set(r))
    raise ValueError(f"unknown scope {scope!r}; use 'all' or 'M'")


@dataclass
class EmbeddingCertificate:
    r: int
    mode: str
    scope: str
    config: dict
    free_values: dict[str, str]
    samples: list[list[str]]
    equation_status: dict[str, str]
    failures: list[dict]
    counts: dict[str, int]
    bound: dict[str, str] = field(default_factory=dict)
    seed: int | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_json(self, include_timings: bool = True) -> dict:
        out = {
            "status": self.status,
            "r": self.r,
            "mode": self.mode,
            "scope": self.scope,
            "seed": self.seed,
            "config": self.config,
            "free_values": self.free_values,
            "samples": self.samples,
            "counts": self.counts,
            "equations": self.equation_status,
            "failures": self.failures,
            "bound": self.bound,
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def certify_factors(
    factors: Mapping[CurveLabel, object],
    config: PointConfig,
    samples: Iterable[Sequence],
    scope: str = "all",
) -> EmbeddingCertificate:
    """Evaluate the cone equations on rescaled torsor points for explicit factors."""
    t0 = time.perf_counter()
    r = config.r
    elements = {c: config.element(v) if not isinstance(v, ParamElement) else v for c, v in factors.items()}
    zero = [str(c) for c in enumerate_minus_one_curves(r) if elements[c].is_zero()]
    if zero:
        raise ValueError(f"rescaling factors must be nonzero (zero at {', '.join(zero)})")
    eqs = equations_for_scope(r, scope)
    status = {eq.tag: "zero" for eq in eqs}
    failures = []
    sample_list = []
    evaluations = 0
    for q in samples:
        sample_list.append([str(v) for v in q])
        point = torsor_point(config, q)
        rescaled = {c: elements[c] * point[c] for c in point}
        for eq in eqs:
            value = eq.evaluate(rescaled)
            evaluations += 1
            if not value.is_zero():
                status[eq.tag] = "nonzero"
                failures.append({"equation": eq.tag, "sample": sample_list[-1], "residual": str(value)})
    cert = EmbeddingCertificate(
        r=r,
        mode=config.mode,
        scope=scope,
        config=config.to_json(),
        free_values={},
        samples=sample_list,
        equation_status=status,
        failures=failures,
        counts={
            "equations": len(eqs),
            "samples": len(sample_list),
            "evaluations": evaluations,
            "zero_equations": sum(1 for s in status.values() if s == "zero"),
        },
    )
    cert.timings["certify"] = time.perf_counter() - t0
    return cert


def certify_embedding(
    assignment: RescalingAssignment,
    config: PointConfig,
    samples: Iterable[Sequence],
    scope: str = "all",
    free_values: Mapping[CurveLabel, object] | None = None,
) -> EmbeddingCertificate:
    """Certificate for the assignment at the given free values over the sample points."""
    if free_values is None:
        raise ValueError("free values are required; use random_free_values for a sample")
    factors = assignment.values(free_values)
    cert = certify_factors(factors, config, samples, scope)
    cert.free_values = {rescaling_symbol(c): str(free_values[c]) for c in assignment.free}
    cert.counts.update(
        {
            "free_parameters": len(assignment.free),
            "bound_factors": len(assignment.stages),
            "leftover_conditions": len(assignment.leftovers),
        }
    )
    if assignment.r == 6:
        cert.bound = {rescaling_symbol(c): str(assignment.base[c]) for c in assignment.bound}
    else:
        cert.bound = {"digest": assignment.digest()}
    cert.timings.update(assignment.timings)
    return cert


def random_free_values(assignment: RescalingAssignment, config: PointConfig, rng: random.Random, bound: int = 7) -> dict[CurveLabel, Fraction]:
    """Nonzero rational free values keeping every factor nonzero (resampled otherwise)."""
    for _ in range(100):
        values = {}
        for c in assignment.free:
            v = 0
            while v == 0:
                v = rng.randint(-bound, bound)
            values[c] = Fraction(v, rng.choice((1, 1, 2)))
        try:
            factors = assignment.values(values)
        except ZeroDivisionError:
            continue
        if all(not f.is_zero() for f in factors.values()):
            return values
    raise DegenerateSpecialization("could not find free values with all factors nonzero")


def random_samples(config: PointConfig, rng: random.Random, count: int) -> list[tuple[int, int, int]]:
    return [random_plane_point(config, rng) for _ in range(count)]


def certify_symbolic(assignment: RescalingAssignment, config: PointConfig, scope: str = "all") -> EmbeddingCertificate:
    """Identity check over the generic plane point with all free symbols symbolic.

    With ``L`` a common denominator of the factors, each quadric times
    ``L^2`` is a polynomial in the parameters, the free symbols and
    ``x, y, z``; it must vanish identically.
    """
    t0 = time.perf_counter()
    r = config.r
    factors = assignment.expressions()
    L = MultiPolynomial.one(config.universe)
    for f in factors.values():
        if not f.den.is_one():
            L = L * f.den.exquo(poly_gcd(L, f.den))
    scaled = {c: f.num * L.exquo(f.den) for c, f in factors.items()}
    sections = all_sections(config)
    point = {}
    for c, sec in sections.items():
        if not sec.polynomial.den.is_one():
            raise ValueError("symbolic certification expects polynomial sections")
        point[c] = scaled[c] * sec.polynomial.num
    eqs = equations_for_scope(r, scope)
    status = {}
    failures = []
    for eq in eqs:
        value = eq.evaluate(point)
        ok = value.is_zero()
        status[eq.tag] = "zero" if ok else "nonzero"
        if not ok:
            failures.append({"equation": eq.tag, "sample": ["x", "y", "z"], "residual_terms": len(value)})
    cert = EmbeddingCertificate(
        r=r,
        mode="symbolic",
        scope=scope,
        config=config.to_json(),
        free_values={rescaling_symbol(c): rescaling_symbol(c) for c in assignment.free},
        samples=[["x", "y", "z"]],
        equation_status=status,
        failures=failures,
        counts={
            "equations": len(eqs),
            "samples": 1,
            "evaluations": len(eqs),
            "zero_equations": sum(1 for s in status.values() if s == "zero"),
            "free_parameters": len(assignment.free),
            "bound_factors": len(assignment.stages),
            "leftover_conditions": len(assignment.leftovers),
        },
        bound={rescaling_symbol(c): str(assignment.base[c]) for c in assignment.bound},
    )
    cert.timings.update(assignment.timings)
    cert.timings["certify"] = time.perf_counter() - t0
    return cert


# -- torus action ----------------------------------------------------------------


def torus_character(curve: CurveLabel, t: Sequence, r: int):
    """``t^[E] = t0^d * prod t_i^{c_i}`` for ``[E] = d H + sum c_i E_i``."""
    D = curve.divisor_class(r)
    w = Fraction(1) if not isinstance(t[0], ParamElement) else t[0] * 0 + 1
    for ti, c in zip(t, D.vector):
        if c > 0:
            w = w * ti**c
        elif c < 0:
            w = w / ti ** (-c)
    return w


def torus_act(factors: Mapping[CurveLabel, object], t: Sequence, r: int) -> dict[CurveLabel, object]:
    """Multiply each factor by ``t^[E]``; ``t`` has ``r + 1`` nonzero entries."""
    if len(t) != r + 1 or any(v == 0 for v in t):
        raise ValueError("a torus element has r + 1 nonzero entries")
    return {c: v * torus_character(c, t, r) for c, v in factors.items()}


def torus_act_free(free_values: Mapping[CurveLabel, object], t: Sequence, r: int) -> dict[CurveLabel, object]:
    return {c: v * torus_character(c, t, r) for c, v in free_values.items()}


def is_divisor_homogeneous(g: ParamElement, D: DivisorClass) -> bool:
    """Every monomial in the rescaling symbols has total class ``D``."""
    r = D.r
    classes = {rescaling_symbol(c): c.divisor_class(r) for c in enumerate_minus_one_curves(r)}
    names = [v for v in g.variables if v in classes]
    for exps in g.num.coefficients_by(names):
        total = DivisorClass(r, 0, (0,) * r)
        for name, e in zip(names, exps):
            total = total + classes[name] * e
        if total != D:
            return False
    return True


def neighbor_counts(r: int) -> dict[str, int]:
    return {
        "N(E1)_0": len(neighbors(E1, 0, r)),
        "N(E1)_>0": sum(len(neighbors(E1, k, r)) for k in (1, 2)),
    }


__all__ = [
    "ConditionPair",
    "EmbeddingCertificate",
    "RescalingAssignment",
    "SolverError",
    "TorsorPointError",
    "anchors_for",
    "build_conditions",
    "certify_embedding",
    "certify_factors",
    "certify_symbolic",
    "count_free_parameters",
    "image_family_dimension",
    "membership_conditions",
    "random_free_values",
    "random_samples",
    "rescaling_symbol",
    "rescaling_symbols",
    "solve_configuration",
    "solve_system",
    "torus_act",
    "torus_character",
]
