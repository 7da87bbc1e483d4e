import random
from fractions import Fraction

import pytest

from coxembed.coxring import random_config
from coxembed.lattice import CurveLabel, DivisorClass, enumerate_minus_one_curves, membership_set
from coxembed.rescaling import (
    SolverError,
    anchors_for,
    build_conditions,
    certify_embedding,
    certify_factors,
    certify_symbolic,
    count_free_parameters,
    free_rescaling_curves,
    image_family_dimension,
    is_divisor_homogeneous,
    random_free_values,
    random_samples,
    rescaling_symbol,
    rescaling_symbols,
    solve_configuration,
    solve_system,
    torus_act,
    torus_character,
    xi_sets,
)
from fixtures_degree3 import G_LIST, MU12_PRINTED, SOLUTIONS, STAGE_TWO, fixture, pp


def _curve(short):
    return CurveLabel.from_symbol(pp(short)[:-2], 6)


def test_twenty_conditions_match(solved6, cfg6):
    conds, _ = solved6
    assert len(conds) == 10
    got = {cp.name: cp for cp in conds}
    assert set(got) == set(G_LIST)
    for name, (g1, g2) in G_LIST.items():
        assert got[name].g1 == fixture(g1, cfg6.universe), f"g_{name},1"
        assert got[name].g2 == fixture(g2, cfg6.universe), f"g_{name},2"


@pytest.mark.parametrize("table", [SOLUTIONS, STAGE_TWO], ids=["first-stage", "second-stage"])
def test_closed_forms(solved6, cfg6, table):
    _, asg = solved6
    stage = 1 if table is SOLUTIONS else 2
    for short, text in table.items():
        c = _curve(short)
        assert asg.base[c] == fixture(text, cfg6.universe), short
        assert asg.stages[c] == stage


def test_printed_mu12_violates_conditions(solved6, cfg6):
    conds, asg = solved6
    g2 = {cp.name: cp for cp in conds}["E1+m12"].g2
    u = cfg6.universe
    subs = {s: 1 for s in (f"eta{i}pp" for i in range(1, 7))}
    subs.update({rescaling_symbol(_curve(k)): fixture(v, u) for k, v in SOLUTIONS.items()})
    printed = dict(subs, mu12pp=fixture(MU12_PRINTED, u))
    assert not g2.subs(printed).is_zero()
    assert g2.subs(dict(subs, mu12pp=asg.base[_curve("m12")])).is_zero()
    assert asg.base[_curve("m12")] - fixture(MU12_PRINTED, u) == fixture("-2*m34", u)


def test_leftovers_and_counts(solved6):
    _, asg = solved6
    assert sorted(name for name, _ in asg.leftovers) == sorted(
        f"g_E1+{e},1" for e in ("m12", "Q3", "Q4", "Q5", "Q6")
    )
    assert all(v.is_zero() for _, v in asg.leftovers)
    assert len(asg.stages) == 15 and len(asg.free) == 12
    assert set(asg.free_symbols()) == {f"eta{i}pp" for i in range(1, 7)} | {
        f"mu{i}{j}pp" for i in range(3, 7) for j in range(i + 1, 7)
    }


def test_conditions_are_homogeneous(solved6):
    conds, _ = solved6
    for cp in conds:
        for g in cp.conditions():
            assert is_divisor_homogeneous(g, cp.ruling.divisor)


def test_counts():
    assert count_free_parameters(6) == 12 and count_free_parameters(7) == 18
    assert image_family_dimension(6) == 5 and image_family_dimension(7) == 10
    assert image_family_dimension(5) == 2
    with pytest.raises(ValueError):
        count_free_parameters(5)
    sizes = {k: len(v) for k, v in xi_sets(7).items()}
    assert sizes[(0, 0)] == 16 and sizes[(1, 0)] == 10 and sizes[(0, 1)] == 10 and sizes[(1, 1)] == 16
    assert sizes[(2, 1)] == 1 and sizes[(1, 2)] == 1


def test_symbolic_certificate(solved6, cfg6):
    _, asg = solved6
    cert = certify_symbolic(asg, cfg6)
    assert cert.passed and cert.counts["zero_equations"] == 27


def test_bound_factors_are_nonzero(solved6):
    _, asg = solved6
    for c in asg.bound:
        assert not asg.base[c].is_zero()
        assert not asg.base[c].num.is_zero()


@pytest.fixture(scope="module", params=[1, 2, 3])
def solved7(request):
    rng = random.Random(request.param)
    cfg = random_config(7, rng, extra=rescaling_symbols(7))
    conds, asg = solve_configuration(cfg)
    return rng, cfg, conds, asg


def test_degree_two_system(solved7):
    _, cfg, conds, asg = solved7
    assert len(conds) == 28 and 2 * len(conds) == 56
    assert len(asg.stages) == 38 and len(asg.leftovers) == 18 and len(asg.free) == 18
    assert all(not asg.base[c].is_zero() for c in asg.bound)
    lam1, lam2 = CurveLabel("C", (1,)), CurveLabel("C", (2,))
    assert asg.stages[lam1] >= 2 and asg.stages[lam2] >= 2
    assert any(cp.ruling.symbol == "D(3)_2,1" for cp in conds)


def test_degree_two_certificate(solved7):
    rng, cfg, _, asg = solved7
    fv = random_free_values(asg, cfg, rng)
    samples = random_samples(cfg, rng, 4)
    assert certify_embedding(asg, cfg, samples, "all", fv).passed
    assert certify_embedding(asg, cfg, samples, "M", fv).counts["equations"] == 28


def test_negative_control():
    rng = random.Random(8)
    cfg = random_config(6, rng, extra=rescaling_symbols(6))
    samples = random_samples(cfg, rng, 3)
    ones = {c: 1 for c in enumerate_minus_one_curves(6)}
    cert = certify_factors(ones, cfg, samples, "M")
    assert not cert.passed and cert.failures[0]["equation"]
    with pytest.raises(ValueError, match="nonzero"):
        certify_factors({c: 0 for c in enumerate_minus_one_curves(6)}, cfg, samples)


def test_torus_equivariance():
    rng = random.Random(21)
    cfg = random_config(6, rng, extra=rescaling_symbols(6))
    _, asg = solve_configuration(cfg)
    fv = random_free_values(asg, cfg, rng)
    samples = random_samples(cfg, rng, 3)
    old = asg.values(fv)
    t = [Fraction(3), Fraction(-2, 5), Fraction(7), Fraction(1, 2), Fraction(-1), Fraction(5, 3), Fraction(2)]
    new = torus_act(old, t, 6)
    assert certify_factors(new, cfg, samples).passed
    # acting on the free parameters gives the same factors
    moved = {c: v * torus_character(c, t, 6) for c, v in fv.items()}
    assert asg.values(moved) == new
    with pytest.raises(ValueError):
        torus_act(old, t[:-1], 6)


def test_anchor_mismatch(cfg6):
    R = membership_set(6)[0]
    from coxembed.coxring import ruling_relations

    rels = ruling_relations(R, cfg6, (0, 1))
    if (0, 1) != anchors_for(R):
        with pytest.raises(ValueError, match="anchors"):
            build_conditions(R, cfg6, relations=rels)


def test_universe_must_carry_rescaling_symbols():
    from coxembed.coxring import PointConfig

    with pytest.raises(ValueError):
        build_conditions(membership_set(6)[0], PointConfig.symbolic(6))


def test_nonvanishing_leftover_is_reported(solved6):
    conds, _ = solved6
    broken = list(conds)
    cp = broken[0]
    one = cp.g1 * 0 + 1
    broken[0] = type(cp)(cp.ruling, cp.curve, cp.anchors, cp.g1 + one * 0 + cp.g2 * 0 + one, cp.g2)
    with pytest.raises(SolverError):
        solve_system(6, broken)


def test_free_curves():
    assert free_rescaling_curves(7)[:2] == (CurveLabel("E", (1,)), CurveLabel("E", (2,)))
    assert rescaling_symbol(CurveLabel("Q", (1, 2))) == "nu12pp"
    assert CurveLabel("Q", (1, 2)) in free_rescaling_curves(7)
    assert DivisorClass.exceptional(7, 1).degree() == 1
