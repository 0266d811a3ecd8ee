"""Quotient trace-passing: closed forms against the ideal-vanishing scan,
and the inclusion chain of the three defining ideals."""

from fractions import Fraction

import pytest

from framelink.algebra import AlgebraElement, quotient_generator
from framelink.esystem import enumerate_solutions
from framelink.quotients import (
    QuotientCheck,
    _scan,
    admissible,
    ideal_inclusion,
    quotient_report,
    trace_vanishes_on_ideal,
)
from framelink.scalars import RatFunc, U

Z_TL = -(U + 1) ** -1
HALF = Fraction(1, 2)


def both(check):
    """Closed form and scan must agree; returns the shared verdict."""
    a = admissible(check)
    assert trace_vanishes_on_ideal(check) == a
    return a


# -- parameter validation ----------------------------------------------------


def test_rejects_unknown_kind():
    with pytest.raises(ValueError):
        QuotientCheck("tl", 1, -1)


def test_rejects_wrong_xs_length():
    with pytest.raises(ValueError):
        QuotientCheck("ytl", 2, -1)
    with pytest.raises(ValueError):
        QuotientCheck("ytl", 1, -1, (1,))


def test_rejects_small_n():
    with pytest.raises(ValueError):
        QuotientCheck("ytl", 1, -1, n=2)


def test_large_n_needs_flag():
    with pytest.raises(ValueError):
        trace_vanishes_on_ideal(QuotientCheck("ytl", 1, -1, n=4))


def test_parameter_coercion():
    c = QuotientCheck("ytl", 2, -HALF, (Fraction(0),))
    assert isinstance(c.zval, RatFunc)
    assert isinstance(c.xs[0], RatFunc)
    assert set(c.substitution()) == {"z", "x1"}


# -- ytl ---------------------------------------------------------------------


@pytest.mark.parametrize("z,want", [
    (Z_TL, True),
    (-1, True),
    (5, False),
    (-HALF, False),
    (Fraction(1, 3), False),
])
def test_ytl_d1(z, want):
    assert both(QuotientCheck("ytl", 1, z)) is want


@pytest.mark.parametrize("x1,z,want", [
    (1, -1, True),
    (-1, -1, True),
    (1, Z_TL, True),
    (-1, Z_TL, True),
    (0, -HALF, True),
    (5, -1, False),
    (1, -HALF, False),
    (0, -1, False),
    (0, Z_TL, False),
    (Fraction(1, 2), -HALF, False),
])
def test_ytl_d2(x1, z, want):
    assert both(QuotientCheck("ytl", 2, z, (x1,))) is want


def test_ytl_d2_census():
    # every d=2 subset solution passes with the z values of its size class
    for sol in enumerate_solutions(2):
        zs = (Z_TL, RatFunc.const(-1)) if sol.size() == 1 else (RatFunc.const(-HALF),)
        for z in zs:
            assert both(QuotientCheck("ytl", 2, z, tuple(sol.x[1:])))


# -- ftl ---------------------------------------------------------------------


def test_ftl_pure_support_values():
    # pure solution support: all of D in one block, z = -1/|D| or -1/((u+1)|D|)
    for d in (1, 2):
        for sol in enumerate_solutions(d):
            m = sol.size()
            for z in (Fraction(-1, m), -((U + 1) * m) ** -1):
                assert both(QuotientCheck("ftl", d, z, tuple(sol.x[1:])))


def test_ftl_two_value_family():
    # d=2 with y_0, y_1 split across both blocks: z = -1/(u+2), x_1 = -+ u/(u+2)
    z = -(U + 2) ** -1
    for x1 in (-U * (U + 2) ** -1, U * (U + 2) ** -1):
        assert both(QuotientCheck("ftl", 2, z, (x1,)))
    assert not both(QuotientCheck("ftl", 2, Z_TL, (U * (U + 2) ** -1,)))


@pytest.mark.parametrize("x1,z", [
    (1, 5),
    (1, -HALF),
    (0, -1),
    (3, Z_TL),
])
def test_ftl_rejects(x1, z):
    assert not both(QuotientCheck("ftl", 2, z, (x1,)))


def test_ftl_d3_closed_form():
    # closed form only at d=3; the scan runs in the acceptance grid
    for sol in enumerate_solutions(3):
        m = sol.size()
        xs = tuple(sol.x[1:])
        assert admissible(QuotientCheck("ftl", 3, Fraction(-1, m), xs))
        assert admissible(QuotientCheck("ftl", 3, -((U + 1) * m) ** -1, xs))
        # a mixed-block z never fits a solution's single-valued transform
        if m == 2:
            assert not admissible(QuotientCheck("ftl", 3, -(U + 2) ** -1, xs))


# -- ctl ---------------------------------------------------------------------


@pytest.mark.parametrize("z,want", [
    (-1, True),
    (Z_TL, True),
    (5, False),
    (Fraction(1, 3), False),
    (-HALF, False),
])
def test_ctl_d1(z, want):
    assert both(QuotientCheck("ctl", 1, z)) is want


def test_ctl_d2_support_without_zero():
    # sum of x over Z/d vanishes, so the condition holds for every z
    sol = next(s for s in enumerate_solutions(2) if s.D == (1,))
    for z in (7, Fraction(2, 5), -1, Z_TL):
        assert both(QuotientCheck("ctl", 2, z, tuple(sol.x[1:])))


@pytest.mark.parametrize("D,roots,nonroots", [
    ((0,), (-1, Z_TL), (-HALF, 4)),
    ((0, 1), (-HALF, -((U + 1) * 2) ** -1), (-1, Z_TL)),
])
def test_ctl_d2_support_with_zero(D, roots, nonroots):
    sol = next(s for s in enumerate_solutions(2) if s.D == D)
    xs = tuple(sol.x[1:])
    for z in roots:
        assert both(QuotientCheck("ctl", 2, z, xs))
    for z in nonroots:
        assert not both(QuotientCheck("ctl", 2, z, xs))


def test_ctl_d2_non_solution_points():
    # closed form and scan agree off the solution variety too
    for x1, z in ((3, -1), (Fraction(1, 2), -HALF), (0, -1)):
        both(QuotientCheck("ctl", 2, z, (x1,)))


# -- deep double loop validates the reduction --------------------------------


@pytest.mark.parametrize("check", [
    QuotientCheck("ytl", 1, Z_TL),
    QuotientCheck("ytl", 1, 5),
    QuotientCheck("ytl", 2, -1, (5,)),
    QuotientCheck("ftl", 2, -HALF, (0,)),
], ids=["ytl1-pass", "ytl1-fail", "ytl2-fail", "ftl2-pass"])
def test_deep_loop_agrees(check):
    assert trace_vanishes_on_ideal(check, deep=True) == trace_vanishes_on_ideal(check)


def test_deep_pairs_spot_check_d3():
    # the full double loop is impractical at d=3; sample pairs directly
    import random

    from framelink.algebra import AlgebraElement, split_basis
    from framelink.trace import TraceParams, Tracer

    sol = next(s for s in enumerate_solutions(3) if s.D == (0, 1))
    check = QuotientCheck("ftl", 3, Fraction(-1, 2), tuple(sol.x[1:]))
    assert trace_vanishes_on_ideal(check)
    gen = quotient_generator("ftl", 3, 3, 1)
    tracer = Tracer(TraceParams(3, check.xs), z=check.zval)
    words = list(split_basis(3, 3))
    rng = random.Random(17)
    for frm_a, perm_a in rng.sample(words, 6):
        frm_b, perm_b = rng.choice(words)
        a = AlgebraElement.from_word(3, 3, frm_a, perm_a)
        b = AlgebraElement.from_word(3, 3, frm_b, perm_b)
        assert tracer.trace(a * gen * b).is_zero()


def test_witness_pair_is_genuine():
    # the reported witness must evaluate nonzero in the literal double loop
    from framelink.algebra import AlgebraElement
    from framelink.trace import TraceParams, Tracer

    check = QuotientCheck("ytl", 2, -1, (5,))
    verdict, witness = _scan(check)
    assert verdict is False
    (frm_a, perm_a), (frm_b, perm_b), _ = witness
    gen = quotient_generator("ytl", 2, 3, 1)
    tracer = Tracer(TraceParams(2, check.xs), z=check.zval)
    a = AlgebraElement.from_word(2, 3, frm_a, perm_a)
    b = AlgebraElement.from_word(2, 3, frm_b, perm_b)
    assert not tracer.trace(a * gen * b).is_zero()


# -- reports -----------------------------------------------------------------


def test_report_failing_has_witness():
    rep = quotient_report(QuotientCheck("ytl", 1, 5))
    assert rep["verdict"] is False
    assert rep["kind"] == "ytl" and rep["d"] == 1
    wit = rep["witness"]
    assert set(wit) == {"a", "b", "value"}
    assert all(isinstance(v, str) and v for v in wit.values())
    assert wit["value"] != "0"


def test_report_passing_has_no_witness():
    rep = quotient_report(QuotientCheck("ytl", 1, -1))
    assert rep["verdict"] is True
    assert "witness" not in rep
    assert rep["params"]["z"] == "-1"


# -- ideal inclusion chain ---------------------------------------------------


def test_generators_coincide_at_d1():
    g = quotient_generator("ytl", 1, 3, 1)
    assert quotient_generator("ftl", 1, 3, 1).terms == g.terms
    assert quotient_generator("ctl", 1, 3, 1).terms == g.terms


@pytest.mark.parametrize("d", [1, 2])
def test_chain_inclusions(d):
    g = quotient_generator("ytl", d, 3, 1)
    r = quotient_generator("ftl", d, 3, 1)
    c = quotient_generator("ctl", d, 3, 1)
    assert ideal_inclusion(r, g, d)
    assert ideal_inclusion(c, r, d)
    assert ideal_inclusion(c, g, d)


def test_unit_outside_proper_ideal():
    assert not ideal_inclusion(AlgebraElement.unit(1, 3),
                               quotient_generator("ytl", 1, 3, 1), 1)


def test_chain_strict_at_d2():
    # the ftl ideal is properly smaller than the ytl ideal once d > 1
    assert not ideal_inclusion(quotient_generator("ytl", 2, 3, 1),
                               quotient_generator("ftl", 2, 3, 1), 2)


def test_inclusion_rejects_mismatched_algebra():
    with pytest.raises(ValueError):
        ideal_inclusion(quotient_generator("ytl", 1, 3, 1),
                        quotient_generator("ytl", 2, 3, 1), 2)
