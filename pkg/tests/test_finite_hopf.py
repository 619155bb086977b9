"""Table-driven finite Hopf algebras: group algebra, function algebra, H4."""

import pytest

from twistcalc.finite_hopf import function_algebra_z, group_algebra_z, sweedler_h4
from twistcalc.hopf_checks import hopf_axiom_report


def test_group_algebra_axioms(plain_ctx):
    rep = hopf_axiom_report(group_algebra_z(plain_ctx, 2))
    assert rep.passed, rep.format_text()


def test_group_algebra_s_squared(plain_ctx):
    h = group_algebra_z(plain_ctx, 2)
    assert h.is_commutative() and h.is_cocommutative()
    for i in range(h.dim):
        assert h.antipode_vec(h.antipode_vec(h.basis_vec(i))) == h.basis_vec(i)


def test_function_algebra_axioms(plain_ctx):
    rep = hopf_axiom_report(function_algebra_z(plain_ctx, 2))
    assert rep.passed, rep.format_text()


def test_function_algebra_z3(plain_ctx):
    rep = hopf_axiom_report(function_algebra_z(plain_ctx, 3))
    assert rep.passed, rep.format_text()


def test_sweedler_axioms_and_s2(plain_ctx):
    h = sweedler_h4(plain_ctx)
    rep = hopf_axiom_report(h)
    assert rep.passed, rep.format_text()
    assert not h.is_commutative()
    assert not h.is_cocommutative()
    # S^2 flips the sign of x: S(x) = -gx, S(-gx) = -x
    ix = h.names.index("x")
    twice = h.antipode_vec(h.antipode_vec(h.basis_vec(ix)))
    assert twice == {ix: -h.ctx.one}
    # S^4 = id
    four = h.antipode_vec(h.antipode_vec(twice))
    assert four == h.basis_vec(ix)


def test_counit_algebra_map_enforced(plain_ctx):
    from twistcalc.finite_hopf import FiniteHopf
    with pytest.raises(ValueError):
        FiniteHopf(plain_ctx, ["1", "g"],
                   unit={"1": 1},
                   mult={("1", "1"): {"1": 1}, ("1", "g"): {"g": 1},
                         ("g", "1"): {"g": 1}, ("g", "g"): {"1": 1}},
                   coproduct={"1": {("1", "1"): 1}, "g": {("g", "g"): 1}},
                   counit={"1": 1, "g": 2},   # not multiplicative on g*g
                   antipode={"1": {"1": 1}, "g": {"g": 1}})
