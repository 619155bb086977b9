"""Acceptance suite: one criterion per test, exact residuals, timed.

Every check is an exact symbolic identity (zero residual in canonical form);
the stated runtime budgets are asserted.  Three closed-form table entries of
the hyperboloid configuration are quoted in the reference material with
internal inconsistencies (see the decisions ledger); they are asserted
verbatim in strict-xfail tests right below the criterion they belong to,
and the values forced by the defining data are asserted green.
"""

import random
import time
from fractions import Fraction

import pytest

from twistcalc.finite_hopf import function_algebra_z, group_algebra_z, sweedler_h4
from twistcalc.hopf_checks import hopf_axiom_report
from twistcalc.lie import abelian, sl2, so21
from twistcalc.starcalc import (ConstantPoisson, TwistedCalculus,
                                hbar_coefficient, moyal_setup, moyal_star,
                                poisson_from_r)
from twistcalc.submanifolds import twist_project_report
from twistcalc.twists import (ClassicalR, abelian_twist, check_unitary,
                              classical_r, cybe_check, jordanian_twist,
                              schouten_square, symplectic_leaf, trivial_twist,
                              twisted_antipode, twisted_coproduct,
                              verify_rmatrix, verify_twist)


def _report(number, label, seconds, budget):
    status = "PASS"
    print("criterion %2d [%s] %-58s %6.2f s (budget %g s)"
          % (number, status, label, seconds, budget))
    assert seconds < budget, "criterion %d exceeded its %gs budget" % (number, budget)


def test_criterion_01_hopf_axiom_suite(plain_ctx):
    t0 = time.perf_counter()
    algebras = [so21(plain_ctx), sl2(plain_ctx), abelian(plain_ctx, ("X", "Y")),
                group_algebra_z(plain_ctx, 2), function_algebra_z(plain_ctx, 2),
                sweedler_h4(plain_ctx)]
    for alg in algebras:
        rep = hopf_axiom_report(alg, degree_bound=3)
        assert rep.passed, rep.format_text()
    # S^2 = id exactly where (co)commutative; informational otherwise
    h4 = sweedler_h4(plain_ctx)
    ix = h4.names.index("x")
    assert h4.antipode_vec(h4.antipode_vec(h4.basis_vec(ix))) == {ix: -plain_ctx.one}
    _report(1, "Hopf axioms: so(2,1), sl2, abelian, kZ2, FZ2, Sweedler",
            time.perf_counter() - t0, 5.0)


@pytest.fixture(scope="module")
def twists(plain_ctx, so21_alg):
    ab_alg = abelian(plain_ctx, ("X", "Y"), anti_hermitian=True)
    return {
        "trivial": trivial_twist(so21_alg),
        "abelian": abelian_twist(ab_alg, [("X", "Y")], scale=plain_ctx.i),
        "jordanian": jordanian_twist(so21_alg, "H", "E", scale=plain_ctx.i),
    }


def test_criterion_02_twist_suite(twists):
    t0 = time.perf_counter()
    for name, twist in twists.items():
        rep = verify_twist(twist)
        assert rep.passed, "%s:\n%s" % (name, rep.format_text())
    _report(2, "twist normalization + 2-cocycle at order 4 (3 twists)",
            time.perf_counter() - t0, 10.0)


def test_criterion_03_rmatrix_suite(twists):
    t0 = time.perf_counter()
    for name, twist in twists.items():
        rep = verify_rmatrix(twist)
        assert rep.passed, "%s:\n%s" % (name, rep.format_text())
    _report(3, "R_F = F21 F^-1: quasi-cocomm, hexagons, QYBE, triangularity",
            time.perf_counter() - t0, 30.0)


def test_criterion_04_table_reproduction(model):
    t0 = time.perf_counter()
    calc = model.calc
    x1, x2, x3 = model.x
    i, h, s = model.ctx.i, model.ctx.hbar(), model.sqrt_a
    inv_s = s / model.a
    # the seven nontrivial star products (x1*x3 with the hbar^2 coefficient
    # forced by the E-action; the quoted -1 is asserted in the xfail below)
    assert calc.star(x1, x1) == x1 * x1
    assert calc.star(x1, x2) == x1 * x2 - x1 * x1 * (i * inv_s) * h
    assert calc.star(x1, x3) == x1 * x3 + x1 * x2 * (2 * i * s) * h \
        + x1 * x1 * h * h * 2
    for xi in model.x:
        assert calc.star(x2, xi) == x2 * xi
    assert calc.star(x3, x1) == x1 * x3
    assert calc.star(x3, x2) == x2 * x3 + x1 * x3 * (i * inv_s) * h
    assert calc.star(x3, x3) == x3 * x3 - x2 * x3 * (2 * i * s) * h
    # twisted coproducts and antipodes to order 4
    coproducts = model.expected_twisted_coproducts()
    antipodes = model.expected_twisted_antipodes()
    for name in ("H", "E", "Ep"):
        el = model.alg.generator(name)
        assert twisted_coproduct(model.twist, el) == coproducts[name]
        assert twisted_antipode(model.twist, el) == antipodes[name]
    # twisted involution of the coordinates
    assert calc.involution(x1) == x1
    assert calc.involution(x2) == x2
    assert calc.involution(x3) == x3 - x2 * (2 * i * s) * h
    # the deformed constraint reduces to zero
    constraint = (calc.star(x3, x1) * Fraction(1, 2)
                  + calc.star(x2, x2) * (model.a * Fraction(1, 2))
                  + model.chart.constant(model.c))
    assert model.ideal.reduce(constraint).is_zero
    _report(4, "hyperboloid tables: 7 star products, Delta_F, S_F, *_F, constraint",
            time.perf_counter() - t0, 20.0)


@pytest.mark.xfail(strict=True, reason="quoted hbar^2 coefficient of x1*x3 "
                   "contradicts the E-action table it derives from")
def test_criterion_04_quoted_x1_x3(model):
    assert model.calc.star(model.x[0], model.x[2]) == model.quoted_star_x1_x3()


@pytest.mark.xfail(strict=True, reason="quoted Delta_F(E') inherits a sign slip "
                   "in the inductive commutation identity (fails at n=2)")
def test_criterion_04_quoted_coproduct_ep(model):
    el = model.alg.generator("Ep")
    assert twisted_coproduct(model.twist, el) == model.quoted_coproduct_ep()


@pytest.mark.xfail(strict=True, reason="quoted S_F(E') inherits the same slip")
def test_criterion_04_quoted_antipode_ep(model):
    el = model.alg.generator("Ep")
    assert twisted_antipode(model.twist, el) == model.quoted_antipode_ep()


def test_criterion_04_erratum_is_in_the_source_data(model):
    """The commutation identity the quoted closed forms rely on fails at
    n = 2 while its base case holds, so the engine values are the consistent
    ones (the full localization lives in test_twists/test_star)."""
    ctx = model.ctx
    g = model.alg
    E, Ep, H = g.generator("E"), g.generator("Ep"), g.generator("H")
    i, h = ctx.i, ctx.hbar()
    log = g.zero_el()
    for n in range(1, ctx.order + 1):
        log = log + (E ** n).scale(
            ctx.series([0] * n + [(-1) ** (n + 1) * Fraction(1, n)]) * i ** n)
    inv1 = model.geometric_inverse(1)
    inv2 = model.geometric_inverse(2)
    # base case of the commutation identity holds ...
    assert log * Ep == Ep * log - (H * inv1).scale(h * i) + (E * inv2).scale(h * h)
    # ... but the quoted n = 2 instance does not
    lhs = (log * log) * Ep
    quoted = (Ep * (log * log) - (H * log * inv1).scale(h * i * 2)
              + (E * inv2 * log).scale(h * h * 2) + (E * inv2).scale(h * h * 2))
    assert lhs != quoted
    corrected = (Ep * (log * log) - (H * log * inv1).scale(h * i * 2)
                 + (E * inv2 * log).scale(h * h * 2) - (E * inv2).scale(h * h * 2))
    assert lhs == corrected
    # and E^2 acts on x3 with coefficient -2, not +1
    assert model.real.act(E * E, model.x[2]) == model.x[0] * (-2)


def test_criterion_05_braided_cartan(model):
    t0 = time.perf_counter()
    triv = TwistedCalculus(model.real, trivial_twist(model.alg))
    rep = triv.cartan_report()
    assert rep.passed, rep.format_text()
    rep = model.calc.cartan_report()
    assert rep.passed, rep.format_text()
    _report(5, "braided Cartan identities (trivial + Jordanian, order 4, D=3)",
            time.perf_counter() - t0, 60.0)


def test_criterion_06_correspondence_principle(model, plain_ctx):
    t0 = time.perf_counter()
    calc = model.calc
    r = classical_r(model.twist)
    monos = []
    for e1 in range(3):
        for e2 in range(3):
            for e3 in range(3):
                if 1 <= e1 + e2 + e3 <= 2:
                    from twistcalc.geometry import PolyFunction
                    monos.append(PolyFunction(
                        model.chart,
                        {(e1, e2, e3): model.ctx.series([1])}))
    for f in monos:
        for g in monos:
            comm = calc.star(f, g) - calc.star(g, f)
            assert hbar_coefficient(comm, 0).is_zero
            assert hbar_coefficient(comm, 1) == poisson_from_r(model.real, r, f, g)
    # Moyal on R^2 with pi12 = 1/2: [x, y]_star = hbar, and the twist-induced
    # star agrees with the direct exponential formula
    from twistcalc.geometry import CoordSystem
    chart2 = CoordSystem(plain_ctx, 2, names=("x", "y"))
    pi = ConstantPoisson(chart2, {(0, 1): Fraction(1, 2), (1, 0): Fraction(-1, 2)})
    real2, twist2 = moyal_setup(pi)
    calc2 = TwistedCalculus(real2, twist2)
    x, y = chart2.coordinate(0), chart2.coordinate(1)
    assert calc2.star(x, y) - calc2.star(y, x) == chart2.one_fn() * plain_ctx.hbar()
    rng = random.Random(41)
    from twistcalc.geometry import PolyFunction
    for _ in range(10):
        f = PolyFunction(chart2, {(rng.randint(0, 2), rng.randint(0, 2)):
                                  plain_ctx.series([rng.randint(-2, 2)])})
        g = PolyFunction(chart2, {(rng.randint(0, 2), rng.randint(0, 2)):
                                  plain_ctx.series([rng.randint(-3, 3)])})
        assert calc2.star(f, g) == moyal_star(pi, f, g)
    _report(6, "correspondence principle + Moyal convention consistency",
            time.perf_counter() - t0, 30.0)


def test_criterion_07_r_matrix_theory(model, plain_ctx, so21_alg):
    t0 = time.perf_counter()
    r = classical_r(model.twist)
    assert cybe_check(r).is_zero
    assert schouten_square(r).is_zero
    leaf = symplectic_leaf(ClassicalR.from_wedge(so21_alg, {("H", "E"): 1}))
    assert sorted(el.to_text() for el in leaf) == ["E", "H"]
    _report(7, "classical r-matrix: CYBE, Schouten square, symplectic leaf",
            time.perf_counter() - t0, 10.0)


def test_criterion_08_connections(model):
    from twistcalc.connections import connection_report, twist_nabla
    t0 = time.perf_counter()
    conn = model.connection
    assert not conn.gamma   # Levi-Civita of the Minkowski metric is flat
    chart = model.chart
    i, h = model.ctx.i, model.ctx.hbar()
    twoi = chart.constant(2 * i) * h
    onei = chart.constant(i) * h
    H, E, Ep = model.H, model.E, model.Ep
    nabF = lambda x, y: twist_nabla(model.real, model.twist, conn, x, y)
    nab = conn.nabla
    assert nabF(E, H) == nab(E, H) + nab(E, E).scale(twoi)
    assert nabF(Ep, H) == nab(Ep, H) - nab(Ep, E).scale(twoi)
    assert nabF(E, Ep) == nab(E, Ep) + nab(E, H).scale(onei) \
        - nab(E, E).scale(chart.constant(2) * h * h)
    assert nabF(Ep, Ep) == nab(Ep, Ep) - nab(Ep, H).scale(onei)
    frame = [H, E, Ep] + [chart.coordinate_field(k) for k in range(3)]
    rep = connection_report(model.real, model.twist, conn, model.metric,
                            frame=frame)
    assert rep.passed, rep.format_text()
    _report(8, "Levi-Civita flat + twisted-connection relations + braided report",
            time.perf_counter() - t0, 20.0)


def test_criterion_09_submanifold_commutation(model):
    t0 = time.perf_counter()
    rep = twist_project_report(model.ideal, model.calc, samples=50)
    assert rep.passed, rep.format_text()
    _report(9, "twist-projection commutation on 50 random samples",
            time.perf_counter() - t0, 30.0)


def test_criterion_10_unitarity_involutions(model, plain_ctx):
    t0 = time.perf_counter()
    ab_alg = abelian(plain_ctx, ("X", "Y"), anti_hermitian=True)
    assert check_unitary(abelian_twist(ab_alg, [("X", "Y")],
                                       scale=plain_ctx.i)).passed
    assert check_unitary(model.twist).passed
    calc = model.calc
    rng = random.Random(43)
    from twistcalc.submanifolds import random_polynomial
    for _ in range(8):
        f = random_polynomial(model.chart, rng, degree=2) * model.ctx.i
        g = random_polynomial(model.chart, rng, degree=2)
        assert calc.involution(calc.involution(f)) == f
        assert calc.involution(calc.star(f, g)) == \
            calc.star(calc.involution(g), calc.involution(f))
    _report(10, "unitary twists + twisted involution laws",
            time.perf_counter() - t0, 20.0)
