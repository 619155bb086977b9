"""Hopf-axiom verification for enveloping algebras and finite Hopf algebras.

All residuals are computed exactly and must be zero: coassociativity, both
counit axioms, both antipode axioms, the anti-homomorphism and
anti-coalgebra properties of the antipode, and S^2 = id whenever the algebra
is commutative or cocommutative (reported informationally otherwise).
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .lie import LiePresentation
from .finite_hopf import FiniteHopf
from .reports import Report


def _monomials_up_to(alg, bound):
    out = []
    for deg in range(bound + 1):
        for combo in combinations_with_replacement(range(alg.dim), deg):
            exps = [0] * alg.dim
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return out


def _aggregate(failures, total):
    if not failures:
        return None
    name, residual = failures[0]
    return "%d/%d monomial checks failed, first at %s: %s" % (
        len(failures), total, name, residual)


def hopf_axiom_report(algebra, degree_bound=3):
    """Residual report of the Hopf axioms; dispatches on the algebra kind."""
    if isinstance(algebra, LiePresentation):
        return _lie_report(algebra, degree_bound)
    if isinstance(algebra, FiniteHopf):
        return _finite_report(algebra)
    raise TypeError("unsupported algebra %r" % (algebra,))


def _lie_report(alg, bound):
    rep = Report("hopf-axioms U(g) dim %d" % alg.dim)
    monos = _monomials_up_to(alg, bound)
    elements = [alg.monomial(m) for m in monos]
    names = [alg.monomial(m).to_text() for m in monos]
    unit = alg.unit()

    def per_monomial(fn):
        failures = []
        for nm, el in zip(names, elements):
            res = fn(el)
            if not res.is_zero:
                failures.append((nm, res.to_text()))
        return _aggregate(failures, len(elements))

    rep.run("coassociativity", lambda: per_monomial(
        lambda el: el.coproduct().coproduct_on_leg(1)
        - el.coproduct().coproduct_on_leg(2)))
    rep.run("counit left", lambda: per_monomial(
        lambda el: el.coproduct().counit_on_leg(1).to_pbw() - el))
    rep.run("counit right", lambda: per_monomial(
        lambda el: el.coproduct().counit_on_leg(2).to_pbw() - el))
    rep.run("antipode left", lambda: per_monomial(
        lambda el: el.coproduct().antipode_on_leg(1).contract_mul()
        - unit.scale(el.counit())))
    rep.run("antipode right", lambda: per_monomial(
        lambda el: el.coproduct().antipode_on_leg(2).contract_mul()
        - unit.scale(el.counit())))

    def antihom():
        failures = []
        for nm1, e1 in zip(names, elements):
            for nm2, e2 in zip(names, elements):
                res = (e1 * e2).antipode() - e2.antipode() * e1.antipode()
                if not res.is_zero:
                    failures.append(("%s | %s" % (nm1, nm2), res.to_text()))
        return _aggregate(failures, len(elements) ** 2)

    rep.run("antipode anti-homomorphism", antihom)
    rep.run("antipode anti-coalgebra map", lambda: per_monomial(
        lambda el: el.antipode().coproduct() - _flip_ss(el)))
    rep.run("cocommutativity", lambda: per_monomial(
        lambda el: el.coproduct() - el.coproduct().flip()))
    rep.run("S^2 = id (cocommutative)", lambda: per_monomial(
        lambda el: el.antipode().antipode() - el))
    return rep


def _flip_ss(el):
    """tau (S ox S) Delta, the right side of the anti-coalgebra law."""
    return el.coproduct().antipode_on_leg(1).antipode_on_leg(2).flip()


def _finite_report(h):
    rep = Report("hopf-axioms finite dim %d" % h.dim)
    ctx = h.ctx
    basis = list(range(h.dim))

    def per_basis(fn, render=h.render):
        failures = []
        for i in basis:
            res = fn(i)
            if res:
                failures.append((h.names[i], render(res)))
        return _aggregate(failures, len(basis))

    def tdiff(a, b):
        out = dict(a)
        for k, v in b.items():
            val = out.get(k, ctx.zero) - v
            if val.is_zero:
                out.pop(k, None)
            else:
                out[k] = val
        return {k: v for k, v in out.items() if not v.is_zero}

    def vdiff(a, b):
        return tdiff({(k,): v for k, v in a.items()},
                     {(k,): v for k, v in b.items()})

    rep.run("multiplication table closes/assoc", lambda: per_basis(
        lambda i: _assoc_failure(h, i)))
    rep.run("coassociativity", lambda: per_basis(
        lambda i: tdiff(h.delta_on_leg(h.delta_vec(h.basis_vec(i)), 0),
                        h.delta_on_leg(h.delta_vec(h.basis_vec(i)), 1))))
    rep.run("counit left", lambda: per_basis(
        lambda i: vdiff(_counit_leg(h, i, 0), h.basis_vec(i))))
    rep.run("counit right", lambda: per_basis(
        lambda i: vdiff(_counit_leg(h, i, 1), h.basis_vec(i))))
    rep.run("antipode left", lambda: per_basis(
        lambda i: vdiff(_antipode_side(h, i, left=True), _eps_unit(h, i))))
    rep.run("antipode right", lambda: per_basis(
        lambda i: vdiff(_antipode_side(h, i, left=False), _eps_unit(h, i))))

    def antihom():
        failures = []
        for i in basis:
            for j in basis:
                lhs = h.antipode_vec(h.mul_vec(h.basis_vec(i), h.basis_vec(j)))
                rhs = h.mul_vec(h.antipode_vec(h.basis_vec(j)),
                                h.antipode_vec(h.basis_vec(i)))
                res = vdiff(lhs, rhs)
                if res:
                    failures.append(("%s*%s" % (h.names[i], h.names[j]), h.render(res)))
        return _aggregate(failures, len(basis) ** 2)

    rep.run("antipode anti-homomorphism", antihom)

    comm = h.is_commutative()
    cocomm = h.is_cocommutative()
    if comm or cocomm:
        rep.run("S^2 = id ((co)commutative)", lambda: per_basis(
            lambda i: vdiff(h.antipode_vec(h.antipode_vec(h.basis_vec(i))),
                            h.basis_vec(i))))
    else:
        s2 = all(not vdiff(h.antipode_vec(h.antipode_vec(h.basis_vec(i))),
                           h.basis_vec(i)) for i in basis)
        rep.note("S^2 = id", "not required (neither commutative nor cocommutative); "
                 + ("holds anyway" if s2 else "S^2 != id"))
    rep.note("commutative", "yes" if comm else "no")
    rep.note("cocommutative", "yes" if cocomm else "no")
    return rep


def _assoc_failure(h, i):
    for j in range(h.dim):
        for k in range(h.dim):
            lhs = h.mul_vec(h.mul_vec(h.basis_vec(i), h.basis_vec(j)), h.basis_vec(k))
            rhs = h.mul_vec(h.basis_vec(i), h.mul_vec(h.basis_vec(j), h.basis_vec(k)))
            diff = {m: lhs.get(m, h.ctx.zero) - rhs.get(m, h.ctx.zero)
                    for m in set(lhs) | set(rhs)}
            diff = {m: v for m, v in diff.items() if not v.is_zero}
            if diff:
                return diff
    return {}


def _counit_leg(h, i, leg):
    out = {}
    for (ka, kb), c in h.delta_vec(h.basis_vec(i)).items():
        scal, keep = ((ka, kb)[leg], (ka, kb)[1 - leg])
        val = c * h.counit.get(scal, h.ctx.zero)
        out[keep] = out.get(keep, h.ctx.zero) + val
    return {k: v for k, v in out.items() if not v.is_zero}


def _antipode_side(h, i, left):
    out = {}
    for (ka, kb), c in h.delta_vec(h.basis_vec(i)).items():
        if left:
            prod = h.mul_vec(h.antipode_vec({ka: h.ctx.one}), {kb: h.ctx.one})
        else:
            prod = h.mul_vec({ka: h.ctx.one}, h.antipode_vec({kb: h.ctx.one}))
        for k, v in prod.items():
            out[k] = out.get(k, h.ctx.zero) + c * v
    return {k: v for k, v in out.items() if not v.is_zero}


def _eps_unit(h, i):
    eps = h.counit.get(i, h.ctx.zero)
    return {k: eps * v for k, v in h.unit.items() if not (eps * v).is_zero}
