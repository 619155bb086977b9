"""Equivariant metrics, covariant derivatives and their twist deformations.

Metrics are symmetric coefficient matrices over the coordinate frame;
connections carry Christoffel data.  The Koszul solve produces the unique
torsion-free metric connection on the coordinate frame when the metric
determinant is a unit (divisions by non-unit polynomials raise rather than
silently extending the ring).  Braided curvature/torsion take the braiding
legs explicitly, and the twisted connection precomposes with the inverse
twist acting legwise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .geometry import PolyFunction, VectorField
from .reports import Report
from .twists import r_matrix


class MetricError(ValueError):
    pass


class Metric:
    """Symmetric matrix g_ij of polynomial entries with g(X,Y) = X^i g_ij Y^j."""

    def __init__(self, chart, entries, realization=None):
        self.chart = chart
        d = chart.dim
        self.entries = []
        for i in range(d):
            row = []
            for j in range(d):
                v = entries[i][j]
                if not isinstance(v, PolyFunction):
                    v = chart.constant(v)
                row.append(v)
            self.entries.append(tuple(row))
        self.entries = tuple(self.entries)
        for i in range(d):
            for j in range(d):
                if self.entries[i][j] != self.entries[j][i]:
                    raise MetricError("metric matrix is not symmetric at (%d,%d)" % (i, j))
        if realization is not None:
            self._check_equivariance(realization)

    def _check_equivariance(self, real):
        """xi |> g(X,Y) = g(xi_(1)|>X, xi_(2)|>Y) on primitives: the realized
        generators must be Killing fields of g."""
        chart = self.chart
        frame = [chart.coordinate_field(i) for i in range(chart.dim)]
        for name in real.alg.names:
            k = real.field(name)
            for i, xi in enumerate(frame):
                for j in range(i, chart.dim):
                    yj = frame[j]
                    lhs = k.apply(self.eval(xi, yj))
                    rhs = self.eval(k.bracket(xi), yj) + self.eval(xi, k.bracket(yj))
                    if lhs != rhs:
                        raise MetricError(
                            "metric is not equivariant: %s is not Killing" % name)

    def eval(self, x, y):
        out = self.chart.zero_fn()
        for i in range(self.chart.dim):
            xi = x.comps[i]
            if xi.is_zero:
                continue
            for j in range(self.chart.dim):
                yj = y.comps[j]
                if yj.is_zero:
                    continue
                out = out + xi * self.entries[i][j] * yj
        return out

    def determinant(self):
        d = self.chart.dim
        out = self.chart.zero_fn()
        for perm in permutations(range(d)):
            sign = 1
            for a in range(d):
                for b in range(a + 1, d):
                    if perm[a] > perm[b]:
                        sign = -sign
            term = self.chart.one_fn()
            for i in range(d):
                term = term * self.entries[i][perm[i]]
            out = out + term if sign > 0 else out - term
        return out

    def is_unit_determinant(self):
        det = self.determinant()
        if set(det.terms) != {(0,) * self.chart.dim}:
            return False
        return det.terms[(0,) * self.chart.dim].is_unit

    def inverse_matrix(self):
        """Adjugate over unit determinant; raises if the solve needs non-unit division."""
        det = self.determinant()
        unit_key = (0,) * self.chart.dim
        if set(det.terms) != {unit_key} or not det.terms[unit_key].is_unit:
            raise MetricError(
                "metric determinant %s is not a unit; symbolic inverse would leave "
                "the polynomial ring" % det.to_text())
        dinv = det.terms[unit_key].inverse()
        d = self.chart.dim
        out = [[None] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                rows = [r for r in range(d) if r != j]
                cols = [cc for cc in range(d) if cc != i]
                minor = self.chart.zero_fn()
                for perm in permutations(range(len(cols))):
                    sign = 1
                    for a in range(len(perm)):
                        for b in range(a + 1, len(perm)):
                            if perm[a] > perm[b]:
                                sign = -sign
                    term = self.chart.one_fn()
                    for k, r in enumerate(rows):
                        term = term * self.entries[r][cols[perm[k]]]
                    minor = minor + term if sign > 0 else minor - term
                cof = minor if (i + j) % 2 == 0 else -minor
                out[i][j] = cof * dinv
        return out


class Connection:
    """Christoffel data Gamma^k_{ij}; left-linear in X, Leibniz in Y."""

    def __init__(self, chart, gamma=None):
        self.chart = chart
        d = chart.dim
        zero = chart.zero_fn()
        self.gamma = {}
        for (k, i, j), v in (gamma or {}).items():
            if not isinstance(v, PolyFunction):
                v = chart.constant(v)
            if not v.is_zero:
                self.gamma[(k, i, j)] = v

    def nabla(self, x, y):
        chart = self.chart
        comps = []
        for k in range(chart.dim):
            acc = x.apply(y.comps[k])
            for i in range(chart.dim):
                xi = x.comps[i]
                if xi.is_zero:
                    continue
                for j in range(chart.dim):
                    gam = self.gamma.get((k, i, j))
                    if gam is None:
                        continue
                    yj = y.comps[j]
                    if yj.is_zero:
                        continue
                    acc = acc + xi * gam * yj
            comps.append(acc)
        return VectorField(chart, comps)

    def nabla_form(self, x, omega):
        """Dual connection on 1-forms via the pairing:
        <nabla~_X w, Y> = X<w, Y> - <w, nabla_X Y>."""
        from .geometry import DiffForm, pairing
        chart = self.chart
        terms = {}
        for k in range(chart.dim):
            ek = chart.coordinate_field(k)
            val = x.apply(pairing(omega, ek)) - pairing(omega, self.nabla(x, ek))
            if not val.is_zero:
                terms[(k,)] = val
        return DiffForm(chart, terms)


def flat_connection(chart):
    return Connection(chart, {})


def koszul_levi_civita(metric):
    """The unique torsion-free metric connection, from the Koszul formula on
    the coordinate frame; verified post-hoc for both defining properties."""
    chart = metric.chart
    ginv = metric.inverse_matrix()
    d = chart.dim
    gamma = {}
    half = Fraction(1, 2)
    for k in range(d):
        for i in range(d):
            for j in range(d):
                acc = chart.zero_fn()
                for l in range(d):
                    dg = (metric.entries[j][l].diff(i)
                          + metric.entries[i][l].diff(j)
                          - metric.entries[i][j].diff(l))
                    acc = acc + ginv[k][l] * dg
                acc = acc * half
                if not acc.is_zero:
                    gamma[(k, i, j)] = acc
    conn = Connection(chart, gamma)
    rep = levi_civita_report(conn, metric)
    if not rep.passed:
        raise MetricError("Koszul solve failed verification:\n" + rep.format_text())
    return conn


def levi_civita_report(conn, metric):
    """Classical metric compatibility and zero torsion on the coordinate frame."""
    chart = metric.chart
    rep = Report("Levi-Civita")
    frame = [chart.coordinate_field(i) for i in range(chart.dim)]

    def compat():
        res = chart.zero_fn()
        for x in frame:
            for y in frame:
                for z in frame:
                    res = res + (x.apply(metric.eval(y, z))
                                 - metric.eval(conn.nabla(x, y), z)
                                 - metric.eval(y, conn.nabla(x, z)))
        return res

    def torsion_free():
        res = chart.zero_vf()
        for x in frame:
            for y in frame:
                res = res + (conn.nabla(x, y) - conn.nabla(y, x) - x.bracket(y))
        return res

    rep.run("metric compatibility", compat)
    rep.run("zero torsion", torsion_free)
    return rep


# -- braided curvature and torsion -----------------------------------------------


def _braided_bracket(real, rinv, x, y):
    """[X, Y]_R = X Y - (R1^{-1}|>Y)(R2^{-1}|>X) as a vector field."""
    chart = real.chart
    if rinv is None:
        return x.bracket(y)
    comps = []
    for k in range(chart.dim):
        xk = chart.coordinate(k)
        acc = x.apply(y.apply(xk))
        for (m1, m2), c in rinv.terms.items():
            yb = real.act_monomial(m1, y)
            xb = real.act_monomial(m2, x)
            acc = acc - yb.apply(xb.apply(xk)) * c
        comps.append(acc)
    return VectorField(chart, comps)


def curvature(conn, real, x, y, z, rinv=None):
    """R(X,Y)Z = nab_X nab_Y Z - nab_{R1|>Y} nab_{R2|>X} Z - nab_{[X,Y]_R} Z."""
    chart = conn.chart
    out = conn.nabla(x, conn.nabla(y, z))
    if rinv is None:
        out = out - conn.nabla(y, conn.nabla(x, z))
    else:
        for (m1, m2), c in rinv.terms.items():
            yb = real.act_monomial(m1, y)
            xb = real.act_monomial(m2, x)
            out = out - conn.nabla(yb, conn.nabla(xb, z)).scale(chart.constant(1) * c)
    out = out - conn.nabla(_braided_bracket(real, rinv, x, y), z)
    return out


def torsion(conn, real, x, y, rinv=None):
    """Tor(X,Y) = nab_X Y - nab_{R1|>Y}(R2|>X) - [X,Y]_R."""
    chart = conn.chart
    out = conn.nabla(x, y)
    if rinv is None:
        out = out - conn.nabla(y, x)
    else:
        for (m1, m2), c in rinv.terms.items():
            yb = real.act_monomial(m1, y)
            xb = real.act_monomial(m2, x)
            out = out - conn.nabla(yb, xb).scale(chart.constant(1) * c)
    out = out - _braided_bracket(real, rinv, x, y)
    return out


# -- twist deformation ---------------------------------------------------------------


def twist_nabla(real, twist, conn, x, y):
    """nab^F_X Y = nab_{F1^{-1}|>X}(F2^{-1}|>Y)."""
    chart = conn.chart
    out = None
    for (m1, m2), c in twist.inv.terms.items():
        xb = real.act_monomial(m1, x)
        yb = real.act_monomial(m2, y)
        piece = conn.nabla(xb, yb).scale(chart.constant(1) * c)
        out = piece if out is None else out + piece
    return out if out is not None else chart.zero_vf()


class TwistedMetric:
    """g_F(X,Y) = g(F1^{-1}|>X, F2^{-1}|>Y)."""

    def __init__(self, real, twist, metric):
        self.real = real
        self.twist = twist
        self.metric = metric
        self.chart = metric.chart

    def eval(self, x, y):
        out = self.chart.zero_fn()
        for (m1, m2), c in self.twist.inv.terms.items():
            xb = self.real.act_monomial(m1, x)
            yb = self.real.act_monomial(m2, y)
            out = out + self.metric.eval(xb, yb) * c
        return out


def connection_report(real, twist, conn, metric, frame=None):
    """Braided metric compatibility of nab^F w.r.t. g_F and braided torsion.

    The connection must be Levi-Civita for the metric (verified first); the
    braiding is R_F and the twisted Lie derivative acts on the evaluation.
    """
    chart = metric.chart
    rep = Report("twisted connection")
    lc = levi_civita_report(conn, metric)
    rep.extend(lc)
    if not lc.passed:
        return rep
    rm = r_matrix(twist)
    gF = TwistedMetric(real, twist, metric)
    if frame is None:
        frame = [chart.coordinate_field(i) for i in range(chart.dim)]
        frame += [real.field(n) for n in real.alg.names]

    nab_cache = {}

    def nabF(x, y):
        key = (x, y)
        out = nab_cache.get(key)
        if out is None:
            out = twist_nabla(real, twist, conn, x, y)
            nab_cache[key] = out
        return out

    gf_cache = {}

    def geval(x, y):
        key = (x, y)
        out = gf_cache.get(key)
        if out is None:
            out = gF.eval(x, y)
            gf_cache[key] = out
        return out

    def lie_fn(x, f):
        out = chart.zero_fn()
        for (m1, m2), c in twist.inv.terms.items():
            xb = real.act_monomial(m1, x)
            fb = real.act_monomial(m2, f)
            out = out + xb.apply(fb) * c
        return out

    def compat():
        res = chart.zero_fn()
        for x in frame:
            for y in frame:
                for z in frame:
                    lhs = lie_fn(x, geval(y, z))
                    lhs = lhs - geval(nabF(x, y), z)
                    for (m1, m2), c in rm.inv.terms.items():
                        yb = real.act_monomial(m1, y)
                        xb = real.act_monomial(m2, x)
                        lhs = lhs - geval(yb, nabF(xb, z)) * c
                    res = res + lhs
        return res

    def braided_torsion():
        res = chart.zero_vf()
        for x in frame:
            for y in frame:
                t = nabF(x, y)
                for (m1, m2), c in rm.inv.terms.items():
                    yb = real.act_monomial(m1, y)
                    xb = real.act_monomial(m2, x)
                    t = t - nabF(yb, xb).scale(chart.constant(1) * c)
                t = t - _braided_twisted_bracket(real, twist, rm, x, y)
                res = res + t
        return res

    rep.run("braided metric compatibility", compat)
    rep.run("braided torsion-freeness", braided_torsion)
    return rep


def _braided_twisted_bracket(real, twist, rm, x, y):
    """[X, Y]_{R_F} on the twisted algebra: the twisted Schouten bracket in
    degree one, computed through the inverse twist."""
    chart = real.chart
    comps = [chart.zero_fn()] * chart.dim
    out = VectorField(chart, comps)
    for (m1, m2), c in twist.inv.terms.items():
        xb = real.act_monomial(m1, x)
        yb = real.act_monomial(m2, y)
        out = out + xb.bracket(yb).scale(chart.constant(1) * c)
    return out


def equivariance_report(real, conn):
    """xi |> (nab_X Y) = nab_{xi_(1)|>X}(xi_(2)|>Y) for primitive generators."""
    chart = conn.chart
    rep = Report("connection equivariance")
    frame = [chart.coordinate_field(i) for i in range(chart.dim)]
    frame += [real.field(n) for n in real.alg.names]

    def primitive_equivariance():
        res = chart.zero_vf()
        for name in real.alg.names:
            k = real.field(name)
            for x in frame:
                for y in frame:
                    lhs = k.bracket(conn.nabla(x, y))
                    rhs = conn.nabla(k.bracket(x), y) + conn.nabla(x, k.bracket(y))
                    res = res + (lhs - rhs)
        return res

    rep.run("primitive equivariance", primitive_equivariance)
    return rep
