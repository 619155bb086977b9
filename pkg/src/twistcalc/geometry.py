"""Classical Cartan calculus on polynomial functions of x^1..x^D.

Functions are polynomials with truncated hbar-series coefficients; vector
fields, multivectors and differential forms carry polynomial coefficients
over the coordinate frame with strictly increasing index tuples and
normalized signs.  A Realization maps a Lie presentation into polynomial
vector fields and extends the U(g)-action to functions (iterated Lie
derivative), multivector fields (adjoint action) and forms (Lie derivative,
matching the dual-pairing formula).
"""

from __future__ import annotations

from fractions import Fraction

from .lie import PBWElement
from .scalars import HbarSeries, Scalar


class CoordSystem:
    """Coordinates x^1..x^D over a scalar context."""

    def __init__(self, ctx, dim, names=None):
        self.ctx = ctx
        self.dim = dim
        self.names = tuple(names) if names else tuple("x%d" % (k + 1) for k in range(dim))
        if len(self.names) != dim:
            raise ValueError("need %d coordinate names" % dim)
        self._zero_fn = PolyFunction(self, {})
        self._one_fn = PolyFunction(self, {(0,) * dim: ctx.series([1])})

    def zero_fn(self):
        return self._zero_fn

    def one_fn(self):
        return self._one_fn

    def constant(self, coeff):
        c = coeff if isinstance(coeff, HbarSeries) else self.ctx.series([coeff])
        if c.is_zero:
            return self._zero_fn
        return PolyFunction(self, {(0,) * self.dim: c})

    def coordinate(self, i):
        exps = [0] * self.dim
        exps[i] = 1
        return PolyFunction(self, {tuple(exps): self.ctx.series([1])})

    def coordinate_by_name(self, name):
        return self.coordinate(self.names.index(name))

    def coordinate_field(self, i):
        comps = [self._zero_fn] * self.dim
        comps[i] = self._one_fn
        return VectorField(self, tuple(comps))

    def basis_form(self, i):
        return DiffForm(self, {(i,): self._one_fn})

    def zero_vf(self):
        return VectorField(self, (self._zero_fn,) * self.dim)


def _series_of(chart, coeff):
    if isinstance(coeff, HbarSeries):
        return coeff
    return chart.ctx.series([coeff])


class PolyFunction:
    """Polynomial in the coordinates with hbar-series coefficients."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart, terms):
        self.chart = chart
        self.terms = terms

    @property
    def ctx(self):
        return self.chart.ctx

    def _coerce(self, other):
        if isinstance(other, PolyFunction):
            if other.chart is not self.chart:
                raise ValueError("functions on different coordinate systems")
            return other
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            return self.chart.constant(other)
        return None

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            val = out.get(m)
            val = c if val is None else val + c
            if val.is_zero:
                out.pop(m, None)
            else:
                out[m] = val
        return PolyFunction(self.chart, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyFunction(self.chart, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            c = _series_of(self.chart, other)
            if c.is_zero:
                return self.chart.zero_fn()
            return PolyFunction(self.chart, {m: cv * c for m, cv in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in o.terms.items():
                key = tuple(x + y for x, y in zip(ma, mb))
                c = ca * cb
                val = out.get(key)
                val = c if val is None else val + c
                if val.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = val
        return PolyFunction(self.chart, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.chart.one_fn()
        for _ in range(n):
            out = out * self
        return out

    def diff(self, i):
        out = {}
        for m, c in self.terms.items():
            if not m[i]:
                continue
            new = list(m)
            new[i] -= 1
            out[tuple(new)] = c * m[i]
        return PolyFunction(self.chart, out)

    def star(self):
        """Complex conjugation of coefficients; the coordinates are real."""
        return PolyFunction(self.chart,
                            {m: c.conjugate() for m, c in self.terms.items()})

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.ctx.series_zero())

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, PolyFunction) else other
        if not isinstance(o, PolyFunction):
            return NotImplemented
        return self.chart is o.chart and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[m]
            factors = [self.chart.names[i] if k == 1 else "%s^%d" % (self.chart.names[i], k)
                       for i, k in enumerate(m) if k]
            ct = c.to_text()
            wrap = ("+" in ct[1:]) or ("-" in ct[1:]) or ("/" in ct) or (" " in ct)
            if not factors:
                parts.append("(" + ct + ")" if wrap else ct)
            elif ct == "1":
                parts.append("*".join(factors))
            elif ct == "-1":
                parts.append("-" + "*".join(factors))
            else:
                if wrap:
                    ct = "(" + ct + ")"
                parts.append(ct + "*" + "*".join(factors))
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    __str__ = to_text

    def __repr__(self):
        return "PolyFunction(%s)" % self.to_text()


class VectorField:
    """Polynomial vector field sum_i p_i d_i, a derivation of the functions."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart, comps):
        self.chart = chart
        self.comps = tuple(comps)

    @property
    def is_zero(self):
        return all(p.is_zero for p in self.comps)

    def apply(self, f):
        out = self.chart.zero_fn()
        for i, p in enumerate(self.comps):
            if not p.is_zero:
                out = out + p * f.diff(i)
        return out

    def bracket(self, other):
        comps = []
        for k in range(self.chart.dim):
            comps.append(self.apply(other.comps[k]) - other.apply(self.comps[k]))
        return VectorField(self.chart, comps)

    def __add__(self, other):
        return VectorField(self.chart,
                           tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        return VectorField(self.chart,
                           tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return VectorField(self.chart, tuple(-a for a in self.comps))

    def scale(self, coeff):
        if isinstance(coeff, PolyFunction):
            return VectorField(self.chart, tuple(coeff * p for p in self.comps))
        return VectorField(self.chart, tuple(p * coeff for p in self.comps))

    def star(self):
        """Defined by L_{X*} f = -(L_X f*)*: conjugate coefficients, flip sign."""
        return VectorField(self.chart, tuple(-(p.star()) for p in self.comps))

    def to_multivector(self):
        terms = {}
        for i, p in enumerate(self.comps):
            if not p.is_zero:
                terms[(i,)] = p
        return MultiVector(self.chart, terms)

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.chart is other.chart
                and self.comps == other.comps)

    def __hash__(self):
        return hash(self.comps)

    def to_text(self):
        parts = []
        for i, p in enumerate(self.comps):
            if p.is_zero:
                continue
            pt = p.to_text()
            if " " in pt or "/" in pt:
                pt = "(" + pt + ")"
            parts.append("%s*d_%d" % (pt, i + 1))
        return " + ".join(parts) if parts else "0"

    __str__ = to_text

    def __repr__(self):
        return "VectorField(%s)" % self.to_text()


def _sort_sign(indices):
    """Sort an index tuple, returning (sorted tuple, sign); None if repeated."""
    idx = list(indices)
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
            elif idx[b] == idx[b + 1]:
                return None, 0
    if len(set(idx)) != len(idx):
        return None, 0
    return tuple(idx), sign


class _Graded:
    """Shared machinery of multivectors and forms (dict: index tuple -> function)."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart, terms):
        self.chart = chart
        self.terms = {k: v for k, v in terms.items() if not v.is_zero}

    @property
    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({len(k) for k in self.terms})

    def homogeneous(self, k):
        return type(self)(self.chart, {m: c for m, c in self.terms.items()
                                       if len(m) == k})

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            val = out.get(m)
            val = c if val is None else val + c
            if val.is_zero:
                out.pop(m, None)
            else:
                out[m] = val
        return type(self)(self.chart, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(self.chart, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff):
        if isinstance(coeff, PolyFunction):
            return type(self)(self.chart, {m: coeff * c for m, c in self.terms.items()})
        return type(self)(self.chart, {m: c * coeff for m, c in self.terms.items()})

    def wedge(self, other):
        if type(other) is not type(self):
            raise TypeError("wedge of different kinds")
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                key, sign = _sort_sign(ma + mb)
                if sign == 0:
                    continue
                c = ca * cb if sign > 0 else -(ca * cb)
                val = out.get(key)
                val = c if val is None else val + c
                if val.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = val
        return type(self)(self.chart, out)

    def star(self):
        """Graded *-involution: (A wedge B)* = B* wedge A*, generators flip sign."""
        out = {}
        for m, c in self.terms.items():
            k = len(m)
            sign = -1 if (k * (k + 1) // 2) % 2 else 1
            cc = c.star()
            out[m] = cc * sign if sign < 0 else cc
        return type(self)(self.chart, out)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart is other.chart and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _basis_symbol(self, i):
        raise NotImplementedError

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[m]
            ct = c.to_text()
            if " " in ct or "/" in ct:
                ct = "(" + ct + ")"
            body = "^".join(self._basis_symbol(i) for i in m)
            parts.append(ct if not body else
                         (body if ct == "1" else "%s*%s" % (ct, body)))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self.to_text())


class MultiVector(_Graded):
    """Graded element over d_{i1}^...^d_{ik} with polynomial coefficients."""

    def _basis_symbol(self, i):
        return "d_%d" % (i + 1)

    @classmethod
    def from_function(cls, f):
        return cls(f.chart, {(): f})

    @classmethod
    def zero(cls, chart):
        return cls(chart, {})

    def factors(self, m):
        """A term f d_I as a list of vector fields [f d_{i1}, d_{i2}, ...]."""
        chart = self.chart
        out = []
        coeff = self.terms[m]
        for pos, i in enumerate(m):
            base = chart.coordinate_field(i)
            out.append(base.scale(coeff) if pos == 0 else base)
        return out


class DiffForm(_Graded):
    """Graded element over dx^{i1}^...^dx^{ik} with polynomial coefficients."""

    def _basis_symbol(self, i):
        return "dx%d" % (i + 1)

    @classmethod
    def from_function(cls, f):
        return cls(f.chart, {(): f})

    @classmethod
    def zero(cls, chart):
        return cls(chart, {})


# -- Cartan operations -----------------------------------------------------------


def exterior_derivative(omega):
    """Graded derivation of degree 1 with d(f dx^I) = df wedge dx^I and d^2 = 0."""
    chart = omega.chart
    out = {}
    for m, f in omega.terms.items():
        for i in range(chart.dim):
            df = f.diff(i)
            if df.is_zero:
                continue
            key, sign = _sort_sign((i,) + m)
            if sign == 0:
                continue
            c = df if sign > 0 else -df
            val = out.get(key)
            val = c if val is None else val + c
            if val.is_zero:
                out.pop(key, None)
            else:
                out[key] = val
    return DiffForm(chart, out)


def _insert_coordinate(i, omega):
    """i_{d_i} as a graded derivation of degree -1 on forms."""
    out = {}
    for m, f in omega.terms.items():
        if i not in m:
            continue
        pos = m.index(i)
        key = m[:pos] + m[pos + 1:]
        c = f if pos % 2 == 0 else -f
        val = out.get(key)
        val = c if val is None else val + c
        if val.is_zero:
            out.pop(key, None)
        else:
            out[key] = val
    return DiffForm(omega.chart, out)


def insert(mv, omega):
    """Insertion of a multivector: i_{X1^...^Xk} = i_{X1} ... i_{Xk};
    a degree-0 multivector inserts as left multiplication."""
    chart = omega.chart
    result = DiffForm.zero(chart)
    for m, f in mv.terms.items():
        piece = omega
        for i in reversed(m):
            piece = _insert_coordinate(i, piece)
        piece = piece.scale(f)
        result = result + piece
    return result


def insert_field(x, omega):
    return insert(x.to_multivector(), omega)


def pairing(omega, x):
    """<omega, X> for a 1-form and a vector field."""
    out = omega.chart.zero_fn()
    for m, f in omega.terms.items():
        if len(m) != 1:
            raise ValueError("pairing needs a 1-form")
        out = out + f * x.comps[m[0]]
    return out


def lie_form(mv, omega):
    """L_X = [i_X, d] (graded commutator) on forms, for X of any degree."""
    if isinstance(mv, VectorField):
        mv = mv.to_multivector()
    chart = omega.chart
    out = DiffForm.zero(chart)
    for k in mv.degrees():
        p = mv.homogeneous(k)
        sign = -1 if k % 2 else 1   # (-1)^k from deg(i_X) = -k against deg(d) = 1
        piece = insert(p, exterior_derivative(omega)) \
            - exterior_derivative(insert(p, omega)).scale(sign)
        out = out + piece
    return out


def schouten(p, q):
    """Schouten-Nijenhuis bracket extending [.,.] with X(a) in degree 0/1.

    On factorizing terms it is the alternating double sum over bracketed
    factor pairs; degree-0 entries follow [[a, Y]] = sum_j (-1)^j Y_j(a) ...
    and the graded skew-symmetry.
    """
    if isinstance(p, VectorField):
        p = p.to_multivector()
    if isinstance(q, VectorField):
        q = q.to_multivector()
    chart = p.chart
    out = MultiVector.zero(chart)
    for mi in p.terms:
        for mj in q.terms:
            out = out + _schouten_term(p, mi, q, mj)
    return out


def _schouten_term(p, mi, q, mj):
    chart = p.chart
    k, l = len(mi), len(mj)
    f, g = p.terms[mi], q.terms[mj]
    if k == 0 and l == 0:
        return MultiVector.zero(chart)
    if k == 0:
        return _schouten_fn_term(f, q, mj)
    if l == 0:
        res = _schouten_fn_term(g, p, mi)
        sign = -1 if (k - 1) % 2 else 1   # -(-1)^{(k-1)(0-1)} [[g, X]]
        return res.scale(-sign)
    xs = _factor_fields(chart, f, mi)
    ys = _factor_fields(chart, g, mj)
    out = MultiVector.zero(chart)
    for a in range(k):
        for b in range(l):
            br = xs[a].bracket(ys[b]).to_multivector()
            rest = MultiVector(chart, {(): chart.one_fn()})
            for t, x in enumerate(xs):
                if t != a:
                    rest = rest.wedge(x.to_multivector())
            for t, y in enumerate(ys):
                if t != b:
                    rest = rest.wedge(y.to_multivector())
            piece = br.wedge(rest)
            if (a + b) % 2:   # (-1)^{i+j} with 1-based indices = (-1)^{a+b} 0-based
                piece = -piece
            out = out + piece
    return out


def _schouten_fn_term(a, q, mj):
    """[[a, Y1^...^Yl]] = sum_j (-1)^j Y_j(a) Y1 ^ ... ^ hat Y_j ^ ... ^ Yl."""
    chart = q.chart
    ys = _factor_fields(chart, q.terms[mj], mj)
    out = MultiVector.zero(chart)
    for j, y in enumerate(ys):
        coeff = y.apply(a)
        if coeff.is_zero:
            continue
        rest = MultiVector(chart, {(): coeff})
        for t, yy in enumerate(ys):
            if t != j:
                rest = rest.wedge(yy.to_multivector())
        out = out + rest if j % 2 else out - rest   # (-1)^{j+1} 0-based = (-1)^j 1-based
    return out


def _factor_fields(chart, coeff, m):
    out = []
    for pos, i in enumerate(m):
        base = chart.coordinate_field(i)
        out.append(base.scale(coeff) if pos == 0 else base)
    return out


# -- Hopf action through a realization ---------------------------------------------


class Realization:
    """Bracket-preserving map from a Lie presentation into polynomial fields.

    The induced U(g)-action: iterated Lie derivative on functions, adjoint
    action on multivector fields (for primitives, the bracket with the
    realized field), Lie derivative on forms (equivalent to the dual-pairing
    extension).  The module-algebra law holds because the generators act as
    derivations.
    """

    def __init__(self, alg, chart, fields):
        self.alg = alg
        self.chart = chart
        self.fields = {}
        for name in alg.names:
            if name not in fields:
                raise ValueError("generator %s is not realized" % name)
            fld = fields[name]
            if not isinstance(fld, VectorField):
                raise TypeError("realization of %s must be a VectorField" % name)
            self.fields[name] = fld
        self._by_index = [self.fields[name] for name in alg.names]
        self._act_cache = {}
        for (i, j), row in alg._table.items():
            if i < j:
                lhs = self._by_index[i].bracket(self._by_index[j])
                rhs = self.chart.zero_vf()
                for k, cv in row.items():
                    rhs = rhs + self._by_index[k].scale(self.chart.constant(cv))
                if lhs != rhs:
                    raise ValueError(
                        "realization does not preserve the bracket [%s,%s]"
                        % (alg.names[i], alg.names[j]))

    def field(self, name):
        return self.fields[name]

    def _act_letter(self, i, obj):
        fld = self._by_index[i]
        if isinstance(obj, PolyFunction):
            return fld.apply(obj)
        if isinstance(obj, VectorField):
            return fld.bracket(obj)
        if isinstance(obj, MultiVector):
            return schouten(fld, obj)
        if isinstance(obj, DiffForm):
            return lie_form(fld, obj)
        raise TypeError("cannot act on %r" % (obj,))

    def act_monomial(self, exps, obj):
        key = (exps, obj)
        out = self._act_cache.get(key)
        if out is not None:
            return out
        word = self.alg.word_of(exps)
        acted = obj
        for letter in reversed(word):
            acted = self._act_letter(letter, acted)
        self._act_cache[key] = acted
        return acted

    def act(self, el, obj):
        """Action of a PBW element; on the unit monomial it is epsilon-scaling."""
        if not isinstance(el, PBWElement):
            raise TypeError("act expects a PBW element")
        if el.alg is not self.alg:
            raise ValueError("element of an unrealized algebra")
        out = None
        for m, c in el.terms.items():
            piece = self.act_monomial(m, obj)
            piece = piece.scale(c) if not isinstance(piece, PolyFunction) else piece * c
            out = piece if out is None else out + piece
        if out is not None:
            return out
        if isinstance(obj, PolyFunction):
            return self.chart.zero_fn()
        if isinstance(obj, VectorField):
            return self.chart.zero_vf()
        if isinstance(obj, MultiVector):
            return MultiVector.zero(self.chart)
        return DiffForm.zero(self.chart)

    def act_pair(self, tensor, first, second):
        """Legwise action of an arity-2 tensor: returns list of
        (coefficient, acted_first, acted_second) triples."""
        out = []
        for (m1, m2), c in tensor.terms.items():
            out.append((c, self.act_monomial(m1, first), self.act_monomial(m2, second)))
        return out
