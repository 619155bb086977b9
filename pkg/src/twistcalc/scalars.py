"""Exact coefficient arithmetic and truncated power series in hbar.

The scalar field is Q(i) extended by a finite set of commuting parameters
(say a, c) and declared square-root symbols with defining relations such as
sqrt(a)^2 = a.  Every value is a reduced fraction of multivariate polynomials
with Gaussian-rational coefficients; radicals are rewritten away from
denominators and kept at exponent <= 1 everywhere, which makes the normal
form unique and equality decidable.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ_I
from sympy.polys.rings import ring as _sparse_ring


class TruncationMismatch(ValueError):
    """Two series with different truncation orders were combined."""


class NonUnitError(ZeroDivisionError):
    """Inversion of a non-unit (zero scalar, or series with zero constant term)."""


def _sanitize(name):
    out = []
    for ch in name:
        out.append(ch if ch.isalnum() or ch == "_" else "_")
    return "".join(out)


class Context:
    """Engine configuration: scalar parameters, radicals and truncation order.

    radicals maps a display name like "sqrt(a)" to the polynomial its square
    equals.  The defining polynomial may be given as a parameter name, an
    integer, or a list of (coefficient, {param: exponent}) terms; it may only
    involve parameters, never other radicals.
    """

    def __init__(self, params=(), radicals=None, order=4):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = int(order)
        self.params = tuple(params)
        radicals = dict(radicals or {})
        self.radical_names = tuple(radicals)
        names = self.params + tuple(_sanitize(r) for r in self.radical_names)
        if len(set(names)) != len(names):
            raise ValueError("parameter/radical names collide: %r" % (names,))
        if names:
            self._ring, *gens = _sparse_ring(" ".join(names), QQ_I)
        else:
            self._ring, = _sparse_ring("", QQ_I)
            gens = []
        self._gens = tuple(gens)
        self._ngens = len(names)
        self._display = dict(zip(names, self.params + self.radical_names))
        self._radical_index = {}
        for k, (rname, defining) in enumerate(radicals.items()):
            idx = len(self.params) + k
            self._radical_index[idx] = self._defining_poly(defining, rname)
        self._zero = Scalar(self, QQ_I.zero, None, None)
        self._one = Scalar(self, QQ_I.one, None, None)
        self._i = Scalar(self, QQ_I.dtype(0, 1), None, None)
        self._series_one = self.series([1])
        self._series_zero = self.series([])

    def _defining_poly(self, defining, rname):
        if isinstance(defining, str):
            if defining not in self.params:
                raise ValueError("radical %s: unknown parameter %r" % (rname, defining))
            poly = self._gens[self.params.index(defining)]
        elif isinstance(defining, int):
            poly = self._ring.ground_new(QQ_I.convert(defining))
        else:
            poly = self._ring.zero
            for coeff, monom in defining:
                exps = [0] * self._ngens
                for pname, e in monom.items():
                    if pname not in self.params:
                        raise ValueError("radical %s: unknown parameter %r" % (rname, pname))
                    exps[self.params.index(pname)] = e
                poly += self._ring.term_new(tuple(exps), QQ_I.convert(Fraction(coeff)))
        for monom, _ in poly.terms():
            if any(monom[len(self.params):]):
                raise ValueError("radical %s: defining polynomial may only use parameters" % rname)
        return poly

    # -- scalar constructors -------------------------------------------------

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def i(self):
        return self._i

    def rational(self, p, q=1):
        return Scalar(self, QQ_I.convert(Fraction(p, q)), None, None)

    def scalar(self, value):
        """Coerce an int, Fraction or Scalar into this context."""
        if isinstance(value, Scalar):
            if value.ctx is not self:
                raise ValueError("scalar from a different context")
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(self, QQ_I.convert(Fraction(value)), None, None)
        raise TypeError("cannot coerce %r to Scalar" % (value,))

    def param(self, name):
        if name not in self.params:
            raise KeyError("unknown parameter %r" % name)
        return Scalar._pair(self, self._gens[self.params.index(name)], self._ring.one)

    def radical(self, name):
        if name not in self.radical_names:
            raise KeyError("unknown radical %r" % name)
        idx = len(self.params) + self.radical_names.index(name)
        return Scalar._pair(self, self._gens[idx], self._ring.one)

    def atom(self, name):
        """Parameter or radical by display name; 'i' gives the imaginary unit."""
        if name == "i":
            return self._i
        if name in self.params:
            return self.param(name)
        if name in self.radical_names:
            return self.radical(name)
        raise KeyError("unknown scalar symbol %r" % name)

    # -- series constructors -------------------------------------------------

    def series(self, coeffs, order=None):
        order = self.order if order is None else order
        cs = [self.scalar(c) if not isinstance(c, Scalar) else self.scalar(c)
              for c in list(coeffs)[: order + 1]]
        cs += [self._zero] * (order + 1 - len(cs))
        return HbarSeries(self, order, tuple(cs))

    def hbar(self, order=None):
        return self.series([0, 1], order)

    def series_one(self, order=None):
        return self.series([1], order)

    def series_zero(self, order=None):
        return self.series([], order)

    # -- polynomial helpers used by Scalar -----------------------------------

    def _reduce_radicals(self, poly):
        for idx, defining in self._radical_index.items():
            hit = any(m[idx] >= 2 for m in poly.monoms()) if poly else False
            if not hit:
                continue
            out = self._ring.zero
            for monom, coeff in poly.terms():
                k = monom[idx]
                if k >= 2:
                    m2 = list(monom)
                    m2[idx] = k % 2
                    out += self._ring.term_new(tuple(m2), coeff) * defining ** (k // 2)
                else:
                    out += self._ring.term_new(monom, coeff)
            poly = out
        return poly

    @staticmethod
    def _flip_radical(ring, poly, idx):
        out = ring.zero
        for monom, coeff in poly.terms():
            term = ring.term_new(monom, coeff)
            out = out - term if monom[idx] % 2 else out + term
        return out


_conj_cache = {}


def _gconj(g):
    return QQ_I.dtype(g.x, -g.y)


class Scalar:
    """Element of the exact coefficient field, in unique normal form.

    Two internal tiers: a bare Gaussian rational for constants (the common
    case in Hopf-algebra computations) and a reduced numerator/denominator
    pair of multivariate polynomials otherwise.  The denominator is monic,
    radical-free and coprime to the numerator, so equal values have equal
    representations.
    """

    __slots__ = ("ctx", "_g", "_n", "_d", "_hash")

    def __init__(self, ctx, g, n, d):
        self.ctx = ctx
        self._g = g
        self._n = n
        self._d = d
        self._hash = None

    # -- construction ---------------------------------------------------------

    @staticmethod
    def _pair(ctx, num, den):
        num = ctx._reduce_radicals(num)
        den = ctx._reduce_radicals(den)
        ring = ctx._ring
        if not den:
            raise ZeroDivisionError("scalar division by zero")
        for idx in ctx._radical_index:
            if any(m[idx] for m in den.monoms()):
                conj = Context._flip_radical(ring, den, idx)
                num = ctx._reduce_radicals(num * conj)
                den = ctx._reduce_radicals(den * conj)
        if not num:
            return ctx._zero
        if den.is_ground:
            lc = den.LC
            if lc != QQ_I.one:
                num = num.quo_ground(lc)
            if num.is_ground:
                return Scalar(ctx, num.LC, None, None)
            return Scalar(ctx, None, num, ring.one)
        g = num.gcd(den)
        if not (g.is_ground and g.LC == QQ_I.one):
            num = num.exquo(g)
            den = den.exquo(g)
        if den.is_ground:
            lc = den.LC
            if lc != QQ_I.one:
                num = num.quo_ground(lc)
            if num.is_ground:
                return Scalar(ctx, num.LC, None, None)
            return Scalar(ctx, None, num, ring.one)
        lc = den.LC
        if lc != QQ_I.one:
            num = num.quo_ground(lc)
            den = den.monic()
        return Scalar(ctx, None, num, den)

    def _promote(self):
        """Numerator/denominator view regardless of tier."""
        if self._g is not None:
            return self.ctx._ring.ground_new(self._g), self.ctx._ring.one
        return self._n, self._d

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise ValueError("scalars from different contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(other)
        return None

    # -- predicates -----------------------------------------------------------

    @property
    def is_zero(self):
        return self._g is not None and not self._g

    @property
    def is_one(self):
        return self._g is not None and self._g == QQ_I.one

    @property
    def is_constant(self):
        return self._g is not None

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._g is not None and o._g is not None:
            return Scalar(self.ctx, self._g + o._g, None, None)
        n1, d1 = self._promote()
        n2, d2 = o._promote()
        return Scalar._pair(self.ctx, n1 * d2 + n2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        if self._g is not None:
            return Scalar(self.ctx, -self._g, None, None)
        return Scalar(self.ctx, None, -self._n, self._d)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._g is not None and o._g is not None:
            return Scalar(self.ctx, self._g * o._g, None, None)
        if self.is_zero or o.is_zero:
            return self.ctx._zero
        n1, d1 = self._promote()
        n2, d2 = o._promote()
        return Scalar._pair(self.ctx, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise NonUnitError("inverse of zero scalar")
        if self._g is not None:
            return Scalar(self.ctx, QQ_I.one / self._g, None, None)
        return Scalar._pair(self.ctx, self._d, self._n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx._one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def conjugate(self):
        """Complex conjugation: i -> -i; parameters and radicals are real."""
        if self._g is not None:
            return Scalar(self.ctx, _gconj(self._g), None, None)
        conj = self.ctx._ring.from_terms(
            [(m, _gconj(c)) for m, c in self._n.terms()])
        conj_d = self.ctx._ring.from_terms(
            [(m, _gconj(c)) for m, c in self._d.terms()])
        return Scalar._pair(self.ctx, conj, conj_d)

    # -- comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Scalar) else other
        if o is None or not isinstance(o, Scalar):
            return NotImplemented
        if o.ctx is not self.ctx:
            return False
        if (self._g is None) != (o._g is None):
            return False
        if self._g is not None:
            return self._g == o._g
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        # PolyElement hashes are cached on mutable dicts upstream, so hash
        # the raw term data of the (immutable) normal form instead.
        if self._hash is None:
            if self._g is not None:
                self._hash = hash(("g", self._g.x, self._g.y))
            else:
                self._hash = hash((
                    frozenset((m, cf.x, cf.y) for m, cf in self._n.terms()),
                    frozenset((m, cf.x, cf.y) for m, cf in self._d.terms())))
        return self._hash

    # -- printing ---------------------------------------------------------------

    def to_text(self):
        num, den = self._promote()
        ntext = _poly_text(self.ctx, num)
        if den == self.ctx._ring.one:
            return ntext
        dtext = _poly_text(self.ctx, den)
        if len(den) > 1:
            dtext = "(" + dtext + ")"
        if len(num) > 1:
            ntext = "(" + ntext + ")"
        return ntext + "/" + dtext

    __str__ = to_text

    def __repr__(self):
        return "Scalar(%s)" % self.to_text()


def _gauss_text(g):
    re, im = Fraction(g.x.numerator, g.x.denominator), Fraction(g.y.numerator, g.y.denominator)
    def frac(q):
        return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)
    if im == 0:
        return frac(re), False
    if re == 0:
        if im == 1:
            return "i", False
        if im == -1:
            return "-i", False
        return frac(im) + "*i", False
    imt = "i" if im == 1 else ("-i" if im == -1 else frac(im) + "*i")
    sep = " + " if not imt.startswith("-") else " - "
    return frac(re) + sep + imt.lstrip("-"), True


def _poly_text(ctx, poly):
    if not poly:
        return "0"
    items = sorted(poly.terms(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    parts = []
    for monom, coeff in items:
        factors = []
        for k, e in enumerate(monom):
            if not e:
                continue
            name = ctx._display[ctx._ring.symbols[k].name]
            factors.append(name if e == 1 else "%s^%d" % (name, e))
        ctext, composite = _gauss_text(coeff)
        if not factors:
            term = "(" + ctext + ")" if composite else ctext
        elif ctext == "1":
            term = "*".join(factors)
        elif ctext == "-1":
            term = "-" + "*".join(factors)
        else:
            if composite:
                ctext = "(" + ctext + ")"
            term = ctext + "*" + "*".join(factors)
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += " - " + term[1:] if term.startswith("-") else " + " + term
    return out


class HbarSeries:
    """Truncated formal power series in hbar with Scalar coefficients."""

    __slots__ = ("ctx", "order", "coeffs")

    def __init__(self, ctx, order, coeffs):
        self.ctx = ctx
        self.order = order
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, HbarSeries):
            if other.ctx is not self.ctx:
                raise ValueError("series from different contexts")
            if other.order != self.order:
                raise TruncationMismatch(
                    "truncation orders differ: %d vs %d" % (self.order, other.order))
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.ctx.series([self.ctx.scalar(other)], self.order)
        return None

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.coeffs)

    @property
    def is_unit(self):
        return not self.coeffs[0].is_zero

    def coeff(self, n):
        return self.coeffs[n] if n <= self.order else self.ctx.zero

    def constant_term(self):
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return HbarSeries(self.ctx, self.order,
                          tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries(self.ctx, self.order, tuple(-a for a in self.coeffs))

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
        if isinstance(other, (int, Fraction, Scalar)):
            s = self.ctx.scalar(other)
            if s.is_zero:
                return self.ctx.series_zero(self.order)
            return HbarSeries(self.ctx, self.order, tuple(c * s for c in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.order
        zero = self.ctx.zero
        out = [zero] * (n + 1)
        for ka, ca in enumerate(self.coeffs):
            if ca.is_zero:
                continue
            for kb in range(n + 1 - ka):
                cb = o.coeffs[kb]
                if cb.is_zero:
                    continue
                out[ka + kb] = out[ka + kb] + ca * cb
        return HbarSeries(self.ctx, n, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        """Exact inverse, defined iff the constant term is nonzero."""
        if not self.is_unit:
            raise NonUnitError("series with zero constant term has no inverse")
        c0inv = self.coeffs[0].inverse()
        v = self.ctx.series_one(self.order) - self * c0inv   # zero constant term
        out = self.ctx.series_one(self.order)
        p = self.ctx.series_one(self.order)
        for _ in range(self.order):
            p = p * v
            if p.is_zero:
                break
            out = out + p
        return out * c0inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self * self.ctx.scalar(other).inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.series_one(self.order)
        for _ in range(n):
            out = out * self
        return out

    def exp(self):
        """Finite sum of u^n/n! for a series u with zero constant term."""
        if self.is_unit:
            raise ValueError("exp requires zero constant term")
        out = self.ctx.series_one(self.order)
        p = self.ctx.series_one(self.order)
        fact = 1
        for k in range(1, self.order + 1):
            p = p * self
            if p.is_zero:
                break
            fact *= k
            out = out + p * Fraction(1, fact)
        return out

    def log1p(self):
        """log(1 + u) as a finite sum, for u with zero constant term."""
        if self.is_unit:
            raise ValueError("log1p requires zero constant term")
        out = self.ctx.series_zero(self.order)
        p = self.ctx.series_one(self.order)
        for k in range(1, self.order + 1):
            p = p * self
            if p.is_zero:
                break
            out = out + p * Fraction((-1) ** (k + 1), k)
        return out

    def shift(self, k):
        """Multiply by hbar^k, discarding what truncation pushes out."""
        if k == 0:
            return self
        zero = self.ctx.zero
        cs = (zero,) * k + self.coeffs[: self.order + 1 - k]
        return HbarSeries(self.ctx, self.order, cs)

    def divide_hbar(self, k):
        """Divide by hbar^k; the k lowest coefficients must vanish.

        The top k orders of the result are unknowable after truncation and
        are set to zero, so callers must keep total degrees within budget.
        """
        if k == 0:
            return self
        if any(not c.is_zero for c in self.coeffs[:k]):
            raise ValueError("series is not divisible by hbar^%d" % k)
        zero = self.ctx.zero
        cs = self.coeffs[k:] + (zero,) * k
        return HbarSeries(self.ctx, self.order, cs)

    def conjugate(self):
        return HbarSeries(self.ctx, self.order, tuple(c.conjugate() for c in self.coeffs))

    # -- comparison / printing -------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, HbarSeries) else other
        if not isinstance(o, HbarSeries):
            return NotImplemented
        return self.ctx is o.ctx and self.order == o.order and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def to_text(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            ct = c.to_text()
            if n == 0:
                parts.append(ct)
                continue
            h = "hbar" if n == 1 else "hbar^%d" % n
            if ct == "1":
                parts.append(h)
            elif ct == "-1":
                parts.append("-" + h)
            else:
                if ("+" in ct[1:]) or ("-" in ct[1:]) or ("/" in ct):
                    ct = "(" + ct + ")"
                parts.append(ct + "*" + h)
        if not parts:
            return "0"
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    __str__ = to_text

    def __repr__(self):
        return "HbarSeries(%s)" % self.to_text()
