"""Universal enveloping algebras with PBW normal ordering and Hopf structure.

A Lie algebra is given by an ordered basis and structure constants; elements
of U(g) are kept in PBW normal form (sorted monomials in the basis order).
The rewrite rule e_j e_i -> e_i e_j + [e_j, e_i] for j > i terminates and is
confluent, so normal forms are canonical.  The coproduct, counit, antipode
and the total-symmetrization map used by the Gutt star product live here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .scalars import HbarSeries, Scalar


class LiePresentation:
    """Ordered basis, structure constants and an optional *-involution.

    brackets maps a pair of basis names to the expansion of their bracket,
    itself a mapping from basis names to scalar coefficients, e.g.
    ``{("H", "E"): {"E": 2}}`` for [H, E] = 2E.  Missing pairs are zero.
    The Jacobi identity is validated eagerly: a silent non-Lie input would
    corrupt every downstream identity.
    """

    def __init__(self, ctx, names, brackets=None, involution=None):
        self.ctx = ctx
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        self.dim = len(self.names)
        self._index = {nm: k for k, nm in enumerate(self.names)}
        table = {}
        for (na, nb), expansion in (brackets or {}).items():
            ia, ib = self._index[na], self._index[nb]
            if ia == ib:
                raise ValueError("bracket [%s,%s] of a generator with itself" % (na, nb))
            row = {self._index[nk]: ctx.scalar(cv) if not isinstance(cv, Scalar) else cv
                   for nk, cv in expansion.items()}
            row = {k: v for k, v in row.items() if not v.is_zero}
            if (ia, ib) in table or (ib, ia) in table:
                raise ValueError("bracket [%s,%s] given twice" % (na, nb))
            table[(ia, ib)] = row
            table[(ib, ia)] = {k: -v for k, v in row.items()}
        self._table = table
        self._check_jacobi()
        if involution is None:
            self.involution = None
        else:
            eps = []
            for nm in self.names:
                sign = involution[nm]
                if sign not in (1, -1):
                    raise ValueError("involution signs must be +1 or -1")
                eps.append(sign)
            self.involution = tuple(eps)
            self._check_involution()
        self._word_cache = {}
        self._coproduct_cache = {}
        self._antipode_cache = {}

    # -- construction-time validation ---------------------------------------

    def bracket(self, i, j):
        return self._table.get((i, j), {})

    def _check_jacobi(self):
        zero = self.ctx.zero
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = {}
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        for m, cv in self.bracket(a, b).items():
                            for l, dv in self.bracket(m, c).items():
                                acc[l] = acc.get(l, zero) + cv * dv
                    if any(not v.is_zero for v in acc.values()):
                        raise ValueError(
                            "structure constants violate the Jacobi identity on (%s,%s,%s)"
                            % (self.names[i], self.names[j], self.names[k]))

    def _check_involution(self):
        eps = self.involution
        for (i, j), row in self._table.items():
            # ([e_i, e_j])^* must equal [e_j^*, e_i^*] = eps_i eps_j [e_j, e_i]
            lhs = {k: v.conjugate() * eps[k] for k, v in row.items()}
            rhs = {k: v * (eps[i] * eps[j]) for k, v in self.bracket(j, i).items()}
            keys = set(lhs) | set(rhs)
            zero = self.ctx.zero
            for k in keys:
                if lhs.get(k, zero) != rhs.get(k, zero):
                    raise ValueError(
                        "involution table violates [x,y]* = [y*,x*] on (%s,%s)"
                        % (self.names[i], self.names[j]))

    # -- PBW rewriting -------------------------------------------------------

    def normal_word(self, word):
        """Normal form of a product of basis letters as dict[exps -> Scalar]."""
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        desc = -1
        for k in range(len(word) - 1):
            if word[k] > word[k + 1]:
                desc = k
                break
        if desc < 0:
            exps = [0] * self.dim
            for i in word:
                exps[i] += 1
            result = {tuple(exps): self.ctx.one}
        else:
            j, i = word[desc], word[desc + 1]
            swapped = word[:desc] + (i, j) + word[desc + 2:]
            result = dict(self.normal_word(swapped))
            for m, cv in self.bracket(j, i).items():
                sub = word[:desc] + (m,) + word[desc + 2:]
                for exps, sv in self.normal_word(sub).items():
                    acc = result.get(exps)
                    val = sv * cv if acc is None else acc + sv * cv
                    if val.is_zero:
                        result.pop(exps, None)
                    else:
                        result[exps] = val
        self._word_cache[word] = result
        return result

    @staticmethod
    def word_of(exps):
        word = []
        for i, k in enumerate(exps):
            word.extend([i] * k)
        return tuple(word)

    # -- element constructors --------------------------------------------------

    def zero_el(self):
        return PBWElement(self, {})

    def unit(self, coeff=1):
        return self.monomial((0,) * self.dim, coeff)

    def generator(self, name):
        exps = [0] * self.dim
        exps[self._index[name]] = 1
        return self.monomial(tuple(exps))

    def monomial(self, exps, coeff=1):
        c = coeff if isinstance(coeff, HbarSeries) else self.ctx.series([coeff])
        if c.is_zero:
            return PBWElement(self, {})
        return PBWElement(self, {tuple(exps): c})

    def element(self, terms):
        """Element from {exps: coefficient}; coefficients may be int/Scalar/series."""
        out = {}
        for exps, coeff in terms.items():
            c = coeff if isinstance(coeff, HbarSeries) else self.ctx.series([coeff])
            if not c.is_zero:
                out[tuple(exps)] = c
        return PBWElement(self, out)

    # -- cached Hopf structure on monomials -------------------------------------

    def coproduct_monomial(self, exps):
        """Delta of a PBW monomial as dict[(exps, exps) -> Scalar]."""
        cached = self._coproduct_cache.get(exps)
        if cached is not None:
            return cached
        unit = (0,) * self.dim
        terms = {(unit, unit): self.ctx.one}
        for i, k in enumerate(exps):
            for _ in range(k):
                new = {}
                for (ma, mb), cv in terms.items():
                    for ma2, sv in self._append_letter(ma, i).items():
                        key = (ma2, mb)
                        _acc(new, key, cv * sv)
                    for mb2, sv in self._append_letter(mb, i).items():
                        key = (ma, mb2)
                        _acc(new, key, cv * sv)
                terms = new
        self._coproduct_cache[exps] = terms
        return terms

    def _append_letter(self, exps, letter):
        if all(letter >= j or exps[j] == 0 for j in range(self.dim)):
            # appending in order needs no rewriting
            out = list(exps)
            out[letter] += 1
            return {tuple(out): self.ctx.one}
        return self.normal_word(self.word_of(exps) + (letter,))

    def antipode_monomial(self, exps):
        """S of a PBW monomial as dict[exps -> Scalar]."""
        cached = self._antipode_cache.get(exps)
        if cached is not None:
            return cached
        word = self.word_of(exps)
        rev = tuple(reversed(word))
        sign = self.ctx.one if len(word) % 2 == 0 else -self.ctx.one
        result = {m: sv * sign for m, sv in self.normal_word(rev).items()}
        self._antipode_cache[exps] = result
        return result


def _acc(d, key, val):
    old = d.get(key)
    new = val if old is None else old + val
    if (isinstance(new, (Scalar, HbarSeries)) and new.is_zero):
        d.pop(key, None)
    else:
        d[key] = new


class PBWElement:
    """Normal-ordered element of U(g) with truncated hbar-series coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    @property
    def ctx(self):
        return self.alg.ctx

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            if other.alg is not self.alg:
                raise ValueError("elements of different enveloping algebras")
            return other
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            return self.alg.unit(other)
        return None

    # -- queries ---------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.ctx.series_zero())

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            _acc(out, m, c)
        return PBWElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.alg, {m: -c for m, c in self.terms.items()})

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

    def scale(self, coeff):
        if isinstance(coeff, HbarSeries):
            if coeff.is_zero:
                return self.alg.zero_el()
            return PBWElement(self.alg, {m: c * coeff for m, c in self.terms.items()})
        s = self.ctx.scalar(coeff)
        if s.is_zero:
            return self.alg.zero_el()
        return PBWElement(self.alg, {m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        alg = self.alg
        out = {}
        for ma, ca in self.terms.items():
            wa = alg.word_of(ma)
            for mb, cb in o.terms.items():
                cc = ca * cb
                if cc.is_zero:
                    continue
                for m, sv in alg.normal_word(wa + alg.word_of(mb)).items():
                    _acc(out, m, cc * sv)
        return PBWElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = self.alg.unit()
        for _ in range(n):
            out = out * self
        return out

    # -- Hopf structure -----------------------------------------------------------

    def coproduct(self):
        """Delta as a TensorElement of arity 2 (algebra map, primitives split)."""
        from .tensors import TensorElement
        out = {}
        for m, c in self.terms.items():
            for key, sv in self.alg.coproduct_monomial(m).items():
                _acc(out, key, c * sv)
        return TensorElement(self.alg, 2, out)

    def antipode(self):
        out = {}
        for m, c in self.terms.items():
            for m2, sv in self.alg.antipode_monomial(m).items():
                _acc(out, m2, c * sv)
        return PBWElement(self.alg, out)

    def counit(self):
        unit = (0,) * self.alg.dim
        return self.terms.get(unit, self.ctx.series_zero())

    def star(self):
        """The *-involution extended as an antilinear anti-homomorphism."""
        eps = self.alg.involution
        if eps is None:
            raise ValueError("presentation has no involution table")
        out = {}
        for m, c in self.terms.items():
            sign = 1
            for i, k in enumerate(m):
                if k and eps[i] == -1 and k % 2:
                    sign = -sign
            word = tuple(reversed(self.alg.word_of(m)))
            cc = c.conjugate() * sign
            for m2, sv in self.alg.normal_word(word).items():
                _acc(out, m2, cc * sv)
        return PBWElement(self.alg, out)

    # -- comparison / printing -------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, PBWElement) else other
        if not isinstance(o, PBWElement):
            return NotImplemented
        return self.alg is o.alg and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[m]
            factors = []
            for i, k in enumerate(m):
                if k:
                    nm = self.alg.names[i]
                    factors.append(nm if k == 1 else "%s^%d" % (nm, k))
            ct = c.to_text()
            needs_parens = ("+" in ct[1:]) or ("-" in ct[1:]) or ("/" in ct) or (" " in ct)
            if not factors:
                parts.append("(" + ct + ")" if needs_parens else ct)
            elif ct == "1":
                parts.append("*".join(factors))
            elif ct == "-1":
                parts.append("-" + "*".join(factors))
            else:
                if needs_parens:
                    ct = "(" + ct + ")"
                parts.append(ct + "*" + "*".join(factors))
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out

    __str__ = to_text

    def __repr__(self):
        return "PBWElement(%s)" % self.to_text()


# -- standard presentations ------------------------------------------------------


def so21(ctx, names=("H", "E", "Ep"), with_involution=True):
    """so(2,1) in the basis [H,E]=2E, [H,E']=-2E', [E',E]=H, all anti-Hermitian."""
    h, e, ep = names
    inv = {h: -1, e: -1, ep: -1} if with_involution else None
    return LiePresentation(
        ctx, names,
        brackets={(h, e): {e: 2}, (h, ep): {ep: -2}, (ep, e): {h: 1}},
        involution=inv)


def sl2(ctx, names=("E", "F", "H")):
    """sl(2) in the Chevalley basis [H,E]=2E, [H,F]=-2F, [E,F]=H."""
    e, f, h = names
    return LiePresentation(
        ctx, names,
        brackets={(h, e): {e: 2}, (h, f): {f: -2}, (e, f): {h: 1}})


def abelian(ctx, names, anti_hermitian=False):
    inv = {nm: -1 for nm in names} if anti_hermitian else None
    return LiePresentation(ctx, names, brackets={}, involution=inv)


def heisenberg(ctx, names=("X", "Y", "Z")):
    """[X,Y]=Z with Z central."""
    x, y, z = names
    return LiePresentation(ctx, names, brackets={(x, y): {z: 1}})


# -- Gutt symmetrization --------------------------------------------------------


def symmetrize(alg, poly_terms, degree_bound=4):
    """Total symmetrization of a polynomial on the dual of g into U(g).

    poly_terms maps exponent tuples (over the basis of g) to series
    coefficients; a monomial of degree n is sent to hbar^n/n! times the sum
    of all letter orderings.
    """
    out = alg.zero_el()
    for exps, coeff in poly_terms.items():
        n = sum(exps)
        if n > degree_bound:
            raise ValueError("degree %d exceeds the symmetrization bound %d" % (n, degree_bound))
        c = coeff if isinstance(coeff, HbarSeries) else alg.ctx.series([coeff])
        word = alg.word_of(exps)
        acc = {}
        for sigma in permutations(word):
            for m, sv in alg.normal_word(sigma).items():
                _acc(acc, m, sv)
        factor = c.shift(n) * Fraction(1, _fact(n))
        piece = PBWElement(alg, {m: factor * sv for m, sv in acc.items()})
        out = out + piece
    return out


def unsymmetrize(alg, el, degree_bound=4):
    """Inverse of symmetrize on the bounded-degree subspace.

    Solved triangularly by degree: the top-degree part of symmetrize(x^K) is
    hbar^|K| e^K, so peeling from the highest degree recovers the polynomial.
    Coefficients above truncation order are lost, so inputs must keep
    degree + hbar-order within the engine's truncation.
    """
    residue = el
    out = {}
    for deg in range(degree_bound, -1, -1):
        layer = {m: c for m, c in residue.terms.items() if sum(m) == deg}
        if not layer:
            continue
        piece = {}
        for m, c in layer.items():
            piece[m] = c.divide_hbar(deg)
        for m, c in piece.items():
            _acc(out, m, c)
        residue = residue - symmetrize(alg, piece, degree_bound)
    if not residue.is_zero:
        raise ValueError("element is not in the image of symmetrize up to degree %d"
                         % degree_bound)
    return out


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out
