"""Tensor powers of an enveloping algebra in leg notation.

A TensorElement of arity n is a finite sum of n-tuples of PBW monomials with
series coefficients; every leg is kept in normal form and tuples are merged,
so equality is decidable and canonical.  Leg embeddings realize the usual
F_12, F_21, F_13 notation, and the coproduct can be spliced into any leg.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import HbarSeries, Scalar
from .lie import PBWElement, _acc


class TensorElement:
    __slots__ = ("alg", "arity", "terms")

    def __init__(self, alg, arity, terms):
        self.alg = alg
        self.arity = arity
        self.terms = terms

    @property
    def ctx(self):
        return self.alg.ctx

    # -- constructors -----------------------------------------------------------

    @classmethod
    def unit(cls, alg, arity):
        one = (0,) * alg.dim
        return cls(alg, arity, {(one,) * arity: alg.ctx.series([1])})

    @classmethod
    def zero(cls, alg, arity):
        return cls(alg, arity, {})

    @classmethod
    def from_legs(cls, *legs):
        """Tensor product of PBW elements, one per leg."""
        alg = legs[0].alg
        terms = {(): alg.ctx.series([1])}
        for leg in legs:
            if leg.alg is not alg:
                raise ValueError("legs from different algebras")
            new = {}
            for key, c in terms.items():
                for m, cm in leg.terms.items():
                    _acc(new, key + (m,), c * cm)
            terms = new
        return cls(alg, len(legs), terms)

    def _coerce(self, other):
        if isinstance(other, TensorElement):
            if other.alg is not self.alg:
                raise ValueError("tensors over different algebras")
            if other.arity != self.arity:
                raise ValueError("tensor arity mismatch: %d vs %d" % (self.arity, other.arity))
            return other
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            one = (0,) * self.alg.dim
            c = other if isinstance(other, HbarSeries) else self.ctx.series([other])
            if c.is_zero:
                return TensorElement(self.alg, self.arity, {})
            return TensorElement(self.alg, self.arity, {(one,) * self.arity: c})
        return None

    # -- linear structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for key, c in o.terms.items():
            _acc(out, key, c)
        return TensorElement(self.alg, self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return TensorElement(self.alg, self.arity,
                             {k: -c for k, c in self.terms.items()})

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
        c = coeff if isinstance(coeff, HbarSeries) else self.ctx.series([coeff])
        if c.is_zero:
            return TensorElement(self.alg, self.arity, {})
        return TensorElement(self.alg, self.arity,
                             {k: cv * c for k, cv in self.terms.items()})

    # -- multiplication -------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        alg = self.alg
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in o.terms.items():
                c = ca * cb
                if c.is_zero:
                    continue
                # legwise PBW products; distribute over the normal forms
                partial = {(): c}
                for leg in range(self.arity):
                    word = alg.word_of(ka[leg]) + alg.word_of(kb[leg])
                    nf = alg.normal_word(word)
                    new = {}
                    for key, cv in partial.items():
                        for m, sv in nf.items():
                            _acc(new, key + (m,), cv * sv)
                    partial = new
                for key, cv in partial.items():
                    _acc(out, key, cv)
        return TensorElement(alg, self.arity, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, HbarSeries)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = TensorElement.unit(self.alg, self.arity)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        """Inverse of 1 + O(hbar) via the geometric series, exact under truncation."""
        one = TensorElement.unit(self.alg, self.arity)
        t = self - one
        if any(not c.coeff(0).is_zero for c in t.terms.values()):
            raise ValueError("tensor inverse implemented only for 1 + O(hbar)")
        out = one
        power = one
        sign = 1
        for _ in range(self.ctx.order):
            power = power * t
            if power.is_zero:
                break
            sign = -sign
            out = out + power.scale(sign)
        return out

    def exp(self):
        """exp of a tensor with zero hbar-order-0 part (finite by truncation)."""
        if any(not c.coeff(0).is_zero for c in self.terms.values()):
            raise ValueError("tensor exp requires the order-0 part to vanish")
        one = TensorElement.unit(self.alg, self.arity)
        out = one
        p = one
        fact = 1
        for k in range(1, self.ctx.order + 1):
            p = p * self
            if p.is_zero:
                break
            fact *= k
            out = out + p.scale(Fraction(1, fact))
        return out

    # -- leg operations ----------------------------------------------------------------

    def leg_embed(self, positions, arity):
        """Place the legs of this tensor at the given positions, 1 elsewhere.

        The order of positions realizes the flip: embedding an arity-2 tensor
        at (2, 1) produces the 21-swap.
        """
        if len(positions) != self.arity:
            raise ValueError("need exactly one position per leg")
        if len(set(positions)) != len(positions):
            raise ValueError("positions must be distinct")
        if any(p < 1 or p > arity for p in positions):
            raise ValueError("positions out of range for arity %d" % arity)
        one = (0,) * self.alg.dim
        out = {}
        for key, c in self.terms.items():
            new = [one] * arity
            for leg, pos in enumerate(positions):
                new[pos - 1] = key[leg]
            _acc(out, tuple(new), c)
        return TensorElement(self.alg, arity, out)

    def permute(self, perm):
        """Reorder legs: new leg k is old leg perm[k] (0-based)."""
        out = {}
        for key, c in self.terms.items():
            _acc(out, tuple(key[p] for p in perm), c)
        return TensorElement(self.alg, self.arity, out)

    def flip(self):
        """The 21-swap of an arity-2 tensor."""
        if self.arity != 2:
            raise ValueError("flip is for arity 2")
        return self.permute((1, 0))

    def map_leg(self, leg, monomial_map):
        """Apply a linear map (given on monomials as dict[exps -> Scalar]) to a leg."""
        if not 1 <= leg <= self.arity:
            raise ValueError("invalid leg %d" % leg)
        out = {}
        for key, c in self.terms.items():
            for m, sv in monomial_map(key[leg - 1]).items():
                new = key[: leg - 1] + (m,) + key[leg:]
                _acc(out, new, c * sv)
        return TensorElement(self.alg, self.arity, out)

    def antipode_on_leg(self, leg):
        return self.map_leg(leg, self.alg.antipode_monomial)

    def expand_leg(self, leg, monomial_expand, extra):
        """Splice an expansion of one leg into `extra` legs.

        monomial_expand maps a monomial to dict[tuple-of-monomials -> series
        or Scalar] of arity `extra`; the result has arity n - 1 + extra.
        """
        if not 1 <= leg <= self.arity:
            raise ValueError("invalid leg %d" % leg)
        out = {}
        for key, c in self.terms.items():
            for ms, sv in monomial_expand(key[leg - 1]).items():
                new = key[: leg - 1] + tuple(ms) + key[leg:]
                _acc(out, new, c * sv)
        return TensorElement(self.alg, self.arity - 1 + extra, out)

    def coproduct_on_leg(self, leg):
        """Apply the coproduct to one leg, splicing the result in place."""
        return self.expand_leg(leg, self.alg.coproduct_monomial, 2)

    def counit_on_leg(self, leg):
        """Contract one leg with the counit (arity decreases by one)."""
        if not 1 <= leg <= self.arity:
            raise ValueError("invalid leg %d" % leg)
        if self.arity == 1:
            raise ValueError("cannot drop the only leg; use to_pbw and counit")
        unit = (0,) * self.alg.dim
        out = {}
        for key, c in self.terms.items():
            if key[leg - 1] == unit:
                _acc(out, key[: leg - 1] + key[leg:], c)
        return TensorElement(self.alg, self.arity - 1, out)

    def contract_mul(self):
        """Multiply all legs together in order, landing in U(g)."""
        alg = self.alg
        out = {}
        for key, c in self.terms.items():
            word = ()
            for m in key:
                word += alg.word_of(m)
            for m, sv in alg.normal_word(word).items():
                _acc(out, m, c * sv)
        return PBWElement(alg, out)

    def to_pbw(self):
        """View an arity-1 tensor as a PBW element."""
        if self.arity != 1:
            raise ValueError("only arity-1 tensors are PBW elements")
        return PBWElement(self.alg, {key[0]: c for key, c in self.terms.items()})

    def star_legwise(self):
        """Legwise *-involution with conjugated coefficients (no leg reversal)."""
        out = TensorElement.zero(self.alg, self.arity)
        for key, c in self.terms.items():
            legs = [PBWElement(self.alg, {m: self.ctx.series([1])}).star()
                    for m in key]
            piece = TensorElement.from_legs(*legs).scale(c.conjugate())
            out = out + piece
        return out

    # -- comparison / printing ------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, TensorElement) else other
        if not isinstance(o, TensorElement):
            return NotImplemented
        return (self.alg is o.alg and self.arity == o.arity and self.terms == o.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def to_text(self):
        if not self.terms:
            return "0"
        alg = self.alg
        parts = []
        for key in sorted(self.terms, key=lambda k: (tuple(sum(e) for e in k), k)):
            c = self.terms[key]
            legs = []
            for m in key:
                factors = [alg.names[i] if k == 1 else "%s^%d" % (alg.names[i], k)
                           for i, k in enumerate(m) if k]
                legs.append("*".join(factors) if factors else "1")
            body = " ox ".join(legs)
            ct = c.to_text()
            if ct == "1":
                parts.append("(" + body + ")")
            else:
                if ("+" in ct[1:]) or ("-" in ct[1:]) or ("/" in ct) or (" " in ct):
                    ct = "(" + ct + ")"
                parts.append(ct + "*(" + body + ")")
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return "TensorElement(%s)" % self.to_text()
