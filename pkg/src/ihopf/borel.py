"""The Borel Hopf algebra: Serre-reduced words times a torus part.

A monomial is a pair (word, mu): a basis word of the Serre quotient and
a torus exponent vector.  The normal form keeps all torus generators to
the right of the word letters, straightened through
h_i theta_j = v_i^(c_ij) theta_j h_i.  One flag switches between the
non-invertible torus variant (exponents in N^I) and the invertible one;
every algorithm is identical except for the exponent domain check.

The coproduct takes a word split from the free-algebra cache and dresses
slot k with the torus weight of everything to its right, which is the
whole content of the Hopf structure here; counit, antipode, the diagram
endomorphism, the bilinear pairing and the torus-weighted functional chi
are word-level recursions on top of that.
"""

from __future__ import annotations

from .cartan import CartanData, wt_add, wt_height, wt_neg
from .errors import NegativeTorusExponent, ParseError
from .freealg import FreeAlgebra, FreeElem, _parse_terms
from .scalars import ONE, ZERO, Scalar


class BorelElem:
    """Linear combination of (word, torus exponent) monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if c}
        if alg.hat:
            for (_, mu) in self.terms:
                if any(e < 0 for e in mu):
                    raise NegativeTorusExponent(f"exponent {mu} with hat mode on")

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, BorelElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return BorelElem(self.alg, out)

    def __neg__(self):
        return BorelElem(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            if isinstance(other, int):
                other = Scalar.from_int(other)
            return BorelElem(self.alg, {k: c * other for k, c in self.terms.items()})
        return self.alg.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def theta_degree(self):
        return max((len(w) for (w, _) in self.terms), default=0)

    def ordered_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0][0]), t[0]))

    def __str__(self):
        return self.alg.format_elem(self)

    def __repr__(self):
        return f"BorelElem[{self}]"


class BorelAlgebra:
    """Borel algebra context over a shared free-algebra cache."""

    def __init__(self, cartan: CartanData, height: int = 8, hat: bool = False,
                 free: FreeAlgebra | None = None, reduced: bool = True):
        self.cartan = cartan
        self.height = height
        self.hat = hat
        self.reduced = reduced
        self.f = free or FreeAlgebra(cartan, height)
        self.n = cartan.n
        self._dsplit = {}
        self._chi = {}

    def _reduce_word(self, word) -> dict:
        if self.reduced:
            return self.f.reduce_word(word)
        if len(word) > self.height:
            from .errors import TruncationExceeded
            raise TruncationExceeded(
                f"word beyond truncation height {self.height}")
        return {word: ONE}

    def v(self, k: int) -> Scalar:
        return Scalar.v_pow(k)

    # -- constructors -----------------------------------------------------

    def zero(self) -> BorelElem:
        return BorelElem(self, {})

    def one(self) -> BorelElem:
        return BorelElem(self, {((), (0,) * self.n): ONE})

    def gen(self, i: int) -> BorelElem:
        return BorelElem(self, {(((i,)), (0,) * self.n): ONE})

    def torus(self, mu) -> BorelElem:
        return BorelElem(self, {((), tuple(mu)): ONE})

    def monomial(self, word, mu=None, coeff=ONE) -> BorelElem:
        mu = tuple(mu) if mu is not None else (0,) * self.n
        word = tuple(word)
        if len(word) < 2:
            return BorelElem(self, {(word, mu): coeff})
        return BorelElem(
            self,
            {(w, mu): coeff * c for w, c in self._reduce_word(word).items()},
        )

    def from_free(self, x: FreeElem) -> BorelElem:
        zero_mu = (0,) * self.n
        out = {}
        for w, c in x.terms.items():
            for w2, c2 in self._reduce_word(w).items():
                k = (w2, zero_mu)
                s = out.get(k, ZERO) + c * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return BorelElem(self, out)

    def f_part(self, x: BorelElem) -> FreeElem:
        """Projection onto trivial torus exponent."""
        zero_mu = (0,) * self.n
        return self.f.elem({w: c for (w, mu), c in x.terms.items() if mu == zero_mu})

    def elem(self, terms: dict) -> BorelElem:
        return BorelElem(self, terms)

    # -- product ------------------------------------------------------------

    def mul_mono(self, m1, m2) -> dict:
        (w1, mu1), (w2, mu2) = m1, m2
        c = ONE
        if w2:
            tw = self.cartan.bilinear(mu1, self.f.wt(w2))
            if tw:
                c = Scalar.v_pow(tw)
        mu = wt_add(mu1, mu2)
        if not w1 or not w2:
            return {(w1 + w2, mu): c}
        return {(w, mu): c * c2 for w, c2 in self._reduce_word(w1 + w2).items()}

    def mul(self, x: BorelElem, y: BorelElem) -> BorelElem:
        out = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                c12 = c1 * c2
                for k, c in self.mul_mono(m1, m2).items():
                    s = out.get(k, ZERO) + c12 * c
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return BorelElem(self, out)

    # -- coproduct ------------------------------------------------------------

    def _word_splits(self, word, parts: int):
        """Reduced `parts`-fold splits of a word (no torus dressing)."""
        key = (word, parts)
        got = self._dsplit.get(key)
        if got is not None:
            return got
        out = {}
        for ws, c in self.f.rsplits(word, parts).items():
            reduced = [self._reduce_word(w) for w in ws]
            # distribute the per-slot normal forms
            items = [((), c)]
            for slot in reduced:
                items = [
                    (pre + (w2,), cc * c2)
                    for pre, cc in items
                    for w2, c2 in slot.items()
                ]
            for ws2, cc in items:
                s = out.get(ws2, ZERO) + cc
                if s:
                    out[ws2] = s
                else:
                    del out[ws2]
        got = self._dsplit[key] = tuple(out.items())
        return got

    def delta(self, x: BorelElem, parts: int = 2) -> dict:
        """Iterated coproduct: {((w1,mu1), ..., (wk,muk)): Scalar}."""
        assert parts >= 2
        out = {}
        for (w, mu), c in x.terms.items():
            for ws, c2 in self._word_splits(w, parts):
                tail = mu
                dressed = []
                for k in range(parts - 1, -1, -1):
                    dressed.append((ws[k], tail))
                    tail = wt_add(tail, self.f.wt(ws[k]))
                key = tuple(reversed(dressed))
                s = out.get(key, ZERO) + c * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return out

    def delta_mono(self, mono, parts: int = 2):
        return self.delta(BorelElem(self, {mono: ONE}), parts)

    # -- counit / antipode ------------------------------------------------------

    def counit(self, x: BorelElem) -> Scalar:
        acc = ZERO
        for (w, _), c in x.terms.items():
            if not w:
                acc = acc + c
        return acc

    def antipode(self, x: BorelElem) -> BorelElem:
        """S(h^mu) = h^(-mu), S(theta_i) = -h_i^(-1) theta_i, anti-multiplicative."""
        if self.hat:
            raise NegativeTorusExponent("antipode needs the invertible torus")
        out = self.zero()
        for (w, mu), c in x.terms.items():
            acc = self.torus(wt_neg(mu)) * c
            for i in reversed(w):
                ei = tuple(-1 if j == i else 0 for j in range(self.n))
                s_gen = self.mul(self.torus(ei), self.gen(i)) * Scalar.from_int(-1)
                acc = self.mul(acc, s_gen)
            out = out + acc
        return out

    def antipode_inv(self, x: BorelElem) -> BorelElem:
        """Inverse antipode: S^(-1)(theta_i) = -theta_i h_i^(-1)."""
        if self.hat:
            raise NegativeTorusExponent("inverse antipode needs the invertible torus")
        out = self.zero()
        for (w, mu), c in x.terms.items():
            acc = self.torus(wt_neg(mu)) * c
            for i in reversed(w):
                ei = tuple(-1 if j == i else 0 for j in range(self.n))
                s_gen = self.monomial((i,), ei, -ONE)
                acc = self.mul(acc, s_gen)
            out = out + acc
        return out

    # -- diagram endomorphism ------------------------------------------------------

    def tau_endo(self, x: BorelElem) -> BorelElem:
        tau = self.cartan.tau
        out = {}
        for (w, mu), c in x.terms.items():
            w2 = tuple(tau[i] for i in w)
            mu2 = self.cartan.tau_weight(mu)
            for w3, c2 in self._reduce_word(w2).items():
                k = (w3, mu2)
                s = out.get(k, ZERO) + c * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return BorelElem(self, out)

    # -- pairing ----------------------------------------------------------------------

    def pair_mono(self, m1, m2) -> Scalar:
        (w1, mu1), (w2, mu2) = m1, m2
        if self.f.wt(w1) != self.f.wt(w2):
            return ZERO
        p = self.f.pair_words(w1, w2)
        if not p:
            return ZERO
        tw = self.cartan.bilinear(mu1, mu2)
        return p * Scalar.v_pow(tw) if tw else p

    def pairing(self, x: BorelElem, y: BorelElem, twist: bool = False) -> Scalar:
        """Hopf pairing; with twist=True computes the pairing of (tau x, y)."""
        if twist:
            x = self.tau_endo(x)
        acc = ZERO
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                p = self.pair_mono(m1, m2)
                if p:
                    acc = acc + c1 * c2 * p
        return acc

    # -- the tau-twisted compatible functional -------------------------------------------

    def chi_torus(self, mu) -> Scalar:
        """chi(h^mu) = v^((mu, tau mu)/2 + sum_k mu_k (alpha_k, alpha_tau(k))/2)."""
        tau_mu = self.cartan.tau_weight(mu)
        e = self.cartan.bilinear(mu, tau_mu)
        for k, m in enumerate(mu):
            if m:
                e += m * self.cartan.sym(k, self.cartan.tau[k])
        assert e % 2 == 0
        return Scalar.v_pow(e // 2)

    def chi_word(self, word, mu) -> Scalar:
        key = (word, mu)
        got = self._chi.get(key)
        if got is not None:
            return got
        if not word:
            got = self.chi_torus(mu)
        else:
            i, rest = word[0], word[1:]
            ti = self.cartan.tau[i]
            head = Scalar.v_pow(self.cartan.sym(i, ti)) * self.f.vvi(ti)
            acc = ZERO
            for (a, b), c in self.f.rsplit2(rest).items():
                if a == (ti,):
                    acc = acc + c * self.chi_word(b, mu)
            got = head * acc
        self._chi[key] = got
        return got

    def chi(self, x: BorelElem) -> Scalar:
        acc = ZERO
        for (w, mu), c in x.terms.items():
            t = self.chi_word(w, mu)
            if t:
                acc = acc + c * t
        return acc

    def chi_free(self, x: FreeElem) -> Scalar:
        """chi on raw free-algebra elements (no Serre reduction applied)."""
        zero_mu = (0,) * self.n
        acc = ZERO
        for w, c in x.terms.items():
            t = self.chi_word(w, zero_mu)
            if t:
                acc = acc + c * t
        return acc

    # -- text format -------------------------------------------------------------------------

    def format_mono(self, mono) -> str:
        w, mu = mono
        tpart = "".join(f"t[{i + 1}]" for i in w)
        hpart = "".join(
            f"h[{j + 1}]" + (f"^{e}" if e != 1 else "")
            for j, e in enumerate(mu) if e
        )
        if tpart and hpart:
            return f"{tpart}*{hpart}"
        return tpart or hpart or "1"

    def format_elem(self, x: BorelElem) -> str:
        if not x.terms:
            return "0"
        parts = []
        for mono, c in x.ordered_terms():
            body = self.format_mono(mono)
            if c.is_one and body != "1":
                parts.append(body)
            elif body == "1":
                parts.append(str(c))
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def parse_elem(self, text: str) -> BorelElem:
        out = self.zero()
        for coeff, letters in _parse_terms(text, ("t", "h")):
            acc = self.one() * coeff
            for sym, idx, exp in letters:
                if idx >= self.n:
                    raise ParseError(f"index {idx + 1} out of range")
                if sym == "t":
                    if exp != 1:
                        raise ParseError("t letters do not take exponents")
                    acc = self.mul(acc, self.gen(idx))
                else:
                    mu = tuple(exp if j == idx else 0 for j in range(self.n))
                    acc = self.mul(acc, self.torus(mu))
            out = out + acc
        return out
