"""The doubled quantum group in triangular normal form, and its coideal words.

A monomial is (E-word, mu, nu, F-word): a Serre-reduced raising word, the
two torus exponent vectors, and a Serre-reduced lowering word.  Products
re-straighten into this order through the defining cross relations; the
mixed commutator is the only rule that creates torus terms, and it is
memoized at the (F-word, letter) level since the same crossings repeat
constantly.

The module also houses the triangular isomorphism onto the diagonal star
instance (letterwise on generators, inverted by descending elimination),
the coideal generator words (letters B and k) with their embedding, and
the involutions acting on those words.
"""

from __future__ import annotations

from .borel import BorelAlgebra, BorelElem
from .cartan import CartanData, wt_add, wt_neg, wt_sub
from .errors import NegativeTorusExponent, ParseError, TruncationExceeded
from .freealg import _parse_terms
from .scalars import ONE, ZERO, Scalar, qfact
from .star import DiagonalContext, StarWord, TensorElem, star, star_decompose, tensor


class UElem:
    """Linear combination of triangular monomials (E-word, mu, nu, F-word)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if c}
        if alg.hat:
            for (_, mu, nu, _) in self.terms:
                if any(e < 0 for e in mu) or any(e < 0 for e in nu):
                    raise NegativeTorusExponent(f"{mu}, {nu} with hat mode on")

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, UElem) and self.terms == other.terms

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
        return UElem(self.alg, out)

    def __neg__(self):
        return UElem(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if isinstance(other, Scalar):
            return UElem(self.alg, {k: c * other for k, c in self.terms.items()})
        return self.alg.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def degrees(self):
        f = self.alg.f
        return {wt_sub(f.wt(ew), f.wt(fw)) for (ew, _, _, fw) in self.terms}

    def ordered_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda t: (len(t[0][0]) + len(t[0][3]), t[0]),
        )

    def __str__(self):
        return self.alg.format_elem(self)

    def __repr__(self):
        return f"UElem[{self}]"


class UAlgebra:
    """Context for the doubled quantum group over a shared Borel."""

    def __init__(self, cartan: CartanData, height: int = 8, hat: bool = False,
                 borel: BorelAlgebra | None = None):
        self.cartan = cartan
        self.height = height
        self.hat = hat
        self.borel = borel or BorelAlgebra(cartan, height)
        self.f = self.borel.f
        self.n = cartan.n
        self._cross = {}
        self._phi_mono = {}
        self._embed_word = {}

    # -- constructors ---------------------------------------------------

    def zero(self) -> UElem:
        return UElem(self, {})

    def one(self) -> UElem:
        z = (0,) * self.n
        return UElem(self, {((), z, z, ()): ONE})

    def E(self, i: int) -> UElem:
        z = (0,) * self.n
        return UElem(self, {(((i,)), z, z, ()): ONE})

    def F(self, i: int) -> UElem:
        z = (0,) * self.n
        return UElem(self, {((), z, z, (i,)): ONE})

    def K(self, mu) -> UElem:
        z = (0,) * self.n
        return UElem(self, {((), tuple(mu), z, ()): ONE})

    def Kp(self, nu) -> UElem:
        z = (0,) * self.n
        return UElem(self, {((), z, tuple(nu), ()): ONE})

    def Ki(self, i: int, e: int = 1) -> UElem:
        return self.K(tuple(e if j == i else 0 for j in range(self.n)))

    def Kpi(self, i: int, e: int = 1) -> UElem:
        return self.Kp(tuple(e if j == i else 0 for j in range(self.n)))

    def monomial(self, ew, mu, nu, fw, coeff=ONE) -> UElem:
        out = self.one() * coeff
        for i in ew:
            out = self.mul(out, self.E(i))
        out = self.mul(out, self.K(mu))
        out = self.mul(out, self.Kp(nu))
        for j in fw:
            out = self.mul(out, self.F(j))
        return out

    def E_word(self, word, coeff=ONE) -> UElem:
        z = (0,) * self.n
        return UElem(
            self,
            {(w, z, z, ()): coeff * c for w, c in self.f.reduce_word(tuple(word)).items()},
        )

    def F_word(self, word, coeff=ONE) -> UElem:
        z = (0,) * self.n
        return UElem(
            self,
            {((), z, z, w): coeff * c for w, c in self.f.reduce_word(tuple(word)).items()},
        )

    def E_divided(self, i: int, r: int) -> UElem:
        if r < 0:
            return self.zero()
        return self.E_word((i,) * r, qfact(r, self.cartan.D[i]).inv())

    def F_divided(self, i: int, r: int) -> UElem:
        if r < 0:
            return self.zero()
        return self.F_word((i,) * r, qfact(r, self.cartan.D[i]).inv())

    def from_free_E(self, x) -> UElem:
        z = (0,) * self.n
        out = {}
        for w, c in x.terms.items():
            for w2, c2 in self.f.reduce_word(w).items():
                k = (w2, z, z, ())
                s = out.get(k, ZERO) + c * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return UElem(self, out)

    # -- straightening ------------------------------------------------------

    def _cross_fE(self, fw, e):
        """Terms of F_word * E_e as (e_present, dmu, dnu, F-word') -> Scalar."""
        key = (fw, e)
        got = self._cross.get(key)
        if got is not None:
            return got
        z = (0,) * self.n
        if not fw:
            got = {(1, z, z, ()): ONE}
        else:
            f0, rest = fw[-1], fw[:-1]
            out = {}
            for (p, dmu, dnu, fw2), c in self._cross_fE(rest, e).items():
                k = (p, dmu, dnu, fw2 + (f0,))
                s = out.get(k, ZERO) + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            if f0 == e:
                # F_e E_e = E_e F_e - (v_e^-1 - v_e)(K_e - K'_e)
                de = self.cartan.D[e]
                coeff = Scalar.v_pow(-de) - Scalar.v_pow(de)
                wrest = self.f.wt(rest)
                ee = tuple(1 if j == e else 0 for j in range(self.n))
                twk = self.cartan.bilinear(ee, wrest)
                k1 = (0, ee, z, rest)
                c1 = -coeff * Scalar.v_pow(twk)
                s = out.get(k1, ZERO) + c1
                if s:
                    out[k1] = s
                else:
                    del out[k1]
                k2 = (0, z, ee, rest)
                c2 = coeff * Scalar.v_pow(-twk)
                s = out.get(k2, ZERO) + c2
                if s:
                    out[k2] = s
                else:
                    del out[k2]
            got = out
        self._cross[key] = got
        return got

    def _rmul_E(self, terms: dict, e: int, drop: bool) -> dict:
        out = {}
        for (ew, mu, nu, fw), c in terms.items():
            for (p, dmu, dnu, fw2), c2 in self._cross_fE(fw, e).items():
                cc = c * c2
                if p:
                    if len(ew) + 1 > self.height:
                        if drop:
                            continue
                        raise TruncationExceeded(
                            f"raising word beyond height {self.height}"
                        )
                    tw = self.cartan.bilinear(wt_sub(mu, nu),
                                              tuple(1 if j == e else 0
                                                    for j in range(self.n)))
                    if tw:
                        cc = cc * Scalar.v_pow(tw)
                    for ew2, c3 in self.f.reduce_word(ew + (e,)).items():
                        k = (ew2, mu, nu, fw2)
                        s = out.get(k, ZERO) + cc * c3
                        if s:
                            out[k] = s
                        else:
                            del out[k]
                else:
                    k = (ew, wt_add(mu, dmu), wt_add(nu, dnu), fw2)
                    s = out.get(k, ZERO) + cc
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return out

    def _rmul_torus(self, terms: dict, dmu, dnu) -> dict:
        out = {}
        for (ew, mu, nu, fw), c in terms.items():
            wf = self.f.wt(fw)
            tw = self.cartan.bilinear(dmu, wf) - self.cartan.bilinear(dnu, wf)
            k = (ew, wt_add(mu, dmu), wt_add(nu, dnu), fw)
            s = out.get(k, ZERO) + (c * Scalar.v_pow(tw) if tw else c)
            if s:
                out[k] = s
            else:
                del out[k]
        return out

    def _rmul_F(self, terms: dict, j: int, drop: bool) -> dict:
        out = {}
        for (ew, mu, nu, fw), c in terms.items():
            if len(fw) + 1 > self.height:
                if drop:
                    continue
                raise TruncationExceeded(f"lowering word beyond height {self.height}")
            for fw2, c2 in self.f.reduce_word(fw + (j,)).items():
                k = (ew, mu, nu, fw2)
                s = out.get(k, ZERO) + c * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return out

    def mul(self, x: UElem, y: UElem, drop: bool = False) -> UElem:
        out = {}
        zero_mu = (0,) * self.n
        for (ew, mu, nu, fw), cy in y.terms.items():
            cur = {k: c * cy for k, c in x.terms.items()}
            for e in ew:
                cur = self._rmul_E(cur, e, drop)
            if mu != zero_mu or nu != zero_mu:
                cur = self._rmul_torus(cur, mu, nu)
            for j in fw:
                cur = self._rmul_F(cur, j, drop)
            for k, c in cur.items():
                s = out.get(k, ZERO) + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return UElem(self, out)

    # -- involutions and rescalings ---------------------------------------------

    def bar(self, x: UElem) -> UElem:
        """Bar: coefficients under u -> u^(-1), generators fixed, order reversed."""
        out = self.zero()
        for (ew, mu, nu, fw), c in x.terms.items():
            acc = self.one() * c.bar()
            for j in reversed(fw):
                acc = self.mul(acc, self.F(j))
            acc = self._rmul_torus_elem(acc, mu, nu)
            for i in reversed(ew):
                acc = self.mul(acc, self.E(i))
            out = out + acc
        return out

    def sigma(self, x: UElem) -> UElem:
        """Anti-involution fixing E_i, F_i and swapping the two torus families."""
        out = self.zero()
        for (ew, mu, nu, fw), c in x.terms.items():
            acc = self.one() * c
            for j in reversed(fw):
                acc = self.mul(acc, self.F(j))
            acc = self._rmul_torus_elem(acc, nu, mu)
            for i in reversed(ew):
                acc = self.mul(acc, self.E(i))
            out = out + acc
        return out

    def _rmul_torus_elem(self, x: UElem, mu, nu) -> UElem:
        return UElem(self, self._rmul_torus(x.terms, mu, nu))

    def psi_rescale(self, roots, x: UElem) -> UElem:
        """Rescaling K_i, K'_i, E_i by roots[i]^2-roots; F_i fixed.

        `roots` are the square roots s_i (so a_i = s_i^2 rescales nothing
        directly; each K_i, K'_i, E_i picks up one factor s_i).
        """
        out = {}
        for (ew, mu, nu, fw), c in x.terms.items():
            for i in ew:
                c = c * roots[i]
            for j, m in enumerate(mu):
                if m:
                    c = c * roots[j] ** m
            for j, m in enumerate(nu):
                if m:
                    c = c * roots[j] ** m
            out[(ew, mu, nu, fw)] = c
        return UElem(self, out)

    # -- the triangular isomorphism onto the diagonal star instance ----------------

    def phi_sharp_mono(self, mono) -> TensorElem:
        got = self._phi_mono.get(mono)
        if got is not None:
            return got
        ew, mu, nu, fw = mono
        B = self.borel
        dctx = DiagonalContext(B)
        left = tensor(B.monomial(ew, mu), B.one())
        right = tensor(B.one(), B.monomial(fw, nu))
        tw = self.cartan.bilinear(nu, self.f.wt(fw))
        got = star(dctx, left, right) * Scalar.v_pow(tw)
        self._phi_mono[mono] = got
        return got

    def phi_sharp(self, x: UElem) -> TensorElem:
        out = TensorElem(self.borel, {})
        for mono, c in x.terms.items():
            out = out + self.phi_sharp_mono(mono) * c
        return out

    def phi_sharp_inverse(self, y: TensorElem) -> UElem:
        work = dict(y.terms)
        out = {}
        guard = 0
        while work:
            guard += 1
            if guard > 100000:
                raise TruncationExceeded("triangular inversion did not terminate")
            key = max(work, key=lambda k: (len(k[0]) + len(k[2]), k))
            w1, mu1, w2, mu2 = key
            mono = (w1, mu1, mu2, w2)
            img = self.phi_sharp_mono(mono)
            c = work[key] * img.terms[key].inv()
            s = out.get(mono, ZERO) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
            for k, c2 in img.terms.items():
                s = work.get(k, ZERO) - c * c2
                if s:
                    work[k] = s
                else:
                    work.pop(k, None)
        return UElem(self, out)

    # -- coideal generator words ----------------------------------------------------

    def B_gen(self, i: int) -> UElem:
        """B_i = F_i + E_(tau i) K'_i."""
        ti = self.cartan.tau[i]
        z = (0,) * self.n
        ei = tuple(1 if j == i else 0 for j in range(self.n))
        return UElem(self, {((), z, z, (i,)): ONE, ((ti,), z, ei, ()): ONE})

    def B_sigma_gen(self, i: int) -> UElem:
        """sigma(B_i) = F_i + K_i E_(tau i)."""
        return self.sigma(self.B_gen(i))

    def k_gen(self, i: int, e: int = 1) -> UElem:
        """The Cartan word k_i = K_i K'_(tau i), or its inverse."""
        ti = self.cartan.tau[i]
        mu = tuple(e if j == i else 0 for j in range(self.n))
        nu = tuple(e if j == ti else 0 for j in range(self.n))
        z = (0,) * self.n
        return UElem(self, {((), mu, nu, ()): ONE})

    def bbK_scalar(self, alpha) -> Scalar:
        """Scale factor of the balanced Cartan element for a lattice vector.

        The product over single indices of v^((alpha_k, alpha_tau(k))/2)
        to the alpha_k; half powers of v are exact since u = v^(1/4).
        """
        e = 0
        for k, a in enumerate(alpha):
            if a:
                e += a * self.cartan.sym(k, self.cartan.tau[k])
        return Scalar.u_pow(2 * e)

    def bbK(self, alpha) -> UElem:
        """The balanced Cartan element attached to a lattice vector alpha."""
        mu = tuple(alpha)
        nu = self.cartan.tau_weight(mu)
        z = (0,) * self.n
        return UElem(self, {((), mu, nu, ()): self.bbK_scalar(alpha)})

    def embed_word(self, word) -> UElem:
        got = self._embed_word.get(word)
        if got is None:
            acc = self.one()
            for letter in word:
                if letter[0] == "B":
                    acc = self.mul(acc, self.B_gen(letter[1]))
                else:
                    _, i, e = letter
                    acc = self.mul(acc, self.k_gen(i, e))
            got = self._embed_word[word] = acc
        return got

    # -- text format --------------------------------------------------------------------

    def format_elem(self, x: UElem) -> str:
        if not x.terms:
            return "0"
        parts = []
        for (ew, mu, nu, fw), c in x.ordered_terms():
            bits = []
            if ew:
                bits.append("".join(f"E[{i + 1}]" for i in ew))
            kp = "".join(
                f"K[{j + 1}]" + (f"^{m}" if m != 1 else "")
                for j, m in enumerate(mu) if m
            ) + "".join(
                f"K'[{j + 1}]" + (f"^{m}" if m != 1 else "")
                for j, m in enumerate(nu) if m
            )
            if kp:
                bits.append(kp)
            if fw:
                bits.append("".join(f"F[{j + 1}]" for j in fw))
            body = "*".join(bits) or "1"
            if c.is_one and body != "1":
                parts.append(body)
            elif body == "1":
                parts.append(str(c))
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def parse_elem(self, text: str) -> UElem:
        out = self.zero()
        for coeff, letters in _parse_terms(text, ("E", "F", "K", "K'")):
            acc = self.one() * coeff
            for sym, idx, exp in letters:
                if idx >= self.n:
                    raise ParseError(f"index {idx + 1} out of range")
                if sym == "E":
                    if exp != 1:
                        raise ParseError("E letters do not take exponents")
                    acc = self.mul(acc, self.E(idx))
                elif sym == "F":
                    if exp != 1:
                        raise ParseError("F letters do not take exponents")
                    acc = self.mul(acc, self.F(idx))
                elif sym == "K":
                    acc = self.mul(acc, self.Ki(idx, exp))
                else:
                    acc = self.mul(acc, self.Kpi(idx, exp))
            out = out + acc
        return out


# ---------------------------------------------------------------------------
# formal words in the coideal generators


class IWord:
    """Formal linear combination of words in letters ('B', i), ('k', i, +-1).

    Equality of such words is decided by embedding into the double; there
    is no independent normal form here.
    """

    __slots__ = ("U", "terms")

    def __init__(self, U: UAlgebra, terms: dict):
        self.U = U
        self.terms = {w: c for w, c in terms.items() if c}

    @staticmethod
    def unit(U) -> "IWord":
        return IWord(U, {(): ONE})

    @staticmethod
    def B(U, i: int) -> "IWord":
        return IWord(U, {(("B", i),): ONE})

    @staticmethod
    def k(U, i: int, e: int = 1) -> "IWord":
        return IWord(U, {(("k", i, e),): ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                del out[w]
        return IWord(self.U, out)

    def __neg__(self):
        return IWord(self.U, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if isinstance(other, Scalar):
            return IWord(self.U, {w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        return IWord(self.U, out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def embed(self) -> UElem:
        out = self.U.zero()
        for w, c in self.terms.items():
            out = out + self.U.embed_word(w) * c
        return out

    def same_element(self, other) -> bool:
        return (self - other).embed().is_zero

    # -- involutions on words ------------------------------------------------

    def sigma_i(self) -> "IWord":
        """Anti-involution: B_i fixed, k_i -> k_(tau i)."""
        tau = self.U.cartan.tau
        out = {}
        for w, c in self.terms.items():
            w2 = tuple(
                x if x[0] == "B" else ("k", tau[x[1]], x[2])
                for x in reversed(w)
            )
            s = out.get(w2, ZERO) + c
            if s:
                out[w2] = s
            else:
                del out[w2]
        return IWord(self.U, out)

    def bar_i(self) -> "IWord":
        """Bar anti-involution: B_i fixed, k_i -> v_i^(c_(i,tau i)) k_i, coeffs barred."""
        cartan = self.U.cartan
        out = {}
        for w, c in self.terms.items():
            c2 = c.bar()
            w2 = []
            for x in reversed(w):
                if x[0] == "B":
                    w2.append(x)
                else:
                    _, i, e = x
                    c2 = c2 * Scalar.v_pow(e * cartan.sym(i, cartan.tau[i]))
                    w2.append(x)
            w2 = tuple(w2)
            s = out.get(w2, ZERO) + c2
            if s:
                out[w2] = s
            else:
                del out[w2]
        return IWord(self.U, out)

    def psi_i(self) -> "IWord":
        """Involution: B_i fixed, k_i -> v_i^(c_(i,tau i)) k_(tau i), coeffs barred."""
        cartan = self.U.cartan
        out = {}
        for w, c in self.terms.items():
            c2 = c.bar()
            w2 = []
            for x in w:
                if x[0] == "B":
                    w2.append(x)
                else:
                    _, i, e = x
                    c2 = c2 * Scalar.v_pow(e * cartan.sym(i, cartan.tau[i]))
                    w2.append(("k", cartan.tau[i], e))
            w2 = tuple(w2)
            s = out.get(w2, ZERO) + c2
            if s:
                out[w2] = s
            else:
                del out[w2]
        return IWord(self.U, out)

    def map_letters(self, fn) -> "IWord":
        out = IWord(self.U, {})
        for w, c in self.terms.items():
            acc = IWord.unit(self.U) * c
            for letter in w:
                acc = acc * fn(letter)
            out = out + acc
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            body = "".join(
                f"B[{x[1] + 1}]" if x[0] == "B"
                else f"k[{x[1] + 1}]" + (f"^{x[2]}" if x[2] != 1 else "")
                for x in w
            ) or "1"
            parts.append(body if c.is_one and body != "1" else
                         (str(c) if body == "1" else f"{c}*{body}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"IWord[{self}]"


def parse_iword(U: UAlgebra, text: str) -> IWord:
    out = IWord(U, {})
    for coeff, letters in _parse_terms(text, ("B", "k")):
        acc = IWord.unit(U) * coeff
        for sym, idx, exp in letters:
            if idx >= U.n:
                raise ParseError(f"index {idx + 1} out of range")
            if sym == "B":
                if exp != 1:
                    raise ParseError("B letters do not take exponents")
                acc = acc * IWord.B(U, idx)
            else:
                step = 1 if exp > 0 else -1
                for _ in range(abs(exp)):
                    acc = acc * IWord.k(U, idx, step)
        out = out + acc
    return out


# ---------------------------------------------------------------------------
# star words <-> coideal words


def star_word_to_iword(U: UAlgebra, sw: StarWord) -> IWord:
    """Letterwise generator map: t[i] -> B_i, h[j] -> k_(tau j).

    A negative torus letter h_j^(-1) is not the star-inverse of h_j (the
    star of group-likes twists by v^((tau nu, mu))), so its image carries
    the correcting scalar v^(-(alpha_j, alpha_tau(j))).
    """
    cartan = U.cartan
    tau = cartan.tau
    out = {}
    for w, c in sw.terms.items():
        w2 = []
        for x in w:
            if x[0] == "t":
                w2.append(("B", x[1]))
            else:
                _, j, e = x
                if e < 0:
                    c = c * Scalar.v_pow(-cartan.sym(j, tau[j]))
                w2.append(("k", tau[j], e))
        w2 = tuple(w2)
        s = out.get(w2, ZERO) + c
        if s:
            out[w2] = s
        else:
            del out[w2]
    return IWord(U, out)


def iword_to_star_word(U: UAlgebra, w: IWord) -> StarWord:
    """Inverse letter map: B_i -> t[i], k_i^(+-1) -> h[tau i]^(+-1).

    Mirrors the star_word_to_iword correction: the preimage of k_i^(-1)
    is v^((alpha_i, alpha_tau(i))) h_(tau i)^(-1).
    """
    cartan = U.cartan
    tau = cartan.tau
    out = {}
    for word, c in w.terms.items():
        w2 = []
        for x in word:
            if x[0] == "B":
                w2.append(("t", x[1]))
            else:
                _, i, e = x
                if e < 0:
                    c = c * Scalar.v_pow(cartan.sym(i, tau[i]))
                w2.append(("h", tau[i], e))
        w2 = tuple(w2)
        s = out.get(w2, ZERO) + c
        if s:
            out[w2] = s
        else:
            del out[w2]
    return StarWord(U.borel, out)


def borel_to_iword(U: UAlgebra, x: BorelElem) -> IWord:
    return star_word_to_iword(U, star_decompose(U.borel, x))
