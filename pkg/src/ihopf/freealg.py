"""The free algebra on the rescaled generators and its Serre quotient.

Monomials are index words (tuples).  Normal forms are taken per weight:
the weight component of the quantum Serre ideal is spanned by all padded
Serre elements, row-reduced once against the degree-lexicographic order,
and every element is rewritten against that echelon.  The surviving
standard monomials form the cached basis of the weight space.

The same module carries Lusztig's twisted coproduct `r`, the bilinear
pairing it induces on the quotient, the left/right skew-derivations and
the adjoint action, since all of them are word-level recursions sharing
the caches here.
"""

from __future__ import annotations

import re

from .cartan import CartanData, wt_height
from .errors import ParseError, TruncationExceeded
from .linalg import Echelon
from .scalars import ONE, ZERO, Scalar, parse_scalar, qbinom, qfact


class FreeElem:
    """Linear combination of index words with Scalar coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {w: c for w, c in terms.items() if c}

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, FreeElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreeElem(self.alg, out)

    def __neg__(self):
        return FreeElem(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            if isinstance(other, int):
                other = Scalar.from_int(other)
            return FreeElem(self.alg, {w: c * other for w, c in self.terms.items()})
        return self.alg.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def weights(self):
        return {self.alg.wt(w) for w in self.terms}

    def ordered_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        return self.alg.format_elem(self)

    def __repr__(self):
        return f"FreeElem[{self}]"


class FreeAlgebra:
    """Shared context: Cartan data, truncation height and all word caches."""

    def __init__(self, cartan: CartanData, height: int = 8):
        self.cartan = cartan
        self.height = height
        self.n = cartan.n
        self._wt = {}
        self._basis = {}
        self._reducer = {}
        self._rsplit2 = {}
        self._rsplitn = {}
        self._pair = {}
        self._der = {}
        self._reduced_word = {}

    # -- element constructors -------------------------------------------

    def zero(self) -> FreeElem:
        return FreeElem(self, {})

    def one(self) -> FreeElem:
        return FreeElem(self, {(): ONE})

    def gen(self, i: int) -> FreeElem:
        return FreeElem(self, {(i,): ONE})

    def monomial(self, word, coeff=ONE) -> FreeElem:
        return FreeElem(self, {tuple(word): coeff})

    def elem(self, terms: dict) -> FreeElem:
        return FreeElem(self, terms)

    def divided_power(self, i: int, m: int) -> FreeElem:
        """theta_i^(m) = theta_i^m / [m]!_{v_i}."""
        if m < 0:
            return self.zero()
        return FreeElem(self, {(i,) * m: qfact(m, self.cartan.D[i]).inv()})

    # -- weights ---------------------------------------------------------

    def wt(self, word) -> tuple:
        got = self._wt.get(word)
        if got is None:
            out = [0] * self.n
            for i in word:
                out[i] += 1
            got = self._wt[word] = tuple(out)
        return got

    def vi(self, i: int, k: int = 1) -> Scalar:
        return Scalar.v_pow(self.cartan.D[i] * k)

    def vvi(self, i: int) -> Scalar:
        """v_i - v_i^(-1), the pairing normalization of generator i."""
        return self.vi(i, 1) - self.vi(i, -1)

    def _check_height(self, mu):
        if wt_height(mu) > self.height:
            raise TruncationExceeded(
                f"weight {mu} exceeds truncation height {self.height}"
            )

    # -- per-weight normal forms -----------------------------------------

    def words_of_weight(self, mu) -> tuple:
        self._check_height(mu)
        out = []

        def rec(prefix, remaining):
            if sum(remaining) == 0:
                out.append(tuple(prefix))
                return
            for i in range(self.n):
                if remaining[i]:
                    remaining[i] -= 1
                    prefix.append(i)
                    rec(prefix, remaining)
                    prefix.pop()
                    remaining[i] += 1

        rec([], list(mu))
        return tuple(out)

    def serre_element(self, i: int, j: int) -> dict:
        """Word-level quantum Serre element for the ordered pair (i, j)."""
        m = 1 - self.cartan.C[i][j]
        d = self.cartan.D[i]
        out = {}
        for r in range(m + 1):
            c = qbinom(m, r, d)
            if r % 2:
                c = -c
            out[(i,) * r + (j,) + (i,) * (m - r)] = c
        return out

    def reducer(self, mu) -> Echelon:
        got = self._reducer.get(mu)
        if got is not None:
            return got
        self._check_height(mu)
        ech = Echelon()  # leading monomial: lex-largest word
        C = self.cartan.C
        rows = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                beta = [0] * self.n
                beta[i] += 1 - C[i][j]
                beta[j] += 1
                rest = [a - b for a, b in zip(mu, beta)]
                if any(x < 0 for x in rest):
                    continue
                s_ij = self.serre_element(i, j)
                # all splits of the leftover weight around the Serre element
                for left_mu in _sub_weights(rest):
                    right_mu = tuple(a - b for a, b in zip(rest, left_mu))
                    for w1 in self.words_of_weight(left_mu):
                        for w2 in self.words_of_weight(right_mu):
                            rows.append({w1 + w + w2: c for w, c in s_ij.items()})
        # ascending leading words keep the stored tails fully reduced, so
        # later insertions never cascade through earlier pivot rows
        rows.sort(key=lambda r: max(r))
        for row in rows:
            ech.add(row)
        self._reducer[mu] = ech
        return ech

    def basis(self, mu) -> tuple:
        got = self._basis.get(mu)
        if got is None:
            piv = self.reducer(mu).pivots
            got = self._basis[mu] = tuple(
                w for w in self.words_of_weight(mu) if w not in piv
            )
        return got

    def reduce_word(self, word) -> dict:
        got = self._reduced_word.get(word)
        if got is None:
            mu = self.wt(word)
            red = self.reducer(mu).reduce({word: ONE})
            got = self._reduced_word[word] = red
        return got

    def reduce(self, x: FreeElem) -> FreeElem:
        out = {}
        for w, c in x.terms.items():
            for w2, c2 in self.reduce_word(w).items():
                s = out.get(w2, ZERO) + c * c2
                if s:
                    out[w2] = s
                else:
                    del out[w2]
        return FreeElem(self, out)

    # -- products ----------------------------------------------------------

    def mul_free(self, x: FreeElem, y: FreeElem) -> FreeElem:
        """Concatenation product, no Serre reduction."""
        out = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        return FreeElem(self, out)

    def mul(self, x: FreeElem, y: FreeElem) -> FreeElem:
        return self.reduce(self.mul_free(x, y))

    # -- Lusztig coproduct -------------------------------------------------

    def rsplit2(self, word) -> dict:
        """Two-part splits of a word under r, with the positive twist.

        r is the algebra map into the twisted tensor square where
        (x1 (x) x2)(y1 (x) y2) = v^((wt x2, wt y1)) x1 y1 (x) x2 y2 and
        r(theta_i) = theta_i (x) 1 + 1 (x) theta_i.  The sign of the twist
        is pinned by the divided-power calibration
        Delta(theta_i^(n)) = sum v_i^(ab) theta_i^(a) h_i^b (x) theta_i^(b).
        """
        got = self._rsplit2.get(word)
        if got is not None:
            return got
        if not word:
            got = {((), ()): ONE}
        else:
            i, rest = word[0], word[1:]
            ai = self.cartan
            out = {}
            for (a, b), c in self.rsplit2(rest).items():
                k = (i,) + a, b
                s = out.get(k, ZERO) + c
                if s:
                    out[k] = s
                else:
                    del out[k]
                tw = ai.bilinear(self.wt((i,)), self.wt(a))
                c2 = c * Scalar.v_pow(1) ** tw if tw else c
                k2 = a, (i,) + b
                s = out.get(k2, ZERO) + c2
                if s:
                    out[k2] = s
                else:
                    del out[k2]
            got = out
        self._rsplit2[word] = got
        return got

    def rsplits(self, word, parts: int) -> dict:
        """`parts`-fold splits of a word under the iterated coproduct."""
        if parts == 1:
            return {(word,): ONE}
        if parts == 2:
            return self.rsplit2(word)
        key = (word, parts)
        got = self._rsplitn.get(key)
        if got is not None:
            return got
        out = {}
        for ws, c in self.rsplits(word, parts - 1).items():
            for (a, b), c2 in self.rsplit2(ws[0]).items():
                k = (a, b) + ws[1:]
                s = out.get(k, ZERO) + c * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        self._rsplitn[key] = out
        return out

    def coproduct_r(self, x: FreeElem) -> dict:
        """r(x) collected as {(reduced w1, reduced w2): Scalar} over basis words."""
        out = {}
        for w, c in x.terms.items():
            for (a, b), c2 in self.rsplit2(w).items():
                for a2, ca in self.reduce_word(a).items():
                    for b2, cb in self.reduce_word(b).items():
                        k = (a2, b2)
                        s = out.get(k, ZERO) + c * c2 * ca * cb
                        if s:
                            out[k] = s
                        else:
                            del out[k]
        return out

    # -- the bilinear pairing ----------------------------------------------

    def pair_words(self, w1, w2) -> Scalar:
        if self.wt(w1) != self.wt(w2):
            return ZERO
        if not w1:
            return ONE
        key = (w1, w2)
        got = self._pair.get(key)
        if got is not None:
            return got
        i, rest = w1[0], w1[1:]
        acc = ZERO
        norm = self.vvi(i)
        for (a, b), c in self.rsplit2(w2).items():
            if a == (i,):
                acc = acc + norm * c * self.pair_words(rest, b)
        self._pair[key] = acc
        return acc

    def pairing(self, x: FreeElem, y: FreeElem) -> Scalar:
        acc = ZERO
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                p = self.pair_words(w1, w2)
                if p:
                    acc = acc + c1 * c2 * p
        return acc

    # -- skew derivations ----------------------------------------------------

    def der_word(self, side: str, i: int, word) -> dict:
        """Skew derivative of a word; side 'L' or 'R'."""
        key = (side, i, word)
        got = self._der.get(key)
        if got is not None:
            return got
        out = {}
        if word:
            if side == "L":
                j, rest = word[0], word[1:]
                if j == i:
                    tw = self.cartan.bilinear(self.wt((i,)), self.wt(rest))
                    out[rest] = Scalar.v_pow(1) ** tw
                for w2, c in self.der_word("L", i, rest).items():
                    k = (j,) + w2
                    s = out.get(k, ZERO) + c
                    if s:
                        out[k] = s
                    else:
                        del out[k]
            else:
                rest, j = word[:-1], word[-1]
                if j == i:
                    tw = self.cartan.bilinear(self.wt((i,)), self.wt(rest))
                    out[rest] = Scalar.v_pow(1) ** tw
                for w2, c in self.der_word("R", i, rest).items():
                    k = w2 + (j,)
                    s = out.get(k, ZERO) + c
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        self._der[key] = out
        return out

    def derivative(self, side: str, i: int, x: FreeElem, reduced=True) -> FreeElem:
        out = {}
        for w, c in x.terms.items():
            for w2, c2 in self.der_word(side, i, w).items():
                s = out.get(w2, ZERO) + c * c2
                if s:
                    out[w2] = s
                else:
                    del out[w2]
        e = FreeElem(self, out)
        return self.reduce(e) if reduced else e

    # -- adjoint action --------------------------------------------------------

    def ad(self, i: int, x: FreeElem) -> FreeElem:
        """ad(theta_i)(x) = theta_i x - v^((alpha_i, wt x)) x theta_i, per weight."""
        g = self.gen(i)
        out = self.zero()
        by_wt = {}
        for w, c in x.terms.items():
            by_wt.setdefault(self.wt(w), {})[w] = c
        for mu, terms in by_wt.items():
            h = FreeElem(self, terms)
            tw = self.cartan.bilinear(self.wt((i,)), mu)
            out = out + self.mul(g, h) - Scalar.v_pow(1) ** tw * self.mul(h, g)
        return out

    def ad_power(self, i: int, m: int, x: FreeElem, divided=True) -> FreeElem:
        out = x
        for _ in range(m):
            out = self.ad(i, out)
        if divided:
            out = qfact(m, self.cartan.D[i]).inv() * out
        return out

    # -- text format ------------------------------------------------------------

    def format_elem(self, x: FreeElem) -> str:
        if not x.terms:
            return "0"
        parts = []
        for w, c in x.ordered_terms():
            body = "".join(f"t[{i + 1}]" for i in w) or "1"
            if c.is_one and w:
                parts.append(body)
            elif w:
                parts.append(f"{c}*{body}")
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def parse_elem(self, text: str) -> FreeElem:
        out = self.zero()
        for coeff, letters in _parse_terms(text, ("t",)):
            word = tuple(i for _, i, _ in letters)
            out = out + self.monomial(word, coeff)
        return self.reduce(out)


def _sub_weights(mu):
    """All componentwise sub-weights of a nonnegative weight."""
    out = [()]
    for m in mu:
        out = [pre + (k,) for pre in out for k in range(m + 1)]
    return out


# -- shared term-level parsing for the element text formats -------------------

_LETTER = re.compile(r"\s*(?P<sym>[A-Za-z]'?)\[(?P<idx>\d+)\](?:\^(?P<exp>-?\d+))?")


def _split_top_terms(text: str):
    """Split on top-level +/- (parens carry scalar coefficients)."""
    terms, depth, cur, sign = [], 0, "", 1
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            terms.append((sign, cur))
            cur, sign = "", (1 if ch == "+" else -1)
            continue
        if depth == 0 and ch in "+-" and not cur.strip():
            sign = sign * (1 if ch == "+" else -1)
            continue
        cur += ch
    if cur.strip():
        terms.append((sign, cur))
    return terms


def _parse_terms(text: str, symbols):
    """Yield (Scalar coeff, [(sym, index0, exp), ...]) per term."""
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    for sign, term in _split_top_terms(text):
        term = term.strip()
        m = _LETTER.search(term)
        coeff_src = term[: m.start()] if m else term
        coeff_src = coeff_src.strip().rstrip("*").strip()
        coeff = parse_scalar(coeff_src) if coeff_src else ONE
        if sign < 0:
            coeff = -coeff
        letters = []
        pos = m.start() if m else len(term)
        while pos < len(term):
            m2 = _LETTER.match(term, pos)
            if not m2:
                if term[pos] in "* \t":
                    pos += 1
                    continue
                raise ParseError(f"bad element syntax near {term[pos:]!r}")
            sym = m2.group("sym")
            if sym not in symbols:
                raise ParseError(f"unexpected generator {sym!r}")
            idx = int(m2.group("idx")) - 1
            exp = int(m2.group("exp") or 1)
            letters.append((sym, idx, exp))
            pos = m2.end()
        yield coeff, letters
