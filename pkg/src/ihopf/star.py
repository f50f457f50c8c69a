"""The star-product engine and its Borel instances.

The engine computes a * b = sum phi(b_(2), a_(1)) a_(2) b_(1) for any
context supplying a coproduct, a (possibly twisted) pairing and a
product.  Three instances are used:

* the twisted Borel instance (pairing composed with the diagram
  endomorphism on the left slot), whose product realizes the coideal
  algebra carried by the Borel;
* the diagonal instance on the tensor square with the crossed pairing,
  which realizes the Drinfeld double;
* the untwisted Borel instance, kept for endomorphism tests.

Star words (formal words in the generator letters) are evaluated by a
fast fold that never calls the generic engine: multiplying by a single
generator on either side costs one straightening plus one
skew-derivative, and torus letters cost one scalar per term.
"""

from __future__ import annotations

from .borel import BorelAlgebra, BorelElem
from .cartan import wt_add
from .errors import TruncationExceeded
from .scalars import ONE, ZERO, Scalar


class TensorElem:
    """Element of the tensor square of a Borel algebra, normal per factor."""

    __slots__ = ("B", "terms")

    def __init__(self, B: BorelAlgebra, terms: dict):
        self.B = B
        self.terms = {k: c for k, c in terms.items() if c}

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, TensorElem) and self.terms == other.terms

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
        return TensorElem(self.B, out)

    def __neg__(self):
        return TensorElem(self.B, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if isinstance(other, Scalar):
            return TensorElem(self.B, {k: c * other for k, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        B = self.B
        if not self.terms:
            return "0"
        parts = []
        for (w1, m1, w2, m2), c in sorted(
            self.terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][2]), t[0])
        ):
            body = f"{B.format_mono((w1, m1))} || {B.format_mono((w2, m2))}"
            parts.append(body if c.is_one else f"{c}*({body})")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorElem[{self}]"


def tensor(x: BorelElem, y: BorelElem) -> TensorElem:
    out = {}
    for (w1, m1), c1 in x.terms.items():
        for (w2, m2), c2 in y.terms.items():
            out[(w1, m1, w2, m2)] = c1 * c2
    return TensorElem(x.alg, out)


# ---------------------------------------------------------------------------
# contexts


class TauBorelContext:
    """Star product on the Borel with the pairing twisted by the involution."""

    def __init__(self, B: BorelAlgebra, twisted: bool = True):
        self.B = B
        self.twisted = twisted
        self._pair_cache = {}

    def unit(self) -> BorelElem:
        return self.B.one()

    def wrap(self, terms: dict) -> BorelElem:
        return BorelElem(self.B, terms)

    def sweedler(self, x: BorelElem):
        return [(m1, m2, c) for (m1, m2), c in self.B.delta(x).items()]

    def key_left(self, m):
        return self.B.f.wt(m[0])

    def key_right(self, m):
        w = self.B.f.wt(m[0])
        return self.B.cartan.tau_weight(w) if self.twisted else w

    def pair(self, m_first, m_second) -> Scalar:
        key = (m_first, m_second)
        got = self._pair_cache.get(key)
        if got is None:
            B = self.B
            x = BorelElem(B, {m_first: ONE})
            got = B.pairing(x, BorelElem(B, {m_second: ONE}), twist=self.twisted)
            self._pair_cache[key] = got
        return got

    def mul_mono(self, m1, m2) -> dict:
        return self.B.mul_mono(m1, m2)


class DiagonalContext:
    """Star product on the tensor square with the crossed pairing."""

    def __init__(self, B: BorelAlgebra):
        self.B = B

    def unit(self) -> TensorElem:
        return tensor(self.B.one(), self.B.one())

    def wrap(self, terms: dict) -> TensorElem:
        return TensorElem(self.B, terms)

    def sweedler(self, x: TensorElem):
        B = self.B
        out = []
        for (w1, m1, w2, m2), c in x.terms.items():
            da = B.delta_mono((w1, m1))
            db = B.delta_mono((w2, m2))
            for (a1, a2), ca in da.items():
                for (b1, b2), cb in db.items():
                    out.append((a1 + b1, a2 + b2, c * ca * cb))
        return out

    def key_left(self, m):
        f = self.B.f
        return (f.wt(m[0]), f.wt(m[2]))

    def key_right(self, m):
        f = self.B.f
        return (f.wt(m[2]), f.wt(m[0]))

    def pair(self, m_first, m_second) -> Scalar:
        # crossed pairing of (c (x) d , a (x) b) = phi(a, d) phi(c, b)
        B = self.B
        wc, mc, wd, md = m_first
        wa, ma, wb, mb = m_second
        p1 = B.pair_mono((wa, ma), (wd, md))
        if not p1:
            return ZERO
        p2 = B.pair_mono((wc, mc), (wb, mb))
        if not p2:
            return ZERO
        return p1 * p2

    def mul_mono(self, m1, m2) -> dict:
        B = self.B
        left = B.mul_mono((m1[0], m1[1]), (m2[0], m2[1]))
        right = B.mul_mono((m1[2], m1[3]), (m2[2], m2[3]))
        out = {}
        for (w1, mu1), c1 in left.items():
            for (w2, mu2), c2 in right.items():
                out[(w1, mu1, w2, mu2)] = c1 * c2
        return out


# ---------------------------------------------------------------------------
# the engine


def star(ctx, x, y):
    """a * b = sum phi(b_(2), a_(1)) a_(2) b_(1) in the given context."""
    from collections import defaultdict

    bx = defaultdict(list)
    for a1, a2, c in ctx.sweedler(x):
        bx[ctx.key_left(a1)].append((a1, a2, c))
    by = defaultdict(list)
    for b1, b2, c in ctx.sweedler(y):
        by[ctx.key_right(b2)].append((b1, b2, c))
    out = {}
    for key, la in bx.items():
        lb = by.get(key)
        if not lb:
            continue
        for a1, a2, ca in la:
            for b1, b2, cb in lb:
                p = ctx.pair(b2, a1)
                if not p:
                    continue
                c = ca * cb * p
                for m, c2 in ctx.mul_mono(a2, b1).items():
                    s = out.get(m, ZERO) + c * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
    return ctx.wrap(out)


def star_opposite(ctx, x, y):
    """The opposite-type product a *' b = sum phi(a_(2), b_(1)) b_(2) a_(1)."""
    from collections import defaultdict

    bx = defaultdict(list)
    for a1, a2, c in ctx.sweedler(x):
        bx[ctx.key_right(a2)].append((a1, a2, c))
    by = defaultdict(list)
    for b1, b2, c in ctx.sweedler(y):
        by[ctx.key_left(b1)].append((b1, b2, c))
    out = {}
    for key, la in bx.items():
        lb = by.get(key)
        if not lb:
            continue
        for a1, a2, ca in la:
            for b1, b2, cb in lb:
                p = ctx.pair(a2, b1)
                if not p:
                    continue
                c = ca * cb * p
                for m, c2 in ctx.mul_mono(b2, a1).items():
                    s = out.get(m, ZERO) + c * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
    return ctx.wrap(out)


# ---------------------------------------------------------------------------
# fast single-letter star multiplications on the twisted Borel instance


def rstar_gen(B: BorelAlgebra, x: BorelElem, i: int) -> BorelElem:
    """x * theta_i = x theta_i + (v_i - v_i^(-1)) dR_(tau i)(x) h_i."""
    f = B.f
    ti = B.cartan.tau[i]
    norm = f.vvi(i)
    out = dict(B.mul(x, B.gen(i)).terms)
    for (w, mu), c in x.terms.items():
        if not w:
            continue
        mu2 = tuple(m + (1 if j == i else 0) for j, m in enumerate(mu))
        cc = c * norm
        for w2, c2 in f.der_word("R", ti, w).items():
            for w3, c3 in B._reduce_word(w2).items():
                k = (w3, mu2)
                s = out.get(k, ZERO) + cc * c2 * c3
                if s:
                    out[k] = s
                else:
                    del out[k]
    return BorelElem(B, out)


def lstar_gen(B: BorelAlgebra, i: int, x: BorelElem) -> BorelElem:
    """theta_i * x, with the torus of x contributing v^((tau mu, alpha_i))."""
    f = B.f
    cartan = B.cartan
    ti = cartan.tau[i]
    norm = f.vvi(i)
    out = {}
    for (w, mu), c in x.terms.items():
        tau_mu = cartan.tau_weight(mu)
        tw = sum(m * cartan.sym(j, i) for j, m in enumerate(tau_mu) if m)
        c1 = c * Scalar.v_pow(tw) if tw else c
        for k, c2 in B.mul_mono(((i,), (0,) * B.n), (w, mu)).items():
            s = out.get(k, ZERO) + c1 * c2
            if s:
                out[k] = s
            else:
                del out[k]
        if w:
            mu2 = tuple(m + (1 if j == ti else 0) for j, m in enumerate(mu))
            cc = c * norm
            for w2, c2 in f.der_word("L", ti, w).items():
                for w3, c3 in B._reduce_word(w2).items():
                    k = (w3, mu2)
                    s = out.get(k, ZERO) + cc * c2 * c3
                    if s:
                        out[k] = s
                    else:
                        del out[k]
    return BorelElem(B, out)


def rstar_torus(B: BorelAlgebra, x: BorelElem, nu) -> BorelElem:
    """x * h^nu; group-like collapse, one scalar per term."""
    cartan = B.cartan
    tnu = cartan.tau_weight(nu)
    out = {}
    for (w, mu), c in x.terms.items():
        tw = cartan.bilinear(tnu, wt_add(B.f.wt(w), mu))
        k = (w, wt_add(mu, nu))
        out[k] = c * Scalar.v_pow(tw) if tw else c
    return BorelElem(B, out)


def lstar_torus(B: BorelAlgebra, nu, x: BorelElem) -> BorelElem:
    """h^nu * x."""
    cartan = B.cartan
    out = {}
    for (w, mu), c in x.terms.items():
        tw = cartan.bilinear(cartan.tau_weight(mu), nu) + cartan.bilinear(
            nu, B.f.wt(w)
        )
        k = (w, wt_add(mu, nu))
        out[k] = c * Scalar.v_pow(tw) if tw else c
    return BorelElem(B, out)


# ---------------------------------------------------------------------------
# star words


class StarWord:
    """Formal linear combination of words in the letters t[i], h[j]^(+-1).

    Letters are ('t', i) or ('h', j, e) with e = +1 or -1.  Evaluation
    folds the fast single-letter products left to right.
    """

    __slots__ = ("B", "terms")

    def __init__(self, B: BorelAlgebra, terms: dict):
        self.B = B
        self.terms = {w: c for w, c in terms.items() if c}

    @staticmethod
    def unit(B) -> "StarWord":
        return StarWord(B, {(): ONE})

    @staticmethod
    def gen(B, i) -> "StarWord":
        return StarWord(B, {(("t", i),): ONE})

    @staticmethod
    def torus_letter(B, j, e=1) -> "StarWord":
        return StarWord(B, {(("h", j, e),): ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                del out[w]
        return StarWord(self.B, out)

    def __neg__(self):
        return StarWord(self.B, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if isinstance(other, Scalar):
            return StarWord(self.B, {w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, ZERO) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        return StarWord(self.B, out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, StarWord) and self.terms == other.terms

    def map_letters(self, fn):
        """Substitute each letter by fn(letter) (a StarWord), multiplicatively."""
        out = StarWord(self.B, {})
        for w, c in self.terms.items():
            acc = StarWord.unit(self.B) * c
            for letter in w:
                acc = acc * fn(letter)
            out = out + acc
        return out

    def evaluate(self) -> BorelElem:
        B = self.B
        out = B.zero()
        for w, c in self.terms.items():
            cur = B.one() * c
            for letter in w:
                if letter[0] == "t":
                    cur = rstar_gen(B, cur, letter[1])
                else:
                    _, j, e = letter
                    nu = tuple(e if k == j else 0 for k in range(B.n))
                    cur = rstar_torus(B, cur, nu)
            out = out + cur
        return out

    def reversed_words(self) -> "StarWord":
        return StarWord(self.B, {tuple(reversed(w)): c for w, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            body = "".join(
                f"t[{x[1] + 1}]" if x[0] == "t"
                else f"h[{x[1] + 1}]" + ("^-1" if x[2] < 0 else "")
                for x in w
            ) or "1"
            parts.append(body if c.is_one and body != "1" else
                         (str(c) if body == "1" else f"{c}*{body}"))
        return " + ".join(parts)

    def __repr__(self):
        return f"StarWord[{self}]"


def torus_letters(mu):
    out = []
    for j, e in enumerate(mu):
        if e > 0:
            out.extend([("h", j, 1)] * e)
        elif e < 0:
            out.extend([("h", j, -1)] * (-e))
    return tuple(out)


def star_decompose(B: BorelAlgebra, x: BorelElem) -> StarWord:
    """Invert star-evaluation by descending elimination on theta-degree."""
    work = dict(x.terms)
    out = {}
    guard = 0
    while work:
        guard += 1
        if guard > 100000:
            raise TruncationExceeded("star decomposition did not terminate")
        (w, mu) = max(work, key=lambda k: (len(k[0]), k[0], k[1]))
        letters = tuple(("t", i) for i in w) + torus_letters(mu)
        ev = StarWord(B, {letters: ONE}).evaluate()
        lead = ev.terms[(w, mu)]
        c = work[(w, mu)] * lead.inv()
        s = out.get(letters, ZERO) + c
        if s:
            out[letters] = s
        else:
            out.pop(letters, None)
        for k, c2 in ev.terms.items():
            s = work.get(k, ZERO) - c * c2
            if s:
                work[k] = s
            else:
                work.pop(k, None)
    return StarWord(B, out)


# ---------------------------------------------------------------------------
# coalgebra structure of the diagonal instance


def idelta(B: BorelAlgebra, x: TensorElem) -> dict:
    """Coproduct of the diagonal instance: {(tmono, tmono): Scalar}."""
    out = {}
    for (w1, m1, w2, m2), c in x.terms.items():
        da = B.delta_mono((w1, m1), 3)
        db = B.delta_mono((w2, m2), 3)
        for (a1, a2, a3), ca in da.items():
            for (b1, b2, b3), cb in db.items():
                p = B.pair_mono(a2, b2)
                if not p:
                    continue
                key = (a1 + b3, a3 + b1)
                s = out.get(key, ZERO) + c * ca * cb * p
                if s:
                    out[key] = s
                else:
                    del out[key]
    return out


def ieps(B: BorelAlgebra, x: TensorElem) -> Scalar:
    acc = ZERO
    for (w1, m1, w2, m2), c in x.terms.items():
        rhs = B.antipode_inv(BorelElem(B, {(w2, m2): ONE}))
        p = B.pairing(BorelElem(B, {(w1, m1): ONE}), rhs)
        if p:
            acc = acc + c * p
    return acc


def iantipode(B: BorelAlgebra, x: TensorElem) -> TensorElem:
    out = TensorElem(B, {})
    for (w1, m1, w2, m2), c in x.terms.items():
        da = B.delta_mono((w1, m1), 3)
        db = B.delta_mono((w2, m2), 3)
        for (a1, a2, a3), ca in da.items():
            for (b1, b2, b3), cb in db.items():
                p2 = B.pair_mono(a2, b2)
                if not p2:
                    continue
                p1 = B.pairing(
                    BorelElem(B, {a1: ONE}),
                    B.antipode_inv(BorelElem(B, {b3: ONE})),
                )
                if not p1:
                    continue
                sa = B.antipode(BorelElem(B, {a3: ONE}))
                sb = B.antipode_inv(BorelElem(B, {b1: ONE}))
                out = out + tensor(sa, sb) * (c * ca * cb * p1 * p2)
    return out


def tensor_square_star(ctx: DiagonalContext, P: dict, Q: dict) -> dict:
    """Componentwise star on the tensor square of the diagonal instance."""
    out = {}
    B = ctx.B
    for (x1, x2), c1 in P.items():
        X1 = TensorElem(B, {x1: ONE})
        X2 = TensorElem(B, {x2: ONE})
        for (y1, y2), c2 in Q.items():
            L = star(ctx, X1, TensorElem(B, {y1: ONE}))
            R = star(ctx, X2, TensorElem(B, {y2: ONE}))
            c = c1 * c2
            for k1, cl in L.terms.items():
                for k2, cr in R.terms.items():
                    key = (k1, k2)
                    s = out.get(key, ZERO) + c * cl * cr
                    if s:
                        out[key] = s
                    else:
                        del out[key]
    return out


# ---------------------------------------------------------------------------
# the coideal embedding and the coaction


def xi_tau(B: BorelAlgebra, x: BorelElem) -> TensorElem:
    """a |-> sum chi(a_(2)) tau(a_(3)) (x) a_(1)."""
    out = TensorElem(B, {})
    for (m1, m2, m3), c in B.delta(x, 3).items():
        ch = B.chi_word(*m2)
        if not ch:
            continue
        t3 = B.tau_endo(BorelElem(B, {m3: ONE}))
        out = out + tensor(t3, BorelElem(B, {m1: ONE})) * (c * ch)
    return out


def psi_coideal(B: BorelAlgebra, x: BorelElem) -> dict:
    """a |-> sum phi(tau(a_(4)), a_(2)) a_(3) (x) (tau(a_(5)) (x) a_(1)).

    Returned as {(borel mono, tensor mono): Scalar}.
    """
    out = {}
    for (m1, m2, m3, m4, m5), c in B.delta(x, 5).items():
        p = B.pairing(BorelElem(B, {m4: ONE}), BorelElem(B, {m2: ONE}), twist=True)
        if not p:
            continue
        t5 = B.tau_endo(BorelElem(B, {m5: ONE}))
        for k5, c5 in t5.terms.items():
            key = (m3, k5 + m1)
            s = out.get(key, ZERO) + c * p * c5
            if s:
                out[key] = s
            else:
                del out[key]
    return out
