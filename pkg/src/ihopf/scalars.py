"""Exact arithmetic in the rational-function field Q(u).

Conventions used throughout the library:

    v = u^4,   q = v^(1/2) = u^2,   v_i = v^(d_i) = u^(4*d_i).

Working over Q(u) keeps every quarter power of v (as produced by the
square roots of the distinguished rescaling parameters) inside one fixed
exponent lattice, so no dynamic root adjunction is ever needed.

A :class:`Scalar` is stored in canonical form

    x = N(u) / D(u)

where N is a sparse Laurent polynomial, D is a monic polynomial with
D(0) != 0, and gcd(u^k * N, D) = 1 for the shift k clearing N's negative
exponents.  The canonical form is unique, so two scalars are equal iff
their stored representations coincide.  All coefficients are
arbitrary-precision rationals; there is no floating point anywhere.
"""

from __future__ import annotations

import re
from functools import lru_cache

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

from .errors import DivisionByZero, NegativeArgument, ParseError, PoleAtPoint

_R0 = Rat(0)
_R1 = Rat(1)

# ---------------------------------------------------------------------------
# sparse Laurent polynomials as {exponent: coefficient} dicts


def _strip(p: dict) -> dict:
    return {e: c for e, c in p.items() if c}


def _padd(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, _R0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, _R0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _pscale(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: x * c for e, x in a.items()}


def _to_dense(p: dict) -> list:
    # p must be a polynomial (min exponent 0)
    n = max(p) + 1
    out = [_R0] * n
    for e, c in p.items():
        out[e] = c
    return out


def _from_dense(l: list) -> dict:
    return {e: c for e, c in enumerate(l) if c}


def _dense_divmod(a: list, b: list):
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    q = [_R0] * max(len(a) - db, 1)
    while len(a) - 1 >= db and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) - 1 < db:
            break
        f = a[-1] / lb
        k = len(a) - 1 - db
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


def _poly_gcd(a: dict, b: dict) -> dict:
    da, db = _to_dense(a), _to_dense(b)
    while any(db):
        _, r = _dense_divmod(da, db)
        da, db = db, r if r else [_R0]
    lc = da[-1]
    return _from_dense([c / lc for c in da])


def _poly_divexact(a: dict, b: dict) -> dict:
    q, r = _dense_divmod(_to_dense(a), _to_dense(b))
    assert not any(r), "inexact polynomial division"
    return _from_dense(q)


_ONE_D = ((0, _R1),)


def _canon(num: dict, den: dict):
    """Reduce (num, den) to the unique canonical pair of term tuples."""
    num = _strip(num)
    den = _strip(den)
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (), _ONE_D
    kn, kd = min(num), min(den)
    k = kn - kd
    p = {e - kn: c for e, c in num.items()}
    q = {e - kd: c for e, c in den.items()}
    if len(q) == 1:
        c = q[0]
        return tuple(sorted(((e + k, x / c) for e, x in p.items()), reverse=True)), _ONE_D
    g = _poly_gcd(p, q)
    if len(g) > 1 or 0 not in g:
        p = _poly_divexact(p, g)
        q = _poly_divexact(q, g)
    lc = q[max(q)]
    if lc != 1:
        p = {e: c / lc for e, c in p.items()}
        q = {e: c / lc for e, c in q.items()}
    return (
        tuple(sorted(((e + k, c) for e, c in p.items()), reverse=True)),
        tuple(sorted(q.items(), reverse=True)),
    )


class Scalar:
    """Immutable element of Q(u) in canonical form."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num, den=None, _raw=False):
        if _raw:
            self._num, self._den = num, den
        else:
            self._num, self._den = _canon(num, den if den is not None else {0: _R1})
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Scalar":
        if n == 0:
            return ZERO
        return Scalar((((0, Rat(n)),)), _ONE_D, _raw=True)

    @staticmethod
    def from_rat(p: int, q: int = 1) -> "Scalar":
        r = Rat(p, q)
        if not r:
            return ZERO
        return Scalar(((0, r),), _ONE_D, _raw=True)

    @staticmethod
    def u_pow(k: int, coeff=1) -> "Scalar":
        c = Rat(coeff)
        if not c:
            return ZERO
        return Scalar(((k, c),), _ONE_D, _raw=True)

    @staticmethod
    def v_pow(k: int, coeff=1) -> "Scalar":
        return Scalar.u_pow(4 * k, coeff)

    @staticmethod
    def q_pow(k: int, coeff=1) -> "Scalar":
        """Power of q = v^(1/2)."""
        return Scalar.u_pow(2 * k, coeff)

    # -- basic structure ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def is_one(self) -> bool:
        return self._num == _ONE_D and self._den == _ONE_D

    def num_terms(self):
        return self._num

    def den_terms(self):
        return self._den

    def __bool__(self):
        return bool(self._num)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    # -- field arithmetic ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self._num:
            return other
        if not other._num:
            return self
        if self._den == _ONE_D and other._den == _ONE_D:
            n = _padd(dict(self._num), dict(other._num))
            if not n:
                return ZERO
            return Scalar(tuple(sorted(n.items(), reverse=True)), _ONE_D, _raw=True)
        n1, d1 = dict(self._num), dict(self._den)
        n2, d2 = dict(other._num), dict(other._den)
        if self._den == other._den:
            return Scalar(_padd(n1, n2), d1)
        return Scalar(_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        if not self._num:
            return self
        return Scalar(tuple((e, -c) for e, c in self._num), self._den, _raw=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.from_int(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self._num or not other._num:
            return ZERO
        if self._den == _ONE_D and other._den == _ONE_D:
            if len(self._num) == 1:
                (e, c), = self._num
                return Scalar(
                    tuple((e2 + e, c2 * c) for e2, c2 in other._num), _ONE_D, _raw=True
                )
            if len(other._num) == 1:
                (e, c), = other._num
                return Scalar(
                    tuple((e2 + e, c2 * c) for e2, c2 in self._num), _ONE_D, _raw=True
                )
            n = _pmul(dict(self._num), dict(other._num))
            return Scalar(tuple(sorted(n.items(), reverse=True)), _ONE_D, _raw=True)
        return Scalar(
            _pmul(dict(self._num), dict(other._num)),
            _pmul(dict(self._den), dict(other._den)),
        )

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self._num:
            raise DivisionByZero("inverse of zero")
        return Scalar(dict(self._den), dict(self._num))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return Scalar.from_int(other) * self.inv()

    def __pow__(self, k: int):
        if k == 0:
            return ONE
        base = self if k > 0 else self.inv()
        k = abs(k)
        out = ONE
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- field automorphisms and evaluation ------------------------------

    def bar(self) -> "Scalar":
        """The bar-involution: the substitution u -> u^(-1)."""
        if not self._num:
            return self
        return Scalar(
            {-e: c for e, c in self._num}, {-e: c for e, c in self._den}
        )

    def specialize(self, u0):
        """Evaluate at u = u0 (nonzero rational); exact rational result."""
        u0 = Rat(u0)
        if not u0:
            raise NegativeArgument("u0 must be nonzero")
        den = sum((c * u0 ** e for e, c in self._den), _R0)
        if not den:
            raise PoleAtPoint(f"denominator vanishes at u = {u0}")
        num = sum((c * u0 ** e for e, c in self._num), _R0)
        return num / den

    # -- text form -------------------------------------------------------

    def canonical(self) -> str:
        """Canonical serialization `(num)/(den)` with u-monomials descending."""
        return f"({_fmt_laurent(self._num, 'u', 1)})/({_fmt_laurent(self._den, 'u', 1)})"

    def __str__(self):
        if not self._num:
            return "0"
        step = 0
        for e, _ in self._num + (self._den if self._den != _ONE_D else ()):
            step = _gcd2(step, e)
        var, d = ("v", 4) if step % 4 == 0 else (("q", 2) if step % 2 == 0 else ("u", 1))
        n = _fmt_laurent(self._num, var, d)
        if self._den == _ONE_D:
            return n if len(self._num) == 1 else f"({n})"
        return f"({n})/({_fmt_laurent(self._den, var, d)})"

    def __repr__(self):
        return f"Scalar[{self}]"


def _gcd2(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _fmt_laurent(terms, var, d) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        neg = c < 0
        c = -c if neg else c
        k = e // d
        if k == 0:
            body = str(c)
        else:
            pw = var if k == 1 else f"{var}^{k}"
            body = pw if c == 1 else f"{c}*{pw}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


ZERO = Scalar((), _ONE_D, _raw=True)
ONE = Scalar(((0, _R1),), _ONE_D, _raw=True)


# ---------------------------------------------------------------------------
# q-combinatorics


@lru_cache(maxsize=None)
def qint(r: int, d: int = 1) -> Scalar:
    """Quantum integer [r] in v_d = u^(4d); antisymmetric in r."""
    if r < 0:
        return -qint(-r, d)
    if r == 0:
        return ZERO
    return Scalar(tuple((4 * d * (r - 1 - 2 * j), _R1) for j in range(r)), _ONE_D, _raw=True)


@lru_cache(maxsize=None)
def qfact(r: int, d: int = 1) -> Scalar:
    """Quantum factorial [r]! in v_d."""
    if r < 0:
        raise NegativeArgument(f"qfact({r})")
    out = ONE
    for j in range(1, r + 1):
        out = out * qint(j, d)
    return out


@lru_cache(maxsize=None)
def qbinom(m: int, r: int, d: int = 1) -> Scalar:
    """Quantum binomial [m, r] in v_d by the product formula; m may be negative."""
    if r < 0:
        raise NegativeArgument(f"qbinom({m}, {r})")
    num = ONE
    for j in range(r):
        num = num * qint(m - j, d)
    return num / qfact(r, d)


def pochhammer(a: Scalar, x: Scalar, n: int) -> Scalar:
    """(a; x)_n = (1 - a)(1 - a*x)...(1 - a*x^(n-1)), with (a; x)_0 = 1."""
    if n < 0:
        raise NegativeArgument(f"pochhammer n = {n}")
    out = ONE
    ax = a
    for _ in range(n):
        out = out * (ONE - ax)
        ax = ax * x
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>[uvq])|(?P<op>[\^*+/()-]))"
)


def _tokens(s: str):
    pos, out = 0, []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos:].strip():
                raise ParseError(f"bad scalar syntax near {s[pos:]!r}")
            break
        pos = m.end()
        out.append(m.group(m.lastgroup))
    return out


_VAR_STEP = {"u": 1, "q": 2, "v": 4}


def _parse_laurent(toks) -> dict:
    """Parse a sum of `c*u^k`-style terms (aliases v = u^4, q = u^2)."""
    out: dict = {}
    i, n = 0, len(toks)
    sign = 1
    if i < n and toks[i] in "+-":
        sign = -1 if toks[i] == "-" else 1
        i += 1
    while i < n:
        coeff_num, coeff_den, exp = None, 1, 0
        seen_atom = False
        while i < n and toks[i] not in "+-":
            t = toks[i]
            if t == "*":
                i += 1
                continue
            if t.isdigit():
                if coeff_num is None:
                    coeff_num = int(t)
                    if i + 2 < n and toks[i + 1] == "/" and toks[i + 2].isdigit():
                        coeff_den = int(toks[i + 2])
                        i += 2
                else:
                    raise ParseError("unexpected integer in term")
                i += 1
                continue
            if t in _VAR_STEP:
                k = 1
                if i + 1 < n and toks[i + 1] == "^":
                    j = i + 2
                    s2 = 1
                    if j < n and toks[j] == "-":
                        s2, j = -1, j + 1
                    if j >= n or not toks[j].isdigit():
                        raise ParseError("bad exponent")
                    k = s2 * int(toks[j])
                    i = j
                exp += _VAR_STEP[t] * k
                seen_atom = True
                i += 1
                continue
            raise ParseError(f"unexpected token {t!r} in scalar")
        if coeff_num is None:
            if not seen_atom:
                raise ParseError("empty term")
            coeff_num = 1
        c = Rat(sign * coeff_num, coeff_den)
        s = out.get(exp, _R0) + c
        if s:
            out[exp] = s
        else:
            out.pop(exp, None)
        if i < n:
            sign = -1 if toks[i] == "-" else 1
            i += 1
    return out


def parse_scalar(s: str) -> Scalar:
    """Parse the canonical `(num)/(den)` form or a bare Laurent sum."""
    s = s.strip()
    if s.startswith("("):
        depth, split = 0, None
        for j, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and j + 1 < len(s) and s[j + 1] == "/":
                    split = j
                    break
        if split is not None:
            num_s = s[1:split]
            rest = s[split + 2:].strip()
            if not (rest.startswith("(") and rest.endswith(")")):
                raise ParseError("expected (num)/(den)")
            return Scalar(_parse_laurent(_tokens(num_s)),
                          _parse_laurent(_tokens(rest[1:-1])))
        if s.endswith(")") and "(" not in s[1:-1] and ")" not in s[1:-1]:
            s = s[1:-1]
    num = _parse_laurent(_tokens(s))
    if not num:
        return ZERO
    return Scalar(num)
