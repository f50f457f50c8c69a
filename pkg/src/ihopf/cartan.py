"""Cartan matrices, Satake involutions and relative Weyl combinatorics.

Indices are 0-based internally; the text formats and preset labels are
1-based.  Weights are plain integer tuples over the index set (the root
lattice), so they can serve directly as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ConfigError, NonReducedWord, UnsupportedLocalType

Weight = tuple

# -- weight helpers ---------------------------------------------------------


def wt_add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wt_sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wt_neg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wt_height(a: Weight) -> int:
    return sum(abs(x) for x in a)


def wt_zero(n: int) -> Weight:
    return (0,) * n


def alpha(i: int, n: int) -> Weight:
    """Simple root alpha_i as a lattice vector."""
    return tuple(1 if j == i else 0 for j in range(n))


@dataclass(frozen=True)
class CartanData:
    """A symmetrizable Cartan matrix with symmetrizer and diagram involution."""

    C: tuple
    D: tuple
    tau: tuple
    name: str = "custom"

    @property
    def n(self) -> int:
        return len(self.D)

    # -- validation ----------------------------------------------------

    def violations(self) -> list:
        """All violated structural invariants, as human-readable strings."""
        out = []
        n, C, D, tau = self.n, self.C, self.D, self.tau
        if len(C) != n or any(len(row) != n for row in C):
            return [f"C is not {n}x{n}"]
        if sorted(tau) != list(range(n)):
            return ["tau is not a permutation of the index set"]
        for i in range(n):
            if C[i][i] != 2:
                out.append(f"c[{i + 1}][{i + 1}] != 2")
            if D[i] <= 0:
                out.append(f"d[{i + 1}] <= 0")
            if tau[tau[i]] != i:
                out.append(f"tau^2 != id at {i + 1}")
            for j in range(n):
                if i != j and C[i][j] > 0:
                    out.append(f"c[{i + 1}][{j + 1}] > 0")
                if D[i] * C[i][j] != D[j] * C[j][i]:
                    out.append(f"DC not symmetric at ({i + 1},{j + 1})")
                if C[tau[i]][tau[j]] != C[i][j]:
                    out.append(f"tau does not preserve C at ({i + 1},{j + 1})")
        for i in range(n):
            if self.C[i][tau[i]] not in (2, 0, -1):
                out.append(
                    f"local type c[{i + 1}][tau({i + 1})] = {self.C[i][tau[i]]}"
                    " outside {2, 0, -1}"
                )
        return out

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise ConfigError("; ".join(bad))

    # -- bilinear form and reflections ----------------------------------

    def sym(self, i: int, j: int) -> int:
        """(alpha_i, alpha_j) = d_i c_ij."""
        return self.D[i] * self.C[i][j]

    def bilinear(self, mu: Weight, nu: Weight) -> int:
        return sum(
            mi * self.sym(i, j) * nu[j]
            for i, mi in enumerate(mu) if mi
            for j in range(self.n) if nu[j]
        )

    def reflect(self, i: int, mu: Weight) -> Weight:
        """Simple reflection s_i(mu) = mu - <pairing> alpha_i."""
        # s_i(alpha_j) = alpha_j - c_ij alpha_i, extended linearly:
        # coefficient of alpha_i shifts by -sum_j c_ij mu_j.
        shift = sum(self.C[i][j] * mj for j, mj in enumerate(mu) if mj)
        out = list(mu)
        out[i] -= shift
        return tuple(out)

    def reflect_word(self, word, mu: Weight) -> Weight:
        for i in reversed(word):
            mu = self.reflect(i, mu)
        return mu

    def is_reduced(self, word) -> bool:
        """Word i_1..i_r is reduced iff each prefix sends the next root positive."""
        for k, ik in enumerate(word):
            beta = alpha(ik, self.n)
            for i in reversed(word[:k]):
                beta = self.reflect(i, beta)
            if any(x < 0 for x in beta):
                return False
        return True

    def check_reduced(self, word) -> None:
        if not self.is_reduced(word):
            raise NonReducedWord(f"word {tuple(w + 1 for w in word)} is not reduced")

    def local_type(self, i: int) -> int:
        c = self.C[i][self.tau[i]]
        if c not in (2, 0, -1):
            raise UnsupportedLocalType(f"c[{i + 1}][tau] = {c}")
        return c

    def relative_reflection(self, i: int) -> tuple:
        """Reduced word for the order-2 relative Weyl element attached to i."""
        c = self.local_type(i)
        ti = self.tau[i]
        if c == 2:
            return (i,)
        if c == 0:
            return (i, ti)
        return (i, ti, i)

    def relative_reflect(self, i: int, mu: Weight) -> Weight:
        return self.reflect_word(self.relative_reflection(i), mu)

    def tau_weight(self, mu: Weight) -> Weight:
        out = [0] * self.n
        for j, m in enumerate(mu):
            out[self.tau[j]] = m
        return tuple(out)

    def local_involution(self, i: int) -> dict:
        """The involution tau_i of {i, tau i} fixed by r_i(alpha_i) = -alpha_(tau_i i)."""
        ti = self.tau[i]
        out = {}
        for k in (i, ti):
            img = self.relative_reflect(i, alpha(k, self.n))
            neg = wt_neg(img)
            hits = [j for j, x in enumerate(neg) if x == 1]
            if sum(neg) != 1 or len(hits) != 1 or hits[0] not in (i, ti):
                raise UnsupportedLocalType(
                    f"r_{i + 1}(alpha_{k + 1}) is not minus a simple root in the orbit"
                )
            out[k] = hits[0]
        return out

    def orbit_representatives(self) -> list:
        return [i for i in range(self.n) if i <= self.tau[i]]

    def __str__(self):
        return self.name


# ---------------------------------------------------------------------------
# presets


def _chain(n: int, tau=None, name="") -> CartanData:
    C = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
         for i in range(n)]
    return CartanData(
        C=tuple(map(tuple, C)),
        D=(1,) * n,
        tau=tuple(tau) if tau else tuple(range(n)),
        name=name,
    )


def _preset_B2() -> CartanData:
    return CartanData(
        C=((2, -1), (-2, 2)), D=(2, 1), tau=(0, 1), name="B2split"
    )


def _preset_G2() -> CartanData:
    return CartanData(
        C=((2, -1), (-3, 2)), D=(3, 1), tau=(0, 1), name="G2split"
    )


def _preset_A1xA1() -> CartanData:
    return CartanData(
        C=((2, 0), (0, 2)), D=(1, 1), tau=(0, 1), name="A1xA1split"
    )


def _preset_DI4() -> CartanData:
    # D4 star: edges 1-2, 2-3, 2-4; tau swaps the fork 3 <-> 4.
    C = [
        (2, -1, 0, 0),
        (-1, 2, -1, -1),
        (0, -1, 2, 0),
        (0, -1, 0, 2),
    ]
    return CartanData(C=tuple(C), D=(1,) * 4, tau=(0, 1, 3, 2), name="DI4")


def _preset_EII6() -> CartanData:
    # E6 with chain 1-2-3-5-6 and fork node 4 on 3; tau = (1 6)(2 5).
    edges = {(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)}
    C = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
    for a, b in edges:
        C[a][b] = C[b][a] = -1
    return CartanData(
        C=tuple(map(tuple, C)), D=(1,) * 6, tau=(5, 4, 2, 3, 1, 0), name="EII6"
    )


def double_diagonal(base: CartanData, name=None) -> CartanData:
    """Two disjoint copies of `base` with the swap involution."""
    n = base.n
    C = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            C[i][j] = base.C[i][j]
            C[n + i][n + j] = base.C[i][j]
    tau = tuple(range(n, 2 * n)) + tuple(range(n))
    return CartanData(
        C=tuple(map(tuple, C)),
        D=base.D + base.D,
        tau=tau,
        name=name or f"double{base.name}",
    )


@lru_cache(maxsize=None)
def preset(name: str) -> CartanData:
    reg = {
        "A1split": lambda: _chain(1, name="A1split"),
        "A2split": lambda: _chain(2, name="A2split"),
        "A3split": lambda: _chain(3, name="A3split"),
        "B2split": _preset_B2,
        "G2split": _preset_G2,
        "A1xA1split": _preset_A1xA1,
        "AIII2": lambda: _chain(2, tau=(1, 0), name="AIII2"),
        "AIII3": lambda: _chain(3, tau=(2, 1, 0), name="AIII3"),
        "AIII4": lambda: _chain(4, tau=(3, 2, 1, 0), name="AIII4"),
        "DI4": _preset_DI4,
        "EII6": _preset_EII6,
        "doubleA1": lambda: double_diagonal(_chain(1, name="A1")),
        "doubleA2": lambda: double_diagonal(_chain(2, name="A2")),
    }
    if name not in reg:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(sorted(reg))}")
    data = reg[name]()
    data.validate()
    return data


PRESET_NAMES = (
    "A1split", "A2split", "A3split", "B2split", "G2split", "A1xA1split",
    "AIII2", "AIII3", "AIII4", "DI4", "EII6", "doubleA1", "doubleA2",
)


def cartan_from_config(text: str) -> CartanData:
    """Build CartanData from a small key=value config block.

    Recognized keys: `preset = "name"`, or `cartan = {type = "A", rank = n}` /
    explicit `matrix = [[...], ...]` with optional `d = [...]`, plus
    `tau = [[1,3],[2,4]]` as a 1-based cycle list.
    """
    from .config import parse_kv  # local import to avoid a cycle

    kv = parse_kv(text)
    return cartan_from_kv(kv)


def cartan_from_kv(kv: dict) -> CartanData:
    if "preset" in kv:
        return preset(kv["preset"])
    if "matrix" in kv:
        C = tuple(tuple(int(x) for x in row) for row in kv["matrix"])
        n = len(C)
        D = tuple(int(x) for x in kv.get("d", [1] * n))
    elif "cartan" in kv:
        spec = kv["cartan"]
        typ, rank = spec.get("type", "A"), int(spec.get("rank", 1))
        if typ == "A":
            base = _chain(rank)
        elif typ == "B" and rank == 2:
            base = _preset_B2()
        elif typ == "G" and rank == 2:
            base = _preset_G2()
        else:
            raise ConfigError(f"unsupported cartan type {typ}{rank}; give a matrix")
        C, D = base.C, base.D
        n = rank
    else:
        raise ConfigError("config needs `preset`, `cartan` or `matrix`")
    tau = list(range(n))
    for cyc in kv.get("tau", []):
        if len(cyc) != 2:
            raise ConfigError("tau cycles must be transpositions")
        a, b = int(cyc[0]) - 1, int(cyc[1]) - 1
        tau[a], tau[b] = b, a
    data = CartanData(C=C, D=D, tau=tuple(tau), name=str(kv.get("name", "custom")))
    data.validate()
    return data
