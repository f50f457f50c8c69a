"""Sparse row echelon and exact linear solving over the scalar field.

Rows are dictionaries mapping hashable column keys to nonzero Scalars.
Pivoting is deterministic: the leading entry of a row is its maximal
column key under the supplied ordering.
"""

from __future__ import annotations

from .errors import NonUniqueSolution
from .scalars import ZERO


class Echelon:
    """Incremental echelon basis of a row space."""

    def __init__(self, sort_key=None):
        self.sort_key = sort_key or (lambda k: k)
        self.pivots: dict = {}

    def reduce(self, row: dict) -> dict:
        """Fully reduce `row` against the stored pivot rows (copy)."""
        row = {k: c for k, c in row.items() if c}
        while row:
            hits = [k for k in row if k in self.pivots]
            if not hits:
                break
            k = max(hits, key=self.sort_key)
            c = row.pop(k)
            for k2, c2 in self.pivots[k].items():
                if k2 == k:
                    continue
                s = row.get(k2)
                s = -c * c2 if s is None else s - c * c2
                if s:
                    row[k2] = s
                else:
                    row.pop(k2, None)
        return row

    def add(self, row: dict):
        """Insert a row; returns its pivot key, or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        lead = max(row, key=self.sort_key)
        inv = row[lead].inv()
        self.pivots[lead] = {k: c * inv for k, c in row.items()}
        return lead

    @property
    def rank(self) -> int:
        return len(self.pivots)


_RHS = object()


def solve_unique(equations, unknowns) -> dict:
    """Solve a linear system with a unique solution over Q(u).

    `equations` is an iterable of (coeffs, rhs) pairs, coeffs a dict over
    members of `unknowns` (hashable).  Raises NonUniqueSolution on an
    inconsistent system or a free variable.
    """
    unknowns = list(unknowns)
    index = {x: k for k, x in enumerate(unknowns)}

    def key_order(k):
        # the constant column sorts below every unknown, so a surviving
        # constants-only row pivots at _RHS and flags inconsistency
        return (-1, 0) if k is _RHS else (0, -index[k])

    ech = Echelon(sort_key=key_order)
    for coeffs, rhs in equations:
        row = {k: c for k, c in coeffs.items() if c}
        if rhs:
            row[_RHS] = -rhs
        ech.add(row)
    if _RHS in ech.pivots:
        raise NonUniqueSolution("inconsistent linear system")
    sol = {}
    for x in reversed(unknowns):
        row = ech.pivots.get(x)
        if row is None:
            raise NonUniqueSolution(f"free variable {x!r}")
        total = ZERO
        for k, c in row.items():
            if k is x:
                continue
            total = total - (c if k is _RHS else c * sol[k])
        sol[x] = total
    return sol
