"""Exact sparse linear algebra over Q or Q(zeta_n).

Vectors are dicts ``{key: scalar}`` with no stored zeros; keys only need to
be sortable.  Scalars are :class:`fractions.Fraction` or
:class:`hopforders.exactnum.Cyc`; anything with field operations and
truthiness-as-nonzero works.
"""

from __future__ import annotations

from bisect import insort
from heapq import heapify, heappop, heappush
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

__all__ = ["SparseEchelon", "nullspace", "solve_combination", "axpy"]


def axpy(target: dict, c, source: dict) -> None:
    """target += c * source, in place, dropping zeros."""
    for k, v in source.items():
        w = target.get(k)
        nv = c * v if w is None else w + c * v
        if nv:
            target[k] = nv
        elif w is not None:
            del target[k]


class SparseEchelon:
    """Incrementally maintained row echelon form with optional provenance.

    Each stored row has a leading key (its pivot) normalized to one.  When
    ``track`` is on, every row also remembers which combination of inserted
    vectors produced it, so dependencies can be read off.
    """

    def __init__(self, one: Any = Fraction(1), track: bool = False):
        self.one = one
        self.track = track
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}
        self._order: list = []
        self.count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, combo: dict | None = None) -> tuple[dict, dict | None]:
        v = dict(vec)
        rows = self.rows
        heap = [k for k in v if k in rows]
        heapify(heap)
        while heap:
            piv = heappop(heap)
            c = v.get(piv)
            if not c:
                continue
            row = rows[piv]
            for k in row:
                if k != piv and k in rows and k not in v:
                    heappush(heap, k)
            axpy(v, -c, row)
            if combo is not None:
                axpy(combo, -c, self.combos[piv])
        return v, combo

    def add(self, vec: dict) -> dict | None:
        """Insert ``vec``; returns None if independent, else the dependency.

        The dependency is ``{index: coeff}`` over inserted vectors (by insertion
        index, including this one with coefficient one) summing to zero; it is
        only meaningful when ``track`` is on.
        """
        idx = self.count
        self.count += 1
        combo = {idx: self.one} if self.track else None
        v, combo = self.reduce(vec, combo)
        if not v:
            return combo if combo is not None else {}
        piv = min(v)
        inv = self.one / v[piv]
        row = {k: x * inv for k, x in v.items()}
        self.rows[piv] = row
        if combo is not None:
            self.combos[piv] = {k: x * inv for k, x in combo.items()}
        insort(self._order, piv)
        return None

    def contains(self, vec: dict) -> bool:
        v, _ = self.reduce(vec)
        return not v


def nullspace(equations: Iterable[dict], unknowns: Sequence[Hashable], one: Any = Fraction(1)) -> list[dict]:
    """Basis of {x : sum_k eq[k] x[k] = 0 for every equation}."""
    order = {u: i for i, u in enumerate(unknowns)}
    ech = SparseEchelon(one)
    for eq in equations:
        if eq:
            ech.add({order[k]: v for k, v in eq.items()})
    # back-substitute to reduced echelon form
    pivots = sorted(ech.rows, reverse=True)
    rows = {p: dict(ech.rows[p]) for p in pivots}
    for p in pivots:
        row = rows[p]
        for q in pivots:
            if q < p:
                c = rows[q].get(p)
                if c:
                    axpy(rows[q], -c, row)
    pivset = set(rows)
    basis = []
    for free in range(len(unknowns)):
        if free in pivset:
            continue
        vec = {free: one}
        for p, row in rows.items():
            c = row.get(free)
            if c:
                vec[p] = -c
        basis.append({unknowns[k]: v for k, v in vec.items()})
    return basis


def solve_combination(vectors: Sequence[Sequence], target: Sequence, src_field=None):
    """Coefficients c with sum_i c_i vectors[i] == target, or None."""
    zero_like = Fraction(0) if src_field is None else src_field.zero
    one = Fraction(1) if src_field is None else src_field.one
    ech = SparseEchelon(one, track=True)
    for v in vectors:
        ech.add({k: x for k, x in enumerate(v) if x})
    tgt = {k: x for k, x in enumerate(target) if x}
    combo: dict = {}
    rest, combo = ech.reduce(tgt, combo)
    if rest:
        return None
    # combo now holds -(coefficients) over the inserted indices
    return [(-combo.get(i, zero_like)) if combo.get(i) else zero_like for i in range(len(vectors))]


def solve(equations: Sequence[dict], rhs: Sequence, unknowns: Sequence[Hashable], one: Any = Fraction(1)):
    """One solution x of {sum_k eq[k] x[k] = rhs_e}, as a dict, or None if inconsistent."""
    order = {u: i for i, u in enumerate(unknowns)}
    rhs_key = len(unknowns)
    ech = SparseEchelon(one)
    for eq, b in zip(equations, rhs):
        vec = {order[k]: v for k, v in eq.items() if v}
        if b:
            vec[rhs_key] = b
        if vec:
            ech.add(vec)
    if rhs_key in ech.rows:
        return None
    pivots = sorted(ech.rows, reverse=True)
    rows = {p: dict(ech.rows[p]) for p in pivots}
    for p in pivots:
        for q in pivots:
            if q < p:
                c = rows[q].get(p)
                if c:
                    axpy(rows[q], -c, rows[p])
    out = {}
    for p, row in rows.items():
        b = row.get(rhs_key)
        if b:
            out[unknowns[p]] = b
    return out
