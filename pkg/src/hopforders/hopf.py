"""Finite-dimensional Hopf algebras stored as sparse structure constants.

Conventions, for a basis x_0..x_{d-1}:

* ``mult[(i, j)]`` lists ``(k, c)`` with x_i x_j = sum c x_k
* ``comult[i]`` maps ``(j, k) -> c`` with Delta(x_i) = sum c x_j (x) x_k
* ``antipode[i]`` maps ``j -> c`` with S(x_i) = sum c x_j
* ``unit`` and ``counit`` are coordinate vectors

Elements of H^(x)r are :class:`Elem` objects holding a sparse dict; rank-1
keys are ints, higher ranks use tuples.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from hopforders.exactnum import Cyc, CycField, field_create, format_coeff, parse_coeff
from hopforders.groups import FiniteGroup, GroupSpec, build_group
from hopforders.linalg import SparseEchelon

__all__ = [
    "HopfAlgebra",
    "Elem",
    "Check",
    "Report",
    "group_algebra",
    "dual_hopf",
    "verify_axioms",
    "AXIOM_NAMES",
    "run_recipe",
    "subalgebra_closure",
    "is_hopf_subalgebra",
    "quotient_by_group_map",
    "EXHAUSTIVE_DIM",
    "SAMPLE_SIZE",
    "SAMPLE_SEED",
]

EXHAUSTIVE_DIM = 40
SAMPLE_SIZE = 2000
SAMPLE_SEED = 20130101


def _acc(target: dict, key, value) -> None:
    old = target.get(key)
    target[key] = value if old is None else old + value


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v}


class Elem:
    """Element of H^(x)rank with sparse coordinates."""

    __slots__ = ("parent", "terms", "rank")

    def __init__(self, parent: "HopfAlgebra", terms: dict, rank: int = 1, clean: bool = True):
        self.parent = parent
        self.terms = _clean(terms) if clean else terms
        self.rank = rank

    # -- views --------------------------------------------------------------

    @property
    def field(self) -> CycField:
        return self.parent.field

    @property
    def coords(self) -> list[Cyc]:
        """Dense coordinates (row-major over basis tuples)."""
        d, z = self.parent.dim, self.parent.field.zero
        if self.rank == 1:
            return [self.terms.get(i, z) for i in range(d)]
        return [self.terms.get(k, z) for k in itertools.product(range(d), repeat=self.rank)]

    def __getitem__(self, key) -> Cyc:
        return self.terms.get(key, self.parent.field.zero)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Elem):
            return NotImplemented
        return self.parent is other.parent and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Elem is not hashable")

    def __repr__(self) -> str:
        return f"Elem(rank={self.rank}, {self.pretty()})"

    def pretty(self, limit: int = 12) -> str:
        labels = self.parent.labels
        parts = []
        for k in sorted(self.terms)[:limit]:
            name = labels[k] if self.rank == 1 else "(x)".join(labels[i] for i in k)
            parts.append(f"({self.terms[k]})*{name}")
        if len(self.terms) > limit:
            parts.append("...")
        return " + ".join(parts) or "0"

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "Elem") -> None:
        if other.parent is not self.parent or other.rank != self.rank:
            raise ValueError("elements live in different spaces")

    def __add__(self, other: "Elem") -> "Elem":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return Elem(self.parent, out, self.rank)

    def __sub__(self, other: "Elem") -> "Elem":
        return self + (-other)

    def __neg__(self) -> "Elem":
        return Elem(self.parent, {k: -v for k, v in self.terms.items()}, self.rank, clean=False)

    def scale(self, c) -> "Elem":
        c = self.parent.field.coerce(c) if not isinstance(c, Cyc) else c
        if not c:
            return Elem(self.parent, {}, self.rank, clean=False)
        return Elem(self.parent, {k: v * c for k, v in self.terms.items()}, self.rank, clean=False)

    def __rmul__(self, c) -> "Elem":
        if isinstance(c, (int, Fraction, Cyc)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc)):
            return self.scale(other)
        self._check(other)
        return self.parent.multiply(self, other)

    def __truediv__(self, c) -> "Elem":
        c = self.parent.field.coerce(c) if not isinstance(c, Cyc) else c
        return self.scale(c.inverse())

    def __pow__(self, k: int) -> "Elem":
        out = self.parent.one(self.rank)
        for _ in range(k):
            out = out * self
        return out

    def tensor(self, other: "Elem") -> "Elem":
        if other.parent is not self.parent:
            raise ValueError("tensor factors from different algebras")
        ka = (lambda k: (k,)) if self.rank == 1 else (lambda k: k)
        kb = (lambda k: (k,)) if other.rank == 1 else (lambda k: k)
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[ka(i) + kb(j)] = a * b
        return Elem(self.parent, out, self.rank + other.rank)


@dataclass(eq=False)
class HopfAlgebra:
    field: CycField
    labels: tuple[str, ...]
    mult: dict[tuple[int, int], tuple[tuple[int, Cyc], ...]]
    unit: dict[int, Cyc]
    comult: list[dict[tuple[int, int], Cyc]]
    counit: list[Cyc]
    antipode: list[dict[int, Cyc]]
    name: str = ""
    # provenance used by the Wedderburn / order computations
    group: FiniteGroup | None = None  # algebra structure equals KG in the group basis
    dual_group: FiniteGroup | None = None  # algebra is (KG)* in the dual basis
    twist: Any = None  # TwistData when this is (KG)_J
    _table: list | None = field(default=None, repr=False)
    _partner_cache: list | None = field(default=None, repr=False)

    def __post_init__(self):
        d = self.dim
        table = [[-1] * d for _ in range(d)]
        for (i, j), terms in self.mult.items():
            if len(terms) == 1 and terms[0][1].is_one():
                table[i][j] = terms[0][0]
            else:
                table = None
                break
        if table is not None and len(self.mult) == d * d:
            self._table = table
        else:
            self._table = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    # -- constructors for elements -------------------------------------------

    def zero(self, rank: int = 1) -> Elem:
        return Elem(self, {}, rank, clean=False)

    def one(self, rank: int = 1) -> Elem:
        if rank == 1:
            return Elem(self, dict(self.unit), 1)
        out = self.one(1)
        for _ in range(rank - 1):
            out = out.tensor(self.one(1))
        return out

    def basis(self, i: int) -> Elem:
        return Elem(self, {i: self.field.one}, 1, clean=False)

    def element(self, coeffs: dict) -> Elem:
        """Element from ``{index or label: scalar}``."""
        out = {}
        for k, v in coeffs.items():
            i = self.labels.index(k) if isinstance(k, str) else k
            _acc(out, i, self.field.coerce(v) if not isinstance(v, Cyc) else v)
        return Elem(self, out, 1)

    def tensor_element(self, coeffs: dict) -> Elem:
        out = {}
        rank = None
        for k, v in coeffs.items():
            key = tuple(self.labels.index(x) if isinstance(x, str) else x for x in k)
            rank = len(key)
            _acc(out, key, self.field.coerce(v) if not isinstance(v, Cyc) else v)
        return Elem(self, out, rank or 2)

    # -- structure maps on basis ----------------------------------------------

    def mul_basis(self, i: int, j: int) -> Iterable[tuple[int, Cyc]]:
        if self._table is not None:
            return ((self._table[i][j], self.field.one),)
        return self.mult.get((i, j), ())

    def _partners(self) -> list[dict[int, tuple]]:
        # partners[i][j] = nonzero structure constants of b_i b_j
        if self._partner_cache is None:
            parts: list[dict] = [dict() for _ in range(self.dim)]
            for (i, j), terms in self.mult.items():
                if terms:
                    parts[i][j] = terms
            self._partner_cache = parts
        return self._partner_cache

    def multiply(self, a: Elem, b: Elem) -> Elem:
        out: dict = {}
        tab = self._table
        if a.rank == 1:
            if tab is not None:
                for i, x in a.terms.items():
                    row = tab[i]
                    for j, y in b.terms.items():
                        _acc(out, row[j], x * y)
            else:
                for i, x in a.terms.items():
                    for j, y in b.terms.items():
                        xy = x * y
                        for k, c in self.mult.get((i, j), ()):
                            _acc(out, k, xy * c)
            return Elem(self, out, 1)
        if a.rank == 2 and tab is not None:
            for (i1, i2), x in a.terms.items():
                r1, r2 = tab[i1], tab[i2]
                for (j1, j2), y in b.terms.items():
                    _acc(out, (r1[j1], r2[j2]), x * y)
            return Elem(self, out, 2)
        if a.rank == 2:
            partners = self._partners()
            by_first: dict = {}
            for (j1, j2), y in b.terms.items():
                by_first.setdefault(j1, []).append((j2, y))
            for (i1, i2), x in a.terms.items():
                p1, p2 = partners[i1], partners[i2]
                for j1, rest in by_first.items():
                    t1 = p1.get(j1)
                    if t1 is None:
                        continue
                    for j2, y in rest:
                        t2 = p2.get(j2)
                        if t2 is None:
                            continue
                        xy = x * y
                        for k1, c1 in t1:
                            c = xy if c1.is_one() else xy * c1
                            for k2, c2 in t2:
                                _acc(out, (k1, k2), c if c2.is_one() else c * c2)
            return Elem(self, out, 2)
        for ka, x in a.terms.items():
            for kb, y in b.terms.items():
                legs = [self.mul_basis(i, j) for i, j in zip(ka, kb)]
                xy = x * y
                for combo in itertools.product(*legs):
                    c = xy
                    for _, cc in combo:
                        if not cc.is_one():
                            c = c * cc
                    _acc(out, tuple(k for k, _ in combo), c)
        return Elem(self, out, a.rank)

    # -- leg operations ---------------------------------------------------------

    @staticmethod
    def _key(k, rank):
        return (k,) if rank == 1 else k

    @staticmethod
    def _unkey(t):
        return t[0] if len(t) == 1 else t

    def _map_leg(self, x: Elem, leg: int, fn: Callable[[int], Iterable[tuple[tuple, Cyc]]], width: int) -> Elem:
        """Replace leg ``leg`` by ``width`` legs given by fn(index) -> [(new_legs, coeff)]."""
        out: dict = {}
        for k, v in x.terms.items():
            t = self._key(k, x.rank)
            for new, c in fn(t[leg]):
                key = t[:leg] + new + t[leg + 1:]
                _acc(out, self._unkey(key) if key else (), v if c.is_one() else v * c)
        new_rank = x.rank - 1 + width
        if new_rank == 0:
            return _clean(out).get((), self.field.zero)
        return Elem(self, out, new_rank)

    def delta(self, x: Elem, leg: int = 0) -> Elem:
        return self._map_leg(x, leg, lambda i: self.comult[i].items(), 2)

    def apply_antipode(self, x: Elem, leg: int = 0) -> Elem:
        return self._map_leg(x, leg, lambda i: (((j,), c) for j, c in self.antipode[i].items()), 1)

    def apply_counit(self, x: Elem, leg: int = 0):
        return self.evaluate(x, leg, {i: c for i, c in enumerate(self.counit) if c})

    def evaluate(self, x: Elem, leg: int, functional) -> Elem | Cyc:
        """Contract leg ``leg`` against a functional given by coordinates on the basis."""
        f = functional.terms if isinstance(functional, Elem) else functional
        return self._map_leg(x, leg, lambda i: (((), f[i]),) if i in f else (), 0)

    def mult_legs(self, x: Elem, a: int, b: int) -> Elem:
        """Multiply leg a by leg b (x_a x_b), result in leg min(a, b); leg max removed."""
        out: dict = {}
        lo, hi = min(a, b), max(a, b)
        for k, v in x.terms.items():
            t = self._key(k, x.rank)
            for m, c in self.mul_basis(t[a], t[b]):
                key = t[:lo] + (m,) + t[lo + 1:hi] + t[hi + 1:]
                _acc(out, self._unkey(key), v if c.is_one() else v * c)
        return Elem(self, out, x.rank - 1)

    def permute_legs(self, x: Elem, perm: Sequence[int]) -> Elem:
        """New leg i is old leg perm[i]."""
        out = {}
        for k, v in x.terms.items():
            t = self._key(k, x.rank)
            out[self._unkey(tuple(t[p] for p in perm))] = v
        return Elem(self, out, x.rank, clean=False)

    def mul_leg(self, x: Elem, leg: int, y: Elem, side: str = "left") -> Elem:
        """Multiply leg ``leg`` of x by the rank-1 element y on the given side."""
        out: dict = {}
        for k, v in x.terms.items():
            t = self._key(k, x.rank)
            for j, w in y.terms.items():
                pairs = self.mul_basis(j, t[leg]) if side == "left" else self.mul_basis(t[leg], j)
                for m, c in pairs:
                    key = t[:leg] + (m,) + t[leg + 1:]
                    _acc(out, self._unkey(key), v * w if c.is_one() else v * w * c)
        return Elem(self, out, x.rank)

    def S(self, x: Elem) -> Elem:
        if x.rank == 1:
            return self.apply_antipode(x, 0)
        out = x
        for leg in range(x.rank):
            out = self.apply_antipode(out, leg)
        return out

    def Delta(self, x: Elem) -> Elem:
        return self.delta(x, 0)

    def eps(self, x: Elem) -> Cyc:
        return self.apply_counit(x, 0)

    def pair(self, f: Elem | dict, x: Elem) -> Cyc:
        """<f, x> for a functional given in the dual basis."""
        ft = f.terms if isinstance(f, Elem) else f
        total = self.field.zero
        for i, c in x.terms.items():
            w = ft.get(i)
            if w:
                total = total + w * c
        return total

    def linear_map(self, x: Elem, images: Sequence[dict], target: "HopfAlgebra") -> Elem:
        out: dict = {}
        for i, c in x.terms.items():
            for j, w in images[i].items():
                _acc(out, j, c * w)
        return Elem(target, out, 1)

    def antipode_matrix_dense(self) -> list[list[Cyc]]:
        z = self.field.zero
        return [[self.antipode[i].get(j, z) for j in range(self.dim)] for i in range(self.dim)]

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        cj = lambda c: [format_coeff(x) for x in c.coords]  # noqa: E731
        data: dict[str, Any] = {
            "field": self.field.n,
            "dim": self.dim,
            "labels": list(self.labels),
            "name": self.name,
            "mult": [[i, j, k, cj(c)] for (i, j) in sorted(self.mult) for k, c in self.mult[(i, j)]],
            "comult": [[i, j, k, cj(c)] for i in range(self.dim) for (j, k), c in sorted(self.comult[i].items())],
            "counit": [cj(c) for c in self.counit],
            "antipode": [[i, j, cj(c)] for i in range(self.dim) for j, c in sorted(self.antipode[i].items())],
            "unit": [cj(self.unit.get(i, self.field.zero)) for i in range(self.dim)],
        }
        if self.group is not None:
            data["group"] = self.group.spec.to_json()
        if self.dual_group is not None:
            data["dual_group"] = self.dual_group.spec.to_json()
        if self.twist is not None:
            data["twist"] = {
                "J": [[i, j, cj(c)] for (i, j), c in sorted(self.twist.J.terms.items())],
                "Jinv": [[i, j, cj(c)] for (i, j), c in sorted(self.twist.Jinv.terms.items())],
            }
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "HopfAlgebra":
        K = field_create(int(data["field"]))
        pc = lambda v: parse_coeff(K, v)  # noqa: E731
        d = int(data["dim"])
        labels = tuple(data["labels"])
        if len(labels) != d:
            raise ValueError("label count does not match dim")
        mult: dict = {}
        for i, j, k, c in data["mult"]:
            mult.setdefault((i, j), []).append((k, pc(c)))
        comult: list[dict] = [dict() for _ in range(d)]
        for i, j, k, c in data["comult"]:
            comult[i][(j, k)] = pc(c)
        antipode: list[dict] = [dict() for _ in range(d)]
        for i, j, c in data["antipode"]:
            antipode[i][j] = pc(c)
        unit = {i: pc(c) for i, c in enumerate(data["unit"])}
        H = cls(
            field=K,
            labels=labels,
            mult={k: tuple(v) for k, v in mult.items()},
            unit=_clean(unit),
            comult=[_clean(c) for c in comult],
            counit=[pc(c) for c in data["counit"]],
            antipode=[_clean(a) for a in antipode],
            name=data.get("name", ""),
            group=build_group(GroupSpec.from_json(data["group"])) if "group" in data else None,
            dual_group=build_group(GroupSpec.from_json(data["dual_group"])) if "dual_group" in data else None,
        )
        if "twist" in data:
            from hopforders.twist import TwistData

            base = group_algebra(H.group, K) if H.group is not None else None
            J = Elem(base, {(i, j): pc(c) for i, j, c in data["twist"]["J"]}, 2)
            Jinv = Elem(base, {(i, j): pc(c) for i, j, c in data["twist"]["Jinv"]}, 2)
            H.twist = TwistData.from_elements(base, J, Jinv)
        return H

    @classmethod
    def loads(cls, text: str) -> "HopfAlgebra":
        return cls.from_json(json.loads(text))


def group_algebra(G: FiniteGroup, K: CycField | None = None) -> HopfAlgebra:
    K = K or field_create(G.exponent())
    one = K.one
    n = G.order
    return HopfAlgebra(
        field=K,
        labels=G.labels,
        mult={(i, j): ((G.table[i][j], one),) for i in range(n) for j in range(n)},
        unit={G.identity: one},
        comult=[{(i, i): one} for i in range(n)],
        counit=[one] * n,
        antipode=[{G.inverse[i]: one} for i in range(n)],
        name=f"K[{G.spec.kind}:{G.order}]",
        group=G,
    )


def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    d = H.dim
    mult: dict[tuple[int, int], list] = {}
    for i in range(d):
        for (j, k), c in H.comult[i].items():
            mult.setdefault((j, k), []).append((i, c))
    comult: list[dict] = [dict() for _ in range(d)]
    for i in range(d):
        for j in range(d):
            for k, c in H.mul_basis(i, j):
                _acc(comult[k], (i, j), c)
    antipode: list[dict] = [dict() for _ in range(d)]
    for i in range(d):
        for j, c in H.antipode[i].items():
            antipode[j][i] = c
    if H.dual_group is not None:
        labels = tuple(H.dual_group.labels)
    else:
        labels = tuple(f"th[{l}]" for l in H.labels)
    return HopfAlgebra(
        field=H.field,
        labels=labels,
        mult={k: tuple(sorted(v, key=lambda t: t[0])) for k, v in mult.items()},
        unit={i: c for i, c in enumerate(H.counit) if c},
        comult=[_clean(c) for c in comult],
        counit=[H.unit.get(i, H.field.zero) for i in range(d)],
        antipode=antipode,
        name=f"dual({H.name})",
        group=H.dual_group,
        dual_group=H.group if H.twist is None else None,
    )


# ---------------------------------------------------------------------------
# axiom verification


@dataclass
class Check:
    name: str
    passed: bool
    mode: str = "exhaustive"
    witness: dict | None = None
    count: int = 0

    def to_json(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.passed else "fail", "mode": self.mode, "count": self.count}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def to_json(self) -> dict:
        out: dict[str, Any] = {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _witness(indices, lhs, rhs) -> dict:
    def show(x):
        if isinstance(x, Elem):
            return x.pretty()
        return str(x)

    return {"indices": list(indices), "lhs": show(lhs), "rhs": show(rhs)}


def _run_check(name: str, cases, compute, mode: str) -> Check:
    n = 0
    for idx in cases:
        n += 1
        lhs, rhs = compute(*idx)
        if lhs != rhs:
            return Check(name, False, mode, _witness(idx, lhs, rhs), n)
    return Check(name, True, mode, None, n)


AXIOM_NAMES = (
    "associativity",
    "left_unit",
    "right_unit",
    "coassociativity",
    "left_counit",
    "right_counit",
    "comult_multiplicative",
    "comult_unital",
    "counit_multiplicative",
    "counit_unital",
    "antipode_left",
    "antipode_right",
)


def _axiom_check(H: HopfAlgebra, name: str, cases, mode: str) -> Check:
    b = H.basis
    one = H.one()
    K = H.field
    deltas: dict = {}

    def D(i):
        if i not in deltas:
            deltas[i] = H.delta(b(i))
        return deltas[i]

    def coassoc(i):
        x = D(i)
        return H.delta(x, 0), H.delta(x, 1)

    def antipode(i, leg):
        x = H.apply_antipode(D(i), leg)
        return H.mult_legs(x, 0, 1), one.scale(H.counit[i])

    fns = {
        "associativity": lambda i, j, k: ((b(i) * b(j)) * b(k), b(i) * (b(j) * b(k))),
        "left_unit": lambda i: (one * b(i), b(i)),
        "right_unit": lambda i: (b(i) * one, b(i)),
        "coassociativity": coassoc,
        "left_counit": lambda i: (H.apply_counit(D(i), 0), b(i)),
        "right_counit": lambda i: (H.apply_counit(D(i), 1), b(i)),
        "comult_multiplicative": lambda i, j: (H.delta(b(i) * b(j)), D(i) * D(j)),
        "comult_unital": lambda: (H.delta(one), H.one(2)),
        "counit_multiplicative": lambda i, j: (H.eps(b(i) * b(j)), H.counit[i] * H.counit[j]),
        "counit_unital": lambda: (H.eps(one), K.one),
        "antipode_left": lambda i: antipode(i, 0),
        "antipode_right": lambda i: antipode(i, 1),
    }
    return _run_check(name, cases, fns[name], mode)


def verify_axioms(H: HopfAlgebra, seed: int = SAMPLE_SEED, sample_size: int = SAMPLE_SIZE,
                  exhaustive: bool | None = None, workers: int = 1) -> Report:
    """Exact check of the bialgebra and antipode axioms on basis elements.

    Triple and pair checks are exhaustive for dim <= EXHAUSTIVE_DIM and
    sampled with a fixed seed above that; single-element checks (unit, counit,
    coassociativity, antipode) always run on every basis element.  With
    ``workers > 1`` the twelve checks are spread over worker processes; the
    report is identical either way.
    """
    d = H.dim
    full = d <= EXHAUSTIVE_DIM if exhaustive is None else exhaustive
    rng = random.Random(seed)
    if full:
        triples = list(itertools.product(range(d), repeat=3))
        pairs = list(itertools.product(range(d), repeat=2))
        mode = "exhaustive"
    else:
        triples = [(rng.randrange(d), rng.randrange(d), rng.randrange(d)) for _ in range(sample_size)]
        pairs = [(rng.randrange(d), rng.randrange(d)) for _ in range(sample_size)]
        mode = "sampled"
    singles = [(i,) for i in range(d)]
    plan = {
        "associativity": (triples, mode),
        "comult_multiplicative": (pairs, mode),
        "counit_multiplicative": (pairs, mode),
        "comult_unital": ([()], "exhaustive"),
        "counit_unital": ([()], "exhaustive"),
    }
    rep = Report(seed=None if full else seed)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(_axiom_check, H, n, *plan.get(n, (singles, "exhaustive"))) for n in AXIOM_NAMES]
            for f in futs:
                rep.add(f.result())
    else:
        for n in AXIOM_NAMES:
            rep.add(_axiom_check(H, n, *plan.get(n, (singles, "exhaustive"))))
    return rep


# ---------------------------------------------------------------------------
# Sweedler recipes
#
# A recipe is a tuple of steps applied to an element of H^(x)r:
#   ("delta", leg)            replace the leg by its coproduct
#   ("antipode", leg)
#   ("counit", leg)
#   ("eval", leg, name)       contract the leg against functional env[name]
#   ("mult", a, b)            multiply leg a by leg b, keep at min(a, b)
#   ("lmul", leg, name) / ("rmul", leg, name)   multiply by env[name]
#   ("perm", (p0, p1, ...))   new leg i is old leg p_i


class RecipeError(ValueError):
    pass


def run_recipe(H: HopfAlgebra, x: Elem, recipe: Sequence[tuple], env: dict | None = None):
    env = env or {}
    cur: Any = x
    for step in recipe:
        if not isinstance(cur, Elem):
            raise RecipeError(f"step {step!r} applied to a scalar")
        op = step[0]
        try:
            if op == "delta":
                cur = H.delta(cur, step[1])
            elif op == "antipode":
                cur = H.apply_antipode(cur, step[1])
            elif op == "counit":
                cur = H.apply_counit(cur, step[1])
            elif op == "eval":
                cur = H.evaluate(cur, step[1], env[step[2]])
            elif op == "mult":
                cur = H.mult_legs(cur, step[1], step[2])
            elif op in ("lmul", "rmul"):
                cur = H.mul_leg(cur, step[1], env[step[2]], "left" if op == "lmul" else "right")
            elif op == "perm":
                if sorted(step[1]) != list(range(cur.rank)):
                    raise RecipeError(f"bad permutation {step[1]!r} for rank {cur.rank}")
                cur = H.permute_legs(cur, step[1])
            else:
                raise RecipeError(f"unknown recipe step {op!r}")
        except (IndexError, KeyError) as exc:
            raise RecipeError(f"malformed step {step!r}: {exc}") from exc
    return cur


# ---------------------------------------------------------------------------
# sub- and quotient Hopf algebras


def subalgebra_closure(H: HopfAlgebra, gens: Sequence[Elem]) -> list[Elem]:
    """Basis of the unital subalgebra generated by ``gens``."""
    ech = SparseEchelon(H.field.one)
    basis: list[Elem] = []

    def push(x: Elem) -> bool:
        if ech.add(dict(x.terms)) is None:
            basis.append(x)
            return True
        return False

    push(H.one())
    for g in gens:
        push(g)
    i = 0
    while i < len(basis):
        x = basis[i]
        for g in gens:
            push(x * g)
            push(g * x)
        i += 1
    return basis


def _in_span(ech: SparseEchelon, terms: dict) -> bool:
    return ech.contains(terms)


def is_hopf_subalgebra(H: HopfAlgebra, basis: Sequence[Elem]) -> bool:
    """Delta(b) in span (x) span and S(b) in span for every basis element b."""
    ech = SparseEchelon(H.field.one)
    for x in basis:
        ech.add(dict(x.terms))
    if not ech.contains(dict(H.one().terms)):
        return False
    for x in basis:
        if not ech.contains(dict(H.S(x).terms)):
            return False
        D = H.delta(x)
        rows: dict[int, dict] = {}
        cols: dict[int, dict] = {}
        for (j, k), c in D.terms.items():
            rows.setdefault(j, {})[k] = c
            cols.setdefault(k, {})[j] = c
        for v in itertools.chain(rows.values(), cols.values()):
            if not ech.contains(v):
                return False
    return True


def quotient_by_group_map(H: HopfAlgebra, Q: FiniteGroup, pi: Sequence[int]) -> tuple[HopfAlgebra, list[dict]]:
    """Image of (KG)_J under the Hopf map induced by a group surjection pi: G -> Q.

    The target is KQ twisted by (pi (x) pi)(J); returns it with the matrix of
    Phi (``images[i]`` = Phi(x_i) as a sparse dict).  Raises if pi is not a
    surjective homomorphism or Phi fails to be a Hopf map.
    """
    G = H.group
    if G is None:
        raise ValueError("quotient_by_group_map needs an algebra backed by a group")
    for g in range(G.order):
        for h in range(G.order):
            if pi[G.table[g][h]] != Q.table[pi[g]][pi[h]]:
                raise ValueError(f"pi is not a homomorphism at {(g, h)}")
    if set(pi) != set(range(Q.order)):
        raise ValueError("pi is not surjective")
    K = H.field
    target = group_algebra(Q, K)
    images = [{pi[g]: K.one} for g in range(G.order)]
    if H.twist is not None:
        from hopforders.twist import TwistData, apply_twist

        def push(t: Elem) -> Elem:
            out: dict = {}
            for (i, j), c in t.terms.items():
                _acc(out, (pi[i], pi[j]), c)
            return Elem(target, out, 2)

        pushed = TwistData.from_elements(target, push(H.twist.J), push(H.twist.Jinv))
        target = apply_twist(target, pushed)
    _check_hopf_map(H, target, images)
    return target, images


def _check_hopf_map(H: HopfAlgebra, T: HopfAlgebra, images: Sequence[dict]) -> None:
    def phi(x: Elem) -> Elem:
        return H.linear_map(x, images, T)

    def phi2(x: Elem) -> Elem:
        out: dict = {}
        for (i, j), c in x.terms.items():
            for a, u in images[i].items():
                for b, w in images[j].items():
                    _acc(out, (a, b), c * u * w)
        return Elem(T, out, 2)

    d = H.dim
    gens = range(d) if d <= EXHAUSTIVE_DIM else random.Random(SAMPLE_SEED).sample(range(d), 60)
    for i in gens:
        x = H.basis(i)
        if phi2(H.delta(x)) != T.delta(phi(x)):
            raise ValueError(f"Phi is not a coalgebra map at basis element {H.labels[i]}")
        if phi(H.S(x)) != T.S(phi(x)):
            raise ValueError(f"Phi does not commute with the antipode at {H.labels[i]}")
        if H.counit[i] != T.eps(phi(x)):
            raise ValueError(f"Phi does not preserve the counit at {H.labels[i]}")
        for j in gens:
            y = H.basis(j)
            if phi(x * y) != phi(x) * phi(y):
                raise ValueError(f"Phi is not multiplicative at {(H.labels[i], H.labels[j])}")
