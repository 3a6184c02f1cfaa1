"""Finite groups as multiplication tables, plus exact irreducible representations.

Only the families needed here are supported: cyclic groups, the metacyclic
groups Z_q x| Z_p with s a s^-1 = a^r, and direct products of those.  Elements
are enumerated lexicographically by generator exponents, so ``s^i a^j`` sits
at index ``i*q + j`` and a product element ``(g, h)`` at ``g*|H| + h``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Sequence

from hopforders.exactnum import Cyc, CycField, field_create, root_of_unity

__all__ = [
    "GroupSpec",
    "FiniteGroup",
    "Irrep",
    "build_group",
    "induce_irrep",
    "all_irreps",
    "one_dim_irrep",
    "character_inner",
    "is_prime",
    "multiplicative_order",
    "GroupError",
    "small_group_specs",
]


class GroupError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def multiplicative_order(r: int, q: int) -> int:
    if gcd(r, q) != 1:
        return 0
    k, x = 1, r % q
    while x != 1 % q:
        x = x * r % q
        k += 1
    return k


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    k: int = 0
    q: int = 0
    p: int = 0
    r: int = 0
    left: "GroupSpec | None" = None
    right: "GroupSpec | None" = None
    names: tuple[str, ...] = ()

    @classmethod
    def cyclic(cls, k: int, name: str = "g") -> "GroupSpec":
        return cls("cyclic", k=k, names=(name,))

    @classmethod
    def semidirect_qp(cls, q: int, p: int, r: int, names: tuple[str, str] = ("s", "a")) -> "GroupSpec":
        return cls("semidirect_qp", q=q, p=p, r=r, names=tuple(names))

    @classmethod
    def product(cls, left: "GroupSpec", right: "GroupSpec") -> "GroupSpec":
        return cls("product", left=left, right=right, names=left.names + right.names)

    def validate(self) -> None:
        if self.kind == "cyclic":
            if self.k < 1:
                raise GroupError(f"cyclic order must be positive, got {self.k}")
        elif self.kind == "semidirect_qp":
            q, p, r = self.q, self.p, self.r
            if not is_prime(q):
                raise GroupError(f"q={q} is not prime")
            if p < 1 or (q - 1) % p:
                raise GroupError(f"p={p} does not divide q-1={q - 1}")
            if multiplicative_order(r, q) != p:
                raise GroupError(f"r={r} does not have multiplicative order {p} mod {q}")
        elif self.kind == "product":
            if self.left is None or self.right is None:
                raise GroupError("product needs two factors")
            self.left.validate()
            self.right.validate()
            if len(set(self.names)) != len(self.names):
                raise GroupError(f"generator names collide: {self.names}")
        else:
            raise GroupError(f"unsupported group kind {self.kind!r}")

    def to_json(self) -> dict:
        if self.kind == "cyclic":
            return {"kind": "cyclic", "k": self.k, "names": list(self.names)}
        if self.kind == "semidirect_qp":
            return {"kind": "semidirect_qp", "q": self.q, "p": self.p, "r": self.r, "names": list(self.names)}
        return {"kind": "product", "left": self.left.to_json(), "right": self.right.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        kind = data.get("kind")
        if kind == "cyclic":
            return cls.cyclic(int(data["k"]), *data.get("names", ["g"]))
        if kind == "semidirect_qp":
            return cls.semidirect_qp(int(data["q"]), int(data["p"]), int(data["r"]), tuple(data.get("names", ["s", "a"])))
        if kind == "product":
            return cls.product(cls.from_json(data["left"]), cls.from_json(data["right"]))
        raise GroupError(f"unsupported group kind {kind!r}")


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    spec: GroupSpec
    labels: tuple[str, ...]
    exponents: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    identity: int
    gens: dict[str, int] = field(default_factory=dict)
    assoc_mode: str = "exhaustive"

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def prod(self, *elems: int) -> int:
        out = self.identity
        for g in elems:
            out = self.table[out][g]
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][g]
        return out

    def gen(self, name: str) -> int:
        return self.gens[name]

    def word(self, **powers: int) -> int:
        """Element with the given generator exponents, e.g. ``word(s=1, a=2)``."""
        return self.prod(*(self.power(self.gens[n], e) for n, e in powers.items()))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*(self.element_order(g) for g in range(self.order)))

    def subgroup_generated(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = self.table[x][s]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def is_abelian_set(self, elems) -> bool:
        return all(self.table[x][y] == self.table[y][x] for x in elems for y in elems)

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "order": self.order,
            "labels": list(self.labels),
            "identity": self.identity,
            "table": [list(row) for row in self.table],
        }


def _label(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = [f"{n}^{e}" if e != 1 else n for n, e in zip(names, exps) if e]
    return "*".join(parts) or "1"


def _raw_tables(spec: GroupSpec) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    if spec.kind == "cyclic":
        k = spec.k
        exps = [(i,) for i in range(k)]
        table = [[(i + j) % k for j in range(k)] for i in range(k)]
        return exps, table
    if spec.kind == "semidirect_qp":
        q, p, r = spec.q, spec.p, spec.r
        rinv = pow(r, -1, q)
        rpow = [pow(rinv, k, q) for k in range(p)]
        exps = [(i, j) for i in range(p) for j in range(q)]
        # (s^i a^j)(s^k a^l) = s^(i+k) a^(j r^-k + l)
        table = [
            [((i + k) % p) * q + (j * rpow[k] + l) % q for k in range(p) for l in range(q)]
            for i in range(p)
            for j in range(q)
        ]
        return exps, table
    le, lt = _raw_tables(spec.left)
    re_, rt = _raw_tables(spec.right)
    m = len(re_)
    exps = [a + b for a in le for b in re_]
    table = [
        [lt[g1][h1] * m + rt[g2][h2] for h1 in range(len(le)) for h2 in range(m)]
        for g1 in range(len(le))
        for g2 in range(m)
    ]
    return exps, table


def build_group(spec: GroupSpec, seed: int = 0) -> FiniteGroup:
    spec.validate()
    exps, table = _raw_tables(spec)
    n = len(exps)
    identity = exps.index(tuple(0 for _ in exps[0]))
    full = set(range(n))
    for row in table:
        if set(row) != full:
            raise GroupError("multiplication table is not a Latin square")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise GroupError("multiplication table is not a Latin square")
    inverse = [table[g].index(identity) for g in range(n)]
    if n <= 64:
        triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        mode = "exhaustive"
    else:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(4000)]
        mode = "sampled"
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupError(f"associativity fails at {(a, b, c)}")
    gens = {}
    for pos, name in enumerate(spec.names):
        target = tuple(1 if i == pos else 0 for i in range(len(spec.names)))
        # a generator of a trivial factor is the identity
        gens[name] = exps.index(target) if target in exps else identity
    return FiniteGroup(
        spec=spec,
        labels=tuple(_label(spec.names, e) for e in exps),
        exponents=tuple(exps),
        table=tuple(tuple(r) for r in table),
        inverse=tuple(inverse),
        identity=identity,
        gens=gens,
        assoc_mode=mode,
    )


# ---------------------------------------------------------------------------
# representations


def _smallest_r(q: int, p: int) -> int:
    return next(r for r in range(2, q) if multiplicative_order(r, q) == p)


def _renamed(spec: GroupSpec, suffix: str) -> GroupSpec:
    if spec.kind == "cyclic":
        return GroupSpec.cyclic(spec.k, spec.names[0] + suffix)
    return GroupSpec.semidirect_qp(spec.q, spec.p, spec.r, tuple(n + suffix for n in spec.names))


def small_group_specs(max_order: int) -> list[GroupSpec]:
    """Every spec of order <= max_order built from cyclic groups, Z_q x| Z_p and one direct product.

    Isomorphic groups can occur more than once (Z_2 x Z_3 next to Z_6).  For
    each (q, p) only the smallest valid r is used, since other choices give
    isomorphic groups.
    """
    atoms: list[tuple[int, GroupSpec]] = [(k, GroupSpec.cyclic(k)) for k in range(2, max_order // 2 + 1)]
    nonabelian = []
    for q in range(3, max_order + 1):
        if is_prime(q):
            for p in range(2, q):
                if (q - 1) % p == 0 and p * q <= max_order:
                    nonabelian.append((p * q, GroupSpec.semidirect_qp(q, p, _smallest_r(q, p))))
    atoms += nonabelian
    out = [GroupSpec.cyclic(k) for k in range(1, max_order + 1)] + [s for _, s in nonabelian]
    for i, (n1, s1) in enumerate(atoms):
        for n2, s2 in atoms[i:]:
            if n1 * n2 <= max_order:
                out.append(GroupSpec.product(_renamed(s1, "1"), _renamed(s2, "2")))
    return out


@dataclass(frozen=True, eq=False)
class Irrep:
    group: FiniteGroup
    field: CycField
    dim: int
    matrices: tuple[tuple[tuple[Cyc, ...], ...], ...]
    name: str = ""

    @property
    def character(self) -> tuple[Cyc, ...]:
        chi = getattr(self, "_chi", None)
        if chi is None:
            z = self.field.zero
            chi = tuple(sum((m[i][i] for i in range(self.dim)), z) for m in self.matrices)
            object.__setattr__(self, "_chi", chi)
        return chi

    def check_homomorphism(self) -> bool:
        """rho(g s) == rho(g) rho(s) for all g and all generators s, and rho(1) = I."""
        G = self.group
        ident = _identity(self.field, self.dim)
        if self.matrices[G.identity] != ident:
            return False
        for s in G.gens.values():
            for g in range(G.order):
                if self.matrices[G.table[g][s]] != _matmul(self.matrices[g], self.matrices[s]):
                    return False
        return True


def _identity(K: CycField, d: int):
    return tuple(tuple(K.one if i == j else K.zero for j in range(d)) for i in range(d))


def _matmul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    z = A[0][0].field.zero
    return tuple(
        tuple(sum((A[i][t] * B[t][j] for t in range(m) if A[i][t] and B[t][j]), z) for j in range(k))
        for i in range(n)
    )


def _kron(A, B):
    return tuple(
        tuple(A[i][j] * B[k][l] for j in range(len(A)) for l in range(len(B)))
        for i in range(len(A))
        for k in range(len(B))
    )


def one_dim_irrep(G: FiniteGroup, K: CycField, values: Sequence[Cyc], name: str = "") -> Irrep:
    return Irrep(G, K, 1, tuple(((v,),) for v in values), name)


def induce_irrep(
    G: FiniteGroup,
    subgroup: frozenset[int],
    char: dict[int, Cyc],
    transversal: Sequence[int],
    K: CycField,
    name: str = "",
) -> Irrep:
    """Monomial matrices of Ind_H^G(char) for a one-dimensional ``char`` of H."""
    H = frozenset(subgroup)
    if len(transversal) * len(H) != G.order:
        raise GroupError("transversal length does not match the subgroup index")
    cosets = set()
    for t in transversal:
        cosets.add(frozenset(G.table[t][h] for h in H))
    if len(cosets) != len(transversal):
        raise GroupError("not a left transversal")
    for x in H:
        for y in H:
            if char[G.table[x][y]] != char[x] * char[y]:
                raise GroupError("character is not multiplicative on the subgroup")
    inv = G.inverse
    d = len(transversal)
    mats = []
    for g in range(G.order):
        rows = []
        for i, ti in enumerate(transversal):
            row = []
            for tj in transversal:
                x = G.table[G.table[inv[ti]][g]][tj]
                row.append(char[x] if x in H else K.zero)
            rows.append(tuple(row))
        mats.append(tuple(rows))
    return Irrep(G, K, d, tuple(mats), name)


def _default_field(G: FiniteGroup) -> CycField:
    return field_create(G.exponent())


def all_irreps(G: FiniteGroup, K: CycField | None = None) -> list[Irrep]:
    """Complete list of irreducible representations for supported group kinds."""
    K = K or _default_field(G)
    spec = G.spec
    if spec.kind == "cyclic":
        k = spec.k
        if K.n % k:
            raise GroupError(f"field Q(zeta_{K.n}) lacks {k}-th roots of unity")
        g = G.gens[spec.names[0]]
        out = []
        for m in range(k):
            vals = [None] * k
            for i in range(k):
                vals[G.power(g, i)] = root_of_unity(K, k, m * i)
            out.append(one_dim_irrep(G, K, vals, f"chi{m}"))
        return out
    if spec.kind == "semidirect_qp":
        q, p, r = spec.q, spec.p, spec.r
        if K.n % p or K.n % q:
            raise GroupError(f"field Q(zeta_{K.n}) lacks the roots of unity needed for Z_{q} x| Z_{p}")
        s, a = G.gens[spec.names[0]], G.gens[spec.names[1]]
        out = []
        for k in range(p):
            vals = [root_of_unity(K, p, k * e[0]) for e in G.exponents]
            out.append(one_dim_irrep(G, K, vals, f"lin{k}"))
        A = G.subgroup_generated([a])
        transversal = [G.power(s, i) for i in range(p)]
        seen: set[int] = set()
        for l in range(1, q):
            if l in seen:
                continue
            orbit = {l * pow(r, i, q) % q for i in range(p)}
            seen |= orbit
            char = {G.power(a, j): root_of_unity(K, q, l * j) for j in range(q)}
            out.append(induce_irrep(G, A, char, transversal, K, f"ind{l}"))
        return out
    if spec.kind == "product":
        GL, GR = build_group(spec.left), build_group(spec.right)
        m = GR.order
        out = []
        for A in all_irreps(GL, K):
            for B in all_irreps(GR, K):
                mats = tuple(_kron(A.matrices[g // m], B.matrices[g % m]) for g in range(G.order))
                out.append(Irrep(G, K, A.dim * B.dim, mats, f"{A.name}x{B.name}"))
        return out
    raise GroupError(f"unsupported group kind {spec.kind!r}")


def character_inner(G: FiniteGroup, chi: Sequence[Cyc], psi: Sequence[Cyc]) -> Cyc:
    """(1/|G|) sum_g chi(g) psi(g^-1)."""
    K = chi[0].field
    total = K.zero
    for g in range(G.order):
        total = total + chi[g] * psi[G.inverse[g]]
    return total / G.order
