"""Lattices over Z[zeta_k][1/m], character support algebras, and order obstructions.

Lattices are handled by restriction of scalars: an element of H over
Q(zeta_n) becomes a rational vector of length dim(H) * phi(n) (coordinate
t of basis element i sits at position i * phi(n) + t).  An R-module is then
a Z[1/m]-module in Q^N and gets a Hermite normal form over Z[1/m].
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from hopforders.exactnum import Cyc, CycField, euler_phi, field_create, format_coeff, parse_coeff, root_of_unity
from hopforders.frobenius import (
    FrobeniusData,
    KaplanskyReport,
    SyntheticBlocks,
    WedderburnData,
    kaplansky_check,
    tensor_coordinates,
)
from hopforders.groups import FiniteGroup, GroupSpec, all_irreps, build_group, induce_irrep, is_prime
from hopforders.hopf import (
    Elem,
    HopfAlgebra,
    dual_hopf,
    group_algebra,
    is_hopf_subalgebra,
    quotient_by_group_map,
    run_recipe,
    subalgebra_closure,
)
from hopforders.linalg import SparseEchelon
from hopforders.twist import build_bpq, verify_twist

__all__ = [
    "OrderError",
    "RingSpec",
    "Lattice",
    "span",
    "member",
    "dual_lattice",
    "image",
    "intersect_with_subspace",
    "character_support",
    "SupportResult",
    "order_sandwich",
    "SandwichResult",
    "classemi_idempotents",
    "ClassemiResult",
    "CertificateStep",
    "ObstructionCertificate",
    "obstruction_certificate",
    "weak_order",
    "WeakOrderResult",
    "DEFAULT_DEPTH",
]

DEFAULT_DEPTH = 8


class OrderError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rings


def _smooth_part(x: int, m: int) -> int:
    """Largest divisor of |x| whose prime factors all divide m."""
    x = abs(x)
    if m == 1 or x == 0:
        return 1
    out = 1
    g = gcd(x, m)
    while g > 1:
        while x % g == 0:
            x //= g
            out *= g
        g = gcd(x, m)
    return out


def _is_smooth(x: int, m: int) -> bool:
    return _smooth_part(x, m) == abs(x)


@dataclass(frozen=True)
class RingSpec:
    """R = Z[zeta_conductor][1/m]."""

    conductor: int = 1
    m: int = 1

    def __post_init__(self):
        if self.conductor < 1 or self.m < 1:
            raise OrderError(f"bad ring parameters conductor={self.conductor}, m={self.m}")

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Accepts 'Z', 'Z[1/6]', 'Z[zeta_3]', 'Z[zeta_3][1/2]'."""
        t = text.replace(" ", "")
        mt = re.fullmatch(r"Z(?:\[zeta_?(\d+)\])?(?:\[1/(\d+)\])?", t)
        if not mt:
            raise OrderError(f"cannot parse ring {text!r}")
        return cls(int(mt.group(1) or 1), int(mt.group(2) or 1))

    def __str__(self) -> str:
        out = "Z" if self.conductor == 1 else f"Z[zeta_{self.conductor}]"
        return out + (f"[1/{self.m}]" if self.m > 1 else "")

    @property
    def rank(self) -> int:
        return euler_phi(self.conductor)

    def check_field(self, K: CycField) -> None:
        if K.n % self.conductor:
            raise OrderError(f"{self} does not live in Q(zeta_{K.n})")

    def generators(self, K: CycField) -> list[Cyc]:
        """Z-basis zeta_k^j (j < phi(k)) of Z[zeta_k], inside K."""
        self.check_field(K)
        return [root_of_unity(K, self.conductor, j) for j in range(self.rank)]

    def contains(self, x: Cyc) -> bool:
        K = x.field
        self.check_field(K)
        sub = field_create(self.conductor)
        try:
            from hopforders.exactnum import restrict

            y = restrict(x, sub)
        except ValueError:
            return False
        return _is_smooth(y.den, self.m)

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "m": self.m, "text": str(self)}


# ---------------------------------------------------------------------------
# integer normal forms on sparse rows {column: value}


def _axpy_int(v: dict, c, row: dict) -> None:
    for k, x in row.items():
        nv = v.get(k, 0) - c * x
        if nv:
            v[k] = nv
        else:
            v.pop(k, None)


def _echelon_int(vectors) -> dict[int, dict[int, int]]:
    """Z-echelon basis {pivot column: row} of the span of sparse integer vectors."""
    piv: dict[int, dict[int, int]] = {}
    stack = [dict(v) for v in vectors if v]
    while stack:
        v = stack.pop()
        while v:
            c = min(v)
            P = piv.get(c)
            if P is None:
                piv[c] = v if v[c] > 0 else {k: -x for k, x in v.items()}
                break
            a, b = P[c], v[c]
            if b % a == 0:
                _axpy_int(v, b // a, P)
                continue
            g, x, y = _xgcd(a, b)
            newP = {k: x * P.get(k, 0) + y * v.get(k, 0) for k in set(P) | set(v)}
            newP = {k: w for k, w in newP.items() if w}
            piv[c] = newP
            _axpy_int(v, b // g, newP)
            old = dict(P)
            _axpy_int(old, a // g, newP)
            if old:
                stack.append(old)
    return piv


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with a x + b y = g = gcd(a, b) > 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


Row = tuple  # tuple of (column, Fraction) pairs, sorted by column


def _canonical(vectors: list[dict], m: int) -> tuple[Row, ...]:
    """Canonical basis of the Z[1/m]-span of sparse rational vectors.

    D is the m-coprime part of the common denominator (an invariant of the
    module), so D*M sits in Z[1/m]^N; its Hermite form over Z[1/m] has pivots
    coprime to m and entries above pivots in [0, pivot).  Returned rows are
    that form divided by D.
    """
    dens = [v.denominator for vec in vectors for v in vec.values()]
    if not dens:
        return ()
    total = reduce(lcm, dens, 1)
    D = total // _smooth_part(total, m)
    ints = [{k: int(v * total) for k, v in vec.items()} for vec in vectors]
    piv = _echelon_int(ints)
    order = sorted(piv)
    rows: dict[int, dict] = {}
    for c in order:
        r = {k: Fraction(x) for k, x in piv[c].items()}
        u = _smooth_part(r[c].numerator, m)
        if u != 1:
            r = {k: x / u for k, x in r.items()}
        rows[c] = r
    for idx, c in enumerate(order):
        r = rows[c]
        pvi = int(r[c])  # positive integer coprime to m
        for c2 in order[:idx]:
            above = rows[c2]
            x = above.get(c)
            if not x:
                continue
            a, u = x.numerator, x.denominator
            rep = (a * pow(u, -1, pvi)) % pvi if pvi > 1 else 0
            k = (x - rep) / pvi
            if k:
                for col, y in r.items():
                    nv = above.get(col, 0) - k * y
                    if nv:
                        above[col] = nv
                    else:
                        above.pop(col, None)
    scale = Fraction(1, D)
    return tuple(tuple((k, rows[c][k] * scale) for k in sorted(rows[c])) for c in order)


def _restrict_vec(x: Elem) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    deg = x.field.degree
    for i, c in x.terms.items():
        for t, v in enumerate(c.coords):
            if v:
                out[i * deg + t] = v
    return out


def _unrestrict(H: HopfAlgebra, vec) -> Elem:
    deg = H.field.degree
    per: dict[int, list] = {}
    items = vec.items() if isinstance(vec, dict) else vec
    for k, v in items:
        per.setdefault(k // deg, [Fraction(0)] * deg)[k % deg] = v
    return H.element({i: H.field.element(cs) for i, cs in per.items()})


def _det(M: list[list[Fraction]]) -> Fraction:
    A = [row[:] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


# ---------------------------------------------------------------------------
# lattices


@dataclass(eq=False)
class Lattice:
    ambient: HopfAlgebra
    ring: RingSpec
    generators: tuple[Elem, ...]
    basis: tuple[Row, ...]

    @property
    def rank(self) -> int:
        """Rank as a Z[1/m]-module after restriction of scalars."""
        return len(self.basis)

    @property
    def ncols(self) -> int:
        return self.ambient.dim * self.ambient.field.degree

    @property
    def full_rank(self) -> bool:
        return self.rank == self.ambient.dim * self.ring.rank and self.k_rank() == self.ambient.dim

    def k_rank(self) -> int:
        ech = SparseEchelon(self.ambient.field.one)
        for e in self.basis_elements():
            ech.add(dict(e.terms))
        return len(ech)

    def basis_elements(self) -> list[Elem]:
        return [_unrestrict(self.ambient, r) for r in self.basis]

    def key(self) -> tuple:
        return (self.ambient.field.n, self.ambient.dim, self.ring, self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def _coeffs(self, vec: dict) -> list[Fraction] | None:
        """Coefficients of vec in the canonical basis if they lie in Z[1/m], else None."""
        v = dict(vec)
        out = []
        for r in self.basis:
            p, pv = r[0]
            c = v.get(p, Fraction(0)) / pv
            if not _is_smooth(c.denominator, self.ring.m):
                return None
            if c:
                for k, x in r:
                    nv = v.get(k, 0) - c * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
            out.append(c)
        return out if not v else None

    def contains_vector(self, vec) -> bool:
        return self._coeffs(dict(vec)) is not None

    def member(self, x: Elem) -> bool:
        if x.parent.dim != self.ambient.dim or x.field is not self.ambient.field:
            raise OrderError("element does not live in the lattice's ambient space")
        return self.contains_vector(_restrict_vec(x))

    def __le__(self, other: "Lattice") -> bool:
        return all(other.contains_vector(r) for r in self.basis)

    def index_in(self, other: "Lattice") -> int | None:
        """[other : self] when self <= other with equal rank; the m-coprime part."""
        if not self <= other or self.rank != other.rank:
            return None
        T = [other._coeffs(dict(r)) for r in self.basis]
        d = abs(_det(T))
        num = d.numerator // _smooth_part(d.numerator, self.ring.m)
        den = d.denominator // _smooth_part(d.denominator, self.ring.m)
        if den != 1:
            raise OrderError("index computation produced a non-integral determinant")
        return num

    def transport(self, target: HopfAlgebra) -> "Lattice":
        """Same coordinates, read in another algebra with identical dim and field."""
        if target.dim != self.ambient.dim or target.field is not self.ambient.field:
            raise OrderError("transport needs identical dimension and field")
        gens = tuple(_unrestrict(target, _restrict_vec(g)) for g in self.generators)
        return Lattice(target, self.ring, gens, self.basis)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "field": self.ambient.field.n,
            "dim": self.ambient.dim,
            "rank": self.rank,
            "basis": [[[k, format_coeff(x)] for k, x in r] for r in self.basis],
        }


def span(H: HopfAlgebra, generators: Sequence[Elem], ring: RingSpec | None = None) -> Lattice:
    ring = ring or RingSpec()
    K = H.field
    ring.check_field(K)
    scalars = ring.generators(K)
    vecs = []
    for g in generators:
        if g.parent is not H:
            raise OrderError("generator from a different algebra")
        for z in scalars:
            vecs.append(_restrict_vec(g.scale(z)))
    return Lattice(H, ring, tuple(generators), _canonical(vecs, ring.m))


def member(x: Elem, L: Lattice) -> bool:
    return L.member(x)


def _k_basis_from(L: Lattice, candidates: Sequence[Elem]) -> list[Elem] | None:
    ech = SparseEchelon(L.ambient.field.one)
    chosen = []
    for e in candidates:
        if ech.add(dict(e.terms)) is None:
            chosen.append(e)
    if len(chosen) != L.ambient.dim:
        return None
    return chosen if span(L.ambient, chosen, L.ring) == L else None


def _invert(M: list[list[Cyc]], K: CycField) -> list[list[Cyc]]:
    n = len(M)
    A = [list(row) + [K.one if i == j else K.zero for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise OrderError("basis matrix is singular")
        A[c], A[p] = A[p], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def dual_lattice(L: Lattice, dual_space: HopfAlgebra | None = None) -> Lattice:
    """{f in H* : f(L) in R}, for L free over R with a basis that is a K-basis of H."""
    H = L.ambient
    basis = _k_basis_from(L, L.generators)
    if basis is None:
        # a K-independent subset of the Z-basis, accepted only if it spans L over R
        basis = _k_basis_from(L, L.basis_elements())
    if basis is None:
        raise OrderError("dual lattice needs a free lattice with a square basis")
    K = H.field
    B = [b.coords for b in basis]
    Binv = _invert(B, K)
    # F = (B^T)^-1 = (B^-1)^T
    D = dual_space or dual_hopf(H)
    if D.dim != H.dim or D.field is not K:
        raise OrderError("dual space has the wrong shape")
    duals = [D.element({k: Binv[k][i] for k in range(H.dim) if Binv[k][i]}) for i in range(H.dim)]
    return span(D, duals, L.ring)


def image(L: Lattice, images: Sequence[dict], target: HopfAlgebra) -> Lattice:
    H = L.ambient
    gens = [H.linear_map(b, images, target) for b in L.basis_elements()]
    return span(target, gens, L.ring)


def _int_kernel(M: list[dict]) -> list[dict[int, int]]:
    """Z-basis of {c in Z^t : sum_i c_i M[i] = 0}, via the echelon form of [M | I]."""
    t = len(M)
    if t == 0:
        return []
    den = reduce(lcm, (v.denominator for row in M for v in row.values()), 1)
    s = 1 + max((k for row in M for k in row), default=-1)
    aug = []
    for i, row in enumerate(M):
        r = {k: int(v * den) for k, v in row.items()}
        r[s + i] = 1
        aug.append(r)
    piv = _echelon_int(aug)
    return [{k - s: x for k, x in row.items()} for c, row in sorted(piv.items()) if c >= s]


def intersect_with_subspace(L: Lattice, subspace: Sequence[Elem]) -> Lattice:
    """L intersected with the K-span of ``subspace``."""
    H = L.ambient
    K = H.field
    q_ech = SparseEchelon(Fraction(1))
    for w in subspace:
        for j in range(K.degree):
            q_ech.add(_restrict_vec(w.scale(K.zeta(j))))
    # residues of the lattice basis modulo that subspace
    M = [q_ech.reduce(dict(r))[0] for r in L.basis]
    kern = _int_kernel(M)
    gens = []
    for c in kern:
        vec: dict = {}
        for i, ci in c.items():
            for k, x in L.basis[i]:
                nv = vec.get(k, 0) + ci * x
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        gens.append(vec)
    basis = _canonical(gens, L.ring.m)
    return Lattice(H, L.ring, tuple(_unrestrict(H, g) for g in gens), basis)


# ---------------------------------------------------------------------------
# character support


def _dual_characters_as_elements(H: HopfAlgebra) -> list[Elem]:
    """Irreducible characters of H*, viewed as elements of H."""
    if H.group is not None and H.twist is None:
        return [H.basis(g) for g in range(H.dim)]
    if H.dual_group is not None:
        return [H.element({g: c for g, c in enumerate(R.character) if c}) for R in all_irreps(H.dual_group, H.field)]
    if H.dim == 1:
        return [H.one()]
    raise OrderError("irreducible characters of the dual are not available for this algebra")


def _characters_of(H: HopfAlgebra) -> list[dict]:
    """Irreducible characters of H as functionals on its basis."""
    if H.group is not None:
        return [{g: c for g, c in enumerate(R.character) if c} for R in all_irreps(H.group, H.field)]
    if H.dual_group is not None:
        return [{g: H.field.one} for g in range(H.dim)]
    if H.dim == 1:
        return [{0: H.field.one}]
    raise OrderError("irreducible characters are not available for this algebra")


CONTRACTIONS = (
    ("left", (("delta", 0), ("eval", 0, "psi"))),
    ("right", (("delta", 0), ("eval", 1, "psi"))),
    ("outer", (("delta", 0), ("delta", 1), ("eval", 2, "chi"), ("eval", 0, "psi"))),
    ("middle", (("delta", 0), ("delta", 1), ("eval", 1, "psi"), ("mult", 0, 1))),
)


@dataclass
class SupportResult:
    lattice: Lattice
    stabilized: bool
    rounds: int
    history: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"stabilized": self.stabilized, "rounds": self.rounds, "ranks": self.history,
                "lattice": self.lattice.to_json()}


def character_support(H: HopfAlgebra, ring: RingSpec | None = None, depth: int = DEFAULT_DEPTH) -> SupportResult:
    """Saturate the characters of H* under products, antipode and character contractions."""
    ring = ring or RingSpec()
    seeds = _dual_characters_as_elements(H)
    chars = _characters_of(H)
    L = span(H, seeds, ring)
    history = [L.rank]
    for rnd in range(1, depth + 1):
        B = L.basis_elements()
        new = list(B)
        new.extend(x * y for x in B for y in B)
        new.extend(H.S(x) for x in B)
        for x in B:
            for name, recipe in CONTRACTIONS:
                if name == "outer":
                    for psi, chi in itertools.product(chars, repeat=2):
                        new.append(run_recipe(H, x, recipe, {"psi": psi, "chi": chi}))
                else:
                    for psi in chars:
                        new.append(run_recipe(H, x, recipe, {"psi": psi}))
        L2 = span(H, new, ring)
        history.append(L2.rank)
        if L2 == L:
            return SupportResult(L, True, rnd, history)
        L = L2
    return SupportResult(L, False, depth, history)


@dataclass
class SandwichResult:
    lower: SupportResult
    upper: Lattice
    dual_support: SupportResult
    inclusion: bool
    index: int | None

    def to_json(self) -> dict:
        return {
            "lower_rank": self.lower.lattice.rank,
            "upper_rank": self.upper.rank,
            "lower_stabilized": self.lower.stabilized,
            "dual_stabilized": self.dual_support.stabilized,
            "inclusion": self.inclusion,
            "index": self.index,
            "lower": self.lower.lattice.to_json(),
            "upper": self.upper.to_json(),
        }


def order_sandwich(H: HopfAlgebra, ring: RingSpec | None = None, depth: int = DEFAULT_DEPTH) -> SandwichResult:
    """Ch_R(H) <= X <= Ch_R(H*)^dual for every Hopf order X."""
    ring = ring or RingSpec()
    lower = character_support(H, ring, depth)
    Hd = dual_hopf(H)
    dual_sup = character_support(Hd, ring, depth)
    if not (lower.stabilized and dual_sup.stabilized):
        raise OrderError("character support did not stabilize within the depth limit")
    upper = dual_lattice(dual_sup.lattice, dual_hopf(Hd)).transport(H)
    inclusion = lower.lattice <= upper
    if not inclusion:
        raise OrderError("lower bound is not contained in the upper bound")
    index = None
    if lower.lattice.full_rank and upper.full_rank:
        index = lower.lattice.index_in(upper)
    return SandwichResult(lower, upper, dual_sup, inclusion, index)


# ---------------------------------------------------------------------------
# the idempotents t_i in (K N)*


def _semidirect_parts(N: FiniteGroup) -> tuple[int, int, int, int, int]:
    spec = N.spec
    if spec.kind != "semidirect_qp":
        raise OrderError("expected a group Z_q x| Z_p")
    return spec.q, spec.p, spec.r, N.gens[spec.names[0]], N.gens[spec.names[1]]


def _elem_json(x: Elem) -> list:
    if x.rank == 1:
        return [[x.parent.labels[k], x.terms[k].to_json()] for k in sorted(x.terms)]
    return [[[x.parent.labels[i] for i in k], x.terms[k].to_json()] for k in sorted(x.terms)]


def _elem_from_json(H: HopfAlgebra, data: list) -> Elem:
    K = H.field
    if data and isinstance(data[0][0], list):
        return H.tensor_element({tuple(k): parse_coeff(K, c) for k, c in data})
    return H.element({k: parse_coeff(K, c) for k, c in data})


@dataclass
class ClassemiResult:
    dual: HopfAlgebra
    psi: Elem
    phi: Elem
    nu: Elem
    mu: Elem
    regular: Elem
    bezout: tuple[int, int]
    q_theta1: Elem
    phi_hat: Elem
    t: list[Elem]
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _translate(D: HopfAlgebra, f: Elem, g: int) -> Elem:
    """x -> f(g x) as (ev_g (x) id) Delta(f)."""
    return run_recipe(D, f, (("delta", 0), ("eval", 0, "ev")), {"ev": {g: D.field.one}})


def classemi_idempotents(N: FiniteGroup, K: CycField | None = None, D: HopfAlgebra | None = None) -> ClassemiResult:
    """psi, phi, nu, mu, q*theta_1 and t_0..t_{p-1} in (K N)*, each identity checked."""
    q, p, r, s, a = _semidirect_parts(N)
    K = K or field_create(lcm(p, q))
    D = D or dual_hopf(group_algebra(N, K))
    if D.group is not None or D.dual_group is None or D.dual_group.spec != N.spec:
        raise OrderError("D must be the dual of K N")
    one = K.one
    checks: dict[str, bool] = {}
    theta1 = D.basis(N.identity)
    sig = [N.power(s, i) for i in range(p)]
    A = N.subgroup_generated([a])
    # induced character of the trivial representation of <sigma>
    sub = N.subgroup_generated([s])
    R = induce_irrep(N, sub, {h: one for h in sub}, [N.power(a, j) for j in range(q)], K, "ind_triv")
    psi = D.element({g: c for g, c in enumerate(R.character) if c})
    checks["psi_values"] = all(
        psi[g] == (q if g == N.identity else (0 if g in A else 1)) for g in range(N.order))
    # phi(g) = prod_l psi(sigma^l g)
    phi = D.one()
    for l in range(p):
        phi = phi * _translate(D, psi, sig[l])
    exps = N.exponents
    checks["phi_values"] = all(phi[g] == (q if exps[g][1] == 0 else 0) for g in range(N.order))
    # nu = phi_(1)(a) phi_(3)(a^-1) phi_(2)
    env = {"a": {a: one}, "ainv": {N.inverse[a]: one}}
    nu = run_recipe(D, phi, (("delta", 0), ("delta", 1), ("eval", 2, "ainv"), ("eval", 0, "a")), env)
    checks["nu_is_conjugate"] = all(nu[g] == phi[N.prod(a, g, N.inverse[a])] for g in range(N.order))
    mu = phi * nu
    checks["mu_equals_q2_theta1"] = mu == theta1.scale(q * q)
    # regular character from the irreducible ones
    regular = D.zero()
    for Rj in all_irreps(N, K):
        regular = regular + D.element({g: c for g, c in enumerate(Rj.character) if c}).scale(Rj.dim)
    checks["regular_equals_pq_theta1"] = regular == theta1.scale(p * q)
    _, x, y = _xgcd(p * q, q * q)
    q_theta1 = regular.scale(x) + mu.scale(y)
    checks["bezout_q_theta1"] = (x * p * q + y * q * q == q) and q_theta1 == theta1.scale(q)
    phi_hat = psi - q_theta1
    t = []
    for i in range(p):
        ti = D.one()
        for l in range(1, p):
            ti = ti * _translate(D, phi_hat, sig[(l - i) % p])
        t.append(ti)
    checks["t_closed_form"] = all(
        t[i] == D.element({g: one for g in range(N.order) if exps[g][0] == i}) for i in range(p))
    checks["t_orthogonal"] = all(t[i] * t[j] == (t[i] if i == j else D.zero()) for i in range(p) for j in range(p))
    total = D.zero()
    for ti in t:
        total = total + ti
    checks["t_complete"] = total == D.one()
    return ClassemiResult(D, psi, phi, nu, mu, regular, (x, y), q_theta1, phi_hat, t, checks)


# ---------------------------------------------------------------------------
# the obstruction certificate


@dataclass
class CertificateStep:
    step_name: str
    inputs: dict
    claimed_identity: str
    verified: bool
    payload: dict

    def to_json(self) -> dict:
        return {"step_name": self.step_name, "inputs": self.inputs, "claimed_identity": self.claimed_identity,
                "verified": self.verified, "payload": self.payload}


@dataclass
class ObstructionCertificate:
    p: int
    q: int
    r: int
    zeta_exponent: int
    steps: list[CertificateStep]
    final_value: Fraction

    @property
    def verified(self) -> bool:
        return all(s.verified for s in self.steps) and self.final_value == Fraction(1, self.p)

    def step(self, name: str) -> CertificateStep:
        for s in self.steps:
            if s.step_name == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "parameters": {"p": self.p, "q": self.q, "r": self.r, "zeta_exponent": self.zeta_exponent},
            "steps": [s.to_json() for s in self.steps],
            "final_value": format_coeff(self.final_value),
            "verified": self.verified,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, data: dict, reverify: bool = True) -> "ObstructionCertificate":
        par = data["parameters"]
        steps = [CertificateStep(s["step_name"], s["inputs"], s["claimed_identity"], bool(s["verified"]),
                                 s["payload"]) for s in data["steps"]]
        final = Fraction(data["final_value"])
        cert = cls(int(par["p"]), int(par["q"]), int(par["r"]), int(par["zeta_exponent"]), steps, final)
        if reverify:
            verdicts = recheck_certificate(cert)
            for s in cert.steps:
                s.verified = verdicts.get(s.step_name, False)
        return cert

    @classmethod
    def loads(cls, text: str, reverify: bool = True) -> "ObstructionCertificate":
        return cls.from_json(json.loads(text), reverify)


class _Context:
    """Algebras rebuilt from the parameters; shared by construction and re-verification."""

    def __init__(self, p: int, q: int, r: int, e: int):
        if p == q:
            raise OrderError(f"p = q = {p}: p must divide q - 1")
        self.p, self.q, self.r, self.e = p, q, r, e
        self.B = build_bpq(p, q, r, e)
        self.K = self.B.field
        self.G = self.B.group
        G2 = build_group(GroupSpec.semidirect_qp(q, p, r, ("t", "b")))
        self.m2 = G2.order
        self.N = build_group(GroupSpec.semidirect_qp(q, p, r, ("s", "a")))
        self.zeta = root_of_unity(self.K, p, e)
        self.eta = root_of_unity(self.K, q, 1)
        G = self.G
        self.sigma, self.b = G.gen("s"), G.gen("b")
        self.pi = [g // self.m2 for g in range(G.order)]
        self._target = None
        self._dualN = None

    def sb(self, i: int, j: int) -> int:
        G = self.G
        return G.mul(G.power(self.sigma, i), G.power(self.b, j))

    def target(self):
        if self._target is None:
            self._target = quotient_by_group_map(self.B, self.N, self.pi)
        return self._target

    def dual_N(self) -> HopfAlgebra:
        if self._dualN is None:
            self._dualN = dual_hopf(group_algebra(self.N, self.K))
        return self._dualN


def _f_element(ctx: _Context, k: int, l: int) -> Elem:
    p, q = ctx.p, ctx.q
    c = 1 / ctx.K.coerce(p * q)
    return ctx.B.element({ctx.sb(i, j): (ctx.zeta ** (i * k)) * (ctx.eta ** (-l * j)) * c
                          for i in range(p) for j in range(q)})


def _psi_values(ctx: _Context, k: int, l: int) -> dict[int, Cyc]:
    return {ctx.sb(i, j): (ctx.zeta ** (-k * i)) * (ctx.eta ** (l * j)) for i in range(ctx.p) for j in range(ctx.q)}


def _convolve(ctx: _Context, f: dict, g: dict, A_set: set) -> dict | None:
    """(f g)(x) = (f (x) g)(Delta_J x) on the basis sigma^i b^j of A."""
    B = ctx.B
    out = {}
    for x in A_set:
        total = ctx.K.zero
        for (u, v), c in B.comult[x].items():
            if u not in f or v not in g:
                return None
            total = total + c * f[u] * g[v]
        out[x] = total
    return out


def _build_steps(ctx: _Context, claims: dict | None = None) -> tuple[list[CertificateStep], Fraction]:
    """Run (or re-run against recorded payloads) the whole chain.

    With ``claims`` given, every element recorded in a payload is read back
    and the identities are checked on the recorded values.
    """
    p, q, r, e = ctx.p, ctx.q, ctx.r, ctx.e
    K, B, G, N = ctx.K, ctx.B, ctx.G, ctx.N
    steps: list[CertificateStep] = []
    D = ctx.dual_N()

    def recorded(step: str, key: str, alg: HopfAlgebra, fresh: Elem) -> Elem:
        if claims is None:
            return fresh
        return _elem_from_json(alg, claims[step][key])

    def add(name, inputs, claim, ok, payload):
        steps.append(CertificateStep(name, inputs, claim, bool(ok), payload))

    params = {"p": p, "q": q, "r": r, "zeta_exponent": e}

    # 1. the algebra and its twist
    twist_ok = verify_twist(B.twist).passed
    add("twisted_algebra", params, "J is an invertible counital 2-pseudo-cocycle; B = (KG)_J",
        twist_ok, {"dim": B.dim, "field": K.n, "name": B.name})

    # 2-9. idempotents t_i in (K N)*
    cs = classemi_idempotents(N, K, D)
    psi = recorded("induced_character", "psi", D, cs.psi)
    exps = N.exponents
    A_sub = N.subgroup_generated([N.gen("a")])
    ok = all(psi[g] == (q if g == N.identity else (0 if g in A_sub else 1)) for g in range(N.order))
    if claims is not None:
        sub = N.subgroup_generated([N.gen("s")])
        R = induce_irrep(N, sub, {h: K.one for h in sub}, [N.power(N.gen("a"), j) for j in range(q)], K)
        ok = ok and psi == D.element({g: c for g, c in enumerate(R.character) if c})
    add("induced_character", {"group": N.spec.to_json()},
        "psi = character of Ind_<sigma>^N K; psi(1)=q, psi(a^k)=0, psi(sigma^k a^j)=1 (k != 0)",
        ok, {"psi": _elem_json(psi)})

    sig = [N.power(N.gen("s"), i) for i in range(p)]
    phi = recorded("phi", "phi", D, cs.phi)
    prod = D.one()
    for l in range(p):
        prod = prod * _translate(D, psi, sig[l])
    ok = phi == prod and all(phi[g] == (q if exps[g][1] == 0 else 0) for g in range(N.order))
    add("phi", {"from": "induced_character"}, "phi(g) = prod_l psi(sigma^l g); phi(sigma^i a^j) = q delta_{j0}",
        ok, {"phi": _elem_json(phi), "recipe": [["delta", 0], ["eval", 0, "sigma^l"]]})

    a = N.gen("a")
    nu = recorded("nu", "nu", D, cs.nu)
    env = {"a": {a: K.one}, "ainv": {N.inverse[a]: K.one}}
    recipe = (("delta", 0), ("delta", 1), ("eval", 2, "ainv"), ("eval", 0, "a"))
    ok = nu == run_recipe(D, phi, recipe, env) and all(
        nu[g] == phi[N.prod(a, g, N.inverse[a])] for g in range(N.order))
    add("nu", {"from": "phi"}, "nu = phi_(1)(a) phi_(3)(a^-1) phi_(2); nu(g) = phi(a g a^-1)",
        ok, {"nu": _elem_json(nu), "recipe": [list(s) for s in recipe]})

    theta1 = D.basis(N.identity)
    mu = recorded("mu", "mu", D, cs.mu)
    add("mu", {"from": ["phi", "nu"]}, "mu = phi nu = q^2 theta_1",
        mu == phi * nu and mu == theta1.scale(q * q), {"mu": _elem_json(mu)})

    regular = recorded("regular_character", "regular", D, cs.regular)
    reg_oracle = D.zero()
    for Rj in all_irreps(N, K):
        reg_oracle = reg_oracle + D.element({g: c for g, c in enumerate(Rj.character) if c}).scale(Rj.dim)
    add("regular_character", {"group": N.spec.to_json()}, "sum_i n_i chi_i = p q theta_1",
        regular == reg_oracle and regular == theta1.scale(p * q), {"regular": _elem_json(regular)})

    if claims is None:
        x, y = cs.bezout
    else:
        x, y = int(claims["bezout_q_theta1"]["x"]), int(claims["bezout_q_theta1"]["y"])
    qt = regular.scale(x) + mu.scale(y)
    add("bezout_q_theta1", {"from": ["regular_character", "mu"]},
        "x (p q theta_1) + y (q^2 theta_1) = q theta_1 with x p q + y q^2 = q",
        x * p * q + y * q * q == q and qt == theta1.scale(q), {"x": x, "y": y, "q_theta1": _elem_json(qt)})

    phi_hat = recorded("phi_hat", "phi_hat", D, cs.phi_hat)
    add("phi_hat", {"from": ["induced_character", "bezout_q_theta1"]}, "phi_hat = psi - q theta_1",
        phi_hat == psi - qt, {"phi_hat": _elem_json(phi_hat)})

    t = [recorded("idempotents_t", f"t{i}", D, cs.t[i]) for i in range(p)]
    ok = True
    for i in range(p):
        ti = D.one()
        for l in range(1, p):
            ti = ti * _translate(D, phi_hat, sig[(l - i) % p])
        ok = ok and ti == t[i] and t[i] == D.element({g: K.one for g in range(N.order) if exps[g][0] == i})
    ok = ok and all(t[i] * t[j] == (t[i] if i == j else D.zero()) for i in range(p) for j in range(p))
    total = D.zero()
    for ti in t:
        total = total + ti
    ok = ok and total == D.one()
    add("idempotents_t", {"from": "phi_hat"},
        "t_i(g) = prod_{l=1}^{p-1} phi_hat(sigma^{l-i} g) = sum_j theta_{sigma^i a^j}; orthogonal, complete",
        ok, {f"t{i}": _elem_json(t[i]) for i in range(p)})

    # 10. the Hopf subalgebra A = <sigma, b>
    A_basis = subalgebra_closure(B, [B.basis(ctx.sigma), B.basis(ctx.b)])
    A_set = {ctx.sb(i, j) for i in range(p) for j in range(q)}
    ok = len(A_basis) == p * q and is_hopf_subalgebra(B, A_basis)
    ok = ok and all(set(x.terms) <= A_set for x in A_basis)
    add("subalgebra_A", {"generators": ["s", "b"]}, "A = K<sigma, b> has dim p q and is a Hopf subalgebra",
        ok, {"dim": len(A_basis), "support": sorted(G.labels[g] for g in A_set)})

    # 11. idempotents f_kl of A
    f = {(k, l): _f_element(ctx, k, l) for k in range(p) for l in range(q)}
    ok = True
    for (k, l), fk in f.items():
        for (c, d), fc in f.items():
            if fk * fc != (fk if (k, l) == (c, d) else B.zero()):
                ok = False
    tot = B.zero()
    for fk in f.values():
        tot = tot + fk
    ok = ok and tot == B.one()
    add("idempotents_f", {"from": "subalgebra_A"},
        "f_kl = (1/pq) sum zeta^{ik} eta^{-lj} sigma^i b^j: orthogonal, complete", ok, {"count": len(f)})

    # 12. characters psi_kl and their product table under Delta_J
    psis = {(k, l): _psi_values(ctx, k, l) for k in range(p) for l in range(q)}
    ok = all(sum((psis[(k, l)].get(x, K.zero) * c for x, c in f[(u, v)].terms.items()), K.zero)
             == (K.one if (k, l) == (u, v) else K.zero) for (k, l) in psis for (u, v) in f)
    add("characters_psi", {"from": "idempotents_f"},
        "psi_kl(sigma^i b^j) = zeta^{-ki} eta^{lj}; (f_kl, psi_kl) dual bases", ok, {})
    s_inv = pow(r, -1, q)
    ok = True
    witness = None
    for (k, l), (c, d) in itertools.product(psis, repeat=2):
        prodv = _convolve(ctx, psis[(k, l)], psis[(c, d)], A_set)
        want = psis[((k + c) % p, (l * pow(s_inv, c, q) + d) % q)]
        if prodv != want:
            ok, witness = False, [k, l, c, d]
            break
    eps = {x: K.one for x in A_set}

    def power(key, n):
        out = eps
        for _ in range(n):
            out = _convolve(ctx, out, psis[key], A_set)
        return out

    ok = ok and power((1, 0), p) == eps and power((0, 1), q) == eps
    conj = _convolve(ctx, _convolve(ctx, psis[(1, 0)], psis[(0, 1)], A_set), power((1, 0), p - 1), A_set)
    ok = ok and conj == power((0, 1), r)
    add("psi_product_table", {"from": "characters_psi", "s": s_inv},
        "psi_kl psi_cd = psi_{k+c, l s^c + d}; psi_10^p = psi_01^q = 1; psi_10 psi_01 psi_10^-1 = psi_01^r",
        ok, {"s": s_inv, "witness": witness})

    # 13. w_i = sum_j f_ij
    w = []
    ok = True
    for i in range(p):
        wi = B.zero()
        for j in range(q):
            wi = wi + f[(i, j)]
        closed = B.element({G.power(ctx.sigma, u): ctx.zeta ** (i * u) / p for u in range(p)})
        ok = ok and wi == closed and wi * wi == wi
        w.append(wi)
    w0 = recorded("w_elements", "w0", B, w[0])
    ok = ok and w0 == w[0]
    add("w_elements", {"from": ["idempotents_f", "psi_product_table", "idempotents_t"]},
        "w_i = sum_j f_ij = (1/p) sum_u zeta^{iu} sigma^u", ok, {"w0": _elem_json(w0)})

    # 14. projection to K G_1 with trivial pushed twist
    T, images = ctx.target()
    KN = group_algebra(N, K)
    pushed = T.twist
    jbar_trivial = pushed.J == pushed.parent.one(2) and pushed.Jinv == pushed.parent.one(2)
    same = T.comult == KN.comult and T.antipode == KN.antipode
    add("projection_Phi", {"map": "sigma^i tau^j a^k b^l -> sigma^i a^k"},
        "Phi: B -> (K G_1)_Jbar is a Hopf map and Jbar = 1 (x) 1", jbar_trivial and same, {})

    # 15. y = Phi(w_0) and the final pairing
    y = B.linear_map(w0, images, T)
    y_closed = T.element({N.power(N.gen("s"), u): K.one / p for u in range(p)})
    add("y_image", {"from": ["w_elements", "projection_Phi"]}, "y = Phi(w_0) = (1/p) sum_u sigma^u",
        y == y_closed, {"y": _elem_json(y)})
    value = T.pair(t[0], y)
    final = value.to_fraction() if value.is_rational() else None
    add("final_pairing", {"from": ["idempotents_t", "y_image"]}, "t_0(y) = 1/p",
        final == Fraction(1, p), {"value": format_coeff(final) if final is not None else str(value)})

    # 16. non-membership witness: w_0 is not in Z[zeta_n] G
    RG = span(B, [B.basis(g) for g in range(B.dim)], RingSpec(K.n, 1))
    RGp = span(B, [B.basis(g) for g in range(B.dim)], RingSpec(K.n, p))
    out_Z = not RG.member(w0)
    in_Zp = RGp.member(w0)
    add("non_membership_witness", {"ring": str(RingSpec(K.n, 1))},
        "w_0 lies in every Hopf order over R, but w_0 is not in Z[zeta_n]G; it is in Z[zeta_n][1/p]G",
        out_Z and in_Zp, {"member_over_integers": not out_Z, "member_with_p_inverted": in_Zp})
    return steps, (final if final is not None else Fraction(-1))


def obstruction_certificate(p: int, q: int, r: int, zeta_exponent: int = 1) -> ObstructionCertificate:
    """Run the full chain forcing 1/p into any ring over which B_{p,q}(zeta) has a Hopf order."""
    if p == q or not (is_prime(p) and is_prime(q)) or (q - 1) % p:
        raise OrderError(f"parameters (p={p}, q={q}) violate p | q - 1 with p, q prime")
    ctx = _Context(p, q, r, zeta_exponent)
    steps, final = _build_steps(ctx)
    return ObstructionCertificate(p, q, r, zeta_exponent, steps, final)


def recheck_certificate(cert: ObstructionCertificate) -> dict[str, bool]:
    """Re-verify each recorded identity from its payload; returns per-step verdicts."""
    ctx = _Context(cert.p, cert.q, cert.r, cert.zeta_exponent)
    claims = {s.step_name: s.payload for s in cert.steps}
    try:
        steps, final = _build_steps(ctx, claims)
    except (KeyError, ValueError, TypeError) as exc:
        raise OrderError(f"certificate payload is malformed: {exc}") from exc
    out = {s.step_name: s.verified for s in steps}
    out["final_pairing"] = out.get("final_pairing", False) and final == cert.final_value == Fraction(1, cert.p)
    return out


# ---------------------------------------------------------------------------
# weak orders over Z


@dataclass
class WeakOrderResult:
    lattice: Lattice
    closed: bool
    contains_one: bool
    coefficients: dict[tuple, Cyc]
    integral: bool
    symmetric: bool

    @property
    def passed(self) -> bool:
        return self.closed and self.contains_one and self.integral and self.symmetric

    def coefficient_values(self) -> list[Fraction]:
        vals = {c.to_fraction() for c in self.coefficients.values() if c.is_rational()}
        return sorted(vals | {Fraction(0)})

    def to_json(self) -> dict:
        return {
            "rank": self.lattice.rank,
            "closed_under_products": self.closed,
            "contains_one": self.contains_one,
            "coefficients_integral": self.integral,
            "block_transpose_symmetric": self.symmetric,
            "coefficient_values": [format_coeff(v) for v in self.coefficient_values()],
            "passed": self.passed,
        }


def weak_order(W: WedderburnData | SyntheticBlocks, F: FrobeniusData | None = None) -> WeakOrderResult:
    """Y = Z-span of the matrix units, with C expressed in the basis d (x) d."""
    kap: KaplanskyReport = kaplansky_check(W)
    if not kap.verdict:
        raise OrderError(f"block dimensions {kap.dims} do not all divide {kap.dim}: no weak order over Z")
    if isinstance(W, SyntheticBlocks):
        raise OrderError("synthetic block data carries no algebra to build a lattice in")
    if F is None:
        raise OrderError("Frobenius data is required")
    H = W.parent
    units = [W.units[i][k][l] for i in range(W.s) for k in range(W.dims[i]) for l in range(W.dims[i])]
    Y = span(H, units, RingSpec())
    closed = all(Y.member(x * y) for x in units for y in units)
    contains_one = Y.member(H.one())
    coeffs = tensor_coordinates(W, F.C)
    integral = all(c.is_rational() and c.den == 1 for c in coeffs.values())
    symmetric = all(coeffs.get(((j, u, v), (i, k, l))) == c for ((i, k, l), (j, u, v)), c in coeffs.items()
                    if i == j) and all(
        coeffs.get(((i, l, k), (j, v, u))) == c for ((i, k, l), (j, u, v)), c in coeffs.items() if i == j)
    return WeakOrderResult(Y, closed, contains_one, coeffs, integral, symmetric)
