"""Drinfel'd twists of group algebras coming from 2-cocycles on abelian subgroups.

The main product is :func:`build_bpq`, the twist of K[(Z_q x Z_q) x| (Z_p x Z_p)]
by J = (1/p) sum_{u,v} zeta^(-uv) t^u (x) s^v.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm

from hopforders.exactnum import Cyc, CycField, field_create, root_of_unity
from hopforders.groups import FiniteGroup, GroupError, GroupSpec, build_group, is_prime, multiplicative_order
from hopforders.hopf import Check, Elem, HopfAlgebra, Report, group_algebra
from hopforders.linalg import solve

__all__ = [
    "CocycleSpec",
    "TwistData",
    "TwistError",
    "idempotents_of_abelian",
    "twist_from_cocycle",
    "verify_twist",
    "apply_twist",
    "bpq_group",
    "bpq_cocycle",
    "bpq_closed_form_J",
    "build_bpq",
]


class TwistError(ValueError):
    pass


@dataclass(frozen=True)
class CocycleSpec:
    """Bicharacter-style 2-cocycle on the dual of a homocyclic abelian subgroup.

    M is generated by ``gens`` (indices in G), all of order ``order``, as an
    internal direct product.  Characters are indexed by exponent tuples alpha
    with psi_alpha(gens[s]) = zeta^alpha[s], where zeta = zeta_order^zeta_exponent.
    ``omega[(alpha, beta)]`` is the exponent of zeta in omega(psi_alpha, psi_beta);
    missing pairs mean exponent 0.
    """

    gens: tuple[int, ...]
    order: int
    omega: dict
    zeta_exponent: int = 1

    def characters(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.order), repeat=len(self.gens)))

    def exponent(self, alpha, beta) -> int:
        return self.omega.get((tuple(alpha), tuple(beta)), 0) % self.order

    def check_cocycle(self) -> tuple[bool, str]:
        o = self.order
        chars = self.characters()
        zero = tuple(0 for _ in self.gens)
        add = lambda x, y: tuple((a + b) % o for a, b in zip(x, y))  # noqa: E731
        for a in chars:
            if self.exponent(zero, a) or self.exponent(a, zero):
                return False, f"not normalized at {a}"
        for a, b, c in itertools.product(chars, repeat=3):
            lhs = self.exponent(a, b) + self.exponent(add(a, b), c)
            rhs = self.exponent(b, c) + self.exponent(a, add(b, c))
            if (lhs - rhs) % o:
                return False, f"cocycle identity fails at {(a, b, c)}"
        return True, ""


@dataclass(frozen=True, eq=False)
class TwistData:
    parent: HopfAlgebra
    J: Elem
    Jinv: Elem
    U: Elem
    Uinv: Elem

    @classmethod
    def from_elements(cls, H: HopfAlgebra, J: Elem, Jinv: Elem) -> "TwistData":
        # U = J^(1) S(J^(2)),  U^-1 = S(Jinv^(1)) Jinv^(2)
        U = H.mult_legs(H.apply_antipode(J, 1), 0, 1)
        Uinv = H.mult_legs(H.apply_antipode(Jinv, 0), 0, 1)
        return cls(H, J, Jinv, U, Uinv)

    def to_json(self) -> dict:
        cj = lambda c: c.to_json()  # noqa: E731
        return {
            "J": [[i, j, cj(c)] for (i, j), c in sorted(self.J.terms.items())],
            "Jinv": [[i, j, cj(c)] for (i, j), c in sorted(self.Jinv.terms.items())],
            "U": [[i, cj(c)] for i, c in sorted(self.U.terms.items())],
            "Uinv": [[i, cj(c)] for i, c in sorted(self.Uinv.terms.items())],
        }


def _character_value(spec: CocycleSpec, K: CycField, alpha, m_exps) -> Cyc:
    e = sum(a * k for a, k in zip(alpha, m_exps)) * spec.zeta_exponent
    return root_of_unity(K, spec.order, e)


def _enumerate_M(G: FiniteGroup, spec: CocycleSpec) -> dict[tuple[int, ...], int]:
    elems = {}
    for exps in itertools.product(range(spec.order), repeat=len(spec.gens)):
        g = G.prod(*(G.power(s, e) for s, e in zip(spec.gens, exps)))
        elems[exps] = g
    if len(set(elems.values())) != len(elems):
        raise TwistError("generators do not form a direct product of cyclic groups of the given order")
    if not G.is_abelian_set(elems.values()):
        raise TwistError("subgroup is not abelian")
    for s in spec.gens:
        if G.element_order(s) != spec.order:
            raise TwistError(f"generator {G.labels[s]} does not have order {spec.order}")
    return elems


def idempotents_of_abelian(H: HopfAlgebra, spec: CocycleSpec) -> dict[tuple[int, ...], Elem]:
    """e_alpha = (1/|M|) sum_m psi_alpha(m)^-1 m, one per character of M."""
    G, K = H.group, H.field
    if G is None:
        raise TwistError("idempotents_of_abelian needs a group algebra")
    if K.n % spec.order:
        raise TwistError(f"Q(zeta_{K.n}) lacks primitive {spec.order}-th roots of unity")
    M = _enumerate_M(G, spec)
    size = len(M)
    out = {}
    for alpha in spec.characters():
        terms = {g: _character_value(spec, K, alpha, exps).inverse() / size for exps, g in M.items()}
        out[alpha] = H.element(terms)
    return out


def twist_from_cocycle(H: HopfAlgebra, spec: CocycleSpec) -> TwistData:
    ok, why = spec.check_cocycle()
    if not ok:
        raise TwistError(why)
    K = H.field
    e = idempotents_of_abelian(H, spec)
    zeta = root_of_unity(K, spec.order, spec.zeta_exponent)
    J = H.zero(2)
    Jinv = H.zero(2)
    for a, b in itertools.product(spec.characters(), repeat=2):
        ee = e[a].tensor(e[b])
        k = spec.exponent(a, b)
        J = J + ee.scale(zeta ** k)
        Jinv = Jinv + ee.scale(zeta ** (-k))
    return TwistData.from_elements(H, J, Jinv)


def _solve_inverse(H: HopfAlgebra, x: Elem) -> Elem | None:
    """Right inverse of x by solving x * y = 1 as a linear system."""
    d = H.dim
    eqs: list[dict] = [dict() for _ in range(d)]
    for j in range(d):
        col = x * H.basis(j)
        for k, c in col.terms.items():
            eqs[k][j] = c
    rhs = [H.unit.get(k, H.field.zero) for k in range(d)]
    sol = solve(eqs, rhs, list(range(d)), H.field.one)
    return None if sol is None else H.element(sol)


def verify_twist(T: TwistData) -> Report:
    H = T.parent
    J, Jinv = T.J, T.Jinv
    one2 = H.one(2)
    one = H.one()
    rep = Report()

    def check(name: str, lhs, rhs) -> None:
        if lhs == rhs:
            rep.add(Check(name, True, count=1))
        else:
            diff = lhs - rhs if isinstance(lhs, Elem) else None
            w = {"lhs": str(lhs.pretty() if isinstance(lhs, Elem) else lhs),
                 "rhs": str(rhs.pretty() if isinstance(rhs, Elem) else rhs)}
            if diff is not None:
                w["difference"] = diff.pretty()
            rep.add(Check(name, False, count=1, witness=w))

    check("J_times_Jinv", J * Jinv, one2)
    check("Jinv_times_J", Jinv * J, one2)
    lhs = one.tensor(J) * H.delta(J, 1)
    rhs = J.tensor(one) * H.delta(J, 0)
    check("pseudo_cocycle", lhs, rhs)
    check("counital_left", H.apply_counit(J, 0), one)
    check("counital_right", H.apply_counit(J, 1), one)
    check("U_times_Uinv", T.U * T.Uinv, one)
    solved = _solve_inverse(H, T.U)
    check("Uinv_matches_linear_solve", solved if solved is not None else H.zero(), T.Uinv)
    return rep


def apply_twist(H: HopfAlgebra, T: TwistData, check: bool = True) -> HopfAlgebra:
    """H_J: same algebra and counit, Delta_J = J Delta(-) J^-1, S_J = U S(-) U^-1."""
    if T.parent is not H:
        raise TwistError("twist belongs to a different Hopf algebra")
    if check:
        rep = verify_twist(T)
        if not rep.passed:
            bad = [c.name for c in rep.checks if not c.passed]
            raise TwistError(f"twist verification failed: {bad}")
    comult = []
    antipode = []
    for i in range(H.dim):
        x = H.basis(i)
        comult.append(dict((T.J * H.delta(x) * T.Jinv).terms))
        antipode.append(dict((T.U * H.S(x) * T.Uinv).terms))
    return HopfAlgebra(
        field=H.field,
        labels=H.labels,
        mult=H.mult,
        unit=H.unit,
        comult=comult,
        counit=H.counit,
        antipode=antipode,
        name=f"({H.name})_J",
        group=H.group,
        twist=T,
    )


# ---------------------------------------------------------------------------
# the B_{p,q}(zeta) family


def bpq_group(p: int, q: int, r: int) -> FiniteGroup:
    """G = G1 x G2 with G1 = <s, a>, G2 = <t, b>, each Z_q x| Z_p."""
    if not (is_prime(p) and is_prime(q)):
        raise GroupError(f"p={p} and q={q} must both be prime")
    if (q - 1) % p:
        raise GroupError(f"p={p} does not divide q-1={q - 1}")
    if multiplicative_order(r, q) != p:
        raise GroupError(f"r={r} does not have order {p} mod {q}")
    return build_group(GroupSpec.product(GroupSpec.semidirect_qp(q, p, r, ("s", "a")),
                                         GroupSpec.semidirect_qp(q, p, r, ("t", "b"))))


def bpq_cocycle(G: FiniteGroup, p: int, zeta_exponent: int = 1) -> CocycleSpec:
    """omega(psi_ij, psi_kl) = zeta^(jk) on the characters of M = <s, t>."""
    chars = list(itertools.product(range(p), repeat=2))
    omega = {(a, b): (a[1] * b[0]) % p for a in chars for b in chars}
    return CocycleSpec((G.gen("s"), G.gen("t")), p, omega, zeta_exponent)


def bpq_closed_form_J(H: HopfAlgebra, p: int, zeta_exponent: int = 1, inverse: bool = False) -> Elem:
    """(1/p) sum_{u,v} zeta^(-+uv) t^u (x) s^v."""
    G, K = H.group, H.field
    s, t = G.gen("s"), G.gen("t")
    sign = 1 if inverse else -1
    terms = {}
    for u in range(p):
        for v in range(p):
            c = root_of_unity(K, p, sign * u * v * zeta_exponent) / p
            terms[(G.power(t, u), G.power(s, v))] = c
    return Elem(H, terms, 2)


def build_bpq(p: int, q: int, r: int, zeta_exponent: int = 1, conductor: int | None = None,
              trivial: bool = False) -> HopfAlgebra:
    """B_{p,q}(zeta) over Q(zeta_n), n = lcm(p, q) unless ``conductor`` is given.

    ``trivial=True`` uses omega = 1, which must reproduce KG.
    """
    if zeta_exponent % p == 0:
        raise TwistError(f"zeta exponent {zeta_exponent} does not give a primitive {p}-th root")
    G = bpq_group(p, q, r)
    n = conductor or lcm(p, q)
    if n % p:
        raise TwistError(f"conductor {n} lacks primitive {p}-th roots of unity")
    KG = group_algebra(G, field_create(n))
    spec = bpq_cocycle(G, p, zeta_exponent)
    if trivial:
        spec = CocycleSpec(spec.gens, p, {}, zeta_exponent)
    T = twist_from_cocycle(KG, spec)
    if not trivial:
        closed = bpq_closed_form_J(KG, p, zeta_exponent)
        if closed != T.J:
            raise TwistError("cocycle-sum J disagrees with the closed form")
    B = apply_twist(KG, T)
    B.name = f"B_{{{p},{q}}}(zeta_{p}^{zeta_exponent})" if not trivial else f"K[G_{p},{q}]_trivial"
    return B
