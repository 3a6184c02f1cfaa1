"""Integrals, the Casimir element, Wedderburn data and Kaplansky-type checks.

Everything here assumes a semisimple Hopf algebra over a cyclotomic field
of characteristic zero, so left and right integrals coincide.  Wedderburn
data is available whenever the algebra structure is that of a group algebra
KG (which includes every twist of KG).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from hopforders.exactnum import Cyc, CycField, is_algebraic_integer
from hopforders.groups import Irrep, all_irreps
from hopforders.hopf import (
    EXHAUSTIVE_DIM,
    SAMPLE_SEED,
    Check,
    Elem,
    HopfAlgebra,
    Report,
    run_recipe,
)
from hopforders.linalg import SparseEchelon, nullspace

__all__ = [
    "FrobeniusError",
    "FrobeniusData",
    "WedderburnData",
    "MinPoly",
    "KaplanskyReport",
    "DecompositionResult",
    "CommutationResult",
    "EResult",
    "SyntheticBlocks",
    "compute_integrals",
    "compute_alternate_integrals",
    "integral_report",
    "wedderburn",
    "wedderburn_report",
    "check_casimir_commutation",
    "casimir_decomposition",
    "central_element_E",
    "minpoly",
    "minpoly_generic",
    "kaplansky_check",
    "tensor_coordinates",
    "E_RECIPE",
]


class FrobeniusError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integrals


@dataclass(eq=False)
class FrobeniusData:
    """Integral pair (Lambda, lambda) and the Casimir element C.

    ``lam`` is a functional on H given by its values on the basis.  For the
    standard pair, C = Lambda_(1) (x) S(Lambda_(2)); for the alternate pair
    built by :func:`compute_alternate_integrals`, C = S(Gamma_(1)) (x) Gamma_(2).
    """

    parent: HopfAlgebra
    Lambda: Elem
    lam: dict[int, Cyc]
    C: Elem
    kind: str = "standard"

    @property
    def eps_Lambda(self) -> Cyc:
        return self.parent.eps(self.Lambda)


def _algebra_generators(H: HopfAlgebra) -> list[int]:
    # for group-backed algebras, the group generators generate the algebra
    if H.group is not None:
        return sorted(set(H.group.gens.values()))
    return list(range(H.dim))


def _integral_in_H(H: HopfAlgebra, side: str) -> Elem:
    """Solve x_i L = eps(x_i) L (side 'left') or L x_i = eps(x_i) L (side 'right')."""
    d, K = H.dim, H.field
    eqs = []
    for i in _algebra_generators(H):
        rows: list[dict] = [dict() for _ in range(d)]
        for j in range(d):
            prods = H.mul_basis(i, j) if side == "left" else H.mul_basis(j, i)
            for k, c in prods:
                rows[k][j] = rows[k].get(j, K.zero) + c
        eps = H.counit[i]
        if eps:
            for k in range(d):
                rows[k][k] = rows[k].get(k, K.zero) - eps
        eqs.extend(r for r in rows if any(r.values()))
    sols = nullspace(eqs, list(range(d)), K.one)
    if len(sols) != 1:
        raise FrobeniusError(f"space of {side} integrals has dimension {len(sols)}, expected 1")
    L = H.element(sols[0])
    e = H.eps(L)
    if not e:
        raise FrobeniusError("eps(Lambda) = 0: the algebra is not semisimple")
    return L.scale(K.coerce(d) / e)


def _integral_in_dual(H: HopfAlgebra, side: str) -> dict[int, Cyc]:
    """Functional f with f(h_(1)) h_(2) = f(h) 1 ('right') or h_(1) f(h_(2)) = f(h) 1 ('left')."""
    d, K = H.dim, H.field
    eqs = []
    for i in range(d):
        rows: list[dict] = [dict() for _ in range(d)]
        for (j, k), c in H.comult[i].items():
            a, b = (j, k) if side == "right" else (k, j)
            rows[b][a] = rows[b].get(a, K.zero) + c
        for k, u in H.unit.items():
            rows[k][i] = rows[k].get(i, K.zero) - u
        eqs.extend({j: c for j, c in r.items() if c} for r in rows if any(r.values()))
    sols = nullspace(eqs, list(range(d)), K.one)
    if len(sols) != 1:
        raise FrobeniusError(f"space of {side} integrals in the dual has dimension {len(sols)}, expected 1")
    return {k: v for k, v in sols[0].items() if v}


def _normalize_pair(H: HopfAlgebra, L: Elem, f: dict[int, Cyc]) -> dict[int, Cyc]:
    v = H.pair(f, L)
    if not v:
        raise FrobeniusError("integral pairing vanishes")
    inv = v.inverse()
    return {k: c * inv for k, c in f.items()}


def compute_integrals(H: HopfAlgebra) -> FrobeniusData:
    """Lambda with eps(Lambda) = dim H, right integral lambda with lambda(Lambda) = 1, C."""
    L = _integral_in_H(H, "left")
    lam = _normalize_pair(H, L, _integral_in_dual(H, "right"))
    C = H.apply_antipode(H.delta(L), 1)
    return FrobeniusData(H, L, lam, C, "standard")


def compute_alternate_integrals(H: HopfAlgebra) -> FrobeniusData:
    """Right integral Gamma in H, left integral gamma in H*, C = S(Gamma_(1)) (x) Gamma_(2)."""
    G = _integral_in_H(H, "right")
    gam = _normalize_pair(H, G, _integral_in_dual(H, "left"))
    C = H.apply_antipode(H.delta(G), 0)
    return FrobeniusData(H, G, gam, C, "alternate")


def _lam_of_product(H: HopfAlgebra, lam: dict, i: int, j: int) -> Cyc:
    total = H.field.zero
    for k, c in H.mul_basis(i, j):
        w = lam.get(k)
        if w:
            total = total + w * c
    return total


def integral_report(F: FrobeniusData) -> Report:
    """Integral identities, normalizations and the Casimir defining property."""
    H = F.parent
    d, K = H.dim, H.field
    L = F.Lambda
    rep = Report()
    one = H.one()
    standard = F.kind == "standard"

    def run(name, cases, fn):
        n = 0
        for idx in cases:
            n += 1
            lhs, rhs = fn(idx)
            if lhs != rhs:
                rep.add(Check(name, False, witness={"index": idx, "lhs": str(lhs), "rhs": str(rhs)}, count=n))
                return
        rep.add(Check(name, True, count=n))

    run("left_integral", range(d), lambda i: (H.basis(i) * L, L.scale(H.counit[i])))
    run("right_integral", range(d), lambda i: (L * H.basis(i), L.scale(H.counit[i])))
    run("eps_normalization", [0], lambda _: (H.eps(L), K.coerce(d)))
    run("pairing_normalization", [0], lambda _: (H.pair(F.lam, L), K.one))

    # dual-side integral identity
    def dual_identity(i):
        D = H.delta(H.basis(i))
        leg = 0 if standard else 1
        return H.evaluate(D, leg, F.lam), one.scale(F.lam.get(i, K.zero))

    run("dual_integral", range(d), dual_identity)

    # sum <b, x> a = x with <g, h> = lam(g h), C = sum a (x) b
    # (alternate pair: the form is (g, h) -> gam(h g))
    def casimir_property(i):
        out: dict = {}
        for (a, b), c in F.C.terms.items():
            w = _lam_of_product(H, F.lam, b, i) if standard else _lam_of_product(H, F.lam, i, b)
            if w:
                out[a] = out.get(a, K.zero) + c * w
        return H.element(out), H.basis(i)

    run("casimir_defining_property", range(d), casimir_property)

    def sliding(i):
        x = H.basis(i)
        return H.mul_leg(F.C, 0, x, "left"), H.mul_leg(F.C, 1, x, "right")

    run("casimir_sliding", range(d), sliding)
    if standard:
        run("casimir_trace", [0], lambda _: (H.mult_legs(F.C, 0, 1), one.scale(H.eps(L))))
    return rep


# ---------------------------------------------------------------------------
# Wedderburn data


@dataclass(eq=False)
class WedderburnData:
    parent: HopfAlgebra
    irreps: list[Irrep]
    dims: list[int]
    idempotents: list[Elem]
    units: list[list[list[Elem]]]  # units[i][k][l] = d^i_{kl}
    characters: list[dict[int, Cyc]]
    report: Report | None = None
    _rho: list | None = field(default=None, repr=False)

    @property
    def s(self) -> int:
        return len(self.dims)

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.irreps]

    def rho_sparse(self) -> list[list[list[tuple[int, int, int, Cyc]]]]:
        """rho[g][i] = nonzero entries (k, l, value) of the block-i matrix of basis element g."""
        if self._rho is None:
            out = []
            for g in range(self.parent.dim):
                per = []
                for i, R in enumerate(self.irreps):
                    m = R.matrices[g]
                    per.append([(k, l, m[k][l]) for k in range(R.dim) for l in range(R.dim) if m[k][l]])
                out.append(per)
            self._rho = out
        return self._rho

    def block_matrix(self, x: Elem, i: int) -> list[list[Cyc]]:
        """rho_i(x); x = sum_{i,k,l} rho_i(x)_{kl} d^i_{kl}."""
        K = self.parent.field
        n = self.dims[i]
        M = [[K.zero] * n for _ in range(n)]
        rho = self.rho_sparse()
        for g, c in x.terms.items():
            for k, l, v in rho[g][i]:
                M[k][l] = M[k][l] + c * v
        return M


def wedderburn(H: HopfAlgebra, verify: bool = True, seed: int = SAMPLE_SEED) -> WedderburnData:
    G = H.group
    if G is None:
        raise FrobeniusError("Wedderburn data needs an algebra structure equal to a group algebra")
    K = H.field
    irreps = all_irreps(G, K)
    order = G.order
    inv = G.inverse
    dims, idem, units, chars = [], [], [], []
    for R in irreps:
        n = R.dim
        chi = R.character
        scale = K.coerce(Fraction(n, order))
        idem.append(H.element({g: chi[inv[g]] * scale for g in range(order) if chi[inv[g]]}))
        block = []
        for k in range(n):
            row = []
            for l in range(n):
                row.append(H.element({g: R.matrices[inv[g]][l][k] * scale
                                      for g in range(order) if R.matrices[inv[g]][l][k]}))
            block.append(row)
        units.append(block)
        dims.append(n)
        chars.append({g: c for g, c in enumerate(chi) if c})
    W = WedderburnData(H, irreps, dims, idem, units, chars)
    if verify:
        W.report = wedderburn_report(W, seed=seed)
        if not W.report.passed:
            bad = [c.name for c in W.report.checks if not c.passed]
            raise FrobeniusError(f"Wedderburn invariants fail: {bad}")
    return W


def wedderburn_report(W: WedderburnData, seed: int = SAMPLE_SEED, sample_size: int = 400) -> Report:
    H = W.parent
    d = H.dim
    one, zero = H.one(), H.zero()
    rep = Report()
    rep.add(Check("dimension_count", sum(n * n for n in W.dims) == d, count=1))
    rep.add(Check("homomorphisms", all(R.check_homomorphism() for R in W.irreps), count=W.s))
    total = zero
    for e in W.idempotents:
        total = total + e
    rep.add(Check("idempotents_sum_to_one", total == one, count=1))
    ok = True
    n = 0
    for i, ei in enumerate(W.idempotents):
        for j, ej in enumerate(W.idempotents):
            n += 1
            if ei * ej != (ei if i == j else zero):
                ok = False
                break
    rep.add(Check("idempotents_orthogonal", ok, count=n))
    gens = sorted(set(H.group.gens.values()))
    ok = all(e * H.basis(g) == H.basis(g) * e for e in W.idempotents for g in gens)
    rep.add(Check("idempotents_central", ok, count=len(gens) * W.s))
    ok = True
    for i, blk in enumerate(W.units):
        acc = zero
        for k in range(W.dims[i]):
            acc = acc + blk[k][k]
        ok = ok and acc == W.idempotents[i]
    rep.add(Check("units_trace_to_idempotent", ok, count=W.s))
    flat = [(i, k, l) for i in range(W.s) for k in range(W.dims[i]) for l in range(W.dims[i])]
    full = d <= EXHAUSTIVE_DIM
    if full:
        pairs = list(itertools.product(flat, repeat=2))
    else:
        rng = random.Random(seed)
        pairs = [(rng.choice(flat), rng.choice(flat)) for _ in range(sample_size)]
    n, ok, wit = 0, True, None
    for (i, k, l), (j, u, v) in pairs:
        n += 1
        prod = W.units[i][k][l] * W.units[j][u][v]
        want = W.units[i][k][v] if (i == j and l == u) else zero
        if prod != want:
            ok, wit = False, {"left": [i, k, l], "right": [j, u, v]}
            break
    rep.add(Check("matrix_unit_relations", ok, "exhaustive" if full else "sampled", wit, n))
    if not full:
        rep.seed = seed
    return rep


# ---------------------------------------------------------------------------
# Casimir commutation and block decomposition


@dataclass
class CommutationResult:
    holds: bool
    involutory: bool
    witness: dict | None = None
    count: int = 0

    @property
    def consistent(self) -> bool:
        return self.holds == self.involutory

    def to_json(self) -> dict:
        out = {"holds": self.holds, "involutory": self.involutory, "count": self.count}
        if self.witness:
            out["witness"] = self.witness
        return out


def _left_mul_basis2(H: HopfAlgebra, i: int, j: int, X: Elem) -> Elem:
    return H.mul_leg(H.mul_leg(X, 0, H.basis(i), "left"), 1, H.basis(j), "left")


def _right_mul_basis2(H: HopfAlgebra, X: Elem, i: int, j: int) -> Elem:
    return H.mul_leg(H.mul_leg(X, 0, H.basis(i), "right"), 1, H.basis(j), "right")


def check_casimir_commutation(H: HopfAlgebra, F: FrobeniusData) -> CommutationResult:
    """(x_i (x) x_j) C == C (x_j (x) x_i) for all basis pairs, and S^2 == id."""
    if F.parent is not H:
        raise FrobeniusError("Frobenius data belongs to a different algebra")
    d = H.dim
    involutory = all(H.S(H.S(H.basis(i))) == H.basis(i) for i in range(d))
    n = 0
    for i in range(d):
        for j in range(d):
            n += 1
            lhs = _left_mul_basis2(H, i, j, F.C)
            rhs = _right_mul_basis2(H, F.C, j, i)
            if lhs != rhs:
                return CommutationResult(False, involutory, {"pair": [H.labels[i], H.labels[j]]}, n)
    return CommutationResult(True, involutory, None, n)


def tensor_coordinates(W: WedderburnData, X: Elem) -> dict[tuple, Cyc]:
    """Coefficients of X in the basis d^i_{kl} (x) d^j_{uv}, keyed ((i,k,l), (j,u,v))."""
    rho = W.rho_sparse()
    out: dict = {}
    for (a, b), c in X.terms.items():
        ra = [(i, k, l, v) for i, ents in enumerate(rho[a]) for k, l, v in ents]
        rb = [(j, u, w, v) for j, ents in enumerate(rho[b]) for u, w, v in ents]
        for i, k, l, v1 in ra:
            cv = c * v1
            for j, u, w, v2 in rb:
                key = ((i, k, l), (j, u, w))
                old = out.get(key)
                val = cv * v2
                out[key] = val if old is None else old + val
    return {k: v for k, v in out.items() if v}


def _block_casimir(W: WedderburnData, i: int) -> Elem:
    H = W.parent
    n = W.dims[i]
    out = H.zero(2)
    for k in range(n):
        for l in range(n):
            out = out + W.units[i][k][l].tensor(W.units[i][l][k])
    return out


def _matmul(A, B, zero):
    n = len(A)
    return [[sum((A[r][t] * B[t][c] for t in range(n) if A[r][t] and B[t][c]), zero) for c in range(n)]
            for r in range(n)]


@dataclass
class DecompositionResult:
    betas: list[Cyc]
    expected: list[Cyc]
    report: Report

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_json(self) -> dict:
        from hopforders.exactnum import format_coeff

        def s(c: Cyc) -> str:
            return format_coeff(c.to_fraction()) if c.is_rational() else str(c)

        return {"betas": [s(b) for b in self.betas], "expected": [s(b) for b in self.expected],
                "report": self.report.to_json()}


def casimir_decomposition(H: HopfAlgebra, F: FrobeniusData, W: WedderburnData) -> DecompositionResult:
    """Block scalars beta_i with f_ii C = beta_i sum_{kl} d^i_{kl} (x) d^i_{lk}."""
    if F.parent is not H or W.parent is not H:
        raise FrobeniusError("Frobenius and Wedderburn data must belong to H")
    K = H.field
    epsL = F.eps_Lambda
    rep = Report()
    coords = tensor_coordinates(W, F.C)
    betas, expected = [], []
    recon = H.zero(2)
    for i, n in enumerate(W.dims):
        ei = W.idempotents[i]
        f_ii = ei.tensor(ei)
        fC = f_ii * F.C
        # read beta off the coordinate of d^i_00 (x) d^i_00, which has coefficient 1 in C_i
        beta = coords.get(((i, 0, 0), (i, 0, 0)), K.zero)
        Ci = _block_casimir(W, i)
        betas.append(beta)
        expected.append(epsL / n)
        rep.add(Check(f"block_{i}_identity", fC == Ci.scale(beta), count=1,
                      witness=None if fC == Ci.scale(beta) else {"block": W.names[i]}))
        rep.add(Check(f"block_{i}_beta", beta == epsL / n, count=1,
                      witness=None if beta == epsL / n else {"beta": str(beta), "expected": str(epsL / n)}))
        # (f_ii C)^2 = beta^2 (e_i (x) e_i), computed in M_n (x) M_n = M_{n^2}
        m = n * n
        M = [[K.zero] * m for _ in range(m)]
        for ((a, k, l), (b, u, v)), c in coords.items():
            if a == i and b == i:
                M[k * n + u][l * n + v] = c
        sq = _matmul(M, M, K.zero)
        target = beta * beta
        ok = all(sq[r][c] == (target if r == c else K.zero) for r in range(m) for c in range(m))
        rep.add(Check(f"block_{i}_square", ok, count=1))
        recon = recon + Ci.scale(beta)
    rep.add(Check("reconstruction", recon == F.C, count=1))
    return DecompositionResult(betas, expected, rep)


# ---------------------------------------------------------------------------
# the central element E attached to a character

E_RECIPE = (("delta", 0), ("antipode", 1), ("eval", 1, "psi"))


@dataclass
class EResult:
    E: Elem
    block: int
    central: bool
    alpha: Cyc
    block_scalars: list[Cyc]
    acts_by_alpha: bool

    @property
    def alpha_integral(self) -> bool:
        return is_algebraic_integer(self.alpha)


def central_element_E(H: HopfAlgebra, F: FrobeniusData, W: WedderburnData, block: int) -> EResult:
    """E = Lambda_(1) psi(S(Lambda_(2))) for the irreducible character of block ``block``."""
    psi = W.characters[block]
    E = run_recipe(H, F.Lambda, E_RECIPE, {"psi": psi})
    central = all(H.basis(i) * E == E * H.basis(i) for i in range(H.dim))
    if not central:
        raise FrobeniusError(f"E for character {W.names[block]} is not central")
    K = H.field
    scalars = []
    for j in range(W.s):
        # E central, so on block j it is a scalar; read it off rho_j(E)
        scalars.append(W.block_matrix(E, j)[0][0])
    n = W.dims[block]
    alpha = K.coerce(Fraction(H.dim, n))
    acts = all(E * W.units[block][k][l] == W.units[block][k][l].scale(alpha)
               for k in range(n) for l in range(n))
    acts = acts and scalars[block] == alpha
    return EResult(E, block, central, alpha, scalars, acts)


# ---------------------------------------------------------------------------
# minimal polynomials


@dataclass
class MinPoly:
    """Monic polynomial, coefficients listed from the constant term up."""

    coeffs: list[Cyc]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def integral(self) -> bool:
        return all(c.is_rational() and c.den == 1 for c in self.coeffs)

    def rational_coeffs(self) -> list[Fraction] | None:
        if not all(c.is_rational() for c in self.coeffs):
            return None
        return [c.to_fraction() for c in self.coeffs]

    def coeff_strings(self) -> list[str]:
        return [str(c.to_fraction()) if c.is_rational() else str(c) for c in self.coeffs]

    def __str__(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if c.is_rational():
                f = c.to_fraction()
                sign = "-" if f < 0 else "+"
                mag = abs(f)
                body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else f"{mag}")
            else:
                sign, body = "+", f"({c})*{mono}" if mono else f"({c})"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {"coefficients": self.coeff_strings(), "degree": self.degree,
                "integral": self.integral, "text": str(self)}


def minpoly_generic(x: Any, one: Any, mul: Callable[[Any, Any], Any], vec: Callable[[Any], dict],
                    field_one: Cyc, max_degree: int | None = None) -> MinPoly:
    """Minimal polynomial by stacking 1, x, x^2, ... until the first linear dependency."""
    ech = SparseEchelon(field_one, track=True)
    cur = one
    k = 0
    while True:
        dep = ech.add(vec(cur))
        if dep is not None:
            zero = field_one - field_one
            return MinPoly([dep.get(i, zero) for i in range(k + 1)])
        k += 1
        if max_degree is not None and k > max_degree:
            raise FrobeniusError(f"no polynomial relation of degree <= {max_degree}")
        cur = mul(cur, x)


def minpoly(x: Elem) -> MinPoly:
    H = x.parent
    return minpoly_generic(x, H.one(x.rank), lambda a, b: a * b, lambda e: dict(e.terms), H.field.one)


# ---------------------------------------------------------------------------
# Kaplansky divisibility and synthetic block structures


@dataclass(frozen=True)
class SyntheticBlocks:
    """A block list (n_1, ..., n_s) with a claimed Hopf dimension, for negative controls.

    ``casimir_minpoly`` computes the minimal polynomial of sum_i (dim/n_i) C_i
    inside (prod M_{n_i}) (x) (prod M_{n_j}), blockwise as matrices.
    """

    dims: tuple[int, ...]
    dim: int
    field: CycField

    def casimir_minpoly(self) -> MinPoly:
        K = self.field
        blocks = [(i, j) for i in range(len(self.dims)) for j in range(len(self.dims))]

        def size(b):
            return self.dims[b[0]] * self.dims[b[1]]

        one = {b: [[K.one if r == c else K.zero for c in range(size(b))] for r in range(size(b))] for b in blocks}
        D = {}
        for b in blocks:
            m = size(b)
            M = [[K.zero] * m for _ in range(m)]
            if b[0] == b[1]:
                n = self.dims[b[0]]
                beta = K.coerce(Fraction(self.dim, n))
                for k in range(n):
                    for l in range(n):
                        # d_kl (x) d_lk sends e_l (x) e_k to e_k (x) e_l
                        M[k * n + l][l * n + k] = beta
            D[b] = M

        def mul(a, c):
            return {b: _matmul(a[b], c[b], K.zero) for b in blocks}

        def vec(a):
            return {(bi, r, c): v for bi, b in enumerate(blocks) for r, row in enumerate(a[b])
                    for c, v in enumerate(row) if v}

        return minpoly_generic(D, one, mul, vec, K.one)


@dataclass
class KaplanskyReport:
    dims: list[int]
    dim: int
    residues: list[int]

    @property
    def verdict(self) -> bool:
        return all(r == 0 for r in self.residues)

    def to_json(self) -> dict:
        return {"dims": self.dims, "dim": self.dim, "residues": self.residues, "verdict": self.verdict}


def kaplansky_check(blocks: WedderburnData | SyntheticBlocks | Sequence[int], dim: int | None = None) -> KaplanskyReport:
    if isinstance(blocks, WedderburnData):
        dims, dim = list(blocks.dims), blocks.parent.dim
    elif isinstance(blocks, SyntheticBlocks):
        dims, dim = list(blocks.dims), blocks.dim
    else:
        if dim is None:
            raise FrobeniusError("dim is required for a bare block list")
        dims = list(blocks)
    return KaplanskyReport(dims, dim, [dim % n for n in dims])
