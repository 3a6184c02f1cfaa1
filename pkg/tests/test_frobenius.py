from collections import Counter
from fractions import Fraction

import pytest
import sympy

from hopforders.exactnum import field_create
from hopforders.frobenius import (
    FrobeniusError,
    MinPoly,
    SyntheticBlocks,
    casimir_decomposition,
    central_element_E,
    check_casimir_commutation,
    compute_alternate_integrals,
    compute_integrals,
    integral_report,
    kaplansky_check,
    minpoly,
    wedderburn,
    wedderburn_report,
)
from hopforders.groups import GroupSpec, build_group
from hopforders.hopf import group_algebra


def poly_from_roots(roots):
    t = sympy.Symbol("t")
    expr = sympy.prod([t - r for r in roots])
    return [int(c) for c in sympy.Poly(expr, t).all_coeffs()[::-1]]


def as_ints(mp: MinPoly):
    return [int(c) for c in mp.rational_coeffs()]


def test_group_algebra_integrals(KN, N):
    F = compute_integrals(KN)
    K = KN.field
    assert F.Lambda == KN.element({g: K.one for g in range(N.order)})
    assert F.lam == {N.identity: K.one}
    assert F.C == KN.tensor_element({(g, N.inverse[g]): K.one for g in range(N.order)})
    assert integral_report(F).passed


def test_trivial_algebra_integrals(trivial_algebra):
    H = trivial_algebra
    F = compute_integrals(H)
    assert F.Lambda == H.one() and F.C == H.one(2)
    dec = casimir_decomposition(H, F, wedderburn(H))
    assert dec.betas == [H.field.one]


def test_twisted_integrals(B23, B23_integrals):
    F = B23_integrals
    G = B23.group
    assert F.eps_Lambda == B23.field(36)
    assert F.Lambda == B23.element({g: B23.field.one for g in range(G.order)})
    # C is the Casimir of (g, h) -> lam(gh), which only sees the algebra and lam
    KG = group_algebra(G, B23.field)
    assert F.C.terms == compute_integrals(KG).C.terms
    assert F.lam == compute_integrals(KG).lam
    assert integral_report(F).passed


def test_alternate_integrals(B23):
    F = compute_alternate_integrals(B23)
    assert F.kind == "alternate" and integral_report(F).passed


def test_non_semisimple_refused(sweedler):
    with pytest.raises(FrobeniusError):
        compute_integrals(sweedler)


def test_wedderburn_z2(KZ2):
    W = wedderburn(KZ2)
    half = KZ2.field(Fraction(1, 2))
    s = KZ2.basis(1)
    e_plus = (KZ2.one() + s).scale(half)
    e_minus = (KZ2.one() - s).scale(half)
    assert sorted(W.idempotents, key=lambda e: e.pretty()) == sorted([e_plus, e_minus], key=lambda e: e.pretty())


def test_wedderburn_small_groups(KN):
    W = wedderburn(KN)
    assert sorted(W.dims) == [1, 1, 2]
    rep = wedderburn_report(W)
    assert rep.passed and all(c.mode == "exhaustive" for c in rep.checks)


def test_wedderburn_twisted(B23_wedderburn):
    W = B23_wedderburn
    assert Counter(W.dims) == Counter([1, 1, 1, 1, 2, 2, 2, 2, 4])
    assert W.report.passed
    assert sum(n * n for n in W.dims) == 36


def test_block_matrix_of_units(KN):
    W = wedderburn(KN)
    K = KN.field
    for i, n in enumerate(W.dims):
        for k in range(n):
            for l in range(n):
                M = W.block_matrix(W.units[i][k][l], i)
                assert all(M[u][v] == (K.one if (u, v) == (k, l) else K.zero) for u in range(n) for v in range(n))


def test_casimir_commutation(KN, B23, B23_integrals):
    res = check_casimir_commutation(KN, compute_integrals(KN))
    assert res.holds and res.involutory and res.count == 36
    res = check_casimir_commutation(B23, B23_integrals)
    assert res.holds and res.involutory and res.consistent
    assert all(B23.S(B23.S(B23.basis(i))) == B23.basis(i) for i in range(B23.dim))


def test_decomposition_twisted(B23, B23_integrals, B23_wedderburn):
    dec = casimir_decomposition(B23, B23_integrals, B23_wedderburn)
    assert dec.report.passed
    assert Counter(b.to_fraction() for b in dec.betas) == Counter({36: 4, 18: 4, 9: 1})
    assert dec.betas == dec.expected


def test_decomposition_z2(KZ2):
    F = compute_integrals(KZ2)
    s = KZ2.basis(1)
    assert F.C == KZ2.one(2) + s.tensor(s)
    dec = casimir_decomposition(KZ2, F, wedderburn(KZ2))
    assert [b.to_fraction() for b in dec.betas] == [2, 2]


def test_central_element_E(KN, N, B23, B23_integrals, B23_wedderburn):
    F = compute_integrals(KN)
    W = wedderburn(KN)
    trivial = next(i for i in range(W.s) if W.dims[i] == 1 and W.idempotents[i] * F.Lambda == F.Lambda)
    res = central_element_E(KN, F, W, trivial)
    assert res.E == F.Lambda and res.alpha == KN.field(6)
    W = B23_wedderburn
    for i, n in enumerate(W.dims):
        res = central_element_E(B23, B23_integrals, W, i)
        assert res.central and res.acts_by_alpha and res.alpha_integral
        assert res.alpha == B23.field(36 // n)


def test_minpoly_small_cases(KZ2, KN):
    half = KZ2.field(Fraction(1, 2))
    e = (KZ2.one() + KZ2.basis(1)).scale(half)
    assert as_ints(minpoly(e)) == [0, -1, 1]
    assert as_ints(minpoly(KZ2.basis(1))) == [-1, 0, 1]
    assert str(minpoly(KZ2.basis(1))) == "t^2 - 1"
    W = wedderburn(KN)
    assert minpoly(W.idempotents[0]).degree == 2


def krylov_rank(x, k):
    """Rank of {1, x, ..., x^k} via sympy over Q; x must have rational coordinates."""
    H = x.parent
    powers = [H.one(x.rank)]
    for _ in range(k):
        powers.append(powers[-1] * x)
    cols = sorted({key for p in powers for key in p.terms})
    M = sympy.Matrix([[sympy.Rational(p.terms[c].to_fraction()) if c in p.terms else 0 for c in cols] for p in powers])
    return M.rank()


def test_minpoly_of_twisted_casimir(B23_integrals):
    C = B23_integrals.C
    mp = minpoly(C)
    assert mp.integral
    assert as_ints(mp) == poly_from_roots([0, 36, 18, -18, 9, -9])
    # independent check: 1, C, ..., C^5 independent and C^6 dependent
    assert krylov_rank(C, 5) == 6 and krylov_rank(C, 6) == 6


def test_synthetic_blocks_match_real_algebra(B23_integrals, B23_wedderburn):
    W = B23_wedderburn
    synth = SyntheticBlocks(tuple(W.dims), 36, field_create(1))
    assert as_ints(synth.casimir_minpoly()) == as_ints(minpoly(B23_integrals.C))


def test_synthetic_negative_control():
    synth = SyntheticBlocks((5,), 36, field_create(1))
    mp = synth.casimir_minpoly()
    assert not mp.integral
    assert str(mp) == "t^2 - 1296/25"


def test_kaplansky(B23_wedderburn, KN):
    assert kaplansky_check(B23_wedderburn).verdict
    assert kaplansky_check(wedderburn(KN)).verdict
    assert not kaplansky_check([5], 36).verdict
    with pytest.raises(FrobeniusError):
        kaplansky_check([1, 2])


@pytest.mark.parametrize("spec", [GroupSpec.cyclic(5), GroupSpec.semidirect_qp(7, 3, 2),
                                  GroupSpec.product(GroupSpec.cyclic(2, "x"), GroupSpec.semidirect_qp(5, 2, 4))])
def test_group_algebra_block_constants(spec):
    G = build_group(spec)
    H = group_algebra(G)
    F = compute_integrals(H)
    W = wedderburn(H)
    dec = casimir_decomposition(H, F, W)
    assert dec.report.passed
    assert [b.to_fraction() for b in dec.betas] == [Fraction(G.order, n) for n in W.dims]
    assert kaplansky_check(W).verdict
