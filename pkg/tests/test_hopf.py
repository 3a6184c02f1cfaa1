import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopforders.exactnum import field_create
from hopforders.groups import GroupSpec, build_group
from hopforders.hopf import (
    AXIOM_NAMES,
    HopfAlgebra,
    RecipeError,
    dual_hopf,
    group_algebra,
    is_hopf_subalgebra,
    quotient_by_group_map,
    run_recipe,
    subalgebra_closure,
    verify_axioms,
)


STRUCTURE = ("field", "dim", "mult", "comult", "counit", "antipode", "unit")


def same_structure(A: HopfAlgebra, B: HopfAlgebra) -> bool:
    a, b = A.to_json(), B.to_json()
    return all(a[k] == b[k] for k in STRUCTURE)


def test_trivial_hopf_algebra(trivial_algebra):
    H = trivial_algebra
    assert H.dim == 1
    assert H.S(H.one()) == H.one()
    assert H.Delta(H.one()) == H.one(2)
    assert verify_axioms(H).passed


def test_z2(KZ2):
    H = KZ2
    s = H.basis(1)
    assert H.Delta(s) == s.tensor(s)
    assert s * s == H.one()


def test_group_algebra_axioms(KN):
    rep = verify_axioms(KN)
    assert rep.passed
    assert [c.name for c in rep.checks] == list(AXIOM_NAMES)
    assert all(c.mode == "exhaustive" for c in rep.checks)


def test_dual_group_algebra(KN, KN_dual):
    D = KN_dual
    assert verify_axioms(D).passed
    x, y = D.basis(1) + D.basis(3), D.basis(3) + D.basis(4)
    assert x * y == y * x
    flip = D.permute_legs(D.Delta(D.basis(1)), (1, 0))
    assert flip != D.Delta(D.basis(1))


def test_dual_of_z2_is_pointwise(KZ2):
    D = dual_hopf(KZ2)
    t1, ts = D.basis(0), D.basis(1)
    assert t1 * t1 == t1 and ts * ts == ts and t1 * ts == D.zero()
    assert t1 + ts == D.one()


def test_double_dual(KN):
    assert same_structure(dual_hopf(dual_hopf(KN)), KN)


def test_serialization_round_trip(B23):
    again = HopfAlgebra.loads(B23.dumps())
    assert again.dumps() == B23.dumps()
    assert again.twist is not None and again.twist.J.terms == B23.twist.J.terms


def corrupt(H: HopfAlgebra) -> HopfAlgebra:
    data = json.loads(H.dumps())
    for entry in data["mult"]:
        if entry[0] == 1 and entry[1] == 1:
            entry[2] = (entry[2] + 1) % H.dim
    return HopfAlgebra.from_json(data)


def test_corrupted_table_reports_associativity(KN):
    rep = verify_axioms(corrupt(KN))
    assert not rep.passed
    check = rep["associativity"]
    assert not check.passed and check.witness["indices"] == [1, 1, 1]


def test_twisted_axioms(B23):
    assert verify_axioms(B23).passed


def test_sampled_mode_is_seeded(B23):
    r1 = verify_axioms(B23, exhaustive=False, sample_size=50, seed=7)
    r2 = verify_axioms(B23, exhaustive=False, sample_size=50, seed=7)
    assert r1.to_json() == r2.to_json()
    assert r1.seed == 7 and r1["associativity"].mode == "sampled" and r1["associativity"].count == 50


def test_worker_processes_give_same_report(KN):
    assert verify_axioms(KN, workers=3).to_json() == verify_axioms(KN).to_json()


def test_tensor_unit(KN):
    x = KN.basis(2).tensor(KN.basis(4)) + KN.basis(1).tensor(KN.basis(1)).scale(3)
    assert KN.one(2) * x == x == x * KN.one(2)


def test_character_contraction_on_group_likes(KN, N):
    from hopforders.groups import all_irreps

    R = [R for R in all_irreps(N, KN.field) if R.dim == 2][0]
    psi = dict(enumerate(R.character))
    for g in range(N.order):
        out = run_recipe(KN, KN.basis(g), (("delta", 0), ("eval", 1, "psi")), {"psi": psi})
        assert out == KN.basis(g).scale(R.character[g])


def test_conjugation_recipe_matches_direct_formula(N, KN_dual):
    D = KN_dual
    K = D.field
    a = N.gen("a")
    phi = D.element({g: K(g + 1) for g in range(N.order)})
    env = {"a": {a: K.one}, "ainv": {N.inverse[a]: K.one}}
    nu = run_recipe(D, phi, (("delta", 0), ("delta", 1), ("eval", 2, "ainv"), ("eval", 0, "a")), env)
    for g in range(N.order):
        assert nu[g] == phi[N.prod(a, g, N.inverse[a])]


def test_recipe_errors(KN):
    with pytest.raises(RecipeError):
        run_recipe(KN, KN.one(), (("bogus", 0),))
    with pytest.raises(RecipeError):
        run_recipe(KN, KN.one(), (("delta", 0), ("perm", (0, 0))))
    with pytest.raises(RecipeError):
        run_recipe(KN, KN.one(), (("counit", 0), ("delta", 0)))


def test_subalgebras(B23, KN, N):
    G = B23.group
    basis = subalgebra_closure(B23, [B23.basis(G.gen("s")), B23.basis(G.gen("b"))])
    assert len(basis) == 6 and is_hopf_subalgebra(B23, basis)
    cyc = subalgebra_closure(KN, [KN.basis(N.gen("a"))])
    assert len(cyc) == 3 and is_hopf_subalgebra(KN, cyc)
    mixed = subalgebra_closure(KN, [KN.basis(N.gen("a")) + KN.basis(N.gen("s"))])
    assert not is_hopf_subalgebra(KN, mixed)


def test_quotient_kills_the_twist(B23):
    G = B23.group
    Q = build_group(GroupSpec.semidirect_qp(3, 2, 2))
    pi = [g // 6 for g in range(G.order)]
    target, images = quotient_by_group_map(B23, Q, pi)
    assert target.twist.J == target.twist.parent.one(2)
    assert target.twist.Jinv == target.twist.parent.one(2)
    assert same_structure(target, group_algebra(Q, B23.field))
    assert images[G.gen("a")] == {Q.gen("a"): B23.field.one}


def test_quotient_identity_and_trivial(KN, N):
    target, images = quotient_by_group_map(KN, N, list(range(N.order)))
    assert images == [{g: KN.field.one} for g in range(N.order)]
    T = build_group(GroupSpec.cyclic(1))
    target, images = quotient_by_group_map(KN, T, [0] * N.order)
    assert target.dim == 1 and all(im == {0: KN.field.one} for im in images)


def test_quotient_rejects_non_homomorphism(KN, N):
    Q = build_group(GroupSpec.cyclic(2))
    with pytest.raises(ValueError):
        quotient_by_group_map(KN, Q, [g % 2 for g in range(N.order)])


@st.composite
def elements(draw, H):
    return H.element({i: H.field(draw(st.integers(-3, 3))) for i in range(H.dim)})


K6 = field_create(6)
N_ALG = group_algebra(build_group(GroupSpec.semidirect_qp(3, 2, 2)), K6)
N_DUAL = dual_hopf(N_ALG)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([N_ALG, N_DUAL]), st.data())
def test_bialgebra_identities_on_random_elements(H, data):
    x, y = data.draw(elements(H)), data.draw(elements(H))
    assert H.Delta(x * y) == H.Delta(x) * H.Delta(y)
    assert H.S(x * y) == H.S(y) * H.S(x)
    assert H.eps(x * y) == H.eps(x) * H.eps(y)
    assert H.mult_legs(H.apply_antipode(H.Delta(x), 0), 0, 1) == H.one().scale(H.eps(x))
