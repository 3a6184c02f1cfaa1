import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopforders.exactnum import field_create
from hopforders.frobenius import SyntheticBlocks, compute_integrals, wedderburn
from hopforders.groups import GroupSpec, all_irreps, build_group, induce_irrep
from hopforders.hopf import dual_hopf, group_algebra
from hopforders.orders import (
    ObstructionCertificate,
    OrderError,
    RingSpec,
    character_support,
    classemi_idempotents,
    dual_lattice,
    member,
    obstruction_certificate,
    order_sandwich,
    span,
    weak_order,
)

Z = RingSpec()
Z_HALF = RingSpec.parse("Z[1/2]")


def group_basis(H):
    return [H.basis(i) for i in range(H.dim)]


def test_ring_parsing():
    assert RingSpec.parse("Z") == RingSpec(1, 1)
    assert RingSpec.parse("Z[1/6]") == RingSpec(1, 6)
    assert RingSpec.parse("Z[zeta_3][1/2]") == RingSpec(3, 2)
    assert str(RingSpec(3, 2)) == "Z[zeta_3][1/2]"
    with pytest.raises(OrderError):
        RingSpec.parse("Q")


def test_ring_membership():
    K = field_create(6)
    assert Z_HALF.contains(K(Fraction(3, 8)))
    assert not Z_HALF.contains(K(Fraction(1, 3)))
    assert RingSpec(3).contains(K.zeta(2))
    assert not Z.contains(K.zeta(2))
    with pytest.raises(OrderError):
        RingSpec(4).check_field(K)


def test_group_ring_membership(KZ2):
    H = KZ2
    w0 = (H.one() + H.basis(1)).scale(H.field(Fraction(1, 2)))
    assert not member(w0, span(H, group_basis(H), Z))
    assert member(w0, span(H, group_basis(H), Z_HALF))


def test_dual_lattice_of_group_ring(KN, KN_dual, N):
    L = span(KN, group_basis(KN), Z)
    Ld = dual_lattice(L, KN_dual)
    assert Ld == span(KN_dual, group_basis(KN_dual), Z)
    K = KN.field
    sub = N.subgroup_generated([N.gen("s")])
    R = induce_irrep(N, sub, {h: K.one for h in sub}, [N.power(N.gen("a"), j) for j in range(3)], K)
    psi = KN_dual.element(dict(enumerate(R.character)))
    assert Ld.member(psi)
    assert dual_lattice(Ld, dual_hopf(KN_dual)).transport(KN) == L


def test_index_and_denominators(KN):
    L = span(KN, group_basis(KN), Z)
    L2 = span(KN, [x.scale(2) for x in group_basis(KN)], Z)
    assert L2 <= L and not L <= L2
    assert L2.index_in(L) == 64
    M = span(KN, group_basis(KN), Z_HALF)
    M2 = span(KN, [x.scale(2) for x in group_basis(KN)], Z_HALF)
    assert M == M2 and M2.index_in(M) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(-3, 3)), min_size=1, max_size=8),
       st.sampled_from(["Z", "Z[1/2]", "Z[1/3]"]))
def test_canonical_form_is_basis_independent(ops, ring_text):
    H = group_algebra(build_group(GroupSpec.semidirect_qp(3, 2, 2)), field_create(3))
    ring = RingSpec.parse(ring_text)
    gens = [H.basis(i).scale(i + 1) for i in range(H.dim)]
    base = span(H, gens, ring)
    mixed = list(gens)
    for i, j, c in ops:
        if i != j:
            mixed[i] = mixed[i] + mixed[j].scale(c)  # unimodular row operation
    assert span(H, mixed, ring) == base
    assert span(H, mixed + [mixed[0] + mixed[1]], ring) == base
    assert span(H, list(reversed(mixed)), ring) == base


def test_span_over_cyclotomic_integers():
    H = group_algebra(build_group(GroupSpec.cyclic(3)), field_create(3))
    ring = RingSpec(3)
    L = span(H, group_basis(H), ring)
    assert L.rank == 6 and L.full_rank
    z = H.field.zeta()
    assert L.member(H.basis(1).scale(z))
    assert not L.member(H.basis(1).scale(z / 2))


def test_character_support_of_group_algebra(KN):
    res = character_support(KN, Z)
    assert res.stabilized and res.rounds == 1
    assert res.lattice == span(KN, group_basis(KN), Z)


def test_character_support_of_dual(N, KN_dual):
    D = KN_dual
    res = character_support(D, Z)
    assert res.stabilized
    L = res.lattice
    theta1 = D.basis(N.identity)
    assert L.member(theta1.scale(9)) and L.member(theta1.scale(3))
    assert not L.member(theta1)
    # oracle: integer functions constant mod 3 on each coset of <a>
    A = N.subgroup_generated([N.gen("a")])
    cosets = {frozenset(N.mul(g, h) for h in A) for g in range(N.order)}
    gens = [D.basis(g).scale(3) for g in range(N.order)]
    gens += [D.element({g: D.field.one for g in c}) for c in cosets]
    assert L == span(D, gens, Z)


def test_character_support_trivial(trivial_algebra):
    res = character_support(trivial_algebra, Z)
    assert res.lattice.rank == 1 and res.lattice.member(trivial_algebra.one())


def test_sandwich_small_cases(KZ2, trivial_algebra, KN):
    sw = order_sandwich(KZ2, Z_HALF)
    assert sw.index == 1 and sw.lower.lattice == sw.upper
    half = KZ2.field(Fraction(1, 2))
    e = (KZ2.one() + KZ2.basis(1)).scale(half)
    assert sw.lower.lattice.member(e)
    assert order_sandwich(trivial_algebra, Z).index == 1
    # over Z the idempotent order Z e+ + Z e- is a second Hopf order, so the bounds differ
    assert order_sandwich(KZ2, Z).index == 2
    assert order_sandwich(KN, Z).index == 81


def test_classemi_idempotents(N):
    res = classemi_idempotents(N)
    assert res.passed, res.checks
    D = res.dual
    theta1 = D.basis(N.identity)
    assert res.mu == theta1.scale(9)
    assert res.q_theta1 == theta1.scale(3)
    x, y = res.bezout
    assert 6 * x + 9 * y == 3
    for g in range(N.order):
        i, j = N.exponents[g]
        assert res.phi[g] == D.field(3 if j == 0 else 0)


def test_classemi_larger():
    res = classemi_idempotents(build_group(GroupSpec.semidirect_qp(7, 3, 2)))
    assert res.passed and len(res.t) == 3


def test_obstruction_certificate_p2():
    cert = obstruction_certificate(2, 3, 2)
    assert cert.verified and cert.final_value == Fraction(1, 2)
    names = [s.step_name for s in cert.steps]
    assert names[0] == "twisted_algebra" and names[-1] == "non_membership_witness"
    assert len(names) == len(set(names))
    again = ObstructionCertificate.loads(cert.dumps())
    assert again.verified and again.dumps() == cert.dumps()


def test_tampered_certificate_fails():
    cert = obstruction_certificate(2, 3, 2)
    data = json.loads(cert.dumps())
    data["final_value"] = "1/3"
    again = ObstructionCertificate.from_json(data)
    assert not again.verified
    data = json.loads(cert.dumps())
    step = next(s for s in data["steps"] if s["step_name"] == "characters_psi")
    step["verified"] = False
    assert ObstructionCertificate.from_json(data).step("characters_psi").verified


def test_obstruction_parameter_errors():
    with pytest.raises(OrderError):
        obstruction_certificate(3, 3, 2)
    with pytest.raises(ValueError):
        obstruction_certificate(3, 5, 2)


def test_weak_order_twisted(B23, B23_integrals, B23_wedderburn):
    res = weak_order(B23_wedderburn, B23_integrals)
    assert res.passed and res.lattice.rank == 36
    assert res.coefficient_values() == [0, 9, 18, 36]


def test_weak_order_z2(KZ2):
    res = weak_order(wedderburn(KZ2), compute_integrals(KZ2))
    assert res.passed
    assert sorted(c.to_fraction() for c in res.coefficients.values()) == [2, 2]


def test_weak_order_trivial(trivial_algebra):
    res = weak_order(wedderburn(trivial_algebra), compute_integrals(trivial_algebra))
    assert res.passed and res.lattice.rank == 1
    assert [c.to_fraction() for c in res.coefficients.values()] == [1]


def test_weak_order_refuses_non_dividing_blocks():
    with pytest.raises(OrderError):
        weak_order(SyntheticBlocks((5,), 36, field_create(1)))


def test_all_irreps_characters_lie_in_dual_order(N, KN, KN_dual):
    Ld = dual_lattice(span(KN, group_basis(KN), Z), KN_dual)
    for R in all_irreps(N, KN.field):
        assert Ld.member(KN_dual.element(dict(enumerate(R.character))))


def test_sandwich_over_cyclotomic_ring_is_base_change(KN):
    # Z[zeta_3] is free of rank 2 over Z, so the Z-index squares
    sw = order_sandwich(KN, RingSpec(3))
    assert sw.index == 81 ** 2
    assert sw.lower.lattice == span(KN, group_basis(KN), RingSpec(3))
