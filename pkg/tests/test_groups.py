import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopforders.exactnum import field_create, root_of_unity
from hopforders.groups import (
    GroupError,
    GroupSpec,
    all_irreps,
    build_group,
    character_inner,
    induce_irrep,
    is_prime,
    multiplicative_order,
    one_dim_irrep,
    small_group_specs,
)


def bpq_spec(q=3, p=2, r=2):
    return GroupSpec.product(GroupSpec.semidirect_qp(q, p, r, ("s", "a")), GroupSpec.semidirect_qp(q, p, r, ("t", "b")))


def test_semidirect_order_six(N):
    assert N.order == 6
    s, a = N.gen("s"), N.gen("a")
    assert N.prod(s, a, N.inverse[s]) == N.power(a, 2)
    assert N.mul(s, a) != N.mul(a, s)
    assert N.element_order(s) == 2 and N.element_order(a) == 3


def test_index_layout(N):
    s, a = N.gen("s"), N.gen("a")
    for i in range(2):
        for j in range(3):
            assert N.prod(N.power(s, i), N.power(a, j)) == i * 3 + j


def test_product_group():
    G = build_group(bpq_spec())
    assert G.order == 36
    M = G.subgroup_generated([G.gen("s"), G.gen("t")])
    assert len(M) == 4
    assert G.subgroup_generated([]) == frozenset({G.identity})


def test_trivial_group():
    G = build_group(GroupSpec.cyclic(1))
    assert G.order == 1 and G.gen("g") == G.identity


@pytest.mark.parametrize("bad", [
    GroupSpec.semidirect_qp(4, 2, 3),
    GroupSpec.semidirect_qp(7, 4, 2),
    GroupSpec.semidirect_qp(7, 3, 3),
    GroupSpec.cyclic(0),
    GroupSpec.product(GroupSpec.cyclic(2), GroupSpec.cyclic(3)),
])
def test_invalid_specs(bad):
    with pytest.raises(GroupError):
        build_group(bad)


def test_spec_json_round_trip():
    spec = bpq_spec(7, 3, 2)
    assert GroupSpec.from_json(spec.to_json()) == spec
    G = build_group(spec)
    data = G.to_json()
    assert data["order"] == 441 and len(data["table"]) == 441


def test_number_theory_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(2, 3) == 2


def test_induced_trivial_character(N):
    K = field_create(6)
    sub = N.subgroup_generated([N.gen("s")])
    a = N.gen("a")
    R = induce_irrep(N, sub, {h: K.one for h in sub}, [N.power(a, j) for j in range(3)], K)
    assert R.check_homomorphism()
    A = N.subgroup_generated([a])
    for g in range(N.order):
        want = 3 if g == N.identity else (0 if g in A else 1)
        assert R.character[g] == K(want)


def test_induced_from_normal_subgroup(N):
    K = field_create(6)
    a, s = N.gen("a"), N.gen("s")
    A = N.subgroup_generated([a])
    eta = root_of_unity(K, 3)
    char = {N.power(a, k): eta ** k for k in range(3)}
    R = induce_irrep(N, A, char, [N.identity, s], K)
    assert R.dim == 2 and R.check_homomorphism()
    # diagonal on a with entries eta, eta^r
    ra = R.matrices[a]
    assert {ra[0][0], ra[1][1]} == {eta, eta ** 2} and not ra[0][1] and not ra[1][0]


def test_induce_from_whole_group(N):
    K = field_create(6)
    full = frozenset(range(N.order))
    sign = {g: K.one if N.exponents[g][0] == 0 else -K.one for g in range(N.order)}
    R = induce_irrep(N, full, sign, [N.identity], K)
    assert R.dim == 1 and R.character == tuple(sign[g] for g in range(N.order))


def test_irrep_dimensions(N):
    assert sorted(R.dim for R in all_irreps(N)) == [1, 1, 2]
    G = build_group(bpq_spec())
    dims = sorted(R.dim for R in all_irreps(G))
    assert dims == [1] * 4 + [2] * 4 + [4]
    C4 = build_group(GroupSpec.cyclic(4))
    K = field_create(4)
    chars = {tuple(R.character) for R in all_irreps(C4, K)}
    expected = {tuple(K.zeta(i * k) for i in range(4)) for k in range(4)}
    assert chars == expected


def test_one_dim_irrep_rejects_non_homomorphism():
    G = build_group(GroupSpec.cyclic(3))
    K = field_create(3)
    R = one_dim_irrep(G, K, [K.one, K.zeta(), K.zeta()])
    assert not R.check_homomorphism()


@pytest.mark.parametrize("spec", [GroupSpec.semidirect_qp(3, 2, 2), GroupSpec.semidirect_qp(7, 3, 2),
                                  GroupSpec.semidirect_qp(5, 4, 2), bpq_spec()])
def test_character_orthogonality(spec):
    G = build_group(spec)
    irreps = all_irreps(G)
    assert sum(R.dim ** 2 for R in irreps) == G.order
    for R in irreps:
        assert R.check_homomorphism()
    for R1, R2 in itertools.product(irreps, repeat=2):
        ip = character_inner(G, R1.character, R2.character)
        assert ip == R1.character[G.identity].field(1 if R1 is R2 else 0)


def test_small_group_specs_cover_orders():
    specs = small_group_specs(36)
    orders = {build_group(s).order for s in specs}
    assert orders == set(range(1, 37))
    assert all(build_group(s).order <= 36 for s in specs)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([s for s in small_group_specs(24)]), st.data())
def test_group_axioms(spec, data):
    G = build_group(spec)
    g, h, k = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k))
    assert G.mul(g, G.inverse[g]) == G.identity
    assert G.mul(G.identity, g) == g
    assert sorted(G.table[g]) == list(range(G.order))
