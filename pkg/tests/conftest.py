import pytest

from hopforders.exactnum import field_create
from hopforders.frobenius import compute_integrals, wedderburn
from hopforders.groups import GroupSpec, build_group
from hopforders.hopf import dual_hopf, group_algebra
from hopforders.twist import build_bpq


@pytest.fixture(scope="session")
def N():
    return build_group(GroupSpec.semidirect_qp(3, 2, 2))


@pytest.fixture(scope="session")
def KN(N):
    return group_algebra(N, field_create(6))


@pytest.fixture(scope="session")
def KN_dual(KN):
    return dual_hopf(KN)


@pytest.fixture(scope="session")
def KZ2():
    return group_algebra(build_group(GroupSpec.cyclic(2, "s")), field_create(2))


@pytest.fixture(scope="session")
def trivial_algebra():
    return group_algebra(build_group(GroupSpec.cyclic(1)), field_create(1))


@pytest.fixture(scope="session")
def B23():
    return build_bpq(2, 3, 2)


@pytest.fixture(scope="session")
def B23_integrals(B23):
    return compute_integrals(B23)


@pytest.fixture(scope="session")
def B23_wedderburn(B23):
    return wedderburn(B23)


@pytest.fixture(scope="session")
def B37():
    return build_bpq(3, 7, 2)


@pytest.fixture(scope="session")
def sweedler():
    """Sweedler's 4-dimensional Hopf algebra over Q: basis 1, g, x, gx (not semisimple)."""
    from hopforders.hopf import HopfAlgebra

    K = field_create(1)
    one, m1 = K.one, -K.one
    mult = {}
    table = {
        (0, 0): [(0, one)], (0, 1): [(1, one)], (0, 2): [(2, one)], (0, 3): [(3, one)],
        (1, 0): [(1, one)], (1, 1): [(0, one)], (1, 2): [(3, one)], (1, 3): [(2, one)],
        (2, 0): [(2, one)], (2, 1): [(3, m1)],
        (3, 0): [(3, one)], (3, 1): [(2, m1)],
    }
    for key, terms in table.items():
        mult[key] = tuple(terms)
    return HopfAlgebra(
        field=K,
        labels=("1", "g", "x", "gx"),
        mult=mult,
        unit={0: one},
        comult=[{(0, 0): one}, {(1, 1): one}, {(2, 0): one, (1, 2): one}, {(3, 1): one, (0, 3): one}],
        counit=[one, one, K.zero, K.zero],
        antipode=[{0: one}, {1: one}, {3: m1}, {2: one}],
        name="sweedler",
    )


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
