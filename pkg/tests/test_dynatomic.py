import pytest

from dynacurve.bipoly import CurvePoly, resultant_z
from dynacurve.dynatomic import FamilyContext
from dynacurve.errors import ResourceCapExceeded


def P(d, rows):
    return CurvePoly.from_int_rows(d, rows)


@pytest.fixture(scope="module")
def ctx2():
    return FamilyContext(2)


@pytest.fixture(scope="module")
def ctx3():
    return FamilyContext(3)


def test_periodic_base_polynomials(ctx2):
    # exact period 1: z^2 - z + c
    assert ctx2.dynatomic(0, 1) == P(2, [[0, 1], [-1], [1]])
    # exact period 2: z^2 + z + c + 1
    assert ctx2.dynatomic(0, 2) == P(2, [[1, 1], [1], [1]])


def test_tail_one_and_two(ctx2):
    assert ctx2.dynatomic(1, 1) == P(2, [[0, 1], [1], [1]])
    assert ctx2.dynatomic(2, 1) == P(2, [[0, 2, 1], [], [1, 2], [], [1]])


def test_factor_is_reflection_for_quadratic(ctx2):
    for p in (1, 2, 3):
        assert ctx2.factor(1, p, 1) == ctx2.dynatomic(0, p).rotate_z(-1)
        assert ctx2.factor(1, p, 1) == ctx2.dynatomic(1, p)


def test_factor_product_cubic(ctx3):
    q1 = ctx3.factor(1, 1, 1)
    q2 = ctx3.factor(1, 1, 2)
    assert q1 != q2
    assert q1 * q2 == ctx3.dynatomic(1, 1)


def test_identity_report_cells():
    for d, n, p in [(2, 1, 1), (2, 2, 2), (3, 1, 1), (3, 2, 1), (4, 1, 2)]:
        report = FamilyContext(d).verify_identities(n, p)
        assert report.all_hold, (d, n, p, report)


def test_composition_route_matches(ctx2):
    assert ctx2.dynatomic_by_composition(1, 2) == ctx2.dynatomic(1, 2)
    assert ctx2.dynatomic_by_composition(3, 1) == ctx2.dynatomic(3, 1)


def test_degree_cap():
    small = FamilyContext(2, degree_cap=2**6)
    with pytest.raises(ResourceCapExceeded):
        small.dynatomic(3, 4)
    with pytest.raises(ResourceCapExceeded):
        FamilyContext(2).dynatomic(9, 9)


def test_specialized_fibers_squarefree(ctx2, ctx3):
    # at a parameter outside every critical value, the fiber is simple
    for ctx, n, p in [(ctx2, 1, 2), (ctx2, 2, 1), (ctx3, 2, 1)]:
        q = ctx.dynatomic(n, p).specialize_c_int(3)
        r = resultant_z(q, q.derivative_z())
        assert not r.is_zero
        assert r.deg_z == 0 and r.deg_c <= 0


def test_iterate_cache_and_values(ctx2):
    f2 = ctx2.iterate(2)
    assert f2 == P(2, [[0, 1, 1], [], [0, 2], [], [1]])
    assert ctx2.iterate(0) == CurvePoly.z_var(2)
