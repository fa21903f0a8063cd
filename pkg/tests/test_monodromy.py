import pytest

from dynacurve.dynatomic import FamilyContext
from dynacurve.errors import CapExceeded
from dynacurve.monodromy import (
    build_loops,
    compose,
    critical_values,
    generate_group,
    monodromy_report,
    verify_galois_properties,
    wreath_decompose,
    zero_ray_rotation,
)
from dynacurve.numerics import multiset_close


def test_critical_values_quadratic():
    ctx = FamilyContext(2)
    assert multiset_close(critical_values(ctx, 1, 1), [0.25], 1e-8)
    assert multiset_close(critical_values(ctx, 0, 2), [-0.75], 1e-8)
    assert multiset_close(critical_values(ctx, 1, 2), [-0.75], 1e-8)
    assert multiset_close(critical_values(ctx, 2, 1), [0, -2, 0.25], 1e-6)
    assert multiset_close(critical_values(ctx, 2, 2), [1j, -1j, -0.75], 1e-6)


def test_critical_values_period_three():
    vals = critical_values(FamilyContext(2), 1, 3)
    assert len(vals) == 3
    assert min(abs(v + 1.75) for v in vals) < 1e-5


def test_simple_transposition():
    ctx = FamilyContext(2)
    rep = monodromy_report(ctx, 1, 1)
    assert rep.branch_values == (pytest.approx(0.25),)
    assert rep.generators == ((1, 0),)
    assert rep.infinity_permutation == (1, 0)
    assert rep.group_order == 2
    assert rep.product_matches_infinity
    assert rep.infinity_cycles == 1


def test_group_orders():
    ctx = FamilyContext(2)
    assert monodromy_report(ctx, 2, 1).group_order == 8
    assert monodromy_report(ctx, 2, 2).group_order == 8
    assert monodromy_report(ctx, 1, 3).group_order == 18
    assert monodromy_report(FamilyContext(3), 1, 1).group_order == 6


def test_full_verification_small():
    for d, n, p in ((2, 0, 2), (2, 2, 1), (3, 1, 1)):
        ver = verify_galois_properties(FamilyContext(d), n, p)
        assert ver.all_hold, (d, n, p, ver)


def test_wreath_structure():
    ctx = FamilyContext(2)
    w = wreath_decompose(ctx, 2, 1)
    assert w.homomorphism_holds
    assert w.pairs_checked >= 50
    assert w.kernel_size == 4 == w.expected_kernel
    assert sorted(len(col) for col in w.columns) == [2, 2]


def test_loops_are_deterministic():
    vals = critical_values(FamilyContext(2), 2, 1)
    a = build_loops(vals)
    b = build_loops(vals)
    assert [l.samples for l in a] == [l.samples for l in b]
    for lasso in a:
        assert lasso.samples[0] == lasso.samples[-1] == 3.0 + 0.0j
        assert all(abs(c - lasso.center) > 1e-3 for c in lasso.samples)


def test_group_cap():
    # two generators of a symmetric group too large for the cap
    cycle = tuple(range(1, 7)) + (0,)
    swap = (1, 0) + tuple(range(2, 7))
    with pytest.raises(CapExceeded):
        generate_group([cycle, swap], cap=100)
    assert len(generate_group([cycle, swap], cap=10**5)) == 5040


def test_compose_order():
    sigma = (1, 2, 0)
    tau = (0, 2, 1)
    # tau first, then sigma
    assert compose(sigma, tau) == (1, 0, 2)


def test_zero_ray_shift():
    ctx = FamilyContext(2)
    for n, p in ((1, 2), (2, 1)):
        rep = zero_ray_rotation(ctx, n, p)
        assert rep.consistent
        assert rep.shift == 1
