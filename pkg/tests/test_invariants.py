from fractions import Fraction

import pytest

from dynacurve.invariants import (
    BranchCensus,
    branch_census,
    component_degree,
    component_genus,
    curve_degree,
    curve_invariants,
    ends_count,
    euler_closure_holds,
    factor_galois_order,
    factor_intersection_count,
    factor_kernel_rank,
    galois_order,
    periodic_genus_candidate,
    periodic_point_count,
    wreath_kernel_rank,
    zero_parameter_count,
)


def test_periodic_point_count():
    assert periodic_point_count(2, 1) == 2
    assert periodic_point_count(2, 2) == 2
    assert periodic_point_count(2, 3) == 6
    assert periodic_point_count(2, 4) == 12
    assert periodic_point_count(2, 5) == 30
    assert periodic_point_count(3, 1) == 3
    assert periodic_point_count(3, 2) == 6
    assert periodic_point_count(4, 2) == 12


def test_degrees():
    assert component_degree(2, 1, 1) == 2
    assert component_degree(2, 3, 2) == 8
    assert curve_degree(3, 2, 1) == 18
    assert curve_degree(2, 0, 4) == 12


def test_genus_tail_one_sequence():
    assert [component_genus(2, 1, p) for p in range(1, 6)] == [0, 0, 0, 2, 14]


def test_genus_other_cells():
    assert component_genus(3, 2, 1) == 1
    assert component_genus(2, 3, 1) == 1
    assert component_genus(2, 2, 1) == 0


def test_periodic_genus_candidate_disagrees():
    # The closed form evaluates to 3 at d=2, p=3, but that curve is
    # rational; keeping the exact value pinned documents the mismatch.
    assert periodic_genus_candidate(2, 3) == Fraction(3)
    assert periodic_genus_candidate(2, 2) == Fraction(1)


def test_branch_census_hand_values():
    c = branch_census(2, 1, 1)
    assert c == BranchCensus(0, 1, 0, 1, 2)
    assert c.total == 2

    c = branch_census(2, 2, 1)
    assert c == BranchCensus(2, 2, 0, 2, 4)
    assert c.total == 6

    c = branch_census(2, 1, 4)
    assert (c.tail_critical, c.primitive_parabolic, c.satellite_parabolic) == (0, 12, 8)
    assert c.ideal_boundary == 6
    assert c.total == 26


def test_euler_closure_grid():
    for d in (2, 3, 4):
        for n in (1, 2, 3):
            for p in (1, 2, 3, 4):
                assert euler_closure_holds(d, n, p), (d, n, p)


def test_ends_count():
    assert ends_count(2, 1, 4) == 6
    assert ends_count(2, 2, 1) == 2
    assert ends_count(3, 2, 1) == 3
    assert ends_count(2, 0, 3) == 3


def test_kernel_ranks():
    assert wreath_kernel_rank(2, 2, 1) == 2
    assert factor_kernel_rank(3, 2, 1) == 3
    assert wreath_kernel_rank(3, 2, 1) == 6
    with pytest.raises(ValueError):
        wreath_kernel_rank(2, 1, 1)


def test_galois_orders():
    assert galois_order(2, 1, 1) == 2
    assert galois_order(2, 2, 2) == 8
    assert galois_order(2, 1, 3) == 18
    # order at tail 1 equals order at tail 0
    assert galois_order(2, 1, 4) == galois_order(2, 0, 4) == 384
    assert galois_order(3, 2, 1) == 4374


def test_galois_order_recursion():
    for d in (2, 3):
        for p in (1, 2, 3):
            for n in (2, 3):
                assert galois_order(d, n, p) == galois_order(
                    d, n - 1, p
                ) * d ** wreath_kernel_rank(d, n, p)


def test_factor_galois_orders():
    assert factor_galois_order(2, 1, 2) == galois_order(2, 0, 2)
    for d in (3, 4):
        for p in (1, 2):
            for n in (2, 3):
                assert factor_galois_order(d, n, p) == factor_galois_order(
                    d, n - 1, p
                ) * d ** factor_kernel_rank(d, n, p)


def test_zero_parameter_count():
    assert zero_parameter_count(2, 1, 1) == 1
    assert zero_parameter_count(2, 1, 3) == 3
    assert zero_parameter_count(2, 2, 1) == 2
    assert zero_parameter_count(3, 2, 2) == 6


def test_factor_intersection_count():
    assert factor_intersection_count(3, 1, 1) == 1
    assert factor_intersection_count(3, 2, 1) == 0
    assert factor_intersection_count(3, 2, 2) == 4
    assert factor_intersection_count(4, 2, 2) == 9
    assert factor_intersection_count(2, 2, 2) == 1


def test_curve_invariants_bundle():
    inv = curve_invariants(2, 1, 4)
    assert inv.genus == 2
    assert inv.ends == 6
    assert inv.galois_order == 384
    assert inv.census is not None and inv.census.total == 26
    data = inv.to_json_dict()
    assert data["schema"] == 1
    assert data["census"]["ideal_boundary"] == 6

    inv0 = curve_invariants(2, 0, 3)
    assert inv0.genus is None
    assert inv0.component_count == 1
