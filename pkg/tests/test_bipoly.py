import pytest
from hypothesis import given, settings, strategies as st

from dynacurve.bipoly import CurvePoly, resultant_z, sylvester_resultant_z
from dynacurve.cyclotomic import CycInt, euler_phi
from dynacurve.errors import NonZeroRemainder


def P(d, rows):
    return CurvePoly.from_int_rows(d, rows)


def test_family_map():
    f = CurvePoly.family_map(2)
    # z^2 + c
    assert f == P(2, [[0, 1], [], [1]])
    f3 = CurvePoly.family_map(3)
    assert f3.deg_z == 3
    assert f3.coefficient(3, 0).as_int() == 1
    assert f3.coefficient(0, 1).as_int() == 1


def test_add_mul_small():
    d = 2
    z = CurvePoly.z_var(d)
    c = CurvePoly.c_var(d)
    p = (z + c) * (z - c)
    assert p == z * z - c * c
    q = (z + CurvePoly.one(d)) ** 2
    assert q == P(d, [[1], [2], [1]])


def test_mul_matches_schoolbook_with_omega():
    d = 3
    w = CycInt.omega(3)
    a = CurvePoly(d, [[w, CycInt.one(d)], [w * w]])
    b = CurvePoly(d, [[CycInt.from_int(d, 2)], [w]])
    prod = a * b
    # expand by hand: (w + c + w^2 z)(2 + w z)
    #   z^0: 2w + 2c
    #   z^1: w^2 + wc + 2w^2
    #   z^2: w^3 = 1
    assert prod.coefficient(0, 0) == w * 2
    assert prod.coefficient(0, 1) == CycInt.from_int(d, 2)
    assert prod.coefficient(1, 0) == w * w * 3
    assert prod.coefficient(1, 1) == w
    assert prod.coefficient(2, 0) == CycInt.one(d)


def test_rotate_z():
    d = 2
    f = CurvePoly.family_map(2)
    g = f.rotate_z(1)  # z -> -z leaves z^2 + c fixed
    assert g == f
    p = P(2, [[0, 1], [1], [1]])  # z^2 + z + c
    assert p.rotate_z(1) == P(2, [[0, 1], [-1], [1]])


def test_compose_z():
    d = 2
    f = CurvePoly.family_map(d)
    ff = f.compose_z(f)
    # (z^2+c)^2 + c = z^4 + 2c z^2 + c^2 + c
    assert ff == P(d, [[0, 1, 1], [], [0, 2], [], [1]])


def test_derivatives():
    p = P(2, [[0, 1, 1], [], [0, 2], [], [1]])
    assert p.derivative_z() == P(2, [[], [0, 4], [], [4]])
    assert p.derivative_c() == P(2, [[1, 2], [], [2]])


def test_divide_exact_packed():
    d = 2
    f = CurvePoly.family_map(d)
    num = (f + CurvePoly.one(d)) * (f * f - CurvePoly.c_var(d))
    q = num.divide_exact(f + CurvePoly.one(d))
    assert q == f * f - CurvePoly.c_var(d)


def test_divide_exact_rejects_inexact():
    d = 2
    f = CurvePoly.family_map(d)
    with pytest.raises(NonZeroRemainder):
        (f * f + CurvePoly.one(d)).divide_exact(f)


def test_divide_generic_with_omega():
    d = 3
    f = CurvePoly.family_map(d)
    rot = f.rotate_z(1)
    num = rot * f
    assert num.divide_exact(rot) == f
    assert num.divide_exact(f) == rot


def test_specialize_c_int():
    p = P(2, [[0, 1, 1], [], [0, 2], [], [1]])
    s = p.specialize_c_int(-2)
    assert s == P(2, [[2], [], [-4], [], [1]])


def test_evaluate():
    f = CurvePoly.family_map(2)
    assert abs(f.evaluate(1 + 1j, -0.5) - ((1 + 1j) ** 2 - 0.5)) < 1e-12
    v = f.evaluate_mp(0.5, 0.25, 100)
    assert abs(complex(v) - 0.5) < 1e-15


def test_resultant_known_values():
    d = 2
    # res_z(z^2 - z + c, 2z - 1) = 4c - 1
    a = P(d, [[0, 1], [-1], [1]])
    b = P(d, [[-1], [2]])
    r = resultant_z(a, b)
    assert r == P(d, [[-1, 4]])
    r2 = sylvester_resultant_z(a, b)
    assert r2 == P(d, [[-1, 4]])


def test_resultant_discriminant_period_two():
    d = 2
    # z^2 + z + c + 1 against its z-derivative: root at c = -3/4
    a = P(d, [[1, 1], [1], [1]])
    r = resultant_z(a, a.derivative_z())
    assert r == P(d, [[3, 4]])


def test_resultant_agrees_with_matrix():
    d = 3
    f = CurvePoly.family_map(d)
    g = f.compose_z(f) - CurvePoly.z_var(d)
    r1 = resultant_z(g, g.derivative_z())
    r2 = sylvester_resultant_z(g, g.derivative_z())
    assert r1 == r2


def test_json_round_trip():
    f = CurvePoly.family_map(3).rotate_z(2)
    data = f.to_json_dict()
    assert data["schema"] == 1
    assert CurvePoly.from_json_dict(data) == f


small_int = st.integers(min_value=-9, max_value=9)


@st.composite
def poly(draw, d, max_deg_z=3, max_deg_c=2):
    phi = euler_phi(d)
    nz = draw(st.integers(min_value=1, max_value=max_deg_z + 1))
    rows = []
    for _ in range(nz):
        nc = draw(st.integers(min_value=0, max_value=max_deg_c + 1))
        row = []
        for _ in range(nc):
            row.append(CycInt(d, tuple(draw(small_int) for _ in range(phi))))
        rows.append(row)
    return CurvePoly(d, rows)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_mul_commutes_and_distributes(d, data):
    a = data.draw(poly(d))
    b = data.draw(poly(d))
    c = data.draw(poly(d))
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_division_round_trip(d, data):
    q = data.draw(poly(d))
    den = data.draw(poly(d))
    if den.is_zero:
        return
    num = q * den
    assert num.divide_exact(den) == q


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_mul_matches_evaluation(d, data):
    a = data.draw(poly(d))
    b = data.draw(poly(d))
    zv, cv = 0.7 - 0.3j, -0.2 + 0.9j
    lhs = (a * b).evaluate(zv, cv)
    rhs = a.evaluate(zv, cv) * b.evaluate(zv, cv)
    assert abs(lhs - rhs) < 1e-6 * (1 + abs(rhs))
