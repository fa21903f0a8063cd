"""Exact counts and topological invariants of the preperiodic curves.

Everything here is closed-form integer arithmetic: point counts for the
fibers, genus of the compactified components, the branch-point census of
the projection to the parameter line, and the Galois group orders.  The
geometric conventions: the curve at tail length n and period p is cut
out by the polynomial whose roots over a generic parameter are the
points with exact preperiod n and exact period p, and for n >= 1 it
splits into d - 1 components of equal z-degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import divisors, euler_phi, moebius


def _validate(d: int, p: int, n: int | None = None, min_n: int = 0) -> None:
    if d < 2:
        raise ValueError("the family needs degree d >= 2")
    if p < 1:
        raise ValueError("period p must be at least 1")
    if n is not None and n < min_n:
        raise ValueError(f"tail length n must be at least {min_n}")


def periodic_point_count(d: int, p: int) -> int:
    """Number of points with exact period p for a generic parameter."""
    _validate(d, p)
    return sum(moebius(p // k) * d**k for k in divisors(p))


def component_degree(d: int, n: int, p: int) -> int:
    """z-degree of one irreducible component (n >= 1)."""
    _validate(d, p, n, min_n=1)
    return d ** (n - 1) * periodic_point_count(d, p)


def curve_degree(d: int, n: int, p: int) -> int:
    """z-degree of the full defining polynomial."""
    _validate(d, p, n)
    nu = periodic_point_count(d, p)
    if n == 0:
        return nu
    return nu * (d - 1) * d ** (n - 1)


def component_genus(d: int, n: int, p: int) -> int:
    """Genus of the compactification of one component (n >= 1)."""
    _validate(d, p, n, min_n=1)
    nu = periodic_point_count(d, p)
    dn2 = Fraction(d) ** (n - 2)
    g = (
        1
        + Fraction(1, 2) * nu * dn2 * ((d - 1) * (n + p) - 2 * d)
        - Fraction(1, 2)
        * dn2
        * (d - 1)
        * sum(
            euler_phi(p // k) * k * periodic_point_count(d, k)
            for k in divisors(p)
            if k < p
        )
    )
    if g.denominator != 1:
        raise ArithmeticError(f"genus formula gave a non-integer {g}")
    return int(g)


def periodic_genus_candidate(d: int, p: int) -> Fraction:
    """A closed-form candidate for the genus of the periodic curve.

    For small cases this expression disagrees with values derived from
    the branched-cover census (already at d = 2, p = 3 it yields 3 while
    the curve is rational), so it is returned as an exact fraction for
    inspection and is not used by any other routine in the package.
    """
    _validate(d, p)
    nu = periodic_point_count(d, p)
    return (
        1
        + Fraction((d - 1) * (p - 1), 2 * d) * nu
        - Fraction(d - 1, 2 * d)
        * sum(
            euler_phi(p // k) * k * periodic_point_count(d, k)
            for k in divisors(p)
            if k < p
        )
    )


@dataclass(frozen=True)
class BranchCensus:
    """Critical points of the parameter projection of one component.

    Multiplicities are included, so ``total`` is the branching count
    that enters the Riemann-Hurwitz relation for the covering of degree
    ``covering_degree``.
    """

    tail_critical: int
    primitive_parabolic: int
    satellite_parabolic: int
    ideal_boundary: int
    covering_degree: int

    @property
    def total(self) -> int:
        return (
            self.tail_critical
            + self.primitive_parabolic
            + self.satellite_parabolic
            + self.ideal_boundary
        )


def branch_census(d: int, n: int, p: int) -> BranchCensus:
    """Census of branch points of one component's parameter projection."""
    _validate(d, p, n, min_n=1)
    nu = periodic_point_count(d, p)

    tail = (n - 1) * nu * (d - 1) * d ** (n - 2) if n >= 2 else 0

    proper = [k for k in divisors(p) if k < p]
    sat_roots = sum(
        Fraction(periodic_point_count(d, k), d) * (d - 1) * euler_phi(p // k)
        for k in proper
    )
    satellite = d ** (n - 1) * sum(
        Fraction(periodic_point_count(d, k), d)
        * (d - 1)
        * euler_phi(p // k)
        * k
        * (p // k - 1)
        for k in proper
    )
    primitive = d ** (n - 1) * p * (Fraction((d - 1) * nu, d) - sat_roots)

    ideal_f = Fraction(nu) * Fraction(d) ** (n - 2) * (d - 1)
    for name, val in (
        ("satellite", satellite),
        ("primitive", primitive),
        ("ideal", ideal_f),
    ):
        if val.denominator != 1:
            raise ArithmeticError(f"{name} census count is non-integer: {val}")

    return BranchCensus(
        tail_critical=tail,
        primitive_parabolic=int(primitive),
        satellite_parabolic=int(satellite),
        ideal_boundary=int(ideal_f),
        covering_degree=component_degree(d, n, p),
    )


def euler_closure_holds(d: int, n: int, p: int) -> bool:
    """Riemann-Hurwitz consistency of genus, census and covering degree."""
    census = branch_census(d, n, p)
    g = component_genus(d, n, p)
    return 2 - 2 * g + census.total == 2 * census.covering_degree


def ends_count(d: int, n: int, p: int) -> int:
    """Number of ideal boundary points of one component."""
    _validate(d, p, n)
    nu = periodic_point_count(d, p)
    if n == 0:
        e = Fraction(nu, d)
    else:
        e = Fraction(nu) * Fraction(d) ** (n - 2)
    if e.denominator != 1:
        raise ArithmeticError(f"ends count is non-integer: {e}")
    return int(e)


def wreath_kernel_rank(d: int, n: int, p: int) -> int:
    """Rank of the rotation kernel added at level n (full curve, n >= 2)."""
    _validate(d, p, n, min_n=2)
    return periodic_point_count(d, p) * (d - 1) * d ** (n - 2)


def factor_kernel_rank(d: int, n: int, p: int) -> int:
    """Rank of the rotation kernel added at level n for one component."""
    _validate(d, p, n, min_n=2)
    return periodic_point_count(d, p) * d ** (n - 2)


def galois_order(d: int, n: int, p: int) -> int:
    """Order of the Galois group of the full defining polynomial."""
    _validate(d, p, n)
    nu = periodic_point_count(d, p)
    cycles = nu // p
    base = math.factorial(cycles) * p**cycles
    if n <= 1:
        return base
    return base * d ** (nu * (d ** (n - 1) - 1))


def factor_galois_order(d: int, n: int, p: int) -> int:
    """Order of the Galois group of one irreducible factor (n >= 1)."""
    _validate(d, p, n, min_n=1)
    nu = periodic_point_count(d, p)
    cycles = nu // p
    base = math.factorial(cycles) * p**cycles
    if n == 1:
        return base
    return base * d ** (nu * (d ** (n - 1) - 1) // (d - 1))


def zero_parameter_count(d: int, n: int, p: int) -> int:
    """Parameters where one component's fiber contains z = 0 (n >= 1)."""
    _validate(d, p, n, min_n=1)
    nu = periodic_point_count(d, p)
    e = Fraction(nu, d) if n == 1 else Fraction(nu) * Fraction(d) ** (n - 2)
    if e.denominator != 1:
        raise ArithmeticError(f"zero-fiber count is non-integer: {e}")
    return int(e)


def factor_intersection_count(d: int, n: int, p: int) -> int:
    """Points shared by all components with the exact orbit portrait.

    These are the points whose tail hits the critical point exactly at
    step n - 1 while the forward orbit already sits on a cycle of exact
    period p.  For d >= 3 they are precisely the ordinary singular
    points of the full curve; for d = 2 the curve has a single
    component, so they are smooth points of it.
    """
    _validate(d, p, n, min_n=1)
    nu = periodic_point_count(d, p)
    centers = nu // d
    if n == 1:
        return centers
    if p == 1:
        return 0
    return centers * (d - 1) * d ** (n - 2)


@dataclass(frozen=True)
class CurveInvariants:
    d: int
    n: int
    p: int
    periodic_point_count: int
    component_count: int
    component_degree: int
    curve_degree: int
    genus: int | None
    ends: int
    galois_order: int
    factor_galois_order: int | None
    intersection_count: int | None
    census: BranchCensus | None

    def to_json_dict(self) -> dict:
        out = {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "periodic_point_count": self.periodic_point_count,
            "component_count": self.component_count,
            "component_degree": self.component_degree,
            "curve_degree": self.curve_degree,
            "genus": self.genus,
            "ends": self.ends,
            "galois_order": self.galois_order,
            "factor_galois_order": self.factor_galois_order,
            "intersection_count": self.intersection_count,
            "census": None,
        }
        if self.census is not None:
            out["census"] = {
                "tail_critical": self.census.tail_critical,
                "primitive_parabolic": self.census.primitive_parabolic,
                "satellite_parabolic": self.census.satellite_parabolic,
                "ideal_boundary": self.census.ideal_boundary,
                "total": self.census.total,
                "covering_degree": self.census.covering_degree,
            }
        return out


def curve_invariants(d: int, n: int, p: int) -> CurveInvariants:
    """Assemble every closed-form invariant for one (d, n, p) triple."""
    _validate(d, p, n)
    nu = periodic_point_count(d, p)
    if n == 0:
        return CurveInvariants(
            d=d,
            n=n,
            p=p,
            periodic_point_count=nu,
            component_count=1,
            component_degree=nu,
            curve_degree=nu,
            genus=None,
            ends=ends_count(d, 0, p),
            galois_order=galois_order(d, 0, p),
            factor_galois_order=None,
            intersection_count=None,
            census=None,
        )
    return CurveInvariants(
        d=d,
        n=n,
        p=p,
        periodic_point_count=nu,
        component_count=d - 1,
        component_degree=component_degree(d, n, p),
        curve_degree=curve_degree(d, n, p),
        genus=component_genus(d, n, p),
        ends=ends_count(d, n, p),
        galois_order=galois_order(d, n, p),
        factor_galois_order=factor_galois_order(d, n, p),
        intersection_count=factor_intersection_count(d, n, p),
        census=branch_census(d, n, p),
    )
