"""Construction of the defining polynomials of the preperiodic curves.

For the family z -> z**d + c, the polynomial whose generic roots are the
points of exact preperiod n and exact period p is obtained from the
iterate differences f^(n+p) - f^n by dividing out every lower level of
the divisor cascade.  All divisions are exact in Z[c][z] and run through
the packed fast path of CurvePoly.

The factors of that polynomial (for n >= 1 there are d - 1 of them) come
from rotating the periodic-level polynomial by a d-th root of unity and
pushing it up the tail with repeated substitution z -> z**d + c.

A FamilyContext caches everything per degree d, and refuses
constructions whose z-degree would exceed its configured cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bipoly import CurvePoly
from .errors import PreconditionViolated, ResourceCapExceeded
from .cyclotomic import divisors
from .invariants import component_degree, curve_degree, periodic_point_count

DEFAULT_DEGREE_CAP = 2**14


@dataclass
class IdentityReport:
    """Outcome of the structural identity checks at one (n, p) cell."""

    d: int
    n: int
    p: int
    cascade_product: bool
    base_relation: bool
    composition_route: bool
    factor_product: bool
    degrees: bool

    @property
    def all_hold(self) -> bool:
        return (
            self.cascade_product
            and self.base_relation
            and self.composition_route
            and self.factor_product
            and self.degrees
        )

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "cascade_product": self.cascade_product,
            "base_relation": self.base_relation,
            "composition_route": self.composition_route,
            "factor_product": self.factor_product,
            "degrees": self.degrees,
            "all_hold": self.all_hold,
        }


class FamilyContext:
    """Cached polynomial constructions for one family degree d."""

    def __init__(self, d: int, degree_cap: int = DEFAULT_DEGREE_CAP):
        if d < 2:
            raise ValueError("the family needs degree d >= 2")
        self.d = d
        self.degree_cap = degree_cap
        self._iterates: list[CurvePoly] = [CurvePoly.z_var(d)]
        self._exact_level: dict[tuple[int, int], CurvePoly] = {}
        self._factors: dict[tuple[int, int, int], CurvePoly] = {}

    # -- raw iterates ----------------------------------------------------

    def _check_cap(self, z_degree: int) -> None:
        if z_degree > self.degree_cap:
            raise ResourceCapExceeded(
                f"requested z-degree {z_degree} exceeds cap {self.degree_cap}"
            )

    def iterate(self, k: int) -> CurvePoly:
        """The k-th iterate of z**d + c as a polynomial in (z, c)."""
        if k < 0:
            raise ValueError("iterate count must be nonnegative")
        self._check_cap(self.d**k)
        while len(self._iterates) <= k:
            prev = self._iterates[-1]
            self._iterates.append(prev ** self.d + CurvePoly.c_var(self.d))
        return self._iterates[k]

    def orbit_difference(self, n: int, p: int) -> CurvePoly:
        """f^(n+p) - f^n, vanishing on every point of type (m, k) with
        m <= n and k | p."""
        if n < 0 or p < 1:
            raise ValueError("need n >= 0 and p >= 1")
        self._check_cap(self.d ** (n + p))
        return self.iterate(n + p) - self.iterate(n)

    # -- exact-type polynomials -------------------------------------------

    def dynatomic(self, n: int, p: int) -> CurvePoly:
        """Polynomial with generic roots of exact preperiod n, period p."""
        if n < 0 or p < 1:
            raise ValueError("need n >= 0 and p >= 1")
        key = (n, p)
        cached = self._exact_level.get(key)
        if cached is not None:
            return cached
        self._check_cap(self.d ** (n + p))
        num = self.orbit_difference(n, p)
        if n >= 1:
            num = num.divide_exact(self.orbit_difference(n - 1, p))
        for k in divisors(p):
            if k < p:
                num = num.divide_exact(self.dynatomic(n, k))
        self._exact_level[key] = num
        return num

    def dynatomic_by_composition(self, n: int, p: int) -> CurvePoly:
        """Same polynomial built through substitution instead of division.

        Independent construction used to cross-check the cascade: the
        periodic polynomial pulled back once satisfies
        base(c, f(z)) = base * level_one, and from the second level on
        the pullback is the next level on the nose.
        """
        if n < 1 or p < 1:
            raise ValueError("need n >= 1 and p >= 1")
        self._check_cap(self.d ** (n + p))
        f = CurvePoly.family_map(self.d)
        base = self.dynatomic(0, p)
        if n == 1:
            return base.compose_z(f).divide_exact(base)
        return self.dynatomic(n - 1, p).compose_z(f)

    def factor(self, n: int, p: int, j: int) -> CurvePoly:
        """The j-th irreducible factor at level n (1 <= j <= d - 1)."""
        if n < 1 or p < 1:
            raise ValueError("need n >= 1 and p >= 1")
        if not 1 <= j <= self.d - 1:
            raise ValueError(f"factor index must lie in [1, {self.d - 1}]")
        key = (n, p, j)
        cached = self._factors.get(key)
        if cached is not None:
            return cached
        self._check_cap(self.d ** (n - 1) * periodic_point_count(self.d, p))
        if n == 1:
            out = self.dynatomic(0, p).rotate_z(-j)
        else:
            out = self.factor(n - 1, p, j).compose_z(CurvePoly.family_map(self.d))
        self._factors[key] = out
        return out

    # -- verification -------------------------------------------------------

    def verify_identities(self, n: int, p: int) -> IdentityReport:
        """Run every structural identity at one cell (n >= 1)."""
        if n < 1 or p < 1:
            raise ValueError("need n >= 1 and p >= 1")
        d = self.d

        lhs = self.orbit_difference(n, p)
        rhs = self.orbit_difference(n - 1, p)
        for k in divisors(p):
            rhs = rhs * self.dynatomic(n, k)
        cascade_ok = lhs == rhs

        f = CurvePoly.family_map(d)
        base = self.dynatomic(0, p)
        base_ok = base.compose_z(f) == base * self.dynatomic(1, p)

        composition_ok = self.dynatomic_by_composition(n, p) == self.dynatomic(n, p)

        prod = CurvePoly.one(d)
        for j in range(1, d):
            prod = prod * self.factor(n, p, j)
        factor_ok = prod == self.dynatomic(n, p)

        nu = periodic_point_count(d, p)
        degrees_ok = (
            self.dynatomic(0, p).deg_z == nu
            and self.dynatomic(n, p).deg_z == curve_degree(d, n, p)
            and all(
                self.factor(n, p, j).deg_z == component_degree(d, n, p)
                for j in range(1, d)
            )
            and self.orbit_difference(n, p).deg_z == d ** (n + p)
        )

        return IdentityReport(
            d=d,
            n=n,
            p=p,
            cascade_product=cascade_ok,
            base_relation=base_ok,
            composition_route=composition_ok,
            factor_product=factor_ok,
            degrees=degrees_ok,
        )


def require_monic(poly: CurvePoly, what: str) -> None:
    """Guard helper for callers that assume a monic-in-z polynomial."""
    if not poly.is_monic_in_z():
        raise PreconditionViolated(f"{what} is not monic in z")
