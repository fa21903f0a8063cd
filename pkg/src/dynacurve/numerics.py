"""Floating-point side of the package.

Root finding, orbit analysis, root classification against the algebraic
factors, parameter searches, transversality data and the singular-point
survey all live here.  Everything consumes exact polynomials built by
`dynatomic` and works in double precision, escalating to mpmath only
when a classification refuses to settle.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import mpmath
import numpy as np

from .bipoly import CurvePoly, resultant_z
from .dynatomic import FamilyContext
from .errors import NonConvergence, PreconditionViolated, UnclassifiableRoot
from .invariants import factor_intersection_count, periodic_point_count

_ESCAPE_GUARD = 1e30

# bits used when a computation escalates beyond double precision;
# overridable through the environment for stubborn parameters
_WORK_PRECISION = max(120, int(os.environ.get("DYNACURVE_PRECISION", "180")))


# ---------------------------------------------------------------------------
# polynomial root finding


def _horner_pair(coeffs, z):
    """Value and derivative at z, coefficients ascending."""
    p = coeffs[-1]
    dp = 0.0 * z
    for a in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _horner_abs(abs_coeffs, r: float) -> float:
    s = 0.0
    for a in reversed(abs_coeffs):
        s = s * r + a
    return s


def _newton_polish(coeffs, z, steps: int = 4):
    for _ in range(steps):
        p, dp = _horner_pair(coeffs, z)
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) <= 1e-15 * (1.0 + abs(z)):
            break
    return z


def complex_roots(coeffs, tol: float = 1e-12, max_iter: int = 400) -> list[complex]:
    """All complex roots of a dense polynomial, coefficients ascending.

    Degrees up to 12 go through the companion matrix, larger ones through
    a simultaneous Aberth-Ehrlich iteration seeded on a circle.  The
    stopping rule is residual based: |p(z)| below tol times the sum of
    |coeff| * |z|^k, so huge coefficient ranges are harmless.  Raises
    NonConvergence if the iteration stalls.
    """
    cs = [complex(a) for a in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    at_origin = 0
    while cs[0] == 0:
        cs.pop(0)
        at_origin += 1
    roots: list[complex] = [0j] * at_origin
    deg = len(cs) - 1
    if deg == 0:
        return roots
    if deg <= 12:
        found = [complex(r) for r in np.roots(cs[::-1])]
        return roots + [_newton_polish(cs, r) for r in found]

    lead = cs[-1]
    monic = [a / lead for a in cs]
    abs_coeffs = [abs(a) for a in monic]
    # Fujiwara-style bound keeps the start circle sane even for wild inputs
    radius = 2.0 * max(
        abs(monic[deg - k]) ** (1.0 / k) for k in range(1, deg + 1)
    )
    if not math.isfinite(radius) or radius == 0.0:
        radius = 1.0
    zs = [
        0.7 * radius * cmath.exp(2j * math.pi * (k + 0.35) / deg)
        for k in range(deg)
    ]
    for _ in range(max_iter):
        settled = True
        new = list(zs)
        for i, z in enumerate(zs):
            p, dp = _horner_pair(monic, z)
            scale = max(_horner_abs(abs_coeffs, abs(z)), 1e-300)
            if abs(p) <= tol * scale:
                continue
            settled = False
            if dp == 0:
                new[i] = z * 1.000001 + 1e-6
                continue
            ratio = p / dp
            repulse = 0j
            for k, w in enumerate(zs):
                if k != i:
                    dz = z - w
                    if dz == 0:
                        dz = 1e-12 * (1.0 + abs(z)) * (1 + 1j)
                    repulse += 1.0 / dz
            denom = 1.0 - ratio * repulse
            new[i] = z - ratio if denom == 0 else z - ratio / denom
        zs = new
        if settled:
            break
    else:
        raise NonConvergence(f"root iteration stalled at degree {deg}")
    return roots + [_newton_polish(monic, z) for z in zs]


def _row_complex(row) -> list[complex]:
    """Embed a c-coefficient row, rescaling if the integers dwarf a double."""
    if not row:
        return []
    bits = 0
    for cy in row:
        for a in cy.coords:
            b = abs(a).bit_length()
            if b > bits:
                bits = b
    if bits <= 900:
        return [cy.embed(53) for cy in row]
    vals = [cy.embed(64) for cy in row]
    top = max(abs(v) for v in vals)
    return [complex((v / top).real, (v / top).imag) for v in vals]


def cluster_points(points, tol: float = 1e-8) -> list[complex]:
    """Collapse near-duplicates, keeping one representative per cluster."""
    out: list[complex] = []
    for z in sorted(points, key=lambda w: (w.real, w.imag)):
        for seen in out:
            if abs(z - seen) <= tol * (1.0 + abs(seen)):
                break
        else:
            out.append(z)
    return out


def multiset_close(xs, ys, tol: float = 1e-6) -> bool:
    """Greedy matching of two point multisets up to a tolerance."""
    if len(xs) != len(ys):
        return False
    pool = list(ys)
    for x in xs:
        best, best_dist = -1, math.inf
        for i, y in enumerate(pool):
            dist = abs(x - y)
            if dist < best_dist:
                best, best_dist = i, dist
        if best < 0 or best_dist > tol * (1.0 + abs(x)):
            return False
        pool.pop(best)
    return True


# ---------------------------------------------------------------------------
# escape test


def escape_radius(d: int, c) -> float:
    return max(2.0 ** (1.0 / (d - 1)), abs(c) ** (1.0 / (d - 1))) + 1.0


def in_multibrot(d: int, c, max_iter: int = 1024) -> bool:
    """Membership test for the degree-d connectedness locus.

    False is rigorous (the critical orbit escaped), True only means the
    orbit stayed bounded for max_iter steps.
    """
    radius = escape_radius(d, c)
    z = 0j
    cc = complex(c)
    for _ in range(max_iter):
        z = z**d + cc
        if abs(z) > radius:
            return False
    return True


# ---------------------------------------------------------------------------
# orbit analysis


def _forward_orbit(d, c, z, length):
    """[z, f(z), ..., f^length(z)], or None if the orbit blows up."""
    out = [z]
    for _ in range(length):
        if abs(z) > _ESCAPE_GUARD:
            return None
        z = z**d + c
        out.append(z)
    return out


def _collide(a, b, tol) -> bool:
    return abs(a - b) <= tol * (1.0 + max(abs(a), abs(b)))


@dataclass(frozen=True)
class OrbitType:
    preperiod: int
    period: int
    multiplier: complex


def detect_orbit_type(d, c, z, max_preperiod, max_period, tol=1e-9):
    """Smallest (preperiod, period) the orbit exhibits within the bounds.

    Returns None when no collision shows up, which for a root of one of
    the exact polynomials means the numerics need another look.
    """
    orbit = _forward_orbit(d, c, z, max_preperiod + 2 * max_period + 1)
    if orbit is None:
        return None
    for ell in range(max_preperiod + 1):
        for k in range(1, max_period + 1):
            if _collide(orbit[ell + k], orbit[ell], tol):
                mult = 1.0 + 0j
                for i in range(k):
                    w = orbit[ell + i]
                    mult = mult * (d * w ** (d - 1))
                return OrbitType(ell, k, complex(mult))
    return None


def _proper_divisors(m: int) -> list[int]:
    return [q for q in range(1, m) if m % q == 0]


# ---------------------------------------------------------------------------
# root classification


@dataclass(frozen=True)
class ClassifiedRoot:
    z: complex
    condition: str
    preperiod: int
    period: int
    multiplier: complex | None
    rotation_order: int | None
    residual: float

    def to_json_dict(self) -> dict:
        return {
            "z": [self.z.real, self.z.imag],
            "condition": self.condition,
            "preperiod": self.preperiod,
            "period": self.period,
            "multiplier": None
            if self.multiplier is None
            else [self.multiplier.real, self.multiplier.imag],
            "rotation_order": self.rotation_order,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class RootClassification:
    d: int
    n: int
    p: int
    c0: complex
    roots: tuple[ClassifiedRoot, ...]

    @property
    def counts(self) -> dict[str, int]:
        out = {"C0": 0, "C1": 0, "C2": 0, "C3": 0, "C4": 0}
        for r in self.roots:
            out[r.condition] += 1
        return out

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.roots), default=0.0)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "c0": [self.c0.real, self.c0.imag],
            "counts": self.counts,
            "roots": [r.to_json_dict() for r in self.roots],
        }


def _classify_point(d, c, z, n, p, tol, mult_tol):
    """One point against the five-way condition list; None if nothing fits."""
    orbit = _forward_orbit(d, c, z, n + 2 * p + 1)
    if orbit is None:
        return None
    zero_scale = 1.0 + abs(c)

    def near_zero(w):
        return abs(w) <= tol * zero_scale

    # tail ends on the critical point and the image lands on a p-cycle
    if n >= 1 and near_zero(orbit[n - 1]) and _collide(orbit[n + p], orbit[n], tol):
        ot = detect_orbit_type(d, c, z, n, p, tol)
        pre = ot.preperiod if ot is not None else n - 1
        per = ot.period if ot is not None else p
        mult = ot.multiplier if ot is not None else None
        return ("C4", pre, per, mult, None)

    ot = detect_orbit_type(d, c, z, n, p, tol)
    if ot is None:
        return None
    if ot.preperiod == n and ot.period == p:
        if any(near_zero(orbit[l]) for l in range(n)):
            return ("C1", n, p, ot.multiplier, None)
        if abs(ot.multiplier - 1.0) <= mult_tol:
            return ("C2", n, p, ot.multiplier, None)
        return ("C0", n, p, ot.multiplier, None)
    if ot.preperiod == n and ot.period < p and p % ot.period == 0:
        r = p // ot.period
        primitive = abs(ot.multiplier**r - 1.0) <= mult_tol and all(
            abs(ot.multiplier**q - 1.0) > mult_tol for q in _proper_divisors(r)
        )
        if primitive:
            return ("C3", n, ot.period, ot.multiplier, r)
    return None


def _classify_extended(poly: CurvePoly, d, c0, z, n, p, mult_tol):
    """Re-polish the root at extended precision and classify the refined orbit."""
    prec = _WORK_PRECISION
    with mpmath.workprec(prec):
        coeffs = poly.z_coefficients_at_mp(mpmath.mpc(c0), prec)
        zz = mpmath.mpc(z)
        for _ in range(16):
            pv, dv = _horner_pair(coeffs, zz)
            if dv == 0:
                break
            step = pv / dv
            zz = zz - step
            if abs(step) <= mpmath.mpf(2) ** (30 - prec) * (1 + abs(zz)):
                break
        verdict = _classify_point(
            d, mpmath.mpc(c0), zz, n, p, mpmath.mpf("1e-20"), mult_tol
        )
    if verdict is None:
        return None
    cond, pre, per, mult, rot = verdict
    return (cond, pre, per, None if mult is None else complex(mult), rot)


def _merge_multiple_roots(poly: CurvePoly, c0, roots, tol=1e-6):
    """Snap clusters of nearly coincident roots onto one refined value.

    A k-fold root comes out of the solver as k points spread over a disc of
    radius about eps**(1/k), and double-precision evaluation cannot place it
    any better because of cancellation.  The cluster centroid is therefore
    re-polished against the exact coefficients at extended precision, with
    Newton steps scaled by k so a k-fold root converges quadratically.
    Simple roots pass through untouched.
    """
    remaining = list(range(len(roots)))
    result = list(roots)
    prec = _WORK_PRECISION
    coeffs = None
    while remaining:
        i = remaining.pop(0)
        cluster = [i]
        radius = tol * (1.0 + abs(roots[i]))
        for j in remaining[:]:
            if abs(roots[j] - roots[i]) <= radius:
                cluster.append(j)
                remaining.remove(j)
        if len(cluster) == 1:
            continue
        k = len(cluster)
        with mpmath.workprec(prec):
            if coeffs is None:
                coeffs = poly.z_coefficients_at_mp(mpmath.mpc(c0), prec)
            z = sum(mpmath.mpc(roots[j]) for j in cluster) / k
            for _ in range(24):
                value, deriv = _horner_pair(coeffs, z)
                if deriv == 0:
                    break
                step = k * value / deriv
                z -= step
                if abs(step) <= mpmath.mpf(2) ** (20 - prec) * (1 + abs(z)):
                    break
            merged = complex(z)
        for j in cluster:
            result[j] = merged
    return result


def classify_roots(
    ctx: FamilyContext,
    n: int,
    p: int,
    c0,
    collision_tol: float = 1e-9,
    mult_tol: float = 1e-6,
) -> RootClassification:
    """Classify every root of the exact-type polynomial at parameter c0.

    Tries the stated collision tolerance, widens it once, then makes a
    single extended-precision attempt before giving up with
    UnclassifiableRoot.
    """
    d = ctx.d
    poly = ctx.dynatomic(n, p)
    cc = complex(c0)
    coeffs = poly.z_coefficients_at(cc)
    abs_coeffs = [abs(a) for a in coeffs]
    out = []
    roots = _merge_multiple_roots(poly, cc, complex_roots(coeffs))
    for z in sorted(roots, key=lambda w: (w.real, w.imag)):
        verdict = _classify_point(d, cc, z, n, p, collision_tol, mult_tol)
        if verdict is None:
            verdict = _classify_point(d, cc, z, n, p, 10 * collision_tol, mult_tol)
        if verdict is None:
            verdict = _classify_extended(poly, d, cc, z, n, p, mult_tol)
        if verdict is None:
            raise UnclassifiableRoot(
                f"root {z} of the ({n},{p}) polynomial at c0={cc} fits no condition"
            )
        cond, pre, per, mult, rot = verdict
        value, _ = _horner_pair(coeffs, z)
        scale = max(_horner_abs(abs_coeffs, abs(z)), 1e-300)
        out.append(
            ClassifiedRoot(
                z=z,
                condition=cond,
                preperiod=pre,
                period=per,
                multiplier=mult,
                rotation_order=rot,
                residual=abs(value) / scale,
            )
        )
    return RootClassification(d, n, p, cc, tuple(out))


def exact_preperiodic_points(
    ctx: FamilyContext, n: int, p: int, c0, tol: float = 1e-9
) -> list[complex]:
    """Brute-force oracle: orbit-difference roots filtered to exact type (n, p)."""
    d = ctx.d
    cc = complex(c0)
    phi = ctx.orbit_difference(n, p)
    out = []
    for z in complex_roots(phi.z_coefficients_at(cc)):
        ot = detect_orbit_type(d, cc, z, n, p, tol)
        if ot is not None and ot.preperiod == n and ot.period == p:
            out.append(z)
    return sorted(out, key=lambda w: (w.real, w.imag))


# ---------------------------------------------------------------------------
# parameters where the critical orbit is eventually periodic


@dataclass(frozen=True)
class MisiurewiczPoint:
    c: complex
    superattracting: bool


def _critical_orbit_returns(d, c, steps, tol=1e-9) -> bool:
    z = 0j
    for _ in range(steps):
        if abs(z) > _ESCAPE_GUARD:
            return False
        z = z**d + c
        if abs(z) <= tol * (1.0 + abs(c)):
            return True
    return False


def find_misiurewicz(
    ctx: FamilyContext, n: int, p: int, j: int = 1
) -> list[MisiurewiczPoint]:
    """Parameters whose critical point sits on the chosen factor at z = 0.

    These are the roots of the factor's constant-in-z coefficient.  For
    preperiod 1 the list is exactly the period-p centers; from preperiod
    2 on it mixes genuinely preperiodic parameters with superattracting
    ones, and the flag tells them apart.
    """
    d = ctx.d
    fac = ctx.factor(n, p, j)
    coeffs = _row_complex(fac.z_coeffs[0])
    nu = periodic_point_count(d, p)
    expected = nu // d if n == 1 else nu * d ** (n - 2)
    if len(coeffs) - 1 != expected:
        raise ArithmeticError(
            f"constant row of the ({n},{p}) factor has degree {len(coeffs) - 1}, "
            f"expected {expected}"
        )
    points = [
        MisiurewiczPoint(c, _critical_orbit_returns(d, c, n + p))
        for c in complex_roots(coeffs)
    ]
    return sorted(points, key=lambda m: (m.c.real, m.c.imag))


# ---------------------------------------------------------------------------
# transversality at (c0, 0)


@dataclass(frozen=True)
class TransversalityReport:
    d: int
    n: int
    p: int
    c0: complex
    deltas: tuple[complex, ...]
    epsilons: tuple[complex, ...]
    alpha: complex
    derivative_closed_form: complex
    derivative_symbolic: complex
    relative_error: float
    rhos: tuple[complex, ...]
    lambdas: tuple[complex, ...]
    system_residual: float

    @property
    def derivative_nonzero(self) -> bool:
        return abs(self.derivative_closed_form) > 1e-8

    def to_json_dict(self) -> dict:
        pack = lambda w: [w.real, w.imag]
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "c0": pack(self.c0),
            "deltas": [pack(w) for w in self.deltas],
            "epsilons": [pack(w) for w in self.epsilons],
            "alpha": pack(self.alpha),
            "derivative_closed_form": pack(self.derivative_closed_form),
            "derivative_symbolic": pack(self.derivative_symbolic),
            "relative_error": self.relative_error,
            "system_residual": self.system_residual,
            "derivative_nonzero": self.derivative_nonzero,
        }


def transversality_check(
    ctx: FamilyContext, n: int, p: int, c0, tol: float = 1e-9
) -> TransversalityReport:
    """Multiplier data at a strictly preperiodic critical orbit.

    Checks that the parameter derivative of the orbit-difference
    polynomial at (c0, 0) matches its closed form in the tail and cycle
    multipliers, and that the explicit quadratic-differential
    coefficient vector solves the associated linear system.  Raises
    PreconditionViolated when the critical orbit is superattracting or
    has the wrong exact type.
    """
    d = ctx.d
    cc = complex(c0)
    if n < 2:
        raise PreconditionViolated(
            "preperiod below 2 leaves no tail multipliers; such parameters "
            "are superattracting centers"
        )
    if _critical_orbit_returns(d, cc, n + p, tol):
        raise PreconditionViolated(f"critical orbit at c0={cc} is superattracting")
    ot = detect_orbit_type(d, cc, 0j, n, p, tol)
    if ot is None or ot.preperiod != n or ot.period != p:
        got = None if ot is None else (ot.preperiod, ot.period)
        raise PreconditionViolated(
            f"critical orbit at c0={cc} has type {got}, wanted ({n}, {p})"
        )

    orbit = _forward_orbit(d, cc, 0j, n + p)
    ys = orbit[1:n]  # y_1 .. y_{n-1}
    zs = orbit[n : n + p]  # z_0 .. z_{p-1}
    epsilons = [d * y ** (d - 1) for y in ys]
    deltas = [d * z ** (d - 1) for z in zs]

    delta_all = 1.0 + 0j
    for w in deltas:
        delta_all *= w
    # alpha = (prod(delta) - 1) * (1 + eps_{n-1} + eps_{n-1} eps_{n-2} + ...)
    tail_sum = 0j
    for start in range(n):
        term = 1.0 + 0j
        for i in range(start, n - 1):
            term *= epsilons[i]
        tail_sum += term
    alpha = (delta_all - 1.0) * tail_sum

    cycle_sum = 0j
    for start in range(1, p + 1):
        term = 1.0 + 0j
        for i in range(start, p):
            term *= deltas[i]
        cycle_sum += term
    closed = alpha + cycle_sum

    symbolic = ctx.orbit_difference(n, p).derivative_c().evaluate(0j, cc)
    rel_err = abs(symbolic - closed) / max(abs(symbolic), abs(closed), 1e-300)

    rhos = []
    for k in range(p):
        term = 1.0 + 0j
        for i in range(k, p):
            term *= deltas[i]
        rhos.append(term)
    lambdas = []
    for l in range(1, n):
        term = delta_all - 1.0
        for i in range(l - 1, n - 1):
            term *= epsilons[i]
        lambdas.append(term)

    rows = []
    for k in range(p - 1):
        rows.append(rhos[k] / deltas[k] - rhos[k + 1])
    rows.append(-rhos[0] + rhos[p - 1] / deltas[p - 1] + lambdas[-1] / epsilons[-1])
    rows.append(
        lambdas[0]
        + sum(lambdas[l] / epsilons[l] for l in range(n - 1))
        - alpha
    )
    for l in range(n - 2):
        rows.append(lambdas[l] / epsilons[l] - lambdas[l + 1])

    return TransversalityReport(
        d=d,
        n=n,
        p=p,
        c0=cc,
        deltas=tuple(deltas),
        epsilons=tuple(epsilons),
        alpha=alpha,
        derivative_closed_form=closed,
        derivative_symbolic=symbolic,
        relative_error=rel_err,
        rhos=tuple(rhos),
        lambdas=tuple(lambdas),
        system_residual=max(abs(r) for r in rows),
    )


# ---------------------------------------------------------------------------
# common roots of distinct factors


@dataclass(frozen=True)
class SingularPoint:
    c: complex
    z: complex
    factors: tuple[int, ...]
    gradients: tuple[tuple[complex, complex], ...]
    preperiod: int
    period: int
    counted: bool
    degenerate: bool
    gradient_min_norm: float
    min_tangent_angle: float

    def to_json_dict(self) -> dict:
        return {
            "c": [self.c.real, self.c.imag],
            "z": [self.z.real, self.z.imag],
            "factors": list(self.factors),
            "preperiod": self.preperiod,
            "period": self.period,
            "counted": self.counted,
            "degenerate": self.degenerate,
            "gradient_min_norm": self.gradient_min_norm,
            "min_tangent_angle": self.min_tangent_angle,
        }


@dataclass(frozen=True)
class SingularReport:
    d: int
    n: int
    p: int
    points: tuple[SingularPoint, ...]
    counted: int
    predicted: int

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "counted": self.counted,
            "predicted": self.predicted,
            "points": [pt.to_json_dict() for pt in self.points],
        }


def _nth_roots(w, d: int) -> list[complex]:
    if w == 0:
        return [0j]
    r = abs(w) ** (1.0 / d)
    theta = cmath.phase(w)
    return [r * cmath.exp(1j * (theta + 2 * math.pi * k) / d) for k in range(d)]


def _tangent_angle(g1, g2) -> float:
    n1 = math.hypot(abs(g1[0]), abs(g1[1]))
    n2 = math.hypot(abs(g2[0]), abs(g2[1]))
    if n1 == 0 or n2 == 0:
        return 0.0
    cross = abs(g1[0] * g2[1] - g1[1] * g2[0]) / (n1 * n2)
    return math.asin(min(1.0, cross))


def singular_point_report(
    ctx: FamilyContext, n: int, p: int, tol: float = 1e-8
) -> SingularReport:
    """Survey every point where two distinct factors meet.

    A common root at tail length n pulls back from one at tail length 1,
    so the search runs a resultant at the bottom level and then takes
    d-th root preimages.  Points whose orbit reaches the critical point
    at exactly the right moment carry counted=True and are the
    transversal intersections; the rest (orbits hitting 0 early, e.g.
    over superattracting centers) are flagged degenerate.
    """
    d = ctx.d
    predicted = factor_intersection_count(d, n, p) if d >= 3 else 0
    pairs = [(i, j) for i in range(1, d) for j in range(i + 1, d)]
    if not pairs:
        return SingularReport(d, n, p, (), 0, predicted)

    level1 = {j: ctx.factor(1, p, j) for j in range(1, d)}
    candidates: list[complex] = []
    for i, j in pairs:
        res = resultant_z(level1[i], level1[j])
        if res.is_zero:
            raise ArithmeticError(f"factors {i} and {j} share a component")
        candidates.extend(complex_roots(_row_complex(res.z_coeffs[0])))
    candidates = cluster_points(candidates, 1e-6)

    points: list[SingularPoint] = []
    facs = {j: ctx.factor(n, p, j) for j in range(1, d)}
    grads = {j: (facs[j].derivative_c(), facs[j].derivative_z()) for j in facs}
    for c0 in candidates:
        roots_at = {j: complex_roots(level1[j].z_coefficients_at(c0)) for j in level1}
        common: list[complex] = []
        for i, j in pairs:
            for zi in roots_at[i]:
                for zj in roots_at[j]:
                    if abs(zi - zj) <= 1e-6 * (1.0 + abs(zi)):
                        common.append(0.5 * (zi + zj))
        common = cluster_points(common, 1e-6)
        if not common:
            continue
        pulled = common
        for _ in range(n - 1):
            nxt: list[complex] = []
            for w in pulled:
                nxt.extend(_nth_roots(w - c0, d))
            pulled = cluster_points(nxt, 1e-9)
        fac_coeffs = {j: facs[j].z_coefficients_at(c0) for j in facs}
        fac_roots: dict[int, list[complex]] = {}
        for z0 in pulled:
            vanishing = []
            gradients = []
            for j in sorted(facs):
                coeffs = fac_coeffs[j]
                value, _ = _horner_pair(coeffs, z0)
                scale = max(_horner_abs([abs(a) for a in coeffs], abs(z0)), 1e-300)
                hit = abs(value) / scale <= tol
                if not hit:
                    # the relative residual is blind near the origin (value
                    # and scale both shrink with |z0|), so fall back to the
                    # distance from the factor's actual root set
                    if j not in fac_roots:
                        fac_roots[j] = complex_roots(coeffs)
                    hit = min(
                        abs(z0 - w) for w in fac_roots[j]
                    ) <= 1e-6 * (1.0 + abs(z0))
                if hit:
                    vanishing.append(j)
                    dc, dz = grads[j]
                    gradients.append(
                        (dc.evaluate(z0, c0), dz.evaluate(z0, c0))
                    )
            if len(vanishing) < 2:
                continue
            ot = detect_orbit_type(d, c0, z0, n, p)
            pre = -1 if ot is None else ot.preperiod
            per = 0 if ot is None else ot.period
            tail = _forward_orbit(d, c0, z0, max(n - 1, 0))
            hits = tail is not None and abs(tail[n - 1]) <= 1e-7 * (1.0 + abs(c0))
            counted = hits and pre == n - 1 and per == p
            angle = math.inf
            for a in range(len(gradients)):
                for b in range(a + 1, len(gradients)):
                    angle = min(angle, _tangent_angle(gradients[a], gradients[b]))
            if not math.isfinite(angle):
                angle = 0.0
            points.append(
                SingularPoint(
                    c=c0,
                    z=z0,
                    factors=tuple(vanishing),
                    gradients=tuple(gradients),
                    preperiod=pre,
                    period=per,
                    counted=counted,
                    degenerate=not counted,
                    gradient_min_norm=min(
                        math.hypot(abs(gc), abs(gz)) for gc, gz in gradients
                    ),
                    min_tangent_angle=angle,
                )
            )
    points.sort(key=lambda pt: (pt.c.real, pt.c.imag, pt.z.real, pt.z.imag))
    return SingularReport(
        d=d,
        n=n,
        p=p,
        points=tuple(points),
        counted=sum(1 for pt in points if pt.counted),
        predicted=predicted,
    )
