"""Loop tracking over the parameter plane and the permutation groups it generates.

The exact-type polynomial is a branched cover of the c-line.  This module
finds the branch values, builds a lasso around each one from a fixed
basepoint, continues the fiber along every lasso, and studies the
permutations that come back: group order, block transitivity, the
projection and rotation equivariances, and the column decomposition of
the level-(n) fiber over the level-(n-1) fiber.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .bipoly import CurvePoly, resultant_z
from .dynatomic import FamilyContext
from .errors import (
    CapExceeded,
    DecompositionFailure,
    PreconditionViolated,
    TrackingCollision,
)
from .invariants import (
    ends_count,
    galois_order,
    wreath_kernel_rank,
)
from .itinerary import trace_itinerary
from .numerics import complex_roots

BASEPOINT = 3.0 + 0.0j

_GROUP_CAP = 10**6


# ---------------------------------------------------------------------------
# branch values


def _row_to_cpoly(row):
    """Coefficients of one c-polynomial row as exact double embeddings."""
    return [cy.embed(53) for cy in row]


def _croots(poly: CurvePoly):
    """Roots in c of a polynomial that no longer involves z."""
    if len(poly.z_coeffs) != 1:
        raise PreconditionViolated("polynomial still depends on z")
    coeffs = poly.z_coeffs[0]
    scale = max(abs(a) for a in (c.embed(64) for c in coeffs))
    cpoly = [complex(c.embed(64) / scale) for c in coeffs]
    while cpoly and abs(cpoly[-1]) == 0:
        cpoly.pop()
    if len(cpoly) <= 1:
        return []
    return complex_roots(cpoly)


def _cluster_centroids(points, tol):
    """Collapse near-duplicates onto cluster centroids.

    Discriminants carry their roots with multiplicity, and a root of
    multiplicity m comes back from the solver as m points spread over
    roughly eps**(1/m).  Averaging the cluster recovers a far better
    location than any single member.
    """
    groups: list[list[complex]] = []
    for z in sorted(points, key=lambda w: (w.real, w.imag)):
        for g in groups:
            if abs(z - g[0]) <= tol * (1.0 + abs(g[0])):
                g.append(z)
                break
        else:
            groups.append([z])
    return [sum(g) / len(g) for g in groups]


def critical_values(ctx: FamilyContext, n: int, p: int) -> list[complex]:
    """Parameters where the fiber of the exact-type polynomial degenerates.

    Collects, factor by factor, the zeros of the z-discriminant, plus the
    parameters where two distinct factors share a root.  Loops around the
    latter can act trivially, but the tracker must still keep clear of
    them.  For n = 0 the polynomial itself is used.
    """
    found: list[complex] = []
    if n == 0:
        q = ctx.dynatomic(0, p)
        found.extend(_croots(resultant_z(q, q.derivative_z())))
    else:
        factors = [ctx.factor(n, p, j) for j in range(1, ctx.d)]
        for q in factors:
            found.extend(_croots(resultant_z(q, q.derivative_z())))
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                res = resultant_z(factors[i], factors[j])
                if res.is_zero:
                    raise PreconditionViolated(
                        f"factors {i + 1} and {j + 1} share a component"
                    )
                found.extend(_croots(res))
    vals = _cluster_centroids(found, 1e-4)
    return sorted(vals, key=lambda w: (w.real, w.imag))


# ---------------------------------------------------------------------------
# lasso construction


def _arc(center, radius, a_from, sweep, steps):
    """Sample an arc around center, open at the starting point."""
    return [
        center + radius * cmath.exp(1j * (a_from + sweep * k / steps))
        for k in range(1, steps + 1)
    ]


def _segment_with_detours(start, end, obstacles, radii, spacing=0.08):
    """Straight path from start to end, bending around listed obstacles.

    Whenever the segment passes through an obstacle's disc the chord is
    replaced by the arc on the left-hand side of the travel direction.
    Obstacle discs are assumed pairwise disjoint and to contain neither
    endpoint, which the radius policy in `build_loops` guarantees.
    """
    direction = end - start
    length = abs(direction)
    u = direction / length
    crossings = []
    for w, r in zip(obstacles, radii):
        # quadratic for |start + t*direction - w| = r, t in (0, 1)
        rel = start - w
        b = (rel.real * direction.real + rel.imag * direction.imag)
        disc = b * b - length**2 * (abs(rel) ** 2 - r * r)
        if disc <= 0:
            continue
        sq = math.sqrt(disc)
        t1 = (-b - sq) / length**2
        t2 = (-b + sq) / length**2
        if t2 <= 0 or t1 >= 1:
            continue
        crossings.append((t1, t2, w, r))
    crossings.sort()
    pts = []
    cursor = 0.0

    def walk_to(t):
        a = start + cursor * direction
        b_ = start + t * direction
        steps = max(1, int(abs(b_ - a) / spacing))
        pts.extend(a + (b_ - a) * k / steps for k in range(1, steps + 1))

    left = 1j * u
    for t1, t2, w, r in crossings:
        walk_to(t1)
        cursor = t1
        entry = start + t1 * direction
        exit_ = start + t2 * direction
        a1 = cmath.phase(entry - w)
        a2 = cmath.phase(exit_ - w)
        a_left = cmath.phase(left)
        ccw_sweep = (a2 - a1) % (2 * math.pi)
        left_offset = (a_left - a1) % (2 * math.pi)
        if left_offset < ccw_sweep:
            sweep = ccw_sweep
        else:
            sweep = ccw_sweep - 2 * math.pi
        pts.extend(_arc(w, r, a1, sweep, 24))
        cursor = t2
    walk_to(1.0)
    return pts


@dataclass(frozen=True)
class Lasso:
    """A loop from the basepoint around exactly one branch value."""

    center: complex
    radius: float
    samples: tuple[complex, ...]
    departure_key: float


def build_loops(values, basepoint=BASEPOINT) -> list[Lasso]:
    """One lasso per branch value, ordered so their product contracts to
    the loop around infinity.

    Each lasso runs straight at its value, detouring around the discs of
    the other values, circles its own value once counterclockwise and
    returns the same way.  The lassos only meet at the basepoint, so the
    contraction order is the counterclockwise order of their departure
    directions, swept from the initial tangent of the infinity circle;
    collinear values tie-break nearest first because the farther lasso
    bends left, onto the later side of the sweep.
    """
    vals = list(values)
    if any(abs(v - basepoint) < 0.5 for v in vals):
        raise PreconditionViolated("a branch value sits on the basepoint")
    radii = []
    for i, v in enumerate(vals):
        sep = min(
            [abs(v - w) for k, w in enumerate(vals) if k != i]
            + [abs(v - basepoint), 1.7]
        )
        radii.append(0.35 * sep)
    loops = []
    sweep_start = cmath.phase(1j * basepoint)
    for i, v in enumerate(vals):
        u = (v - basepoint) / abs(v - basepoint)
        entry = v - radii[i] * u
        obstacles = [w for k, w in enumerate(vals) if k != i]
        obst_radii = [r for k, r in enumerate(radii) if k != i]
        out = _segment_with_detours(basepoint, entry, obstacles, obst_radii)
        a0 = cmath.phase(entry - v)
        circle = _arc(v, radii[i], a0, 2 * math.pi, 48)
        back = tuple(reversed(out[:-1])) + (basepoint,)
        samples = (basepoint,) + tuple(out) + tuple(circle) + back
        key = (cmath.phase(u) - sweep_start) % (2 * math.pi)
        loops.append(Lasso(v, radii[i], samples, key))
    loops.sort(key=lambda l: (l.departure_key, abs(l.center - basepoint)))
    return loops


def infinity_loop(basepoint=BASEPOINT, steps=192) -> tuple[complex, ...]:
    """Counterclockwise circle through the basepoint around the origin."""
    r = abs(basepoint)
    a0 = cmath.phase(basepoint)
    return tuple(
        r * cmath.exp(1j * (a0 + 2 * math.pi * k / steps))
        for k in range(steps + 1)
    )


# ---------------------------------------------------------------------------
# continuation of fibers


def _coeff_rows(poly: CurvePoly):
    return [_row_to_cpoly(row) for row in poly.z_coeffs]


def _coeffs_at(rows, c):
    out = []
    for row in rows:
        acc = 0.0 * c
        for a in reversed(row):
            acc = acc * c + a
        out.append(acc)
    return out


def _newton_once(coeffs, z, steps=24):
    tol = 1e-13
    for _ in range(steps):
        p = coeffs[-1]
        dp = 0.0 * z
        for a in reversed(coeffs[:-1]):
            dp = dp * z + p
            p = p * z + a
        if dp == 0:
            return None
        step = p / dp
        z = z - step
        if abs(step) <= tol * (1.0 + abs(z)):
            return z
    return None


def _min_separation(zs) -> float:
    best = math.inf
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            dist = abs(zs[i] - zs[j])
            if dist < best:
                best = dist
    return best


def track_roots(rows, samples, start_roots, max_depth=48):
    """Continue every fiber point along the sample path, order preserved.

    Each step Newton-corrects all roots at the next parameter and insists
    that every root moved less than half the current fiber separation; a
    failed step is bisected.  Exhausting the bisection depth raises
    TrackingCollision.
    """
    zs = list(start_roots)
    c_cur = samples[0]
    pending = list(reversed(samples[1:]))
    depth = 0
    while pending:
        c_next = pending[-1]
        if c_next == c_cur:
            pending.pop()
            continue
        sep = _min_separation(zs)
        coeffs = _coeffs_at(rows, c_next)
        moved = []
        ok = True
        for z in zs:
            z_new = _newton_once(coeffs, z)
            if z_new is None or abs(z_new - z) > 0.45 * sep:
                ok = False
                break
            moved.append(z_new)
        if ok and _min_separation(moved) > 0.25 * sep:
            zs = moved
            c_cur = c_next
            pending.pop()
            depth = 0
            continue
        depth += 1
        if depth > max_depth:
            raise TrackingCollision(
                f"continuation stalled between {c_cur} and {c_next}"
            )
        pending.append((c_cur + c_next) / 2)
    return zs


def _match_permutation(base_roots, end_roots, tol=1e-6):
    """sigma with end_roots[i] == base_roots[sigma[i]], strict and unique."""
    sigma = []
    for z in end_roots:
        dists = sorted(
            (abs(z - w), j) for j, w in enumerate(base_roots)
        )
        if dists[0][0] > tol * (1.0 + abs(z)):
            raise TrackingCollision(
                f"tracked point {z} returned off the fiber by {dists[0][0]}"
            )
        sigma.append(dists[0][1])
    if len(set(sigma)) != len(sigma):
        raise TrackingCollision("two tracked points returned to one root")
    return tuple(sigma)


def loop_permutation(rows, base_roots, samples) -> tuple[int, ...]:
    end = track_roots(rows, samples, base_roots)
    return _match_permutation(base_roots, end)


# ---------------------------------------------------------------------------
# permutation utilities


def compose(sigma, tau):
    """Permutation doing tau first, then sigma."""
    return tuple(sigma[t] for t in tau)


def _identity(size):
    return tuple(range(size))


def _cycle_count(sigma) -> int:
    seen = [False] * len(sigma)
    cycles = 0
    for i in range(len(sigma)):
        if seen[i]:
            continue
        cycles += 1
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
    return cycles


def generate_group(generators, cap=_GROUP_CAP) -> set:
    """Closure of the generators under composition, breadth first."""
    if not generators:
        return set()
    size = len(generators[0])
    group = {_identity(size)}
    frontier = [_identity(size)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = compose(s, g)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
                    if len(group) > cap:
                        raise CapExceeded(
                            f"group closure passed {cap} elements"
                        )
        frontier = nxt
    return group


def orbits(generators, size):
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        for i, gi in enumerate(g):
            ri, rj = find(i), find(gi)
            if ri != rj:
                parent[ri] = rj
    return {find(i) for i in range(size)}, find


# ---------------------------------------------------------------------------
# the full survey for one curve


@dataclass(frozen=True)
class MonodromyReport:
    d: int
    n: int
    p: int
    basepoint: complex
    branch_values: tuple[complex, ...]
    base_roots: tuple[complex, ...]
    factor_of_root: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]
    infinity_permutation: tuple[int, ...]
    group_order: int

    @property
    def product_matches_infinity(self) -> bool:
        acc = _identity(len(self.infinity_permutation))
        for g in self.generators:
            acc = compose(g, acc)
        return acc == self.infinity_permutation

    @property
    def infinity_cycles(self) -> int:
        return _cycle_count(self.infinity_permutation)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "basepoint": [self.basepoint.real, self.basepoint.imag],
            "branch_values": [[v.real, v.imag] for v in self.branch_values],
            "base_roots": [[z.real, z.imag] for z in self.base_roots],
            "factor_of_root": list(self.factor_of_root),
            "generators": [list(g) for g in self.generators],
            "infinity_permutation": list(self.infinity_permutation),
            "group_order": self.group_order,
            "product_matches_infinity": self.product_matches_infinity,
        }


def _factor_membership(ctx, n, p, roots, c0):
    if n == 0 or ctx.d == 2:
        return tuple(1 for _ in roots)
    factors = [(j, ctx.factor(n, p, j)) for j in range(1, ctx.d)]
    out = []
    for z in roots:
        best = None
        for j, q in factors:
            val = abs(q.evaluate(z, c0))
            if best is None or val < best[1]:
                best = (j, val)
        out.append(best[0])
    return tuple(out)


def monodromy_report(ctx: FamilyContext, n: int, p: int) -> MonodromyReport:
    """Track every lasso and the loop at infinity, then close up the group."""
    poly = ctx.dynatomic(n, p)
    rows = _coeff_rows(poly)
    base_roots = tuple(
        sorted(
            complex_roots(_coeffs_at(rows, BASEPOINT)),
            key=lambda w: (w.real, w.imag),
        )
    )
    if len(base_roots) != poly.deg_z:
        raise TrackingCollision("fiber over the basepoint is deficient")
    values = critical_values(ctx, n, p)
    loops = build_loops(values, BASEPOINT)
    gens = tuple(
        loop_permutation(rows, base_roots, lasso.samples) for lasso in loops
    )
    sigma_inf = loop_permutation(rows, base_roots, infinity_loop(BASEPOINT))
    group = generate_group(list(gens) or [_identity(len(base_roots))])
    return MonodromyReport(
        d=ctx.d,
        n=n,
        p=p,
        basepoint=BASEPOINT,
        branch_values=tuple(values),
        base_roots=base_roots,
        factor_of_root=_factor_membership(ctx, n, p, base_roots, BASEPOINT),
        generators=gens,
        infinity_permutation=sigma_inf,
        group_order=len(group),
    )


# ---------------------------------------------------------------------------
# structural verification


def _projection_map(ctx, n, p, base_roots, lower_roots, c0, tol=1e-6):
    """Index map sending a fiber point to its image point one level down."""
    cc = complex(c0)
    out = []
    for z in base_roots:
        w = z**ctx.d + cc
        dists = sorted((abs(w - y), k) for k, y in enumerate(lower_roots))
        if dists[0][0] > tol * (1.0 + abs(w)):
            raise DecompositionFailure(
                f"image {w} missed the lower fiber by {dists[0][0]}"
            )
        out.append(dists[0][1])
    return tuple(out)


def _rotation_map(d, base_roots, tol=1e-6):
    omega = cmath.exp(2j * math.pi / d)
    out = []
    for z in base_roots:
        w = omega * z
        dists = sorted((abs(w - y), k) for k, y in enumerate(base_roots))
        if dists[0][0] > tol * (1.0 + abs(w)):
            raise DecompositionFailure(
                f"rotated point {w} missed the fiber by {dists[0][0]}"
            )
        out.append(dists[0][1])
    if len(set(out)) != len(out):
        raise DecompositionFailure("rotation did not permute the fiber")
    return tuple(out)


@dataclass(frozen=True)
class GaloisVerification:
    d: int
    n: int
    p: int
    group_order: int
    expected_order: int
    product_matches_infinity: bool
    ends_match_infinity_cycles: bool
    factor_transitive: bool
    projection_equivariant: bool | None
    rotation_equivariant: bool | None
    kernel_size: int | None
    expected_kernel: int | None

    @property
    def all_hold(self) -> bool:
        checks = [
            self.group_order == self.expected_order,
            self.product_matches_infinity,
            self.ends_match_infinity_cycles,
            self.factor_transitive,
        ]
        for flag in (self.projection_equivariant, self.rotation_equivariant):
            if flag is not None:
                checks.append(flag)
        if self.kernel_size is not None:
            checks.append(self.kernel_size == self.expected_kernel)
        return all(checks)

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "group_order": self.group_order,
            "expected_order": self.expected_order,
            "product_matches_infinity": self.product_matches_infinity,
            "ends_match_infinity_cycles": self.ends_match_infinity_cycles,
            "factor_transitive": self.factor_transitive,
            "projection_equivariant": self.projection_equivariant,
            "rotation_equivariant": self.rotation_equivariant,
            "kernel_size": self.kernel_size,
            "expected_kernel": self.expected_kernel,
            "all_hold": self.all_hold,
        }


def verify_galois_properties(
    ctx: FamilyContext, n: int, p: int, report: MonodromyReport | None = None
) -> GaloisVerification:
    """Check the computed monodromy group against the structure theory.

    Beyond the order formula this verifies transitivity on every factor's
    roots, that the lasso product contracts to the loop at infinity whose
    cycles count the curve ends, and (when a lower level exists) that the
    generators commute with the projection one level down and with the
    fiberwise rotation.
    """
    if report is None:
        report = monodromy_report(ctx, n, p)
    d = ctx.d
    size = len(report.base_roots)
    expected = galois_order(d, n, p)

    _, find = orbits(report.generators, size)
    blocks = {}
    for i, j in enumerate(report.factor_of_root):
        blocks.setdefault(j, set()).add(find(i))
    factor_transitive = all(len(reps) == 1 for reps in blocks.values())

    total_ends = ends_count(d, n, p) * (d - 1 if n >= 1 else 1)
    ends_match = report.infinity_cycles == total_ends

    projection_ok = None
    kernel_size = None
    expected_kernel = None
    if n >= 1:
        lower_poly = ctx.dynatomic(n - 1, p)
        lower_rows = _coeff_rows(lower_poly)
        lower_roots = tuple(
            sorted(
                complex_roots(_coeffs_at(lower_rows, BASEPOINT)),
                key=lambda w: (w.real, w.imag),
            )
        )
        proj = _projection_map(ctx, n, p, report.base_roots, lower_roots, BASEPOINT)
        values = critical_values(ctx, n, p)
        loops = build_loops(values, BASEPOINT)
        projection_ok = True
        lower_gens = []
        for lasso, sigma in zip(loops, report.generators):
            tau = loop_permutation(lower_rows, lower_roots, lasso.samples)
            lower_gens.append(tau)
            if any(proj[sigma[i]] != tau[proj[i]] for i in range(size)):
                projection_ok = False
        if n >= 2 and projection_ok:
            group = generate_group(list(report.generators))
            kernel_size = 0
            for g in group:
                induced = {}
                good = True
                for i in range(size):
                    y = proj[i]
                    img = proj[g[i]]
                    if induced.setdefault(y, img) != img:
                        good = False
                        break
                if not good:
                    raise DecompositionFailure(
                        "a group element does not descend one level"
                    )
                if all(induced[y] == y for y in induced):
                    kernel_size += 1
            expected_kernel = d ** wreath_kernel_rank(d, n, p)

    rotation_ok = None
    if n >= 2:
        rot = _rotation_map(d, report.base_roots)
        rotation_ok = all(
            tuple(g[rot[i]] for i in range(size))
            == tuple(rot[g[i]] for i in range(size))
            for g in report.generators
        )

    return GaloisVerification(
        d=d,
        n=n,
        p=p,
        group_order=report.group_order,
        expected_order=expected,
        product_matches_infinity=report.product_matches_infinity,
        ends_match_infinity_cycles=ends_match,
        factor_transitive=factor_transitive,
        projection_equivariant=projection_ok,
        rotation_equivariant=rotation_ok,
        kernel_size=kernel_size,
        expected_kernel=expected_kernel,
    )


# ---------------------------------------------------------------------------
# wreath column structure


@dataclass(frozen=True)
class WreathDecomposition:
    d: int
    n: int
    p: int
    columns: tuple[tuple[int, ...], ...]
    pairs_checked: int
    homomorphism_holds: bool
    kernel_size: int
    expected_kernel: int

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "columns": [list(col) for col in self.columns],
            "pairs_checked": self.pairs_checked,
            "homomorphism_holds": self.homomorphism_holds,
            "kernel_size": self.kernel_size,
            "expected_kernel": self.expected_kernel,
        }


def wreath_decompose(
    ctx: FamilyContext,
    n: int,
    p: int,
    report: MonodromyReport | None = None,
    pairs: int = 60,
    seed: int = 20210,
) -> WreathDecomposition:
    """Split each group element into a base permutation and column shifts.

    The fiber one level down indexes the columns; within a column the
    points form one rotation orbit, labelled by powers of the rotation.
    Every element must send columns to columns acting on labels by a
    constant shift, and on random pairs the shifts must compose by the
    twisted product rule.
    """
    if n < 2:
        raise PreconditionViolated("column structure needs at least two levels")
    if report is None:
        report = monodromy_report(ctx, n, p)
    d = ctx.d
    size = len(report.base_roots)
    lower_poly = ctx.dynatomic(n - 1, p)
    lower_rows = _coeff_rows(lower_poly)
    lower_roots = tuple(
        sorted(
            complex_roots(_coeffs_at(lower_rows, BASEPOINT)),
            key=lambda w: (w.real, w.imag),
        )
    )
    proj = _projection_map(ctx, n, p, report.base_roots, lower_roots, BASEPOINT)
    rot = _rotation_map(d, report.base_roots)

    columns = []
    label = [None] * size
    for y in range(len(lower_roots)):
        members = [i for i in range(size) if proj[i] == y]
        if len(members) != d:
            raise DecompositionFailure(
                f"column over point {y} has {len(members)} members, wanted {d}"
            )
        i0 = min(members)
        col = [i0]
        label[i0] = 0
        cur = i0
        for k in range(1, d):
            cur = rot[cur]
            if proj[cur] != y or label[cur] is not None:
                raise DecompositionFailure(
                    f"rotation left column {y} after {k} steps"
                )
            label[cur] = k
            col.append(cur)
        columns.append(tuple(col))

    def split(g):
        base = {}
        shift = {}
        for y, col in enumerate(columns):
            img_col = proj[g[col[0]]]
            sh = (label[g[col[0]]] - label[col[0]]) % d
            for i in col:
                if proj[g[i]] != img_col or (label[g[i]] - label[i]) % d != sh:
                    raise DecompositionFailure(
                        f"element does not shift column {y} uniformly"
                    )
            base[y] = img_col
            shift[y] = sh
        return base, shift

    group = sorted(generate_group(list(report.generators)))
    rng = random.Random(seed)
    holds = True
    checked = 0
    for _ in range(pairs):
        g = rng.choice(group)
        h = rng.choice(group)
        gh = compose(g, h)
        base_g, shift_g = split(g)
        base_h, shift_h = split(h)
        base_gh, shift_gh = split(gh)
        for y in base_h:
            if base_gh[y] != base_g[base_h[y]]:
                holds = False
            if shift_gh[y] != (shift_g[base_h[y]] + shift_h[y]) % d:
                holds = False
        checked += 1

    kernel = 0
    for g in group:
        base_g, _ = split(g)
        if all(base_g[y] == y for y in base_g):
            kernel += 1

    return WreathDecomposition(
        d=d,
        n=n,
        p=p,
        columns=tuple(columns),
        pairs_checked=checked,
        homomorphism_holds=holds,
        kernel_size=kernel,
        expected_kernel=d ** wreath_kernel_rank(d, n, p),
    )


# ---------------------------------------------------------------------------
# crossing the zero parameter ray


@dataclass(frozen=True)
class ZeroRayCrossing:
    d: int
    n: int
    p: int
    factor: int
    c_before: complex
    c_after: complex
    shift: int
    consistent: bool

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "d": self.d,
            "n": self.n,
            "p": self.p,
            "factor": self.factor,
            "c_before": [self.c_before.real, self.c_before.imag],
            "c_after": [self.c_after.real, self.c_after.imag],
            "shift": self.shift,
            "consistent": self.consistent,
        }


def zero_ray_rotation(
    ctx: FamilyContext, n: int, p: int, j: int = 1, angle: float = 0.15
) -> ZeroRayCrossing:
    """Carry one factor's fiber across the zero parameter ray.

    The parameter walks counterclockwise along the circle of radius 3
    through the positive real axis.  Every tracked point's symbol
    sequence must come back shifted by the same amount, and the
    counterclockwise crossing shifts every symbol up by one.
    """
    if n < 1:
        raise PreconditionViolated("needs a preperiodic factor")
    fac = ctx.factor(n, p, j)
    rows = _coeff_rows(fac)
    r = abs(BASEPOINT)
    c_a = r * cmath.exp(-1j * angle)
    c_b = r * cmath.exp(1j * angle)
    samples = tuple(
        r * cmath.exp(1j * (-angle + 2 * angle * k / 64)) for k in range(65)
    )
    start = sorted(
        complex_roots(_coeffs_at(rows, c_a)), key=lambda w: (w.real, w.imag)
    )
    its_before = [trace_itinerary(ctx.d, c_a, z, n, p) for z in start]
    end = track_roots(rows, samples, start)
    its_after = [trace_itinerary(ctx.d, c_b, z, n, p) for z in end]
    shifts = set()
    for before, after in zip(its_before, its_after):
        for s in range(ctx.d):
            if before.rotated(s) == after:
                shifts.add(s)
                break
        else:
            shifts.add(-1)
    consistent = len(shifts) == 1 and -1 not in shifts
    shift = shifts.pop() if len(shifts) == 1 else -1
    return ZeroRayCrossing(
        d=ctx.d,
        n=n,
        p=p,
        factor=j,
        c_before=c_a,
        c_after=c_b,
        shift=shift,
        consistent=consistent,
    )
