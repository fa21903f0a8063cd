"""Symbolic dynamics for escaped parameters.

Outside the connectedness locus the Julia set is a Cantor set cut into d
sectors by the dynamical rays that bifurcate on the critical point.
This module enumerates the admissible symbol sequences, groups them into
rotation classes (the end labels of the curve components), and computes
actual itineraries of points by tracing the cutting rays.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .dynatomic import FamilyContext
from .errors import PreconditionViolated, RayTraceUnresolved
from .invariants import ends_count, periodic_point_count
from .numerics import complex_roots, in_multibrot


# ---------------------------------------------------------------------------
# symbol sequences


@dataclass(frozen=True, order=True)
class Itinerary:
    """Eventually periodic symbol sequence u_0 u_1 u_2 ...

    tail holds the first n symbols, cycle the repeating block that
    starts at position n.  Symbols live in Z_d.
    """

    d: int
    tail: tuple[int, ...]
    cycle: tuple[int, ...]

    def __str__(self) -> str:
        head = "".join(str(s) for s in self.tail)
        body = "".join(str(s) for s in self.cycle)
        return f"{head}|{body}" if head else f"|{body}"

    def symbol(self, k: int) -> int:
        n = len(self.tail)
        if k < n:
            return self.tail[k]
        return self.cycle[(k - n) % len(self.cycle)]

    def rotated(self, s: int) -> "Itinerary":
        return Itinerary(
            self.d,
            tuple((a + s) % self.d for a in self.tail),
            tuple((a + s) % self.d for a in self.cycle),
        )

    @property
    def exact(self) -> bool:
        """True when no shorter tail and no shorter cycle describe it."""
        p = len(self.cycle)
        for q in range(1, p):
            if p % q == 0 and all(
                self.cycle[i] == self.cycle[i % q] for i in range(p)
            ):
                return False
        if self.tail and self.tail[-1] == self.cycle[-1]:
            return False
        return True

    @property
    def factor_index(self) -> int:
        """Which irreducible factor an orbit with this itinerary lies on."""
        if not self.tail:
            raise ValueError("periodic sequences carry no factor index")
        return (self.tail[-1] - self.cycle[-1]) % self.d

    def to_json_dict(self) -> dict:
        return {"tail": list(self.tail), "cycle": list(self.cycle)}


@dataclass(frozen=True, order=True)
class EndLabel:
    """Rotation class of an itinerary: the label of one end of the curve."""

    representative: Itinerary

    @property
    def members(self) -> tuple[Itinerary, ...]:
        it = self.representative
        return tuple(it.rotated(s) for s in range(it.d))


def end_label(it: Itinerary) -> EndLabel:
    orbit = {it.rotated(s) for s in range(it.d)}
    if len(orbit) != it.d:
        raise ArithmeticError(f"rotation acts with a stabilizer on {it}")
    return EndLabel(min(orbit))


@lru_cache(maxsize=None)
def exact_cycle_words(d: int, p: int) -> tuple[tuple[int, ...], ...]:
    """All length-p words over Z_d whose infinite repetition has least period p."""
    words = []
    for w in product(range(d), repeat=p):
        if all(
            any(w[i] != w[i % q] for i in range(p))
            for q in range(1, p)
            if p % q == 0
        ):
            words.append(w)
    return tuple(words)


def enumerate_preperiodic(d: int, n: int, p: int) -> list[Itinerary]:
    """Every exact itinerary with tail length n and cycle length p."""
    out = []
    for w in exact_cycle_words(d, p):
        if n == 0:
            out.append(Itinerary(d, (), w))
            continue
        for head in product(range(d), repeat=n - 1):
            for last in range(d):
                if last != w[-1]:
                    out.append(Itinerary(d, head + (last,), w))
    return out


def end_classes(d: int, n: int, p: int) -> list[EndLabel]:
    return sorted({end_label(it) for it in enumerate_preperiodic(d, n, p)})


def end_classes_for_factor(d: int, n: int, p: int, j: int) -> list[EndLabel]:
    if not 1 <= j <= d - 1:
        raise ValueError(f"factor index {j} outside 1..{d - 1}")
    labels = {
        end_label(it)
        for it in enumerate_preperiodic(d, n, p)
        if it.factor_index == j
    }
    return sorted(labels)


# ---------------------------------------------------------------------------
# rays and sectors


def external_data(d: int, c, max_iter: int = 400) -> tuple[float, float]:
    """External angle (in turns, [0,1)) and potential of an escaped parameter."""
    cc = complex(c)
    if in_multibrot(d, cc, max_iter):
        raise PreconditionViolated(
            f"c={cc} shows no escape within {max_iter} iterations"
        )
    orbit = [cc]
    z = cc
    big = max(100.0, abs(cc) ** 2)
    while abs(z) <= big:
        z = z**d + cc
        orbit.append(z)
    for _ in range(6):
        if abs(z) > 1e40:
            break
        z = z**d + cc
        orbit.append(z)
    theta = math.atan2(cc.imag, cc.real) / (2 * math.pi) % 1.0
    scale = 1
    for w in orbit[1:]:
        scale *= d
        raw = math.atan2(w.imag, w.real) / (2 * math.pi) % 1.0
        m = round(theta * scale - raw)
        theta = (m + raw) / scale
    k = len(orbit) - 1
    potential = math.log(abs(orbit[-1])) / d**k
    return theta % 1.0, potential


def _pullback_newton(d, c, m, target, seed):
    z = seed
    for _ in range(60):
        val = z
        der = 1.0 + 0j
        for _ in range(m):
            der = der * (d * val ** (d - 1))
            val = val**d + c
        err = val - target
        if abs(err) <= 1e-11 * (1.0 + abs(target)):
            return z
        if der == 0:
            break
        step = err / der
        if abs(step) > 10.0 * (1.0 + abs(target)):
            break
        z = z - step
    raise RayTraceUnresolved(
        f"ray pullback failed at depth {m} near {seed} for c={c}"
    )


def trace_ray(
    d: int,
    c,
    theta: float,
    t_min: float,
    samples_per_level: int = 64,
    t_top: float = 24.0,
) -> list[complex]:
    """Polyline along the dynamical ray at the given angle.

    Points run from potential t_top down to t_min; the caller appends
    the landing/bifurcation endpoint itself.
    """
    cc = complex(c)
    pts = [cmath.exp(complex(t_top, 2 * math.pi * theta))]
    ratio = d ** (1.0 / samples_per_level)
    t = t_top
    while t > t_min:
        t = max(t / ratio, t_min)
        m = 0
        scale = 1
        while scale * t < 8.0:
            m += 1
            scale *= d
        ang = (scale * theta) % 1.0
        target = cmath.exp(complex(scale * t, 2 * math.pi * ang))
        pts.append(_pullback_newton(d, cc, m, target, pts[-1]))
    return pts


def _seg_params(p1, p2, q1, q2):
    """Intersection parameters of segments p and q, or None."""
    r = p2 - p1
    s = q2 - q1
    denom = r.real * s.imag - r.imag * s.real
    diff = q1 - p1
    if denom == 0:
        return None
    t = (diff.real * s.imag - diff.imag * s.real) / denom
    u = (diff.real * r.imag - diff.imag * r.real) / denom
    if 0.0 < t < 1.0 and 0.0 < u < 1.0:
        return t
    return None


def _point_segment_dist(z, a, b) -> float:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0:
        return abs(z - a)
    t = ((z - a).real * ab.real + (z - a).imag * ab.imag) / denom
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * ab))


class SectorChart:
    """The d cutting rays of an escaped parameter and sector lookup.

    Sector U_0 contains the zero-angle ray; U_1 .. U_{d-1} follow
    counterclockwise.  Membership is decided by walking a radial segment
    from far outside down to the query point and replaying its crossings
    with the ray polylines.
    """

    def __init__(self, d: int, c, samples_per_level: int = 64):
        self.d = d
        self.c = complex(c)
        theta, potential = external_data(d, c)
        if theta < 1e-10 or theta > 1.0 - 1e-10:
            raise PreconditionViolated(
                f"c={c} sits on the zero parameter ray; sectors are degenerate"
            )
        self.theta = theta
        self.potential = potential
        t_min = 1.02 * potential / d
        self.cut_angles = [(theta + s) / d for s in range(d)]
        self.rays = []
        for s in range(d):
            poly = trace_ray(d, c, self.cut_angles[s], t_min, samples_per_level)
            poly.append(0j)
            self.rays.append(poly)
        self.t_top = 24.0
        self.far_radius = math.exp(self.t_top) * 1.5

    def _sector_at_infinity(self, z) -> int:
        phi = math.atan2(z.imag, z.real) / (2 * math.pi) % 1.0
        if phi < self.cut_angles[0] or phi >= self.cut_angles[-1]:
            return 0
        for s in range(self.d - 1):
            if self.cut_angles[s] <= phi < self.cut_angles[s + 1]:
                return s + 1
        return 0

    def sector(self, z) -> int:
        zz = complex(z)
        guard = 1e-6 * (1.0 + abs(zz))
        for poly in self.rays:
            for a, b in zip(poly, poly[1:]):
                if _point_segment_dist(zz, a, b) < guard:
                    raise RayTraceUnresolved(
                        f"point {zz} is within guard distance of a cutting ray"
                    )
        far = self.far_radius * cmath.exp(1j * cmath.phase(zz)) if zz != 0 else (
            self.far_radius + 0j
        )
        events = []
        for s, poly in enumerate(self.rays):
            for a, b in zip(poly, poly[1:]):
                t = _seg_params(zz, far, a, b)
                if t is not None:
                    events.append((t, s))
        events.sort(reverse=True)
        cur = self._sector_at_infinity(far)
        for _, s in events:
            if cur == s:
                cur = (s + 1) % self.d
            elif cur == (s + 1) % self.d:
                cur = s
            else:
                raise RayTraceUnresolved(
                    f"crossing walk hit ray {s} from non-adjacent sector {cur}"
                )
        return cur


_CHARTS: dict[tuple[int, complex], SectorChart] = {}


def get_chart(d: int, c) -> SectorChart:
    key = (d, complex(c))
    if key not in _CHARTS:
        _CHARTS[key] = SectorChart(d, c)
    return _CHARTS[key]


def _real_cantor_symbol(z) -> int:
    # d = 2 with c < -2: the cuts are vertical, U_0 is the right half plane
    return 0 if z.real > 0 else 1


def trace_itinerary(ctx_or_d, c, z, n: int, p: int) -> Itinerary:
    """Symbol sequence of the orbit of z, split as tail length n, cycle p."""
    d = ctx_or_d.d if isinstance(ctx_or_d, FamilyContext) else int(ctx_or_d)
    cc = complex(c)
    zz = complex(z)
    symbols = []
    use_real = (
        d == 2 and abs(cc.imag) < 1e-12 and cc.real < -2.0 and abs(zz.imag) < 1e-9
    )
    chart = None if use_real else get_chart(d, cc)
    w = zz
    for _ in range(n + p):
        symbols.append(_real_cantor_symbol(w) if use_real else chart.sector(w))
        w = w**d + cc
    return Itinerary(d, tuple(symbols[:n]), tuple(symbols[n:]))


# ---------------------------------------------------------------------------
# matching algebraic roots to combinatorial ends


@dataclass(frozen=True)
class FactorEndMatch:
    j: int
    itineraries: tuple[Itinerary, ...]
    labels: tuple[EndLabel, ...]
    expected_labels: tuple[EndLabel, ...]

    @property
    def complete(self) -> bool:
        return self.labels == self.expected_labels


def match_roots_to_ends(
    ctx: FamilyContext, n: int, p: int, c0
) -> list[FactorEndMatch]:
    """Compare traced itineraries of each factor's roots with enumeration.

    For every factor the observed itineraries must be exact, carry the
    factor's own index, and sweep out precisely the predicted rotation
    classes.
    """
    if n < 1:
        raise ValueError("factors need tail length at least 1")
    d = ctx.d
    out = []
    for j in range(1, d):
        fac = ctx.factor(n, p, j)
        roots = complex_roots(fac.z_coefficients_at(complex(c0)))
        its = []
        for z in roots:
            it = trace_itinerary(d, c0, z, n, p)
            if not it.exact:
                raise ArithmeticError(
                    f"root {z} of factor {j} traced a non-exact itinerary {it}"
                )
            if it.factor_index != j:
                raise ArithmeticError(
                    f"root {z} of factor {j} traced index {it.factor_index}"
                )
            its.append(it)
        if len(set(its)) != len(its):
            raise ArithmeticError(f"factor {j} produced duplicate itineraries")
        labels = sorted({end_label(it) for it in its})
        expected = end_classes_for_factor(d, n, p, j)
        if len(labels) != ends_count(d, n, p):
            raise ArithmeticError(
                f"factor {j} swept {len(labels)} classes, "
                f"expected {ends_count(d, n, p)}"
            )
        out.append(
            FactorEndMatch(
                j=j,
                itineraries=tuple(sorted(its)),
                labels=tuple(labels),
                expected_labels=tuple(expected),
            )
        )
    return out
