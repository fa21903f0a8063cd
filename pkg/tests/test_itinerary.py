import math

import pytest

from dynacurve.dynatomic import FamilyContext
from dynacurve.errors import PreconditionViolated, RayTraceUnresolved
from dynacurve.invariants import ends_count, periodic_point_count
from dynacurve.itinerary import (
    Itinerary,
    SectorChart,
    end_classes,
    end_classes_for_factor,
    end_label,
    enumerate_preperiodic,
    exact_cycle_words,
    external_data,
    match_roots_to_ends,
    trace_itinerary,
)


def test_exact_cycle_word_counts():
    assert len(exact_cycle_words(2, 1)) == 2
    assert len(exact_cycle_words(2, 2)) == 2
    assert len(exact_cycle_words(2, 3)) == 6
    assert len(exact_cycle_words(3, 2)) == 6
    assert len(exact_cycle_words(4, 4)) == 240
    for d, p in ((2, 4), (3, 3), (4, 2)):
        assert len(exact_cycle_words(d, p)) == periodic_point_count(d, p)


def test_enumeration_counts_match_formulas():
    for d in (2, 3, 4):
        for n in (1, 2, 3):
            for p in (1, 2, 3):
                nu = periodic_point_count(d, p)
                seqs = enumerate_preperiodic(d, n, p)
                assert len(seqs) == nu * (d - 1) * d ** (n - 1)
                classes = end_classes(d, n, p)
                assert len(classes) == (d - 1) * ends_count(d, n, p)


def test_bare_cycle_classes():
    for d, p in ((2, 2), (2, 3), (3, 2), (4, 3)):
        nu = periodic_point_count(d, p)
        assert len(end_classes(d, 0, p)) == nu // d


def test_factor_split_is_even():
    for d in (3, 4):
        total = end_classes(d, 2, 2)
        per = [end_classes_for_factor(d, 2, 2, j) for j in range(1, d)]
        assert sum(len(x) for x in per) == len(total)
        assert len({len(x) for x in per}) == 1


def test_itinerary_properties():
    it = Itinerary(2, (1,), (0,))
    assert it.exact
    assert it.factor_index == 1
    assert str(it) == "1|0"
    assert not Itinerary(2, (0,), (0,)).exact
    assert not Itinerary(2, (1,), (0, 1, 0, 1)).exact
    assert it.rotated(1) == Itinerary(2, (0,), (1,))
    assert end_label(it) == end_label(it.rotated(1))
    assert [it.symbol(k) for k in range(4)] == [1, 0, 0, 0]
    with pytest.raises(ValueError):
        _ = Itinerary(2, (), (0,)).factor_index


def test_external_data_real_antenna():
    theta, potential = external_data(2, -3)
    assert theta == pytest.approx(0.5)
    assert potential > 0
    theta3, pot3 = external_data(3, 3j)
    assert 0 <= theta3 < 1
    assert pot3 > 0


def test_external_data_rejects_interior():
    with pytest.raises(PreconditionViolated):
        external_data(2, -1)
    with pytest.raises(PreconditionViolated):
        external_data(3, 0)


def test_chart_rejects_zero_ray_parameter():
    with pytest.raises(PreconditionViolated):
        SectorChart(2, 3.0)


def test_chart_guard_near_ray():
    chart = SectorChart(2, -3.0)
    with pytest.raises(RayTraceUnresolved):
        chart.sector(0j)


def test_chart_sectors_real_case():
    chart = SectorChart(2, -3.0)
    assert chart.sector(1.3 + 0j) == 0
    assert chart.sector(-2.3 + 0j) == 1
    assert chart.sector(4 + 0j) == 0
    assert chart.sector(-4 + 0j) == 1
    # the cut runs along the imaginary axis here, so flank it
    assert chart.sector(1 + 3j) == 0
    assert chart.sector(-1 + 3j) == 1


def test_trace_itinerary_fixed_points():
    beta = (1 + math.sqrt(13)) / 2
    it0 = trace_itinerary(2, -3, beta, 0, 1)
    assert it0 == Itinerary(2, (), (0,))
    it1 = trace_itinerary(2, -3, -beta, 1, 1)
    assert it1 == Itinerary(2, (1,), (0,))
    assert it1.factor_index == 1
    alpha = (1 - math.sqrt(13)) / 2
    it2 = trace_itinerary(2, -3, -alpha, 1, 1)
    assert it2 == Itinerary(2, (0,), (1,))


def test_chart_agrees_with_real_shortcut():
    chart = SectorChart(2, -3.0)
    beta = (1 + math.sqrt(13)) / 2
    for z in (beta, -beta, 1.7, -0.4, 2.9):
        assert chart.sector(complex(z)) == (0 if z > 0 else 1)


def test_match_roots_quadratic():
    ctx = FamilyContext(2)
    for n, p in ((1, 1), (2, 1), (1, 2)):
        matches = match_roots_to_ends(ctx, n, p, -3.0)
        assert len(matches) == 1
        m = matches[0]
        assert m.complete
        assert len(m.itineraries) == periodic_point_count(2, p) * 2 ** (n - 1)


def test_match_roots_cubic():
    ctx = FamilyContext(3)
    matches = match_roots_to_ends(ctx, 1, 1, 3j)
    assert [m.j for m in matches] == [1, 2]
    for m in matches:
        assert m.complete
        assert len(m.itineraries) == 3
