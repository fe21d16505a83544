"""Reduced-map application and the positivity/compatibility domain verdicts."""
from __future__ import annotations

import math

import numpy as np
import pytest

from qmaplab.reduced import (
    ReducedMap,
    compat_slice_check,
    in_compatibility_domain,
    in_positivity_domain,
    sup_norm_grid,
    sup_norm_over_time,
)


def test_apply_identity_at_t_zero():
    m = ReducedMap(c1=0.4, c2=-0.2, t=0.0)
    a = np.array([0.1, -0.5, 0.3])
    assert np.array_equal(m.apply(a), a)


def test_apply_uncorrelated_contracts_inside_ball():
    # frozen zero correlations scale the (1, 2) components by cos t: the
    # image never leaves |a|, and the norm is recovered at t = 0 mod pi
    rng = np.random.default_rng(2)
    for _ in range(20):
        a = rng.uniform(-1, 1, 3)
        t = float(rng.uniform(0, 7))
        out = ReducedMap(0.0, 0.0, t).apply(a)
        expected = np.array([a[0] * math.cos(t), a[1] * math.cos(t), a[2]])
        assert np.abs(out - expected).max() < 1e-15
        assert np.linalg.norm(out) <= np.linalg.norm(a) + 1e-12
    out = ReducedMap(0.0, 0.0, math.pi).apply([0.3, -0.4, 0.1])
    assert abs(np.linalg.norm(out) - np.linalg.norm([0.3, -0.4, 0.1])) < 1e-12


def test_apply_edge_state_hits_unit_vector():
    q = math.pi / 4
    out = ReducedMap(c1=math.sin(q), c2=0.0, t=q).apply([0, math.cos(q), 0])
    assert np.abs(out - [0, 1, 0]).max() < 1e-12


@pytest.mark.parametrize("seed", range(15))
def test_apply_is_affine(seed):
    rng = np.random.default_rng(seed)
    m = ReducedMap(*rng.uniform(-1, 1, 2), t=float(rng.uniform(0, 7)))
    a, b = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
    lam = float(rng.uniform(0, 1))
    mixed = m.apply(lam * a + (1 - lam) * b)
    combo = lam * m.apply(a) + (1 - lam) * m.apply(b)
    assert np.abs(mixed - combo).max() < 1e-12


def test_positivity_domain_examples():
    # a = 0 maps to (-c2 sin t, c1 sin t, 0)
    v = in_positivity_domain(ReducedMap(0.3, 0.4, 1.1), [0, 0, 0])
    expected = 1 - math.hypot(-0.4 * math.sin(1.1), 0.3 * math.sin(1.1))
    assert v.inside and abs(v.margin - expected) < 1e-12

    v = in_positivity_domain(ReducedMap(0.5, 0.0, math.pi / 2), [0, 1, 0])
    assert v.inside and abs(v.margin - 0.5) < 1e-12

    v = in_positivity_domain(ReducedMap(1.0, 0.0, math.pi / 4), [0, 1, 0])
    assert not v.inside
    assert abs(v.margin - (1 - 2 / math.sqrt(2))) < 1e-12


def test_positivity_domain_rejects_negative_tol():
    with pytest.raises(ValueError):
        in_positivity_domain(ReducedMap(0, 0, 0), [0, 0, 0], tol=-1e-3)


def test_sup_norm_slice_matches_quadrature_sum():
    rng = np.random.default_rng(4)
    for _ in range(20):
        a2, c = rng.uniform(-1, 1, 2)
        sup, _ = sup_norm_over_time(c, 0.0, [0, a2, 0])
        assert abs(sup - math.hypot(a2, c)) < 1e-12


def test_sup_norm_uncorrelated_is_plain_norm():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a = rng.uniform(-1, 1, 3)
        sup, _ = sup_norm_over_time(0.0, 0.0, a)
        assert abs(sup - np.linalg.norm(a)) < 1e-12


def test_sup_norm_axis3_example():
    sup, _ = sup_norm_over_time(0.5, 0.0, [0, 0, 1])
    assert abs(sup - math.sqrt(1.25)) < 1e-12


def test_sup_norm_argmax_attains_supremum():
    rng = np.random.default_rng(6)
    for _ in range(20):
        a = rng.uniform(-1, 1, 3)
        c1, c2 = rng.uniform(-1, 1, 2)
        sup, t_star = sup_norm_over_time(c1, c2, a)
        attained = np.linalg.norm(ReducedMap(c1, c2, t_star).apply(a))
        assert abs(attained - sup) < 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_sup_norm_closed_form_vs_dense_grid(seed):
    # 50 cases per seed, 500 total, against a 1e5-point grid
    rng = np.random.default_rng(seed)
    for _ in range(50):
        a = rng.uniform(-1, 1, 3)
        c1, c2 = rng.uniform(-1, 1, 2)
        sup_closed, _ = sup_norm_over_time(c1, c2, a)
        sup_ref, _ = sup_norm_grid(c1, c2, a, points=100_000)
        assert abs(sup_closed - sup_ref) / max(sup_ref, 1e-12) < 1e-9


def test_compatibility_domain_boundary_and_outside():
    v = in_compatibility_domain(0.6, 0.0, [0, 0.8, 0])
    assert v.inside and abs(v.margin) < 1e-12
    v = in_compatibility_domain(0.6, 0.0, [0, 0.9, 0])
    assert not v.inside  # 0.81 + 0.36 > 1


def test_compatibility_domain_origin():
    rng = np.random.default_rng(7)
    for _ in range(20):
        c1, c2 = rng.uniform(-0.7, 0.7, 2)
        if math.hypot(c1, c2) <= 1:
            assert in_compatibility_domain(c1, c2, [0, 0, 0]).inside


def test_compat_slice_check_examples():
    v = compat_slice_check(0.6, 0.8)
    assert v.inside and abs(v.margin) < 1e-12
    v = compat_slice_check(1.0, 0.0)
    assert v.inside and abs(v.margin) < 1e-15
    v = compat_slice_check(0.8, 0.8)
    assert not v.inside
    assert abs(v.margin - (1 - math.sqrt(1.28))) < 1e-12


def test_slice_check_agrees_with_sup_norm_on_grid():
    # 201x201 over [-1.2, 1.2]^2, exact verdict agreement away from the
    # 1e-9 boundary band
    for a2 in np.linspace(-1.2, 1.2, 201):
        for c1 in np.linspace(-1.2, 1.2, 201):
            sl = compat_slice_check(float(a2), float(c1))
            if abs(sl.margin) <= 1e-9:
                continue
            general = in_compatibility_domain(float(c1), 0.0, [0, float(a2), 0])
            assert sl.inside == general.inside
            assert abs(sl.margin - general.margin) < 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_compatibility_implies_positivity_at_sampled_times(seed):
    rng = np.random.default_rng(seed)
    while True:  # rejection-sample a point inside the compatibility domain
        a = rng.uniform(-1, 1, 3)
        c1, c2 = rng.uniform(-1, 1, 2)
        if in_compatibility_domain(c1, c2, a).inside:
            break
    for t in np.linspace(0, 2 * math.pi, 50):
        assert in_positivity_domain(ReducedMap(c1, c2, float(t)), a).inside
