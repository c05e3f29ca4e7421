"""Domain types, gap functions, boundary strata, and samplers."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from holomap.domains import (
    Ellipsoid,
    HartogsTriangle,
    StratumTag,
    format_domain,
    gap_ellipsoid,
    gap_ellipsoid_arr,
    gaps_hartogs,
    gaps_hartogs_arr,
    min_gap_arr,
    sample_interior,
    sample_interior_arr,
    sample_near_stratum_arr,
    strata,
)
from holomap.errors import (
    DimensionMismatch,
    NonPositiveParameter,
    PreconditionViolated,
    UnsupportedStratum,
)
from holomap.exactnum import ExactScalar, SQRT2


def test_construction_and_formatting():
    E = Ellipsoid((2, 2, 1))
    assert E.n == E.dim == 3
    assert E.ones_count == 1
    assert format_domain(E) == "E(2,2,1)"
    F = HartogsTriangle(2, (3,))
    assert F.m == 1 and F.dim == 2
    assert format_domain(F) == "F(2;3)"
    F2 = HartogsTriangle(1, (SQRT2, 1))
    assert format_domain(F2) == "F(1;0+1*s2,1)"


def test_invalid_parameters():
    with pytest.raises(NonPositiveParameter):
        Ellipsoid((2, 0))
    with pytest.raises(NonPositiveParameter):
        Ellipsoid((ExactScalar(-1, 1) * ExactScalar(-1),))  # 1 - sqrt2 < 0
    with pytest.raises(DimensionMismatch):
        HartogsTriangle(2, ())
    with pytest.raises(NonPositiveParameter):
        HartogsTriangle(0, (1,))


def test_gap_values():
    E = Ellipsoid((2, 1))
    # |0.5|^4 + |0.5|^2 = 0.0625 + 0.25
    assert gap_ellipsoid(E, (0.5, 0.5)) == pytest.approx(1 - 0.3125)
    F = HartogsTriangle(2, (3, 1))
    gK, gL = gaps_hartogs(F, (0.1, 0.2, 0.3))
    sz = 0.1 ** 4
    sw = 0.2 ** 6 + 0.3 ** 2
    assert gK == pytest.approx(sw - sz)
    assert gL == pytest.approx(1 - sw)
    Z = np.asarray([[0.1, 0.2, 0.3]], dtype=complex)
    assert min_gap_arr(F, Z)[0] == pytest.approx(min(gK, gL))


def test_gap_batch_consistency():
    E = Ellipsoid((3, 2))
    rng = np.random.default_rng(7)
    Z = sample_interior_arr(E, 50, rng)
    batch = gap_ellipsoid_arr(E, Z)
    single = [gap_ellipsoid(E, tuple(row)) for row in Z]
    assert np.allclose(batch, single)


def test_strata():
    assert strata(Ellipsoid((2, 1))) == (StratumTag.ELLIPSOID_BOUNDARY,)
    assert strata(HartogsTriangle(2, (3,))) == (
        StratumTag.HARTOGS_K,
        StratumTag.HARTOGS_L,
    )


def test_point_dimension_checked():
    with pytest.raises(DimensionMismatch):
        gap_ellipsoid(Ellipsoid((2, 1)), (0.5,))
    with pytest.raises(DimensionMismatch):
        min_gap_arr(HartogsTriangle(2, (3,)), np.zeros((4, 3), dtype=complex))


@pytest.mark.parametrize(
    "D",
    [
        Ellipsoid((2, 1)),
        Ellipsoid((1, 1, 1)),
        Ellipsoid((ExactScalar(0, 1), 2)),
        HartogsTriangle(2, (3,)),
        HartogsTriangle(ExactScalar(0, 1), (2, 1)),
        HartogsTriangle(1, (ExactScalar(0, 1), 1, 2)),
    ],
)
def test_interior_samples_are_interior(D):
    rng = np.random.default_rng(11)
    Z = sample_interior_arr(D, 400, rng)
    assert Z.shape == (400, D.dim)
    assert min_gap_arr(D, Z).min() > 0


def test_interior_sample_list_form():
    D = Ellipsoid((2, 2))
    rng = np.random.default_rng(3)
    pts = sample_interior(D, 5, rng)
    assert len(pts) == 5
    assert all(isinstance(p, tuple) and len(p) == 2 for p in pts)
    with pytest.raises(PreconditionViolated):
        sample_interior(D, 0, rng)


@pytest.mark.parametrize("eps", [2 ** -4, 2 ** -8, 2 ** -13])
def test_near_boundary_ellipsoid(eps):
    D = Ellipsoid((2, 1, ExactScalar(0, 1)))
    rng = np.random.default_rng(5)
    Z = sample_near_stratum_arr(D, StratumTag.ELLIPSOID_BOUNDARY, eps, 300, rng)
    gaps = gap_ellipsoid_arr(D, Z)
    assert gaps.min() >= eps / 2
    assert gaps.max() <= eps


@pytest.mark.parametrize("tag", [StratumTag.HARTOGS_K, StratumTag.HARTOGS_L])
@pytest.mark.parametrize("eps", [2 ** -4, 2 ** -10])
def test_near_boundary_hartogs(tag, eps):
    D = HartogsTriangle(2, (3, 1))
    rng = np.random.default_rng(9)
    Z = sample_near_stratum_arr(D, tag, eps, 300, rng)
    gK, gL = gaps_hartogs_arr(D, Z)
    own, other = (gK, gL) if tag is StratumTag.HARTOGS_K else (gL, gK)
    assert own.min() >= eps / 2
    assert own.max() <= eps
    # the other stratum stays at macroscopic distance
    assert other.min() > 0.05


def test_near_boundary_rejects_bad_inputs():
    D = Ellipsoid((2, 1))
    rng = np.random.default_rng(0)
    with pytest.raises(UnsupportedStratum):
        sample_near_stratum_arr(D, StratumTag.HARTOGS_K, 0.01, 5, rng)
    with pytest.raises(PreconditionViolated):
        sample_near_stratum_arr(D, StratumTag.ELLIPSOID_BOUNDARY, 0.3, 5, rng)
    with pytest.raises(PreconditionViolated):
        sample_near_stratum_arr(D, StratumTag.ELLIPSOID_BOUNDARY, 0.0, 5, rng)


def test_near_k_excludes_origin_neighborhood():
    # points near K keep |w| macroscopic: K excludes w = 0
    D = HartogsTriangle(2, (3,))
    rng = np.random.default_rng(13)
    Z = sample_near_stratum_arr(D, StratumTag.HARTOGS_K, 2 ** -8, 200, rng)
    assert np.abs(Z[:, 1]).min() > 0.3


def test_sampling_is_seed_deterministic():
    D = HartogsTriangle(2, (3, 2))
    A = sample_interior_arr(D, 10, np.random.default_rng(21))
    B = sample_interior_arr(D, 10, np.random.default_rng(21))
    assert np.array_equal(A, B)


def test_domain_equality_and_hash():
    assert Ellipsoid((2, 1)) == Ellipsoid((ExactScalar(2), ExactScalar(1)))
    assert hash(HartogsTriangle(2, (3,))) == hash(HartogsTriangle(ExactScalar(2), (ExactScalar(3),)))
