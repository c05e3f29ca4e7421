"""Complex ellipsoids and generalized Hartogs triangles.

An ellipsoid E_p is the set of z with sum_j |z_j|^(2 p_j) < 1. A Hartogs
triangle F_{p,q} (with a one-dimensional z block) is the set of (z, w) with
|z|^(2p) < sum_j |w_j|^(2 q_j) < 1. Exponents are exact scalars; all point
arithmetic is double precision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np

from ._kernels import abs2p_sum
from .errors import (
    DimensionMismatch,
    NonPositiveParameter,
    PreconditionViolated,
    UnsupportedStratum,
)
from .exactnum import ExactScalar

ComplexPoint = Tuple[complex, ...]


class StratumTag(enum.Enum):
    ELLIPSOID_BOUNDARY = "ellipsoid_boundary"
    HARTOGS_K = "hartogs_K"
    HARTOGS_L = "hartogs_L"


def _exact_vector(values) -> Tuple[ExactScalar, ...]:
    out = []
    for x in values:
        if not isinstance(x, ExactScalar):
            x = ExactScalar(x)
        out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Ellipsoid:
    p: Tuple[ExactScalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", _exact_vector(self.p))
        if len(self.p) < 1:
            raise DimensionMismatch("an ellipsoid needs at least one exponent")
        for pj in self.p:
            if pj.sign() <= 0:
                raise NonPositiveParameter(f"exponent {pj} is not positive")

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def dim(self) -> int:
        return len(self.p)

    @property
    def ones_count(self) -> int:
        one = ExactScalar(1)
        return sum(1 for pj in self.p if pj == one)

    @cached_property
    def _two_p(self) -> np.ndarray:
        return np.array([2.0 * pj.to_float() for pj in self.p])

    def __str__(self) -> str:
        return "E(" + ",".join(str(pj) for pj in self.p) + ")"


@dataclass(frozen=True)
class HartogsTriangle:
    p: ExactScalar
    q: Tuple[ExactScalar, ...]

    def __post_init__(self):
        p = self.p if isinstance(self.p, ExactScalar) else ExactScalar(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", _exact_vector(self.q))
        if len(self.q) < 1:
            raise DimensionMismatch("a Hartogs triangle needs at least one w exponent")
        if self.p.sign() <= 0:
            raise NonPositiveParameter(f"exponent {self.p} is not positive")
        for qj in self.q:
            if qj.sign() <= 0:
                raise NonPositiveParameter(f"exponent {qj} is not positive")

    @property
    def m(self) -> int:
        return len(self.q)

    @property
    def dim(self) -> int:
        return 1 + len(self.q)

    @cached_property
    def _two_p(self) -> np.ndarray:
        return np.array([2.0 * self.p.to_float()])

    @cached_property
    def _two_q(self) -> np.ndarray:
        return np.array([2.0 * qj.to_float() for qj in self.q])

    def __str__(self) -> str:
        return "F(" + str(self.p) + ";" + ",".join(str(qj) for qj in self.q) + ")"


Domain = Union[Ellipsoid, HartogsTriangle]


def format_domain(D: Domain) -> str:
    """Canonical text form, e.g. 'E(2,2)' or 'F(2;3)'."""
    return str(D)


def _point_rows(D: Domain, x) -> np.ndarray:
    arr = np.atleast_2d(np.asarray(x, dtype=np.complex128))
    if arr.shape[1] != D.dim:
        raise DimensionMismatch(
            f"point has {arr.shape[1]} coordinates, domain has {D.dim}"
        )
    return arr

def gap_ellipsoid_arr(E: Ellipsoid, Z: np.ndarray) -> np.ndarray:
    """1 - sum_j |z_j|^(2 p_j) per row; positive exactly on the interior."""
    Z = _point_rows(E, Z)
    return 1.0 - abs2p_sum(Z, E._two_p)


def gap_ellipsoid(E: Ellipsoid, z: Sequence[complex]) -> float:
    return float(gap_ellipsoid_arr(E, [tuple(z)])[0])


def gaps_hartogs_arr(F: HartogsTriangle, X: np.ndarray):
    """Per-row pair (gK, gL): the inner and outer defining gaps.

    gK = sum |w_j|^(2 q_j) - |z|^(2p), gL = 1 - sum |w_j|^(2 q_j). The point
    is interior iff both are positive; min(gK, gL) -> 0 also captures
    approach to the origin, where gK -> 0.
    """
    X = _point_rows(F, X)
    sz = abs2p_sum(X[:, :1], F._two_p)
    sw = abs2p_sum(X[:, 1:], F._two_q)
    return sw - sz, 1.0 - sw


def gaps_hartogs(F: HartogsTriangle, x: Sequence[complex]):
    gk, gl = gaps_hartogs_arr(F, [tuple(x)])
    return float(gk[0]), float(gl[0])


def min_gap_arr(D: Domain, X: np.ndarray) -> np.ndarray:
    """Distance-like interiority measure: the smallest defining gap per row."""
    if isinstance(D, Ellipsoid):
        return gap_ellipsoid_arr(D, X)
    gk, gl = gaps_hartogs_arr(D, X)
    return np.minimum(gk, gl)


def strata(D: Domain):
    """The boundary strata applicable to D."""
    if isinstance(D, Ellipsoid):
        return (StratumTag.ELLIPSOID_BOUNDARY,)
    return (StratumTag.HARTOGS_K, StratumTag.HARTOGS_L)


def _phases(rng: np.random.Generator, shape) -> np.ndarray:
    return np.exp(2j * np.pi * rng.random(shape))


def _split_level(rng, two_exp: np.ndarray, level: np.ndarray) -> np.ndarray:
    """Radii r with sum_j r_j^two_exp[j] equal to the given level per row.

    Uses a uniform Dirichlet split of the level, so the defining sum is hit
    without rejection for any positive exponents.
    """
    n = len(two_exp)
    weights = rng.dirichlet(np.ones(n), size=len(level))
    targets = weights * level[:, np.newaxis]
    return np.power(targets, 1.0 / two_exp[np.newaxis, :])


def _interior_arr(D: Domain, count: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(D, Ellipsoid):
        rho = rng.uniform(0.001, 0.999, count)
        radii = _split_level(rng, D._two_p, rho)
        return radii * _phases(rng, radii.shape)
    rho_w = rng.uniform(0.1, 0.98, count)
    s = rng.uniform(0.001, 0.998, count)
    radii_w = _split_level(rng, D._two_q, rho_w)
    rz = np.power(s * rho_w, 1.0 / D._two_p[0])
    out = np.empty((count, D.dim), dtype=np.complex128)
    out[:, 0] = rz
    out[:, 1:] = radii_w
    return out * _phases(rng, out.shape)


def sample_interior_arr(D: Domain, count: int, seed: int) -> np.ndarray:
    """Interior points as a complex (count, dim) array, deterministic in seed."""
    if count < 1:
        raise PreconditionViolated("count must be at least 1")
    return _interior_arr(D, count, np.random.default_rng(seed))


def sample_interior(D: Domain, count: int, seed: int) -> list:
    """Strictly interior points (all gaps > 1e-12; w != 0 for Hartogs)."""
    return [tuple(row) for row in sample_interior_arr(D, count, seed)]


def _near_stratum_arr(D, s: StratumTag, eps: float, count: int, rng) -> np.ndarray:
    # The targeted gap is drawn from a 1 percent inset of [eps/2, eps] so
    # that re-evaluating it in doubles cannot leave the band.
    g = rng.uniform(0.505 * eps, 0.995 * eps, count)
    if isinstance(D, Ellipsoid):
        if s is not StratumTag.ELLIPSOID_BOUNDARY:
            raise UnsupportedStratum(f"{s.value} does not apply to an ellipsoid")
        radii = _split_level(rng, D._two_p, 1.0 - g)
        return radii * _phases(rng, radii.shape)
    if s is StratumTag.HARTOGS_K:
        rho_w = rng.uniform(0.5, 0.89, count)
        sz = rho_w - g
    elif s is StratumTag.HARTOGS_L:
        rho_w = 1.0 - g
        sz = rho_w - rng.uniform(0.12, 0.6, count)
    else:
        raise UnsupportedStratum(f"{s.value} does not apply to a Hartogs triangle")
    radii_w = _split_level(rng, D._two_q, rho_w)
    out = np.empty((count, D.dim), dtype=np.complex128)
    out[:, 0] = np.power(sz, 1.0 / D._two_p[0])
    out[:, 1:] = radii_w
    return out * _phases(rng, out.shape)


def sample_near_stratum_arr(
    D: Domain, s: StratumTag, eps: float, count: int, seed: int
) -> np.ndarray:
    """Interior points whose targeted gap lies in [eps/2, eps].

    For Hartogs strata the untargeted gap stays at least 0.1, and near-K
    points keep sum |w_j|^(2 q_j) well away from 0.
    """
    if not 0.0 < eps < 0.25:
        raise PreconditionViolated("eps must lie in (0, 1/4)")
    if count < 1:
        raise PreconditionViolated("count must be at least 1")
    return _near_stratum_arr(D, s, eps, count, np.random.default_rng(seed))


def sample_near_stratum(D: Domain, s: StratumTag, eps: float, count: int, seed: int):
    return [tuple(row) for row in sample_near_stratum_arr(D, s, eps, count, seed)]
