"""Statistical verification of map properties on sampled points.

Properness is checked through dyadic escape profiles: for shrinking boundary
offsets eps = 2^-4, 2^-5, ... the image of an eps-near-boundary sample must
approach the target boundary at a comparable rate (no level may exceed twice
the previous one, and the finest level must land under a hard threshold),
while points far from the source boundary must keep a positive image gap.
All randomness is driven by explicit integer seeds, so reports are
reproducible bit for bit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .domains import (
    Domain,
    HartogsTriangle,
    StratumTag,
    gaps_hartogs_arr,
    min_gap_arr,
    sample_interior_arr,
    sample_near_stratum_arr,
    strata,
)
from .errors import DimensionMismatch, InstanceTooLarge, UnsupportedDimension
from .exactnum import ExactScalar
from .existence import Permutation, _exact_vector
from .maps import MapExpr, invert_aut

INTERIOR_FLOOR = 1e-12
ESCAPE_FINAL = 1e-2
MONOTONE_SLACK = 2.0
COMPACT_FLOOR = 1e-6
COMPACT_SOURCE_GAP = 0.2
AUT_RESIDUAL = 1e-9
OTHER_STRATUM_FLOOR = 1e-2


def _eval(F, Z: np.ndarray) -> np.ndarray:
    out = F.eval_batch(Z) if isinstance(F, MapExpr) else F(Z)
    out = np.asarray(out, dtype=complex)
    if out.shape != Z.shape:
        raise DimensionMismatch(
            f"map returned shape {out.shape} for a batch of shape {Z.shape}"
        )
    return out


def _rows(Z: np.ndarray) -> List[List[float]]:
    return [[float(c.real), float(c.imag)] for c in Z]


def _fmt_json(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, str):
        out = x.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if isinstance(x, (list, tuple)):
        return "[" + ",".join(_fmt_json(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ",".join(f"{_fmt_json(str(k))}:{_fmt_json(v)}" for k, v in x.items()) + "}"
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class VerificationReport:
    """Outcome of one verification run; serializes deterministically."""

    kind: str
    passed: bool
    samples: int
    seed: int
    tolerances: Dict[str, float]
    worst_case: Dict[str, object]
    levels: Optional[List[Dict[str, object]]] = None

    def to_json(self) -> str:
        return _fmt_json(
            {
                "kind": self.kind,
                "passed": self.passed,
                "samples": self.samples,
                "seed": self.seed,
                "tolerances": self.tolerances,
                "worst_case": self.worst_case,
                "levels": self.levels,
            }
        )


def check_into(F, src: Domain, dst: Domain, samples: int = 10000, seed: int = 0) -> VerificationReport:
    """Sample the source interior and require every image to lie in the
    target up to a 1e-12 penetration floor."""
    rng = np.random.default_rng(seed)
    Z = sample_interior_arr(src, samples, rng)
    W = _eval(F, Z)
    gaps = min_gap_arr(dst, W)
    i = int(np.argmin(gaps))
    return VerificationReport(
        kind="into",
        passed=bool(gaps[i] >= -INTERIOR_FLOOR),
        samples=samples,
        seed=seed,
        tolerances={"interior_floor": INTERIOR_FLOOR},
        worst_case={
            "point": _rows(Z[i]),
            "image": _rows(W[i]),
            "value": float(gaps[i]),
        },
    )


def _compact_spot(F, src: Domain, dst: Domain, seed: int, want: int = 200):
    """Points with source min-gap >= 0.2 and their image min-gaps."""
    rng = np.random.default_rng([seed, 999])
    found = []
    for _ in range(10):
        Z = sample_interior_arr(src, max(want, 256), rng)
        keep = min_gap_arr(src, Z) >= COMPACT_SOURCE_GAP
        if keep.any():
            found.append(Z[keep])
        if sum(len(x) for x in found) >= want:
            break
    if not found:
        return None, None
    Z = np.concatenate(found)[:want]
    return Z, min_gap_arr(dst, _eval(F, Z))


def check_properness(
    F,
    src: Domain,
    dst: Domain,
    levels: int = 12,
    samples: int = 200,
    seed: int = 0,
) -> VerificationReport:
    """Dyadic escape profile per source stratum plus a compact spot check.

    For eps = 2^-4 ... 2^-(3+levels), near-stratum samples must map to points
    whose distance to the target boundary is controlled: each level at most
    twice the previous, final level at most 1e-2, never outside the target.
    Points with source min-gap >= 0.2 must keep image min-gap >= 1e-6.
    """
    if levels < 2:
        raise UnsupportedDimension("at least two escape levels are required")
    tags = strata(src)
    eps_list = [2.0 ** -(4 + i) for i in range(levels)]
    profile = {tag: [] for tag in tags}
    total = 0
    passed = True
    worst = {"value": -1.0}
    for si, tag in enumerate(tags):
        for li, eps in enumerate(eps_list):
            rng = np.random.default_rng([seed, li, si])
            Z = sample_near_stratum_arr(src, tag, eps, samples, rng)
            W = _eval(F, Z)
            gaps = min_gap_arr(dst, W)
            total += samples
            if gaps.min() < -INTERIOR_FLOOR:
                passed = False
            i = int(np.argmax(gaps))
            profile[tag].append(float(gaps[i]))
            if li == len(eps_list) - 1 and gaps[i] > worst["value"]:
                worst = {
                    "stratum": tag.value,
                    "eps": eps,
                    "point": _rows(Z[i]),
                    "image": _rows(W[i]),
                    "value": float(gaps[i]),
                }
    for tag in tags:
        seq = profile[tag]
        if seq[-1] > ESCAPE_FINAL:
            passed = False
        for prev, cur in zip(seq, seq[1:]):
            if cur > MONOTONE_SLACK * max(prev, INTERIOR_FLOOR):
                passed = False
    spot_z, spot_gaps = _compact_spot(F, src, dst, seed)
    if spot_gaps is not None:
        total += len(spot_gaps)
        if spot_gaps.min() < COMPACT_FLOOR:
            passed = False
    rows = [
        {"eps": eps, "max_gap": {tag.value: profile[tag][li] for tag in tags}}
        for li, eps in enumerate(eps_list)
    ]
    return VerificationReport(
        kind="proper",
        passed=bool(passed),
        samples=total,
        seed=seed,
        tolerances={
            "escape_final": ESCAPE_FINAL,
            "monotone_slack": MONOTONE_SLACK,
            "compact_floor": COMPACT_FLOOR,
            "interior_floor": INTERIOR_FLOOR,
        },
        worst_case=worst,
        levels=rows,
    )


def check_aut(F, D: Domain, samples: int = 1000, seed: int = 0) -> VerificationReport:
    """Require F and its structural inverse to map D into D and to cancel
    on sampled points within 1e-9."""
    rng = np.random.default_rng(seed)
    Z = sample_interior_arr(D, samples, rng)
    W = _eval(F, Z)
    G = invert_aut(F)
    back = _eval(G, W)
    resid = np.abs(back - Z).max(axis=1)
    into_fwd = min_gap_arr(D, W)
    into_bwd = min_gap_arr(D, _eval(G, Z))
    i = int(np.argmax(resid))
    passed = (
        resid[i] <= AUT_RESIDUAL
        and into_fwd.min() >= -INTERIOR_FLOOR
        and into_bwd.min() >= -INTERIOR_FLOOR
    )
    return VerificationReport(
        kind="aut",
        passed=bool(passed),
        samples=samples,
        seed=seed,
        tolerances={"residual": AUT_RESIDUAL, "interior_floor": INTERIOR_FLOOR},
        worst_case={
            "point": _rows(Z[i]),
            "image": _rows(W[i]),
            "value": float(resid[i]),
        },
    )


def check_stratum_preservation(
    F,
    src: HartogsTriangle,
    dst: HartogsTriangle,
    levels: int = 10,
    samples: int = 200,
    seed: int = 0,
) -> VerificationReport:
    """For m >= 2 triangles: sequences approaching the inner stratum K must
    map to sequences approaching K of the target (and likewise for the outer
    stratum L), while the opposite stratum stays at distance >= 1e-2."""
    if not isinstance(src, HartogsTriangle) or not isinstance(dst, HartogsTriangle):
        raise UnsupportedDimension("stratum preservation applies to Hartogs triangles")
    if src.m < 2 or dst.m < 2:
        raise UnsupportedDimension("stratum preservation applies to m >= 2")
    eps_list = [2.0 ** -(4 + i) for i in range(levels)]
    tags = (StratumTag.HARTOGS_K, StratumTag.HARTOGS_L)
    total = 0
    passed = True
    worst = {"value": -1.0}
    profile = {tag: [] for tag in tags}
    for si, tag in enumerate(tags):
        for li, eps in enumerate(eps_list):
            rng = np.random.default_rng([seed, li, si])
            Z = sample_near_stratum_arr(src, tag, eps, samples, rng)
            W = _eval(F, Z)
            gK, gL = gaps_hartogs_arr(dst, W)
            own, other = (gK, gL) if tag is StratumTag.HARTOGS_K else (gL, gK)
            total += samples
            if min(gK.min(), gL.min()) < -INTERIOR_FLOOR:
                passed = False
            if other.min() < OTHER_STRATUM_FLOOR:
                passed = False
            i = int(np.argmax(own))
            profile[tag].append(float(own[i]))
            if li == len(eps_list) - 1 and own[i] > worst["value"]:
                worst = {
                    "stratum": tag.value,
                    "eps": eps,
                    "point": _rows(Z[i]),
                    "image": _rows(W[i]),
                    "value": float(own[i]),
                }
    for tag in tags:
        seq = profile[tag]
        if seq[-1] > ESCAPE_FINAL:
            passed = False
        for prev, cur in zip(seq, seq[1:]):
            if cur > MONOTONE_SLACK * max(prev, INTERIOR_FLOOR):
                passed = False
    rows = [
        {"eps": eps, "max_gap": {tag.value: profile[tag][li] for tag in tags}}
        for li, eps in enumerate(eps_list)
    ]
    return VerificationReport(
        kind="strata",
        passed=bool(passed),
        samples=total,
        seed=seed,
        tolerances={
            "escape_final": ESCAPE_FINAL,
            "monotone_slack": MONOTONE_SLACK,
            "other_stratum_floor": OTHER_STRATUM_FLOOR,
            "interior_floor": INTERIOR_FLOOR,
        },
        worst_case=worst,
        levels=rows,
    )


def oracle_ellipsoid(p, q) -> Optional[Permutation]:
    """Brute force over all permutations (n <= 7): lexicographically first
    sigma with every p_sigma(j)/q_j natural, or None."""
    p, q = _exact_vector(p), _exact_vector(q)
    n = len(p)
    if n > 7:
        raise InstanceTooLarge("the brute force matching oracle is limited to n <= 7")
    ok = [[(pi / qj).is_natural for qj in q] for pi in p]
    for images in itertools.permutations(range(1, n + 1)):
        if all(ok[images[j] - 1][j] for j in range(n)):
            return Permutation(images)
    return None


def oracle_hartogs_1_1(p, q, pt, qt, bound: int = 100) -> Optional[Tuple[int, int]]:
    """Exhaustive scan over 1 <= k, l <= bound for l*qt/pt - k*q/p integral,
    in lexicographic (l, k) order. Returns (k, l) or None."""
    if bound > 100:
        raise InstanceTooLarge("the scan oracle is limited to k, l <= 100")
    rho = (q if isinstance(q, ExactScalar) else ExactScalar(q)) / (
        p if isinstance(p, ExactScalar) else ExactScalar(p)
    )
    rhot = (qt if isinstance(qt, ExactScalar) else ExactScalar(qt)) / (
        pt if isinstance(pt, ExactScalar) else ExactScalar(pt)
    )
    au, bu = rho.u.numerator, rho.u.denominator
    av, bv = rho.v.numerator, rho.v.denominator
    cu, du = rhot.u.numerator, rhot.u.denominator
    cv, dv = rhot.v.numerator, rhot.v.denominator
    L = np.arange(1, bound + 1, dtype=np.int64)[:, None]
    K = np.arange(1, bound + 1, dtype=np.int64)[None, :]
    sqrt_part = L * (cv * bv) - K * (av * dv)
    D = bu * du
    rat_part = L * (cu * (D // du)) - K * (au * (D // bu))
    hits = (sqrt_part == 0) & (rat_part % D == 0)
    idx = np.argwhere(hits)
    if len(idx) == 0:
        return None
    l, k = int(idx[0][0]) + 1, int(idx[0][1]) + 1
    return k, l


def oracle_admissible_r(p, q, sigma: Permutation, bound: int = 10000) -> List[Tuple[int, ...]]:
    """Brute force enumeration of r with r_j | p_sigma(j)/q_j, in
    lexicographic order; the raw search space is capped at bound."""
    p, q = _exact_vector(p), _exact_vector(q)
    ms = []
    for j in range(1, len(p) + 1):
        ratio = p[sigma(j) - 1] / q[j - 1]
        if not ratio.is_natural:
            return []
        ms.append(ratio.as_integer())
    space = 1
    for m in ms:
        space *= m
    if space > bound:
        raise InstanceTooLarge(f"search space {space} exceeds {bound}")
    out = []
    for r in itertools.product(*(range(1, m + 1) for m in ms)):
        if all(m % rj == 0 for m, rj in zip(ms, r)):
            out.append(r)
    return out


ORACLES: Dict[str, Callable] = {
    "ellipsoid": oracle_ellipsoid,
    "hartogs_1_1": oracle_hartogs_1_1,
    "admissible_r": oracle_admissible_r,
}


def oracle(name: str, *args, **kwargs):
    """Dispatch to one of the brute force reference oracles by name."""
    try:
        fn = ORACLES[name]
    except KeyError:
        raise KeyError(f"unknown oracle {name!r}; choose from {sorted(ORACLES)}")
    return fn(*args, **kwargs)
