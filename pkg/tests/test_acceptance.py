"""Acceptance gate: one criterion per test, one PASS/FAIL line each.

Every test draws its instances from a fixed seed, checks the stated
tolerance, and enforces the stated runtime budget where one is given.
Run with -s to see the summary lines on success.
"""

import contextlib
import io
import time
from fractions import Fraction

import numpy as np

from holomap._kernels import abs2p_sum
from holomap.cli import main, random_ellipsoid_aut, random_hartogs_aut
from holomap.domains import Ellipsoid, HartogsTriangle, sample_interior_arr
from holomap.exactnum import ExactScalar, SQRT2, format_scalar
from holomap.existence import (
    EllipsoidWitness,
    Hartogs11Witness,
    Permutation,
    decide_ellipsoid,
    decide_hartogs_1_1,
    revalidate,
    stabilizer,
)
from holomap.maps import (
    BlaschkeProduct,
    H2Proper,
    Permute,
    PowerMap,
    compose,
    format_map,
    is_landucci_form,
    make_ball_aut,
    make_ellipsoid_aut,
    synth_ellipsoid_proper,
    synth_hartogs_1_1_proper,
    synth_hartogs_1_m_proper,
)
from holomap.parser import parse_domain, parse_map, parse_scalar
from holomap.verify import (
    check_aut,
    check_into,
    check_properness,
    check_stratum_preservation,
    oracle_ellipsoid,
    oracle_hartogs_1_1,
)


def report(criterion, errors, elapsed, budget=None):
    over = budget is not None and elapsed > budget
    status = "FAIL" if errors or over else "PASS"
    print(f"ACCEPTANCE {criterion} {status} ({elapsed:.2f}s)")
    assert not errors, errors[:5]
    if budget is not None:
        assert elapsed <= budget, f"budget {budget}s exceeded: {elapsed:.2f}s"


def rand_unitary(k, rng):
    A = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    Q, R = np.linalg.qr(A)
    d = np.diag(R)
    return Q * (d / np.abs(d)).conj()[None, :]


def rand_phase(rng):
    return complex(np.exp(1j * rng.uniform(0, 2 * np.pi)))


def rand_fraction(rng, hi=12):
    return Fraction(int(rng.integers(1, hi + 1)), int(rng.integers(1, hi + 1)))


def divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def test_acceptance_1_ellipsoid_decider_vs_enumeration():
    rng = np.random.default_rng(101)
    errors = []
    t0 = time.perf_counter()
    for trial in range(200):
        n = int(rng.integers(2, 8))
        q = [rand_fraction(rng) for _ in range(n)]
        if trial % 2 == 0:
            sigma = Permutation(tuple(int(x) for x in rng.permutation(n) + 1))
            p = [Fraction(0)] * n
            for j in range(1, n + 1):
                p[sigma(j) - 1] = q[j - 1] * int(rng.integers(1, 5))
        else:
            p = [rand_fraction(rng) for _ in range(n)]
        got = oracle_ellipsoid(p, q)
        w = decide_ellipsoid(p, q)
        if (got is None) != (not isinstance(w, EllipsoidWitness)):
            errors.append(f"existence mismatch on p={p} q={q}")
        elif got is not None and not revalidate(w, p, q):
            errors.append(f"witness fails revalidation on p={p} q={q}")
    report(1, errors, time.perf_counter() - t0, budget=10.0)


def rand_exact(rng, irrational_part):
    u = Fraction(int(rng.integers(0, 7)), int(rng.integers(1, 7)))
    v = Fraction(0)
    if irrational_part:
        v = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 4)))
    if u == 0 and v == 0:
        u = Fraction(1)
    return ExactScalar(u, v)


def test_acceptance_2_diophantine_decider_vs_scan():
    rng = np.random.default_rng(102)
    errors = []
    t0 = time.perf_counter()
    for trial in range(200):
        shape = trial % 4
        if shape == 0:
            inst = [rand_exact(rng, False) for _ in range(4)]
        elif shape == 1:
            p, pt = rand_exact(rng, False), rand_exact(rng, False)
            inst = [p, p * rand_exact(rng, True), pt, pt * rand_exact(rng, True)]
        else:
            inst = [rand_exact(rng, bool(rng.integers(0, 2))) for _ in range(4)]
        p, q, pt, qt = inst
        w = decide_hartogs_1_1(p, q, pt, qt)
        scan = oracle_hartogs_1_1(p, q, pt, qt)
        if isinstance(w, Hartogs11Witness):
            if not revalidate(w, p, q, pt, qt):
                errors.append(f"witness fails revalidation on {inst}")
            elif w.k <= 100 and w.l <= 100 and scan != (w.k, w.l):
                errors.append(f"scan disagrees on {inst}: {scan} vs {(w.k, w.l)}")
        elif scan is not None:
            errors.append(f"decider missed {scan} on {inst}")
        if shape == 0:
            if not isinstance(w, Hartogs11Witness):
                errors.append(f"no witness for all-rational {inst}")
            else:
                rho = (q / p).as_fraction()
                rhot = (qt / pt).as_fraction()
                canonical = Hartogs11Witness(rho.denominator, rhot.denominator)
                if not revalidate(canonical, p, q, pt, qt):
                    errors.append(f"canonical pair fails on {inst}")
    w = decide_hartogs_1_1(1, SQRT2, 1, 1)
    if isinstance(w, Hartogs11Witness):
        errors.append("(1, sqrt2, 1, 1) should refute")
    report(2, errors, time.perf_counter() - t0, budget=5.0)


def rand_admissible_ellipsoid(rng):
    n = int(rng.integers(2, 6))
    q = [Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 7)))
         for _ in range(n)]
    m = [int(rng.integers(1, 5)) for _ in range(n)]
    sigma = Permutation(tuple(int(x) for x in rng.permutation(n) + 1))
    p = [Fraction(0)] * n
    for j in range(1, n + 1):
        p[sigma(j) - 1] = q[j - 1] * m[j - 1]
    r = tuple(int(rng.choice(divisors(mj))) for mj in m)
    mids = [q[j] * m[j] / r[j] for j in range(n)]
    phi = random_ellipsoid_aut(Ellipsoid(mids), rng)
    F = synth_ellipsoid_proper(Ellipsoid(p), Ellipsoid(q), sigma, r, phi)
    return F, Ellipsoid(p), Ellipsoid(q)


def test_acceptance_3_ellipsoid_synthesis_is_proper():
    rng = np.random.default_rng(103)
    errors = []
    t0 = time.perf_counter()
    for trial in range(50):
        F, src, dst = rand_admissible_ellipsoid(rng)
        seed = 1000 + trial
        into = check_into(F, src, dst, samples=10000, seed=seed)
        if not into.passed:
            errors.append(f"into fails for {format_map(F)}: {into.worst_case}")
        prop = check_properness(F, src, dst, levels=12, samples=200, seed=seed)
        if not prop.passed:
            errors.append(f"properness fails for {format_map(F)}")
    report(3, errors, time.perf_counter() - t0, budget=60.0)


def rand_ellipsoid_with_ones(rng):
    n = int(rng.integers(2, 7))
    k1 = int(rng.integers(0, n + 1))
    pool = [Fraction(2), Fraction(3), Fraction(1, 2), Fraction(3, 2), Fraction(5)]
    exps = [Fraction(1)] * k1 + [
        pool[int(rng.integers(0, len(pool)))] for _ in range(n - k1)
    ]
    order = rng.permutation(n)
    return Ellipsoid([exps[i] for i in order])


def test_acceptance_4_automorphism_suites():
    rng = np.random.default_rng(104)
    errors = []
    t0 = time.perf_counter()
    for trial in range(50):
        E = rand_ellipsoid_with_ones(rng)
        A = random_ellipsoid_aut(E, rng)
        rep = check_aut(A, E, samples=1000, seed=2000 + trial)
        if not rep.passed:
            errors.append(f"ellipsoid aut fails: {format_map(A)}")
    for trial in range(50):
        if trial % 2 == 0:
            D = HartogsTriangle(
                int(rng.integers(1, 4)),
                (ExactScalar(rand_fraction(rng, 4)),),
            )
        else:
            m = int(rng.integers(2, 5))
            D = HartogsTriangle(
                int(rng.integers(1, 4)),
                tuple(rand_fraction(rng, 4) for _ in range(m)),
            )
        A = random_hartogs_aut(D, rng)
        rep = check_aut(A, D, samples=1000, seed=3000 + trial)
        if not rep.passed:
            errors.append(f"hartogs aut fails on {D}: {format_map(A)}")
    for trial in range(50):
        k = int(rng.integers(1, 6))
        a = rng.normal(size=k) + 1j * rng.normal(size=k)
        a *= rng.uniform(0, 0.8) / np.linalg.norm(a)
        H = make_ball_aut(tuple(a), rand_unitary(k, rng))
        _, Q, _, _ = H._ball
        resid = np.abs(
            Q @ (np.eye(k) - np.outer(a, a.conj())) @ Q.conj().T - np.eye(k)
        ).max()
        if resid > 1e-10:
            errors.append(f"matrix identity residual {resid} at k={k}")
    E = rand_ellipsoid_with_ones(rng)
    C = compose(random_ellipsoid_aut(E, rng), random_ellipsoid_aut(E, rng))
    if not check_aut(C, E, samples=1000, seed=4000).passed:
        errors.append("composition of two ellipsoid automorphisms fails")
    report(4, errors, time.perf_counter() - t0, budget=30.0)


def test_acceptance_5_restricted_form_counterexample():
    t0 = time.perf_counter()
    errors = []
    src, dst = HartogsTriangle(2, (3,)), HartogsTriangle(2, (5,))
    F = synth_hartogs_1_1_proper(src, dst, 3, 3, BlaschkeProduct(1.0, (0.5,)))
    if format_map(F) != "h2prop(zeta=1,xi=1,kp=3,l=3,b=3,pp=2,qp=3,B=[0.5])":
        errors.append(f"unexpected synthesis: {format_map(F)}")
    if not check_into(F, src, dst, samples=10000, seed=5).passed:
        errors.append("counterexample fails check_into")
    if not check_properness(F, src, dst, levels=12, samples=200, seed=5).passed:
        errors.append("counterexample fails check_properness")
    if is_landucci_form(F, src) is not False:
        errors.append("counterexample wrongly classified as the restricted form")
    report(5, errors, time.perf_counter() - t0, budget=10.0)


def rand_1m_instance(rng):
    m = int(rng.integers(2, 6))
    k1 = int(rng.integers(1, m + 1))
    pool = [Fraction(2), Fraction(3), Fraction(1, 2), Fraction(3, 2), SQRT2]
    qt = [ExactScalar(1)] * k1 + [
        ExactScalar(x) if isinstance(x, Fraction) else x
        for x in (pool[int(rng.integers(0, len(pool)))] for _ in range(m - k1))
    ]
    e = [int(rng.integers(1, 4)) for _ in range(m)]
    r = tuple(int(rng.integers(1, 4)) for _ in range(m))
    sigma = Permutation(tuple(int(x) for x in rng.permutation(m) + 1))
    q = [ExactScalar(0)] * m
    for j in range(1, m + 1):
        q[sigma(j) - 1] = qt[j - 1] * (e[j - 1] * r[j - 1])
    pt = SQRT2 if rng.integers(0, 2) else ExactScalar(rand_fraction(rng, 4))
    kk = int(rng.integers(1, 4))
    mids = [qt[j] * e[j] for j in range(m)]
    mid_ones = sum(1 for x in mids if x == ExactScalar(1))
    stab = stabilizer(mids)
    psi = make_ellipsoid_aut(
        Ellipsoid(mids),
        stab[int(rng.integers(0, len(stab)))],
        (0.0,) * mid_ones,
        rand_unitary(mid_ones, rng) if mid_ones else (),
        tuple(rand_phase(rng) for _ in range(m - mid_ones)),
    )
    src = HartogsTriangle(pt * kk, q)
    dst = HartogsTriangle(pt, qt)
    F = synth_hartogs_1_m_proper(src, dst, sigma, r, psi, zeta=rand_phase(rng))
    return F, src, dst


def test_acceptance_6_inner_map_unitarity():
    rng = np.random.default_rng(106)
    errors = []
    t0 = time.perf_counter()
    for trial in range(20):
        F, src, dst = rand_1m_instance(rng)
        h = F.inner
        Eq = Ellipsoid(src.q)
        W = sample_interior_arr(Eq, 1000, np.random.default_rng(6000 + trial))
        H = h.eval_batch(W)
        lhs = abs2p_sum(np.ascontiguousarray(H), Ellipsoid(dst.q)._two_p)
        rhs = abs2p_sum(np.ascontiguousarray(W), Eq._two_p)
        worst = np.abs(lhs - rhs).max()
        if worst > 1e-10:
            errors.append(f"unitarity defect {worst} for {format_map(F)}")
    report(6, errors, time.perf_counter() - t0)


def test_acceptance_7_stratum_preservation():
    rng = np.random.default_rng(107)
    errors = []
    t0 = time.perf_counter()
    for trial in range(20):
        F, src, dst = rand_1m_instance(rng)
        rep = check_stratum_preservation(
            F, src, dst, levels=12, samples=100, seed=7000 + trial
        )
        if not rep.passed:
            errors.append(f"stratum preservation fails for {format_map(F)}")
    report(7, errors, time.perf_counter() - t0)


def rand_scalar_expr(rng):
    u = Fraction(int(rng.integers(-12, 13)), int(rng.integers(1, 13)))
    v = Fraction(int(rng.integers(-12, 13)), int(rng.integers(1, 13)))
    if rng.integers(0, 3) == 0:
        v = Fraction(0)
    return ExactScalar(u, v)


def rand_positive_scalar(rng):
    u = Fraction(int(rng.integers(1, 13)), int(rng.integers(1, 13)))
    if rng.integers(0, 3) == 0:
        return ExactScalar(u, Fraction(int(rng.integers(0, 3))))
    return ExactScalar(u)


def rand_domain_expr(rng):
    if rng.integers(0, 2):
        n = int(rng.integers(1, 5))
        return Ellipsoid([rand_positive_scalar(rng) for _ in range(n)])
    m = int(rng.integers(1, 4))
    return HartogsTriangle(
        rand_positive_scalar(rng), [rand_positive_scalar(rng) for _ in range(m)]
    )


def rand_map_expr(rng):
    kind = int(rng.integers(0, 7))
    if kind == 0:
        n = int(rng.integers(1, 5))
        return PowerMap(tuple(int(rng.integers(1, 6)) for _ in range(n)))
    if kind == 1:
        n = int(rng.integers(1, 5))
        return Permute(Permutation(tuple(int(x) for x in rng.permutation(n) + 1)))
    if kind == 2:
        k = int(rng.integers(1, 4))
        a = rng.normal(size=k) + 1j * rng.normal(size=k)
        a *= rng.uniform(0, 0.7) / np.linalg.norm(a)
        return make_ball_aut(tuple(a), rand_unitary(k, rng))
    if kind == 3:
        return random_ellipsoid_aut(rand_ellipsoid_with_ones(rng), rng)
    if kind == 4:
        D = HartogsTriangle(int(rng.integers(1, 4)), (rand_fraction(rng, 4),))
        return random_hartogs_aut(D, rng)
    if kind == 5:
        pp = int(rng.integers(1, 5))
        qp = int(rng.integers(1, 5))
        g = np.gcd(pp, qp)
        pp, qp = pp // g, qp // g
        nz = int(rng.integers(0, 3))
        zeros = tuple(
            complex(c * rng.uniform(0.1, 0.8) / abs(c))
            for c in rng.normal(size=nz) + 1j * rng.normal(size=nz)
        )
        kp = int(rng.integers(1, 4)) if not zeros else int(rng.integers(0, 4))
        return H2Proper(
            rand_phase(rng), rand_phase(rng), kp, int(rng.integers(1, 5)),
            int(rng.integers(-3, 4)), pp, qp, BlaschkeProduct(1.0, zeros),
        )
    m = int(rng.integers(2, 4))
    D = HartogsTriangle(
        int(rng.integers(1, 4)), tuple(rand_fraction(rng, 3) for _ in range(m))
    )
    return random_hartogs_aut(D, rng)


def test_acceptance_8_round_trip_and_determinism():
    rng = np.random.default_rng(108)
    errors = []
    t0 = time.perf_counter()
    for _ in range(500):
        s = rand_scalar_expr(rng)
        text = format_scalar(s)
        if parse_scalar(text) != s or format_scalar(parse_scalar(text)) != text:
            errors.append(f"scalar round trip fails: {text}")
    for _ in range(500):
        D = rand_domain_expr(rng)
        text = str(D)
        if parse_domain(text) != D or str(parse_domain(text)) != text:
            errors.append(f"domain round trip fails: {text}")
    for _ in range(500):
        F = rand_map_expr(rng)
        text = format_map(F)
        again = parse_map(text)
        if again != F or format_map(again) != text:
            errors.append(f"map round trip fails: {text}")
    argvs = [
        ["exists", "E(4,6)", "E(2,3)"],
        ["exists", "F(2;3)", "F(2;5)"],
        ["synth", "E(4,6)", "E(2,3)", "--auto", "--json"],
        ["aut", "E(1,2)", "--seed", "11"],
        ["aut", "F(2;3,1)", "--seed", "7", "--json"],
        ["verify", "perm(2,1)", "E(2,2)", "E(2,2)",
         "--kind", "aut", "--n", "200", "--json"],
    ]
    for argv in argvs:
        runs = []
        for _ in range(2):
            out = io.StringIO()
            with contextlib.redirect_stdout(out):
                code = main(list(argv))
            runs.append((code, out.getvalue()))
        if runs[0] != runs[1]:
            errors.append(f"non-deterministic output for {argv}")
    report(8, errors, time.perf_counter() - t0)
