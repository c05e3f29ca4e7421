"""The holomap command line: existence decisions, synthesis, evaluation,
verification, automorphisms, composition, and canonical printing.

Every subcommand writes a single deterministic line to stdout. Exit status:
0 for success (existence, verification pass), 1 for a definite negative
(non existence, verification fail) with valid output on stdout, 2 for
unusable input (syntax errors, unsupported combinations) with a message on
stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Dict, Optional, Sequence

import numpy as np

from .domains import Domain, Ellipsoid, HartogsTriangle, format_domain
from .errors import HolomapError, ParseError
from .existence import (
    EllipsoidWitness,
    Hartogs11Witness,
    Hartogs1mWitness,
    NonExistence,
    Permutation,
    decide_ellipsoid,
    decide_hartogs_1_1,
    decide_hartogs_1_m,
)
from .maps import (
    EAut,
    HFpsProper,
    MapExpr,
    compose as compose_maps,
    format_complex,
    format_map,
    make_ellipsoid_aut,
    make_hartogs_1_1_aut,
    synth_ellipsoid_proper,
    synth_hartogs_1_1_proper,
    synth_hartogs_1_m_proper,
)
from .parser import _Parser, parse_domain, parse_map, parse_point, parse_scalar
from .verify import (
    _fmt_json,
    check_aut,
    check_into,
    check_properness,
    check_stratum_preservation,
)

__all__ = [
    "main",
    "parse_domain",
    "parse_map",
    "parse_point",
    "parse_scalar",
    "random_aut",
]


class _Usage(Exception):
    """Raised for structurally unusable requests; maps to exit status 2."""


def _rand_unitary(k: int, rng) -> tuple:
    if k == 0:
        return ()
    A = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    Q, R = np.linalg.qr(A)
    d = np.diag(R)
    Q = Q * (d / np.abs(d)).conj()[None, :]
    return tuple(tuple(complex(x) for x in row) for row in Q)


def _rand_phase(rng) -> complex:
    t = 2.0 * math.pi * rng.random()
    return complex(math.cos(t), math.sin(t))


def _rand_block_perm(values, rng) -> Permutation:
    blocks: Dict[object, list] = {}
    for pos, val in enumerate(values, start=1):
        blocks.setdefault(val, []).append(pos)
    images = [0] * len(values)
    for positions in blocks.values():
        shuffled = list(positions)
        rng.shuffle(shuffled)
        for tgt, src in zip(positions, shuffled):
            images[tgt - 1] = src
    return Permutation(tuple(images))


def random_ellipsoid_aut(E: Ellipsoid, rng) -> EAut:
    """A seeded random element of Aut(E)."""
    k = E.ones_count
    if k:
        v = rng.normal(size=k) + 1j * rng.normal(size=k)
        v *= rng.uniform(0.0, 0.6) / np.linalg.norm(v)
        a = tuple(complex(x) for x in v)
    else:
        a = ()
    U = _rand_unitary(k, rng)
    sigma = _rand_block_perm(E.p, rng)
    zetas = tuple(_rand_phase(rng) for _ in range(E.n - k))
    return make_ellipsoid_aut(E, sigma, a, U, zetas)


def random_hartogs_aut(F: HartogsTriangle, rng) -> MapExpr:
    """A seeded random element of Aut(F)."""
    if F.m == 1:
        xi = _rand_phase(rng)
        theta = rng.uniform(-math.pi, math.pi)
        rho = F.q[0] / F.p
        alpha = 0.5 * (rng.normal() + 1j * rng.normal()) / 3.0 if rho.is_natural else 0.0
        return make_hartogs_1_1_aut(F, xi, theta, alpha)
    inner_E = Ellipsoid(F.q)
    k = inner_E.ones_count
    inner = make_ellipsoid_aut(
        inner_E,
        _rand_block_perm(F.q, rng),
        (0.0,) * k,
        _rand_unitary(k, rng),
        tuple(_rand_phase(rng) for _ in range(F.m - k)),
    )
    return HFpsProper(_rand_phase(rng), 1, inner)


def random_aut(D: Domain, seed: int) -> MapExpr:
    """A seeded random automorphism of the domain."""
    rng = np.random.default_rng(seed)
    if isinstance(D, Ellipsoid):
        return random_ellipsoid_aut(D, rng)
    return random_hartogs_aut(D, rng)


def _witness_json(w) -> dict:
    if isinstance(w, EllipsoidWitness):
        return {"sigma": list(w.sigma.images)}
    if isinstance(w, Hartogs11Witness):
        return {"k": w.k, "l": w.l}
    if isinstance(w, Hartogs1mWitness):
        return {"k": w.k, "sigma": list(w.sigma.images)}
    raise TypeError(f"not a positive witness: {w!r}")


def _decide(src: Domain, dst: Domain):
    if isinstance(src, Ellipsoid) and isinstance(dst, Ellipsoid):
        if src.n < 2 or dst.n < 2:
            raise _Usage("the ellipsoid decision needs dimension n >= 2")
        if src.n != dst.n:
            raise _Usage("the ellipsoids must have equal dimension")
        return decide_ellipsoid(src.p, dst.p)
    if isinstance(src, HartogsTriangle) and isinstance(dst, HartogsTriangle):
        if src.m != dst.m:
            raise _Usage("the triangles must have the same number of w coordinates")
        if src.m == 1:
            return decide_hartogs_1_1(src.p, src.q[0], dst.p, dst.q[0])
        return decide_hartogs_1_m(src.p, src.q, dst.p, dst.q)
    raise _Usage(
        f"no decision between {format_domain(src)} and {format_domain(dst)}: "
        "the domains must be of the same kind"
    )


def _parse_params(text: Optional[str]) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for token in (text or "").split():
        if "=" not in token:
            raise _Usage(f"malformed parameter {token!r}; expected key=value")
        key, _, value = token.partition("=")
        if not key or not value:
            raise _Usage(f"malformed parameter {token!r}; expected key=value")
        out[key] = value
    return out


def _param(parsers: Dict[str, object], params: Dict[str, str], key: str, default=None):
    if key not in params:
        return default
    raw = params.pop(key)
    p = _Parser(raw)
    kind = parsers[key]
    if kind == "int":
        out = p._int()
    elif kind == "intlist":
        out = p._int_list()
    elif kind == "cplx":
        out = p._cplx()
    elif kind == "clist":
        out = p._clist()
    elif kind == "cmatrix":
        out = p._cmatrix()
    elif kind == "float":
        out = p._float()
    elif kind == "map":
        out = p._map()
    else:
        raise AssertionError(kind)
    p._end()
    return out


_SYNTH_PARAMS = {
    "sigma": "intlist",
    "r": "intlist",
    "phi": "map",
    "psi": "map",
    "k": "int",
    "l": "int",
    "B": "clist",
    "zeta": "cplx",
    "xi": "cplx",
}

_AUT_PARAMS = {
    "sigma": "intlist",
    "a": "clist",
    "U": "cmatrix",
    "zetas": "clist",
    "zeta": "cplx",
    "xi": "cplx",
    "theta": "float",
    "alpha": "cplx",
}


def _reject_extras(params: Dict[str, str]):
    if params:
        raise _Usage(f"unknown parameters: {', '.join(sorted(params))}")


def _synth(src: Domain, dst: Domain, params: Dict[str, str], auto: bool):
    from .maps import BlaschkeProduct

    if isinstance(src, Ellipsoid) and isinstance(dst, Ellipsoid):
        if auto:
            w = _decide(src, dst)
            if isinstance(w, NonExistence):
                return None, w
            sigma, r = w.sigma, (1,) * src.n
            phi = None
        else:
            images = _param(_SYNTH_PARAMS, params, "sigma")
            r = _param(_SYNTH_PARAMS, params, "r", (1,) * src.n)
            phi = _param(_SYNTH_PARAMS, params, "phi")
            _reject_extras(params)
            if images is None:
                raise _Usage("ellipsoid synthesis needs sigma=[...] or --auto")
            sigma = Permutation(images)
            if phi is not None and not isinstance(phi, EAut):
                raise _Usage("phi must be an eaut(...) or ballaut(...) expression")
        F = synth_ellipsoid_proper(src, dst, sigma, r, phi)
        return F, {"sigma": list(sigma.images), "r": list(r)}
    if isinstance(src, HartogsTriangle) and isinstance(dst, HartogsTriangle):
        if src.m != dst.m:
            raise _Usage("the triangles must have the same number of w coordinates")
        if src.m == 1:
            if auto:
                w = _decide(src, dst)
                if isinstance(w, NonExistence):
                    return None, w
                k, l = w.k, w.l
                B, zeta, xi = None, 1.0, 1.0
            else:
                k = _param(_SYNTH_PARAMS, params, "k")
                l = _param(_SYNTH_PARAMS, params, "l")
                zeros = _param(_SYNTH_PARAMS, params, "B")
                zeta = _param(_SYNTH_PARAMS, params, "zeta", 1.0)
                xi = _param(_SYNTH_PARAMS, params, "xi", 1.0)
                _reject_extras(params)
                if k is None or l is None:
                    raise _Usage("synthesis needs k=... l=... or --auto")
                B = BlaschkeProduct(1.0, zeros) if zeros is not None else None
            F = synth_hartogs_1_1_proper(src, dst, k, l, B, zeta, xi)
            return F, {"k": k, "l": l}
        if auto:
            w = _decide(src, dst)
            if isinstance(w, NonExistence):
                return None, w
            sigma, r, psi, zeta = w.sigma, (1,) * src.m, None, 1.0
        else:
            images = _param(_SYNTH_PARAMS, params, "sigma")
            r = _param(_SYNTH_PARAMS, params, "r", (1,) * src.m)
            psi = _param(_SYNTH_PARAMS, params, "psi")
            zeta = _param(_SYNTH_PARAMS, params, "zeta", 1.0)
            _reject_extras(params)
            if images is None:
                raise _Usage("synthesis needs sigma=[...] or --auto")
            sigma = Permutation(images)
            if psi is not None and not isinstance(psi, EAut):
                raise _Usage("psi must be an eaut(...) or ballaut(...) expression")
        F = synth_hartogs_1_m_proper(src, dst, sigma, r, psi, zeta)
        return F, {"k": F.k, "sigma": list(sigma.images), "r": list(r)}
    raise _Usage("synthesis needs two domains of the same kind")


def _aut_from_params(D: Domain, params: Dict[str, str]) -> MapExpr:
    if isinstance(D, Ellipsoid):
        images = _param(_AUT_PARAMS, params, "sigma", tuple(range(1, D.n + 1)))
        a = _param(_AUT_PARAMS, params, "a", (0.0,) * D.ones_count)
        k = D.ones_count
        U = _param(
            _AUT_PARAMS, params, "U",
            tuple(tuple(1.0 if i == j else 0.0 for j in range(k)) for i in range(k)),
        )
        zetas = _param(_AUT_PARAMS, params, "zetas", (1.0,) * (D.n - k))
        _reject_extras(params)
        return make_ellipsoid_aut(D, Permutation(images), a, U, zetas)
    if D.m == 1:
        xi = _param(_AUT_PARAMS, params, "xi", 1.0)
        theta = _param(_AUT_PARAMS, params, "theta", 0.0)
        alpha = _param(_AUT_PARAMS, params, "alpha", 0.0)
        _reject_extras(params)
        return make_hartogs_1_1_aut(D, xi, theta, alpha)
    zeta = _param(_AUT_PARAMS, params, "zeta", 1.0)
    images = _param(_AUT_PARAMS, params, "sigma", tuple(range(1, D.m + 1)))
    k = Ellipsoid(D.q).ones_count
    U = _param(
        _AUT_PARAMS, params, "U",
        tuple(tuple(1.0 if i == j else 0.0 for j in range(k)) for i in range(k)),
    )
    zetas = _param(_AUT_PARAMS, params, "zetas", (1.0,) * (D.m - k))
    _reject_extras(params)
    inner = make_ellipsoid_aut(Ellipsoid(D.q), Permutation(images), (0.0,) * k, U, zetas)
    return HFpsProper(zeta, 1, inner)


def _fmt_point(point) -> str:
    return "(" + ",".join(format_complex(c) for c in point) + ")"


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holomap", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exists", help="decide existence of a proper map")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("synth", help="synthesize a proper map")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("params", nargs="?", default=None, help="key=value pairs")
    p.add_argument("--auto", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("eval", help="evaluate a map at a point")
    p.add_argument("map")
    p.add_argument("point")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="verify a map property numerically")
    p.add_argument("map")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--kind", required=True, choices=["into", "proper", "aut", "strata"])
    p.add_argument("--n", type=int, default=None, help="sample count")
    p.add_argument("--levels", type=int, default=None, help="escape levels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("aut", help="build an automorphism")
    p.add_argument("domain")
    p.add_argument("params", nargs="?", default=None, help="key=value pairs")
    p.add_argument("--seed", type=int, default=None, help="draw one at random")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("compose", help="compose two maps")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("print", help="reprint a map in canonical form")
    p.add_argument("map")
    p.add_argument("--json", action="store_true")
    return ap


def _run(args) -> int:
    if args.command == "exists":
        w = _decide(parse_domain(args.src), parse_domain(args.dst))
        if isinstance(w, NonExistence):
            print(_fmt_json({"non_existence": {"reason": w.reason}}))
            return 1
        print(_fmt_json({"witness": _witness_json(w)}))
        return 0

    if args.command == "synth":
        if not args.auto and args.params is None:
            raise _Usage("provide parameters or --auto")
        F, info = _synth(
            parse_domain(args.src), parse_domain(args.dst),
            _parse_params(args.params), args.auto,
        )
        if F is None:
            print(_fmt_json({"non_existence": {"reason": info.reason}}))
            return 1
        if args.json:
            print(_fmt_json({"map": format_map(F), "witness": info}))
        else:
            print(format_map(F))
        return 0

    if args.command == "eval":
        F = parse_map(args.map)
        out = F.eval(parse_point(args.point))
        if args.json:
            print(_fmt_json({"point": [[c.real, c.imag] for c in out]}))
        else:
            print(_fmt_point(out))
        return 0

    if args.command == "verify":
        F = parse_map(args.map)
        src, dst = parse_domain(args.src), parse_domain(args.dst)
        kw = {"seed": args.seed}
        if args.kind == "into":
            if args.n:
                kw["samples"] = args.n
            report = check_into(F, src, dst, **kw)
        elif args.kind == "proper":
            if args.n:
                kw["samples"] = args.n
            if args.levels:
                kw["levels"] = args.levels
            report = check_properness(F, src, dst, **kw)
        elif args.kind == "aut":
            if src != dst:
                raise _Usage("an automorphism check needs DST equal to SRC")
            if args.n:
                kw["samples"] = args.n
            report = check_aut(F, src, **kw)
        else:
            if args.n:
                kw["samples"] = args.n
            if args.levels:
                kw["levels"] = args.levels
            report = check_stratum_preservation(F, src, dst, **kw)
        if args.json:
            print(report.to_json())
        else:
            print(f"{report.kind} {'PASS' if report.passed else 'FAIL'}")
        return 0 if report.passed else 1

    if args.command == "aut":
        D = parse_domain(args.domain)
        if args.seed is not None and args.params is not None:
            raise _Usage("give either parameters or --seed, not both")
        if args.seed is not None:
            F = random_aut(D, args.seed)
        else:
            F = _aut_from_params(D, _parse_params(args.params))
        if args.json:
            print(_fmt_json({"map": format_map(F)}))
        else:
            print(format_map(F))
        return 0

    if args.command == "compose":
        F = compose_maps(parse_map(args.first), parse_map(args.second))
        if args.json:
            print(_fmt_json({"map": format_map(F)}))
        else:
            print(format_map(F))
        return 0

    if args.command == "print":
        F = parse_map(args.map)
        if args.json:
            print(_fmt_json({"map": format_map(F)}))
        else:
            print(format_map(F))
        return 0

    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = _build_argparser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _run(args)
    except _Usage as e:
        print(f"holomap: {e}", file=sys.stderr)
        return 2
    except (ParseError, HolomapError) as e:
        print(f"holomap: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
