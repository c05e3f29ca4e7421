"""Map expressions: a small closed IR of holomorphic maps between the
supported domains, plus constructors for the classified families.

Every node evaluates on batches of points ((N, d) complex arrays) through the
kernel backend, composes, and round-trips through the text grammar handled by
the parser. Nodes are frozen dataclasses holding plain tuples and scalars, so
they hash and compare structurally; numpy views are built lazily per instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .domains import Ellipsoid, HartogsTriangle
from .errors import (
    BranchViolated,
    CongruenceViolated,
    DegenerateBlaschke,
    DimensionMismatch,
    DomainViolation,
    NonPositiveParameter,
    NotAStabilizer,
    NotInBall,
    NotInvertible,
    NotUnimodular,
    NotUnitary,
    PreconditionViolated,
    WrongNodeType,
    ZeroFixRequired,
)
from .exactnum import ExactScalar, ONE, format_scalar
from .existence import Permutation

_UNIMODULAR_TOL = 1e-12
_UNITARY_TOL = 1e-10


def _c(x) -> complex:
    return complex(x)


def _ctuple(xs) -> Tuple[complex, ...]:
    return tuple(complex(x) for x in xs)


def _cmatrix(rows) -> Tuple[Tuple[complex, ...], ...]:
    return tuple(tuple(complex(x) for x in row) for row in rows)


def _exact(x) -> ExactScalar:
    return x if isinstance(x, ExactScalar) else ExactScalar(x)


def _exact_vector(xs) -> Tuple[ExactScalar, ...]:
    return tuple(_exact(x) for x in xs)


def _check_unimodular(c: complex, what: str) -> None:
    if abs(abs(c) - 1.0) > _UNIMODULAR_TOL:
        raise NotUnimodular(f"{what} = {c} is not unimodular")


def _check_unitary(U: np.ndarray) -> None:
    k = U.shape[0]
    if U.shape != (k, k):
        raise DimensionMismatch("U is not square")
    if k and np.abs(U @ U.conj().T - np.eye(k)).max() > _UNITARY_TOL:
        raise NotUnitary("U is not unitary within 1e-10")


def _as_batch(Z, dim: int) -> np.ndarray:
    Z = np.ascontiguousarray(Z, dtype=complex)
    if Z.ndim != 2 or Z.shape[1] != dim:
        raise DimensionMismatch(f"expected an (N, {dim}) batch, got shape {Z.shape}")
    return Z


@dataclass(frozen=True)
class BlaschkeProduct:
    """unimodular * prod_j (t - zeros_j) / (1 - conj(zeros_j) t) on the disk."""

    unimodular: complex = 1.0
    zeros: Tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "unimodular", _c(self.unimodular))
        object.__setattr__(self, "zeros", _ctuple(self.zeros))
        _check_unimodular(self.unimodular, "the Blaschke scalar")
        for a in self.zeros:
            if abs(a) >= 1.0:
                raise DegenerateBlaschke(f"zero {a} is not inside the unit disk")

    @property
    def is_constant(self) -> bool:
        return not self.zeros

    @cached_property
    def _zeros_arr(self) -> np.ndarray:
        return np.asarray(self.zeros, dtype=complex)

    def eval_batch(self, t: np.ndarray) -> np.ndarray:
        t = np.ascontiguousarray(t, dtype=complex)
        return _kernels.blaschke(t, self._zeros_arr, self.unimodular)

    def __call__(self, t: complex) -> complex:
        return complex(self.eval_batch(np.asarray([t]))[0])


class MapExpr:
    """Base class: a holomorphic map of some fixed dimension."""

    @property
    def dim(self) -> Optional[int]:
        raise NotImplementedError

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def eval_batch(self, Z) -> np.ndarray:
        if self.dim is None:
            Z = np.ascontiguousarray(Z, dtype=complex)
            if Z.ndim != 2:
                raise DimensionMismatch("expected an (N, d) batch")
            return Z.copy()
        return self._eval_batch(_as_batch(Z, self.dim))

    def eval(self, point: Sequence[complex]) -> Tuple[complex, ...]:
        d = self.dim if self.dim is not None else len(point)
        Z = _as_batch(np.asarray([tuple(point)], dtype=complex), d)
        out = self.eval_batch(Z)
        return tuple(complex(x) for x in out[0])

    def __str__(self) -> str:
        return format_map(self)


@dataclass(frozen=True)
class PowerMap(MapExpr):
    """z |-> (z_1^{e_1}, ..., z_d^{e_d}) with natural exponents."""

    exps: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        for e in self.exps:
            if e < 1:
                raise NonPositiveParameter(f"power map exponent {e} must be >= 1")

    @property
    def dim(self) -> int:
        return len(self.exps)

    @cached_property
    def _exps_arr(self) -> np.ndarray:
        return np.asarray(self.exps, dtype=np.int64)

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        return _kernels.pow_int(Z, self._exps_arr)


@dataclass(frozen=True)
class Permute(MapExpr):
    """z |-> z_sigma with (z_sigma)_j = z_{sigma(j)}."""

    sigma: Permutation

    @property
    def dim(self) -> int:
        return self.sigma.n

    @cached_property
    def _idx(self) -> np.ndarray:
        return np.asarray([i - 1 for i in self.sigma.images], dtype=np.intp)

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        return np.ascontiguousarray(Z[:, self._idx])


@dataclass(frozen=True)
class EAut(MapExpr):
    """Automorphism of the ellipsoid with exponent vector p.

    On the block of coordinates with p_j = 1 it acts as the ball automorphism
    determined by (a, U); every other coordinate j picks up z_{sigma(j)} times
    a unimodular zeta and the factor M(z')^(1/p_j), where M is the scalar
    multiplier of the ball automorphism and z' the p_j = 1 block.
    """

    p: Tuple[ExactScalar, ...]
    sigma: Permutation
    a: Tuple[complex, ...]
    U: Tuple[Tuple[complex, ...], ...]
    zetas: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", _exact_vector(self.p))
        object.__setattr__(self, "a", _ctuple(self.a))
        object.__setattr__(self, "U", _cmatrix(self.U))
        object.__setattr__(self, "zetas", _ctuple(self.zetas))
        n = len(self.p)
        for x in self.p:
            if x.sign() <= 0:
                raise NonPositiveParameter(f"exponent {x} must be positive")
        if self.sigma.n != n:
            raise DimensionMismatch("sigma size differs from the exponent vector")
        for j in range(1, n + 1):
            if self.p[self.sigma(j) - 1] != self.p[j - 1]:
                raise NotAStabilizer(f"p is not invariant under sigma = {self.sigma.images}")
        ones = self._ones_positions
        if any(self.sigma(j) != j for j in ones):
            images = list(self.sigma.images)
            for j in ones:
                images[j - 1] = j
            object.__setattr__(self, "sigma", Permutation(tuple(images)))
        k = len(ones)
        if len(self.a) != k or len(self.U) != k or any(len(row) != k for row in self.U):
            raise DimensionMismatch("ball data must match the number of p_j = 1 slots")
        if len(self.zetas) != n - k:
            raise DimensionMismatch("zetas must cover exactly the p_j > 1 slots")
        if sum(abs(x) ** 2 for x in self.a) >= 1.0:
            raise NotInBall(f"a = {self.a} is not inside the unit ball")
        _check_unitary(np.asarray(self.U, dtype=complex).reshape(k, k))
        for z in self.zetas:
            _check_unimodular(z, "zeta")

    @property
    def _ones_positions(self) -> Tuple[int, ...]:
        return tuple(j for j, x in enumerate(self.p, start=1) if x == ONE)

    @property
    def dim(self) -> int:
        return len(self.p)

    @cached_property
    def _layout(self):
        ones = np.asarray([j - 1 for j in self._ones_positions], dtype=np.intp)
        others = np.asarray(
            [j for j in range(len(self.p)) if self.p[j] != ONE], dtype=np.intp
        )
        src = np.asarray([self.sigma(j + 1) - 1 for j in others], dtype=np.intp)
        alpha = [float((ONE / self.p[j]).to_float()) for j in others]
        return ones, others, src, alpha

    @cached_property
    def _ball(self):
        k = len(self.a)
        a = np.asarray(self.a, dtype=complex)
        U = np.asarray(self.U, dtype=complex).reshape(k, k)
        norm2 = float((np.abs(a) ** 2).sum()) if k else 0.0
        s = math.sqrt(max(0.0, 1.0 - norm2))
        if norm2 > 0:
            P = np.outer(a, a.conj()) / norm2
            Q = U @ (np.eye(k) + (1.0 / s - 1.0) * P)
        else:
            Q = U.copy()
        zeta = np.asarray(self.zetas, dtype=complex)
        return a, Q, s, zeta

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        ones, others, src, alpha = self._layout
        a, Q, s, zeta = self._ball
        zp = np.ascontiguousarray(Z[:, ones])
        M = _kernels.mobius_scalar(zp, a, s)
        out = np.empty_like(Z)
        if len(ones):
            out[:, ones] = ((zp - a[None, :]) @ Q.T) * M[:, None]
        for col, j in enumerate(others):
            out[:, j] = zeta[col] * Z[:, src[col]] * _kernels.cpow(M, alpha[col])
        return out

    def inverse(self) -> "EAut":
        k = len(self.a)
        a = np.asarray(self.a, dtype=complex)
        U = np.asarray(self.U, dtype=complex).reshape(k, k)
        a_inv = tuple(complex(x) for x in -(U @ a))
        U_inv = tuple(tuple(complex(x) for x in row) for row in U.conj().T)
        inv_sigma = self.sigma.inverse()
        others = [j for j in range(1, len(self.p) + 1) if self.p[j - 1] != ONE]
        zeta_at = dict(zip(others, self.zetas))
        zetas_inv = tuple(zeta_at[inv_sigma(j)].conjugate() for j in others)
        return EAut(self.p, inv_sigma, a_inv, U_inv, zetas_inv)


@dataclass(frozen=True)
class H2Aut(MapExpr):
    """Automorphism of a Hartogs triangle with a single w coordinate.

    With s a natural number, (z, w) |-> (e^{i theta} w^s phi(z w^{-s}), xi w)
    for the disk automorphism phi fixing alpha; with s = None the first slot
    degenerates to the rotation e^{i theta} z.
    """

    xi: complex
    s: Optional[int]
    theta: float
    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "xi", _c(self.xi))
        object.__setattr__(self, "s", None if self.s is None else int(self.s))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "alpha", _c(self.alpha))
        _check_unimodular(self.xi, "xi")
        if self.s is not None and self.s < 1:
            raise NonPositiveParameter(f"s = {self.s} must be a natural number")
        if abs(self.alpha) >= 1.0:
            raise NotInBall(f"alpha = {self.alpha} is not inside the unit disk")
        if self.s is None and self.alpha != 0:
            raise ZeroFixRequired("with s = none the disk factor must fix 0")

    @property
    def dim(self) -> int:
        return 2

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        z, w = Z[:, 0], Z[:, 1]
        rot = complex(math.cos(self.theta), math.sin(self.theta))
        out = np.empty_like(Z)
        if self.s is None:
            out[:, 0] = rot * z
        else:
            if np.any(w == 0):
                raise DomainViolation("w = 0 is outside every Hartogs triangle")
            m = z * w ** (-self.s)
            out[:, 0] = w ** self.s * rot * (m - self.alpha) / (1.0 - self.alpha.conjugate() * m)
        out[:, 1] = self.xi * w
        return out

    def inverse(self) -> "H2Aut":
        rot = complex(math.cos(self.theta), math.sin(self.theta))
        if self.s is None:
            return H2Aut(self.xi.conjugate(), None, -self.theta, 0.0)
        alpha_inv = -(self.xi.conjugate() ** self.s) * rot * self.alpha
        return H2Aut(self.xi.conjugate(), self.s, -self.theta, alpha_inv)


@dataclass(frozen=True)
class H2Proper(MapExpr):
    """(z, w) |-> (zeta z^kp w^b B(z^pp w^-qp), xi w^l) between Hartogs
    triangles with one w coordinate on each side."""

    zeta: complex
    xi: complex
    kp: int
    l: int
    b: int
    pp: int
    qp: int
    B: BlaschkeProduct

    def __post_init__(self):
        object.__setattr__(self, "zeta", _c(self.zeta))
        object.__setattr__(self, "xi", _c(self.xi))
        for name in ("kp", "l", "b", "pp", "qp"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.B.unimodular != 1.0:
            object.__setattr__(self, "zeta", self.zeta * self.B.unimodular)
            object.__setattr__(self, "B", BlaschkeProduct(1.0, self.B.zeros))
        _check_unimodular(self.zeta, "zeta")
        _check_unimodular(self.xi, "xi")
        if self.l < 1:
            raise NonPositiveParameter(f"l = {self.l} must be >= 1")
        if self.kp < 0:
            raise NonPositiveParameter(f"kp = {self.kp} must be >= 0")
        if self.pp < 1 or self.qp < 1:
            raise NonPositiveParameter("pp and qp must be >= 1")
        if math.gcd(self.pp, self.qp) != 1:
            raise PreconditionViolated(f"pp = {self.pp} and qp = {self.qp} must be coprime")
        if any(z == 0 for z in self.B.zeros):
            raise BranchViolated("the Blaschke factor must not vanish at 0")
        if self.B.is_constant and self.kp < 1:
            raise BranchViolated("with a constant Blaschke factor, kp must be >= 1")

    @property
    def dim(self) -> int:
        return 2

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        z, w = Z[:, 0], Z[:, 1]
        if np.any(w == 0):
            raise DomainViolation("w = 0 is outside every Hartogs triangle")
        t = z ** self.pp * w ** (-self.qp)
        out = np.empty_like(Z)
        out[:, 0] = self.zeta * z ** self.kp * w ** self.b * self.B.eval_batch(t)
        out[:, 1] = self.xi * w ** self.l
        return out


@dataclass(frozen=True)
class HFpsProper(MapExpr):
    """(z, w) |-> (zeta z^k, inner(w)) on Hartogs triangles with m >= 2
    w coordinates; inner is a map of the w block."""

    zeta: complex
    k: int
    inner: MapExpr

    def __post_init__(self):
        object.__setattr__(self, "zeta", _c(self.zeta))
        object.__setattr__(self, "k", int(self.k))
        _check_unimodular(self.zeta, "zeta")
        if self.k < 1:
            raise NonPositiveParameter(f"k = {self.k} must be >= 1")
        if self.inner.dim is not None and self.inner.dim < 2:
            raise DimensionMismatch("the w block must have dimension >= 2")

    @property
    def dim(self) -> Optional[int]:
        return None if self.inner.dim is None else 1 + self.inner.dim

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        out = np.empty_like(Z)
        out[:, 0] = self.zeta * Z[:, 0] ** self.k
        out[:, 1:] = self.inner.eval_batch(Z[:, 1:])
        return out


@dataclass(frozen=True)
class Compose(MapExpr):
    """Composition; parts[0] is applied last."""

    parts: Tuple[MapExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        dims = {p.dim for p in self.parts if p.dim is not None}
        if len(dims) > 1:
            raise DimensionMismatch(f"composition mixes dimensions {sorted(dims)}")

    @property
    def dim(self) -> Optional[int]:
        for p in self.parts:
            if p.dim is not None:
                return p.dim
        return None

    def _eval_batch(self, Z: np.ndarray) -> np.ndarray:
        for part in reversed(self.parts):
            Z = part.eval_batch(Z)
        return Z

    def eval_batch(self, Z) -> np.ndarray:
        d = self.dim
        if d is None:
            Z = np.ascontiguousarray(Z, dtype=complex)
            if Z.ndim != 2:
                raise DimensionMismatch("expected an (N, d) batch")
            return self._eval_batch(Z)
        return self._eval_batch(_as_batch(Z, d))


def make_ball_aut(a, U) -> EAut:
    """The unit-ball automorphism sending a to 0, composed with U."""
    a = _ctuple(a)
    return EAut((ONE,) * len(a), Permutation.identity(len(a)), a, _cmatrix(U), ())


def make_ellipsoid_aut(E: Ellipsoid, sigma: Permutation, a, U, zetas) -> EAut:
    """Element of Aut(E) from a stabilizing permutation, ball data on the
    p_j = 1 block, and unimodular scalars on the rest."""
    return EAut(E.p, sigma, _ctuple(a), _cmatrix(U), _ctuple(zetas))


def enumerate_r(p, q, sigma: Permutation, cap: int = 10000) -> List[Tuple[int, ...]]:
    """Admissible multiplicity vectors r for the ellipsoid family: r_j runs
    over the divisors of p_sigma(j)/q_j, in lexicographic order, at most cap."""
    import itertools

    p, q = _exact_vector(p), _exact_vector(q)
    if len(p) != len(q) or sigma.n != len(p):
        raise DimensionMismatch("exponent vectors and sigma must agree in size")
    ratios = []
    for j in range(1, len(p) + 1):
        ratio = p[sigma(j) - 1] / q[j - 1]
        if not ratio.is_natural:
            raise PreconditionViolated(
                f"p_sigma({j})/q_{j} = {ratio} is not a natural number"
            )
        m = ratio.as_integer()
        ratios.append([d for d in range(1, m + 1) if m % d == 0])
    out = []
    for r in itertools.product(*ratios):
        if len(out) >= cap:
            break
        out.append(r)
    return out


def synth_ellipsoid_proper(
    src: Ellipsoid,
    dst: Ellipsoid,
    sigma: Permutation,
    r: Sequence[int],
    phi: Optional[EAut] = None,
) -> MapExpr:
    """Member of the proper family src -> dst determined by the matching
    sigma, the multiplicity vector r, and an automorphism phi of the
    intermediate ellipsoid with exponents p_sigma / r."""
    p, q = src.p, dst.p
    n = src.n
    if dst.n != n or sigma.n != n or len(r) != n:
        raise DimensionMismatch("src, dst, sigma and r must share one dimension")
    r = tuple(int(x) for x in r)
    exps = []
    mids = []
    for j in range(1, n + 1):
        ratio = p[sigma(j) - 1] / q[j - 1]
        if not ratio.is_natural:
            raise PreconditionViolated(
                f"p_sigma({j})/q_{j} = {ratio} is not a natural number"
            )
        m = ratio.as_integer()
        if r[j - 1] < 1 or m % r[j - 1] != 0:
            raise PreconditionViolated(
                f"r_{j} = {r[j - 1]} does not divide p_sigma({j})/q_{j} = {m}"
            )
        exps.append(m // r[j - 1])
        mids.append(p[sigma(j) - 1] / ExactScalar(r[j - 1]))
    parts: List[MapExpr] = [PowerMap(tuple(exps))]
    if phi is not None:
        if phi.p != tuple(mids):
            raise PreconditionViolated(
                "phi must be an automorphism of the intermediate ellipsoid "
                f"with exponents ({', '.join(format_scalar(x) for x in mids)})"
            )
        parts.append(phi)
    parts.append(PowerMap(r))
    parts.append(Permute(sigma))
    return Compose(tuple(parts))


def synth_hartogs_1_1_proper(
    src: HartogsTriangle,
    dst: HartogsTriangle,
    k: int,
    l: int,
    B: Optional[BlaschkeProduct] = None,
    zeta: complex = 1.0,
    xi: complex = 1.0,
) -> H2Proper:
    """Member of the proper family src -> dst with exponents (k, l) and an
    optional Blaschke factor (rational q/p only)."""
    if src.m != 1 or dst.m != 1:
        raise DimensionMismatch("both triangles must have a single w coordinate")
    k, l = int(k), int(l)
    if l < 1:
        raise NonPositiveParameter(f"l = {l} must be >= 1")
    if k < 0:
        raise NonPositiveParameter(f"k = {k} must be >= 0")
    if B is None:
        B = BlaschkeProduct()
    rho = src.q[0] / src.p
    rhot = dst.q[0] / dst.p
    value = rhot * l - rho * k
    if not value.is_integer:
        raise CongruenceViolated(
            f"l*qt/pt - k*q/p = {value} is not an integer for (k, l) = ({k}, {l})"
        )
    b = value.as_integer()
    if rho.is_rational:
        frac = rho.as_fraction()
        pp, qp = frac.denominator, frac.numerator
    else:
        if not B.is_constant:
            raise BranchViolated(
                "a nonconstant Blaschke factor requires q/p to be rational"
            )
        pp, qp = 1, 1
    return H2Proper(zeta, xi, k, l, b, pp, qp, B)


def make_hartogs_1_1_aut(
    F: HartogsTriangle, xi: complex, theta: float, alpha: complex = 0.0
) -> H2Aut:
    """Element of Aut(F) for a triangle with one w coordinate."""
    if F.m != 1:
        raise DimensionMismatch("the triangle must have a single w coordinate")
    rho = F.q[0] / F.p
    if rho.is_natural:
        return H2Aut(xi, rho.as_integer(), float(theta), alpha)
    if complex(alpha) != 0:
        raise ZeroFixRequired(
            f"q/p = {rho} is not a natural number, so the disk factor must fix 0"
        )
    return H2Aut(xi, None, float(theta), 0.0)


def synth_hartogs_1_m_proper(
    src: HartogsTriangle,
    dst: HartogsTriangle,
    sigma: Permutation,
    r: Sequence[int],
    psi: Optional[EAut] = None,
    zeta: complex = 1.0,
) -> HFpsProper:
    """Member of the proper family src -> dst for m >= 2 w coordinates.

    The z slot is zeta z^k with k = p/pt; the w block factors through the
    power maps of r and q_sigma/(qt r) around an exponent-sum preserving
    automorphism psi (necessarily with a = 0) of the intermediate ellipsoid.
    """
    m = src.m
    if m < 2 or dst.m != m:
        raise DimensionMismatch("both triangles must share m >= 2 w coordinates")
    if sigma.n != m or len(r) != m:
        raise DimensionMismatch("sigma and r must have one entry per w coordinate")
    ratio = src.p / dst.p
    if not ratio.is_natural:
        raise PreconditionViolated(f"p/pt = {ratio} is not a natural number")
    k = ratio.as_integer()
    r = tuple(int(x) for x in r)
    exps = []
    mids = []
    for j in range(1, m + 1):
        if r[j - 1] < 1:
            raise NonPositiveParameter(f"r_{j} = {r[j - 1]} must be >= 1")
        e = src.q[sigma(j) - 1] / (dst.q[j - 1] * ExactScalar(r[j - 1]))
        if not e.is_natural:
            raise PreconditionViolated(
                f"q_sigma({j})/(qt_{j} r_{j}) = {e} is not a natural number"
            )
        exps.append(e.as_integer())
        mids.append(src.q[sigma(j) - 1] / ExactScalar(r[j - 1]))
    parts: List[MapExpr] = [PowerMap(tuple(exps))]
    if psi is not None:
        if psi.p != tuple(mids):
            raise PreconditionViolated(
                "psi must act on the intermediate ellipsoid with exponents "
                f"({', '.join(format_scalar(x) for x in mids)})"
            )
        if any(x != 0 for x in psi.a):
            raise PreconditionViolated(
                "psi must fix 0 so that the exponent sum is preserved exactly"
            )
        parts.append(psi)
    parts.append(PowerMap(r))
    parts.append(Permute(sigma))
    return HFpsProper(zeta, k, Compose(tuple(parts)))


def compose(F: MapExpr, G: MapExpr) -> Compose:
    """F after G, flattening nested compositions."""
    left = F.parts if isinstance(F, Compose) else (F,)
    right = G.parts if isinstance(G, Compose) else (G,)
    return Compose(left + right)


def invert_aut(F: MapExpr) -> MapExpr:
    """The inverse of an invertible map expression."""
    if isinstance(F, (EAut, H2Aut)):
        return F.inverse()
    if isinstance(F, Permute):
        return Permute(F.sigma.inverse())
    if isinstance(F, PowerMap):
        if all(e == 1 for e in F.exps):
            return F
        raise NotInvertible(f"{format_map(F)} is not injective")
    if isinstance(F, HFpsProper):
        if F.k != 1:
            raise NotInvertible(f"{format_map(F)} has z degree {F.k} > 1")
        return HFpsProper(F.zeta.conjugate(), 1, invert_aut(F.inner))
    if isinstance(F, Compose):
        return Compose(tuple(invert_aut(p) for p in reversed(F.parts)))
    if isinstance(F, H2Proper):
        raise NotInvertible("this family is proper but never injective on both slots")
    raise WrongNodeType(f"cannot invert {type(F).__name__}")


def is_landucci_form(F: MapExpr, src: HartogsTriangle) -> bool:
    """Whether F matches the restricted product shape on its source triangle:
    for q/p natural, kp = 0 with the Blaschke factor taken directly in
    z w^{-q/p}; otherwise a pure monomial pair."""
    if isinstance(F, Compose) and len(F.parts) == 1:
        F = F.parts[0]
    if not isinstance(F, H2Proper):
        raise WrongNodeType("expected a two dimensional Hartogs proper map")
    if src.m != 1:
        raise DimensionMismatch("the source must have a single w coordinate")
    rho = src.q[0] / src.p
    if rho.is_natural:
        return F.kp == 0 and F.pp == 1 and F.qp == rho.as_integer()
    return F.B.is_constant


def _fmt_float(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def format_complex(c: complex) -> str:
    """Canonical complex literal: shortest float repr, imaginary part only
    when nonzero."""
    c = complex(c)
    if c.imag == 0:
        return _fmt_float(c.real)
    sign = "+" if c.imag >= 0 else "-"
    return f"{_fmt_float(c.real)}{sign}{_fmt_float(abs(c.imag))}i"


def _fmt_clist(xs) -> str:
    return "[" + ",".join(format_complex(x) for x in xs) + "]"


def _fmt_cmatrix(rows) -> str:
    return "[" + ",".join(_fmt_clist(row) for row in rows) + "]"


def format_map(F: MapExpr) -> str:
    """Canonical text form of a map expression."""
    if isinstance(F, PowerMap):
        return "pow(" + ",".join(str(e) for e in F.exps) + ")"
    if isinstance(F, Permute):
        return "perm(" + ",".join(str(i) for i in F.sigma.images) + ")"
    if isinstance(F, EAut):
        if all(x == ONE for x in F.p):
            return f"ballaut(a={_fmt_clist(F.a)},U={_fmt_cmatrix(F.U)})"
        return (
            "eaut(p=[" + ",".join(format_scalar(x) for x in F.p) + "]"
            ",sigma=[" + ",".join(str(i) for i in F.sigma.images) + "]"
            f",a={_fmt_clist(F.a)},U={_fmt_cmatrix(F.U)},zetas={_fmt_clist(F.zetas)})"
        )
    if isinstance(F, H2Aut):
        s = "none" if F.s is None else str(F.s)
        return (
            f"h2aut(xi={format_complex(F.xi)},s={s},"
            f"theta={_fmt_float(F.theta)},alpha={format_complex(F.alpha)})"
        )
    if isinstance(F, H2Proper):
        return (
            f"h2prop(zeta={format_complex(F.zeta)},xi={format_complex(F.xi)},"
            f"kp={F.kp},l={F.l},b={F.b},pp={F.pp},qp={F.qp},B={_fmt_clist(F.B.zeros)})"
        )
    if isinstance(F, HFpsProper):
        return f"hfps(zeta={format_complex(F.zeta)},k={F.k},inner={format_map(F.inner)})"
    if isinstance(F, Compose):
        return "compose(" + ",".join(format_map(p) for p in F.parts) + ")"
    raise WrongNodeType(f"cannot format {type(F).__name__}")
