"""Exact existence deciders for proper maps between the supported domains.

Three decision problems are covered: ellipsoid to ellipsoid (a permutation
matching on exact natural ratios), Hartogs to Hartogs with one w coordinate
on each side (an integrality condition on l*qt/pt - k*q/p), and Hartogs to
Hartogs with m >= 2 w coordinates (a divisibility condition plus a matching).
Every positive answer carries a witness that revalidates exactly.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, NonPositiveParameter, PreconditionViolated
from .exactnum import ExactScalar


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., n}, stored as the tuple (sigma(1), ..., sigma(n))."""

    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise PreconditionViolated(f"{self.images} is not a permutation of 1..{n}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def apply(self, values: Sequence) -> tuple:
        """The reindexed tuple x_sigma with (x_sigma)_j = x_{sigma(j)}."""
        return tuple(values[i - 1] for i in self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self * other)(j) = self(other(j))."""
        if other.n != self.n:
            raise DimensionMismatch("permutation sizes differ")
        return Permutation(tuple(self.images[i - 1] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, i in enumerate(self.images, start=1):
            inv[i - 1] = j
        return Permutation(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for j, i in enumerate(self.images, start=1))


@dataclass(frozen=True)
class EllipsoidWitness:
    sigma: Permutation


@dataclass(frozen=True)
class Hartogs11Witness:
    k: int
    l: int


@dataclass(frozen=True)
class Hartogs1mWitness:
    k: int
    sigma: Permutation


@dataclass(frozen=True)
class NonExistence:
    reason: str


ExistenceWitness = Union[EllipsoidWitness, Hartogs11Witness, Hartogs1mWitness, NonExistence]


def _exact_vector(values) -> Tuple[ExactScalar, ...]:
    return tuple(x if isinstance(x, ExactScalar) else ExactScalar(x) for x in values)


def natural_ratio_matrix(p, q) -> List[List[Optional[int]]]:
    """Entry (i, j) is the natural number p_i / q_j when that exact quotient
    is one, else None."""
    p, q = _exact_vector(p), _exact_vector(q)
    if len(p) != len(q):
        raise DimensionMismatch("exponent vectors differ in length")
    out = []
    for pi in p:
        row = []
        for qj in q:
            ratio = pi / qj
            row.append(ratio.as_integer() if ratio.is_natural else None)
        out.append(row)
    return out


def _augment(adj, u, match_l, match_r, dist):
    for v in adj[u]:
        w = match_r[v]
        if w == -1 or (dist[w] == dist[u] + 1 and _augment(adj, w, match_l, match_r, dist)):
            match_l[u] = v
            match_r[v] = u
            return True
    dist[u] = -1
    return False


def _max_matching(adj: List[List[int]], n_right: int):
    """Hopcroft-Karp style maximum matching; adj maps left index to sorted
    right neighbors. Returns (size, match_l)."""
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    size = 0
    while True:
        dist = [-1] * n_left
        queue = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
        reachable_free = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    reachable_free = True
                elif dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not reachable_free:
            return size, match_l
        for u in range(n_left):
            if match_l[u] == -1 and dist[u] == 0:
                if _augment(adj, u, match_l, match_r, dist):
                    size += 1


def find_matching(p, q) -> Optional[Permutation]:
    """Some sigma with p_sigma(j)/q_j natural for every j, or None.

    Found by maximum bipartite matching between target slots j and source
    indices i on the exact natural-ratio graph.
    """
    matrix = natural_ratio_matrix(p, q)
    n = len(matrix)
    adj = [[i for i in range(n) if matrix[i][j] is not None] for j in range(n)]
    size, match_l = _max_matching(adj, n)
    if size < n:
        return None
    return Permutation(tuple(i + 1 for i in match_l))


def enumerate_matchings(p, q, cap: int) -> List[Permutation]:
    """All valid sigma in lexicographic order, truncated at cap (n <= 10)."""
    matrix = natural_ratio_matrix(p, q)
    n = len(matrix)
    if n > 10:
        raise PreconditionViolated("full enumeration is limited to n <= 10")
    out = []
    for images in itertools.permutations(range(1, n + 1)):
        if len(out) >= cap:
            break
        if all(matrix[images[j] - 1][j] is not None for j in range(n)):
            out.append(Permutation(images))
    return out


def decide_ellipsoid(p, q) -> ExistenceWitness:
    """Existence of a proper map from the ellipsoid with exponents p to the
    one with exponents q (both of dimension n >= 2)."""
    p, q = _exact_vector(p), _exact_vector(q)
    if len(p) != len(q):
        raise DimensionMismatch("exponent vectors differ in length")
    if len(p) < 2:
        raise DimensionMismatch("the ellipsoid decision applies to n >= 2")
    sigma = find_matching(p, q)
    if sigma is None:
        return NonExistence(
            "no permutation sigma makes every ratio p_sigma(j)/q_j a natural number"
        )
    return EllipsoidWitness(sigma)


def _solve_congruence(a: int, b: int, m: int) -> Optional[int]:
    """Minimal k >= 1 with k*a congruent to b modulo m, or None."""
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g:
        return None
    mm = m // g
    k0 = (b // g) * pow(a // g, -1, mm) % mm if mm > 1 else 0
    return k0 if k0 >= 1 else k0 + (mm if mm > 1 else 1)


def decide_hartogs_1_1(p, q, pt, qt) -> ExistenceWitness:
    """Existence for Hartogs triangles with one w coordinate on both sides.

    Writes rho = q/p = u + v*sqrt(2) and rhot = qt/pt = u' + v'*sqrt(2); the
    requirement l*rhot - k*rho in Z with k, l >= 1 splits into l*v' - k*v = 0
    and l*u' - k*u in Z. Returns the witness minimizing (l, k)
    lexicographically. The map form also admits k' = 0 in one branch; that
    relaxation is not part of this decision and is handled by the synthesizers.
    """
    scalars = []
    for name, x in (("p", p), ("q", q), ("pt", pt), ("qt", qt)):
        x = x if isinstance(x, ExactScalar) else ExactScalar(x)
        if x.sign() <= 0:
            raise NonPositiveParameter(f"{name} must be positive, got {x}")
        scalars.append(x)
    p, q, pt, qt = scalars
    rho, rhot = q / p, qt / pt
    u, v, ut, vt = rho.u, rho.v, rhot.u, rhot.v
    if not v and not vt:
        a, b = u.numerator, u.denominator
        c, d = ut.numerator, ut.denominator
        l = d // gcd(b, d)
        k = _solve_congruence(a * d, l * c * b, b * d)
        assert k is not None
        return Hartogs11Witness(k, l)
    if not v or not vt:
        which = "k*v" if v else "l*v'"
        return NonExistence(
            f"the sqrt(2) part of l*qt/pt - k*q/p is pinned to the nonzero term "
            f"{which}, so it cannot vanish with k, l >= 1"
        )
    t_ratio = v / vt
    if t_ratio <= 0:
        return NonExistence(
            "l*v' = k*v forces l/k = v/v', which is negative here"
        )
    alpha, beta = t_ratio.numerator, t_ratio.denominator
    t = (alpha * ut - beta * u).denominator
    return Hartogs11Witness(t * beta, t * alpha)


def decide_hartogs_1_m(p, q, pt, qt) -> ExistenceWitness:
    """Existence for Hartogs triangles with m >= 2 w coordinates: p/pt must
    be natural and some sigma must make every q_sigma(j)/qt_j natural."""
    p = p if isinstance(p, ExactScalar) else ExactScalar(p)
    pt = pt if isinstance(pt, ExactScalar) else ExactScalar(pt)
    q, qt = _exact_vector(q), _exact_vector(qt)
    if len(q) != len(qt):
        raise DimensionMismatch("w exponent vectors differ in length")
    if len(q) < 2:
        raise DimensionMismatch("this decision applies to m >= 2")
    ratio = p / pt
    if not ratio.is_natural:
        return NonExistence(f"p/pt = {ratio} is not a natural number")
    sigma = find_matching(q, qt)
    if sigma is None:
        return NonExistence(
            "no permutation sigma makes every ratio q_sigma(j)/qt_j a natural number"
        )
    return Hartogs1mWitness(ratio.as_integer(), sigma)


def stabilizer(p) -> List[Permutation]:
    """The permutations sigma with p_sigma = p.

    Full enumeration for n <= 10 (lexicographic); for larger n, generators
    of the product of symmetric groups on equal-value blocks, led by the
    identity.
    """
    p = _exact_vector(p)
    n = len(p)
    blocks = {}
    for pos, value in enumerate(p, start=1):
        blocks.setdefault(value, []).append(pos)
    if n <= 10:
        out = []
        block_lists = list(blocks.values())
        for assignment in itertools.product(
            *(itertools.permutations(b) for b in block_lists)
        ):
            images = [0] * n
            for positions, permuted in zip(block_lists, assignment):
                for tgt, src in zip(positions, permuted):
                    images[tgt - 1] = src
            out.append(Permutation(tuple(images)))
        out.sort(key=lambda s: s.images)
        return out
    gens = [Permutation.identity(n)]
    for positions in blocks.values():
        if len(positions) < 2:
            continue
        swap = list(range(1, n + 1))
        swap[positions[0] - 1], swap[positions[1] - 1] = positions[1], positions[0]
        gens.append(Permutation(tuple(swap)))
        cycle = list(range(1, n + 1))
        for here, nxt in zip(positions, positions[1:] + positions[:1]):
            cycle[here - 1] = nxt
        gens.append(Permutation(tuple(cycle)))
    return gens


def revalidate(witness: ExistenceWitness, p, q, pt=None, qt=None) -> bool:
    """Exact recheck of a witness against the exponent data it certifies."""
    if isinstance(witness, NonExistence):
        return False
    if isinstance(witness, EllipsoidWitness):
        p, q = _exact_vector(p), _exact_vector(q)
        ps = witness.sigma.apply(p)
        return all((pi / qi).is_natural for pi, qi in zip(ps, q))
    if isinstance(witness, Hartogs11Witness):
        p = p if isinstance(p, ExactScalar) else ExactScalar(p)
        q = q if isinstance(q, ExactScalar) else ExactScalar(q)
        pt_ = pt if isinstance(pt, ExactScalar) else ExactScalar(pt)
        qt_ = qt if isinstance(qt, ExactScalar) else ExactScalar(qt)
        value = (qt_ / pt_) * witness.l - (q / p) * witness.k
        return witness.k >= 1 and witness.l >= 1 and value.is_integer
    if isinstance(witness, Hartogs1mWitness):
        p = p if isinstance(p, ExactScalar) else ExactScalar(p)
        pt_ = pt if isinstance(pt, ExactScalar) else ExactScalar(pt)
        q, qt_vec = _exact_vector(q), _exact_vector(qt)
        if (p / pt_) != ExactScalar(witness.k) or witness.k < 1:
            return False
        qs = witness.sigma.apply(q)
        return all((qi / qtj).is_natural for qi, qtj in zip(qs, qt_vec))
    raise TypeError(f"not a witness: {witness!r}")
