"""Exact certification of the general-position facts behind the resolution.

Three facts are certified over the Gaussian rationals, with no tolerance:

* images of r <= p+1 distinct points of the affine chart under the
  monomial-value (Veronese) map span an (r-1)-simplex;
* for r <= p the vanishing conditions at r points cut the constrained
  coefficient space by r independent affine hyperplanes (full row rank);
* for r within the bundle validity range, the fiber of the open stratum
  over a configuration has the predicted real dimension.

The proof device is executable: project the configuration to one complex
coordinate along a direction that separates the points; the Vandermonde
matrix in the projected values is then nonsingular, and its determinant is
the certificate.  A dense-elimination path is kept for cross-checks and for
exploration outside the guaranteed ranges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bookkeeping import ProblemParams, bundle_rank, dimension_report, validity_rmax, RangeError
from .gaussrat import GaussianRational
from .linalg import QQI, lp_maximize
from .polynomials import PQPolynomial, affine_monomials, veronese


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class Configuration:
    """r distinct points of the affine chart C^m, exact coordinates.

    Points are sorted at construction, so all outputs are independent of
    the order in which points were supplied.
    """

    points: tuple

    def __init__(self, points):
        pts = []
        for pt in points:
            pts.append(tuple(c if isinstance(c, GaussianRational) else GaussianRational(c)
                             for c in pt))
        if not pts:
            raise ValueError("configuration needs at least one point")
        m = len(pts[0])
        if any(len(p) != m for p in pts):
            raise ValueError("points have inconsistent dimension")
        pts.sort(key=lambda p: tuple((c.re, c.im) for c in p))
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError("configuration points must be pairwise distinct")
        object.__setattr__(self, "points", tuple(pts))

    @property
    def m(self) -> int:
        return len(self.points[0])

    @property
    def r(self) -> int:
        return len(self.points)


def random_gaussian_rational(rng: random.Random, magnitude: int = 1 << 16) -> GaussianRational:
    re = Fraction(rng.randint(-magnitude, magnitude), rng.randint(1, magnitude))
    im = Fraction(rng.randint(-magnitude, magnitude), rng.randint(1, magnitude))
    return GaussianRational(re, im)


def random_configuration(m: int, r: int, rng: random.Random,
                         magnitude: int = 1 << 16) -> Configuration:
    """r distinct random points, rejection-sampled to be pairwise distinct."""
    seen = set()
    pts = []
    while len(pts) < r:
        pt = tuple(random_gaussian_rational(rng, magnitude) for _ in range(m))
        key = tuple((c.re, c.im) for c in pt)
        if key in seen:
            continue
        seen.add(key)
        pts.append(pt)
    return Configuration(pts)


# ---------------------------------------------------------------------------
# separating directions and Vandermonde certificates


def _project(point, direction):
    s = GaussianRational(0)
    for c, u in zip(point, direction):
        s = s + c * u
    return s


def separating_direction(config: Configuration, max_tries: int | None = None):
    """A direction u with pairwise distinct projections u . x_j, or None.

    For distinct points only finitely many directions of the scanned
    one-parameter family fail, so the bounded scan always succeeds.
    """
    m, r = config.m, config.r
    candidates = []
    for i in range(m):
        candidates.append(tuple(GaussianRational(1 if j == i else 0) for j in range(m)))
    if max_tries is None:
        max_tries = (m - 1) * r * (r - 1) // 2 + 2
    for t in range(1, max_tries + 1):
        candidates.append(tuple(GaussianRational(t) ** i for i in range(m)))
    for u in candidates:
        proj = [_project(p, u) for p in config.points]
        if len(set(proj)) == r:
            return u, proj
    return None


def vandermonde_product(values) -> GaussianRational:
    """prod_{j<k} (t_k - t_j): the Vandermonde determinant in the values."""
    det = GaussianRational(1)
    for j in range(len(values)):
        for k in range(j + 1, len(values)):
            det = det * (values[k] - values[j])
    return det


@dataclass
class SimplexCertificate:
    rank: int                 # affine rank of the Veronese images
    is_simplex: bool          # affine rank == r - 1
    guaranteed: bool          # r <= p + 1, where the span fact always holds
    method: str               # "vandermonde" or "elimination"
    direction: tuple | None = None
    projections: tuple | None = None
    vandermonde_det: GaussianRational | None = None


def _affine_rank_elimination(vectors) -> int:
    if len(vectors) == 1:
        return 0
    base = vectors[0]
    rows = [[x - y for x, y in zip(v, base)] for v in vectors[1:]]
    return linalg.rank(rows, QQI)


def certify_simplex_span(config: Configuration, p: int, q: int,
                         force_elimination: bool = False) -> SimplexCertificate:
    """Affine rank of the monomial-value images of the configuration.

    For r <= p+1 the rank is r-1 and the certificate exhibits the separating
    direction whose Vandermonde determinant (a minor of the monomial-value
    matrix after the corresponding coordinate change) is nonzero.  Larger r
    falls back to exact elimination; p+2 or more points can never be
    affinely independent in a space whose pure powers stop at degree p.
    """
    r = config.r
    guaranteed = r <= p + 1
    if guaranteed and not force_elimination:
        found = separating_direction(config)
        if found is not None:
            u, proj = found
            det = vandermonde_product(proj)
            # det != 0 certifies rank r of the monomial-value matrix
            # augmented with the constant coordinate, i.e. affine rank r-1
            return SimplexCertificate(
                rank=r - 1, is_simplex=True, guaranteed=True,
                method="vandermonde", direction=u, projections=tuple(proj),
                vandermonde_det=det)
    vectors = [veronese(config.m, p, q, pt) for pt in config.points]
    rank = _affine_rank_elimination(vectors)
    return SimplexCertificate(rank=rank, is_simplex=(rank == r - 1),
                              guaranteed=guaranteed, method="elimination")


# ---------------------------------------------------------------------------
# vanishing systems


def default_boundary(m: int, p: int, q: int, component: int = 0) -> PQPolynomial:
    """A fixed hyperplane restriction: z_k^p conj(z_k)^q, k = component mod m.

    Any tuple of these has no common zero on the hyperplane.
    """
    k = component % m
    alpha = tuple(p if j == k else 0 for j in range(m))
    beta = tuple(q if j == k else 0 for j in range(m))
    return PQPolynomial.monomial(m - 1, alpha, beta)


def free_affine_monomials(m: int, p: int, q: int):
    """Affine monomials indexing the free coefficients of the constrained
    space: all (alpha, beta) of bidegree <= (p, q) except the top bidegree
    block (|alpha| = p and |beta| = q), which is pinned by the boundary.
    """
    return [(a, b) for (a, b) in affine_monomials(m, p, q)
            if not (sum(a) == p and sum(b) == q)]


@dataclass
class VanishingSystem:
    """Linear conditions cut by requiring vanishing at the configuration."""

    matrix: list     # r x dim_component, values of free monomials at points
    rhs: list        # -f(x_j), from the pinned boundary part
    monomials: list  # column index: affine (alpha, beta) pairs


def vanishing_system(config: Configuration, p: int, q: int,
                     boundary: PQPolynomial | None = None) -> VanishingSystem:
    m = config.m
    if boundary is None:
        boundary = default_boundary(m, p, q)
    if (boundary.m, boundary.p, boundary.q) != (m - 1, p, q):
        raise ValueError("boundary polynomial must be a (p,q)-polynomial in m variables")
    monomials = free_affine_monomials(m, p, q)
    matrix = []
    rhs = []
    for pt in config.points:
        conj = [c.conjugate() for c in pt]
        row = []
        for alpha, beta in monomials:
            v = GaussianRational(1)
            for c, e in zip(pt, alpha):
                if e:
                    v = v * c ** e
            for c, e in zip(conj, beta):
                if e:
                    v = v * c ** e
            row.append(v)
        matrix.append(row)
        rhs.append(-boundary.evaluate(pt))
    return VanishingSystem(matrix, rhs, monomials)


def certify_hyperplane_general_position(config: Configuration, params: ProblemParams,
                                        force_elimination: bool = False):
    """Full row rank of the vanishing conditions (general position).

    Guaranteed for r <= p: powers of a separating projection up to degree
    r-1 < p are free monomials, so the Vandermonde certificate applies.
    Returns (in_general_position, rank, guaranteed).
    """
    r = config.r
    p, q = params.p, params.q
    guaranteed = r <= p
    if guaranteed and not force_elimination:
        found = separating_direction(config)
        if found is not None:
            return True, r, True
    system = vanishing_system(config, p, q)
    rank = linalg.rank(system.matrix, QQI)
    return rank == r, rank, guaranteed


@dataclass
class NullityReport:
    rank: int
    nullity: int | None   # None when the system is infeasible
    feasible: bool
    dim_component: int


def vanishing_nullity(config: Configuration, params: ProblemParams,
                      component: int = 0,
                      boundary: PQPolynomial | None = None) -> NullityReport:
    """Solution-space dimension of the vanishing system for one component.

    Full row rank makes the inhomogeneous system solvable with nullity
    dim_component - r.  An infeasible system (possible for r > p, where the
    conditions may be incompatible) is reported as an empty solution set.
    """
    if boundary is None:
        boundary = default_boundary(config.m, params.p, params.q, component)
    dims = dimension_report(params)
    system = vanishing_system(config, params.p, params.q, boundary)
    rank = linalg.rank(system.matrix, QQI)
    if rank == config.r:
        # full row rank: always solvable, codimension exactly r
        return NullityReport(rank, dims.dim_component - rank, True, dims.dim_component)
    aug = [row + [b] for row, b in zip(system.matrix, system.rhs)]
    rank_aug = linalg.rank(aug, QQI)
    if rank_aug > rank:
        return NullityReport(rank, None, False, dims.dim_component)
    return NullityReport(rank, dims.dim_component - rank, True, dims.dim_component)


@dataclass
class FiberReport:
    complex_dim_per_component: int | None
    total_real_dim: int | None
    matches_bundle_rank: bool
    feasible: bool


def certify_fiber_dimension(config: Configuration, params: ProblemParams) -> FiberReport:
    """Fiber dimension of the open stratum over this configuration.

    All components share the same coefficient matrix, so one rank
    computation gives the solution dimension per component; the fiber is the
    product of the n+1 solution spaces with the open (r-1)-simplex, of real
    dimension 2 (n+1) (dim_component - r) + (r - 1).
    """
    r = config.r
    rmax = validity_rmax(params.m, params.p, params.q)
    if not 1 <= r <= rmax:
        raise RangeError(f"r={r} outside the bundle validity range [1, {rmax}]")
    ok, rank, _ = certify_hyperplane_general_position(config, params)
    if not ok:
        return FiberReport(None, None, False, False)
    dims = dimension_report(params)
    nullity = dims.dim_component - r
    total = 2 * (params.n + 1) * nullity + (r - 1)
    expected = bundle_rank(params, r)
    return FiberReport(nullity, total, total == expected, True)


# ---------------------------------------------------------------------------
# simplex intersections via exact LP


@dataclass
class DisjointnessReport:
    dichotomy_holds: bool | None  # None when a configuration is not a simplex
    relation: str                 # "disjoint" | "common-face" | "overlap" | "equal"
    common_count: int
    is_simplex_a: bool
    is_simplex_b: bool
    witness: tuple | None = None  # (lambda, mu) barycentric coords of a bad point


def certify_disjoint_simplices(config_a: Configuration, config_b: Configuration,
                               p: int, q: int) -> DisjointnessReport:
    """Whether the two monomial-image simplices meet only in their common face.

    Decided by exact rational LP on barycentric coordinates: for every
    vertex outside the shared set, maximize its weight over the intersection
    polytope; any positive optimum exhibits an intersection point outside
    the common face.  Soundness uses uniqueness of barycentric coordinates,
    so both configurations are first certified to span simplices.
    """
    if config_a.m != config_b.m:
        raise ValueError("configurations live in different ambient dimensions")
    m = config_a.m
    cert_a = certify_simplex_span(config_a, p, q)
    cert_b = certify_simplex_span(config_b, p, q)
    pts_a, pts_b = config_a.points, config_b.points
    common = set(pts_a) & set(pts_b)

    vs_a = [veronese(m, p, q, pt) for pt in pts_a]
    vs_b = [veronese(m, p, q, pt) for pt in pts_b]
    na, nb = len(vs_a), len(vs_b)
    dim = len(vs_a[0])

    rows = []
    rhs = []
    for j in range(dim):
        row_re = [v[j].re for v in vs_a] + [-v[j].re for v in vs_b]
        row_im = [v[j].im for v in vs_a] + [-v[j].im for v in vs_b]
        rows.append(row_re)
        rhs.append(Fraction(0))
        rows.append(row_im)
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * na + [Fraction(0)] * nb)
    rhs.append(Fraction(1))
    rows.append([Fraction(0)] * na + [Fraction(1)] * nb)
    rhs.append(Fraction(1))

    if not common:
        feas = lp_maximize(rows, rhs, [Fraction(0)] * (na + nb))
        if feas.status == "infeasible":
            verdict = None if not (cert_a.is_simplex and cert_b.is_simplex) else True
            return DisjointnessReport(verdict, "disjoint", 0,
                                      cert_a.is_simplex, cert_b.is_simplex)
        witness = (tuple(feas.x[:na]), tuple(feas.x[na:]))
        verdict = None if not (cert_a.is_simplex and cert_b.is_simplex) else False
        return DisjointnessReport(verdict, "overlap", 0,
                                  cert_a.is_simplex, cert_b.is_simplex, witness)

    noncommon = [i for i, pt in enumerate(pts_a) if pt not in common] + \
                [na + i for i, pt in enumerate(pts_b) if pt not in common]
    for idx in noncommon:
        c = [Fraction(0)] * (na + nb)
        c[idx] = Fraction(1)
        res = lp_maximize(rows, rhs, c)
        if res.status == "optimal" and res.value > 0:
            witness = (tuple(res.x[:na]), tuple(res.x[na:]))
            verdict = None if not (cert_a.is_simplex and cert_b.is_simplex) else False
            return DisjointnessReport(verdict, "overlap", len(common),
                                      cert_a.is_simplex, cert_b.is_simplex, witness)
    relation = "equal" if len(common) == na == nb else "common-face"
    verdict = None if not (cert_a.is_simplex and cert_b.is_simplex) else True
    return DisjointnessReport(verdict, relation, len(common),
                              cert_a.is_simplex, cert_b.is_simplex)


# ---------------------------------------------------------------------------
# random tuples (corpus material for the discriminant and linearity checks)


def free_homogeneous_monomials(m: int, p: int, q: int):
    """Homogeneous (p,q)-monomials in m+1 variables that involve z_m, i.e.
    the coefficients left free by fixing the hyperplane restriction."""
    from .polynomials import homogeneous_monomials

    return [(a, b) for (a, b) in homogeneous_monomials(m, p, q) if a[m] or b[m]]


def random_map_tuple(params: ProblemParams, rng: random.Random,
                     magnitude: int = 64, boundary=None):
    """A random tuple with the given (or default) hyperplane restriction."""
    from .polynomials import MapTuple, PQPolynomial

    m, n, p, q = params.m, params.n, params.p, params.q
    if boundary is None:
        boundary = [default_boundary(m, p, q, i) for i in range(n + 1)]
    free = free_homogeneous_monomials(m, p, q)
    comps = []
    for i in range(n + 1):
        poly = boundary[i].extend(m)
        for alpha, beta in free:
            if rng.random() < 0.8:
                poly = poly + PQPolynomial.monomial(
                    m, alpha, beta, random_gaussian_rational(rng, magnitude))
        comps.append(poly)
    return MapTuple(m, n, p, q, comps, boundary)


def random_binary_tuple(n: int, p: int, rng: random.Random, magnitude: int = 8,
                        planted_root: GaussianRational | None = None):
    """Random m=1, q=0 tuple of binary forms of degree p.

    With planted_root = a, every component gains the factor (z_0 - a z_1),
    so [a : 1] is a common zero by construction.
    """
    from .polynomials import MapTuple, PQPolynomial

    def random_form(degree):
        terms = {}
        for a in range(degree + 1):
            c = random_gaussian_rational(rng, magnitude)
            if c:
                terms[((a, degree - a), (0, 0))] = c
        # keep the top coefficient nonzero so the boundary data is nontrivial
        terms[((degree, 0), (0, 0))] = GaussianRational(rng.randint(1, magnitude))
        return PQPolynomial(1, degree, 0, terms)

    comps = []
    for _ in range(n + 1):
        if planted_root is None:
            comps.append(random_form(p))
        else:
            linear = PQPolynomial(1, 1, 0, {((1, 0), (0, 0)): GaussianRational(1),
                                            ((0, 1), (0, 0)): -planted_root})
            comps.append(linear * random_form(p - 1))
    return MapTuple(1, n, p, 0, comps)


# ---------------------------------------------------------------------------
# batch certification (CLI backend)


def derive_seed(base: int, index: int) -> int:
    """Per-trial seed independent of scheduling order."""
    return (base * 1_000_003 + index) & 0x7FFFFFFFFFFFFFFF


def certify_lemma_batch(lemma: str, m: int, n: int, p: int, q: int, r: int,
                        trials: int, seed: int, magnitude: int = 1 << 16,
                        keep_witnesses: int = 10) -> dict:
    """Run `trials` seeded random certifications; report failures and witnesses."""
    failures = 0
    witnesses = []

    def record(idx, detail):
        nonlocal failures
        failures += 1
        if len(witnesses) < keep_witnesses:
            witnesses.append({"trial": idx, "detail": detail})

    for idx in range(trials):
        rng = random.Random(derive_seed(seed, idx))
        if lemma == "vdm":
            config = random_configuration(m, r, rng, magnitude)
            cert = certify_simplex_span(config, p, q)
            if not cert.is_simplex:
                record(idx, {"points": _config_repr(config), "rank": cert.rank})
        elif lemma == "hyperplanes":
            params = ProblemParams(m, n, p, q)
            config = random_configuration(m, r, rng, magnitude)
            ok, rank, _ = certify_hyperplane_general_position(config, params)
            if not ok:
                record(idx, {"points": _config_repr(config), "rank": rank})
        elif lemma == "fiber":
            params = ProblemParams(m, n, p, q)
            config = random_configuration(m, r, rng, magnitude)
            rep = certify_fiber_dimension(config, params)
            if not rep.matches_bundle_rank:
                record(idx, {"points": _config_repr(config),
                             "total_real_dim": rep.total_real_dim})
        elif lemma == "simplices":
            config_a = random_configuration(m, r, rng, magnitude)
            config_b = random_configuration(m, r, rng, magnitude)
            rep = certify_disjoint_simplices(config_a, config_b, p, q)
            if rep.dichotomy_holds is not True:
                record(idx, {"a": _config_repr(config_a), "b": _config_repr(config_b),
                             "relation": rep.relation})
        else:
            raise ValueError(f"unknown lemma {lemma!r}")
    return {"lemma": lemma, "m": m, "n": n, "p": p, "q": q, "r": r,
            "trials": trials, "failures": failures, "witnesses": witnesses}


def _config_repr(config: Configuration):
    return [[str(c) for c in pt] for pt in config.points]
