"""Least-squares approximation of sampled maps between projective spaces.

A sampled continuous map CP^m -> CP^n is fitted by a tuple of
(p,q)-polynomials: alternating linear least squares over the monomial
coefficients and per-sample unit-modulus phases (projective targets are
only defined up to phase).  Errors are measured in the Fubini-Study metric,
which is representative-independent.

Because multiplying a tuple by the norm form does not change its values on
unit representatives, the model classes are nested along (p,q) ->
(p+1,q+1); ladder fits are warm-started through that inclusion, which makes
the achieved least-squares objective non-increasing rung by rung.

Hyperplane boundary data is matched exactly by a linear correction that
replaces a fit's restriction with the prescribed one; the interior penalty
of the correction is at most a factor 2 in the sup norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gaussrat import GaussianRational
from .polynomials import (MapTuple, PQPolynomial, ProjectivePoint,
                          homogeneous_monomials)


# ---------------------------------------------------------------------------
# metric and sampling


def fs_distance(a, b) -> float:
    """Fubini-Study distance arccos(|<a,b>| / (|a||b|)), in [0, pi/2]."""
    av = np.asarray([complex(c) for c in (a.coords if isinstance(a, ProjectivePoint) else a)])
    bv = np.asarray([complex(c) for c in (b.coords if isinstance(b, ProjectivePoint) else b)])
    na = np.linalg.norm(av)
    nb = np.linalg.norm(bv)
    if na == 0 or nb == 0:
        raise ValueError("zero vector is not a projective point")
    cosine = abs(np.vdot(av, bv)) / (na * nb)
    return math.acos(min(1.0, max(0.0, cosine)))


def sample_projective_points(m: int, count: int, seed: int = 0) -> np.ndarray:
    """count unit representatives, Fubini-Study uniform (normalized complex
    Gaussians), as an array of shape (count, m+1)."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, m + 1)) + 1j * rng.standard_normal((count, m + 1))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


@dataclass
class SampledMap:
    """Source/target sample pairs; sources pairwise distinct projectively."""

    xs: np.ndarray  # (J, m+1) complex
    ys: np.ndarray  # (J, n+1) complex
    boundary_xs: np.ndarray | None = None
    boundary_ys: np.ndarray | None = None

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=complex)
        self.ys = np.asarray(self.ys, dtype=complex)
        if self.xs.ndim != 2 or self.ys.ndim != 2 or len(self.xs) != len(self.ys):
            raise ValueError("samples must be parallel 2d arrays")
        if len(self.xs) == 0:
            raise ValueError("need at least one sample")
        for j in range(len(self.xs)):
            for k in range(j + 1, len(self.xs)):
                if fs_distance(self.xs[j], self.xs[k]) < 1e-12:
                    raise ValueError(f"source samples {j} and {k} coincide")

    @property
    def m(self) -> int:
        return self.xs.shape[1] - 1

    @property
    def n(self) -> int:
        return self.ys.shape[1] - 1


# ---------------------------------------------------------------------------
# fitting


def design_matrix(m: int, p: int, q: int, xs: np.ndarray) -> np.ndarray:
    """Values of all (p,q)-monomials (graded order) at the rows of xs."""
    monos = homogeneous_monomials(m, p, q)
    conj = np.conj(xs)
    cols = []
    for alpha, beta in monos:
        col = np.ones(len(xs), dtype=complex)
        for k, e in enumerate(alpha):
            if e:
                col = col * xs[:, k] ** e
        for k, e in enumerate(beta):
            if e:
                col = col * conj[:, k] ** e
        cols.append(col)
    return np.stack(cols, axis=1)


def coeffs_to_tuple(m: int, n: int, p: int, q: int, coeffs: np.ndarray) -> MapTuple:
    """Materialize float coefficients as an exact MapTuple (floats are
    dyadic rationals, so the conversion is lossless)."""
    monos = homogeneous_monomials(m, p, q)
    comps = []
    for i in range(n + 1):
        terms = {}
        for k, (alpha, beta) in enumerate(monos):
            c = complex(coeffs[i, k])
            if c:
                terms[(alpha, beta)] = GaussianRational(Fraction(c.real), Fraction(c.imag))
        comps.append(PQPolynomial(m, p, q, terms))
    return MapTuple(m, n, p, q, comps)


def stabilize_coeffs(m: int, p: int, q: int, coeffs: np.ndarray) -> np.ndarray:
    """Coefficient image of multiplication by the norm form, used to warm
    start the next ladder rung with an identical-valued tuple."""
    src = homogeneous_monomials(m, p, q)
    dst = {mono: k for k, mono in enumerate(homogeneous_monomials(m, p + 1, q + 1))}
    out = np.zeros((coeffs.shape[0], len(dst)), dtype=complex)
    for k, (alpha, beta) in enumerate(src):
        for i in range(m + 1):
            alpha2 = tuple(a + (1 if j == i else 0) for j, a in enumerate(alpha))
            beta2 = tuple(b + (1 if j == i else 0) for j, b in enumerate(beta))
            out[:, dst[(alpha2, beta2)]] += coeffs[:, k]
    return out


@dataclass
class FitReport:
    p: int
    q: int
    coeffs: np.ndarray
    phases: np.ndarray
    objective: float
    residuals: np.ndarray
    sup_fs_error: float
    underdetermined: bool
    rounds: int
    map_tuple: MapTuple = None
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "p": self.p, "q": self.q,
            "objective": self.objective,
            "sup_fs_error": self.sup_fs_error,
            "residuals": [float(r) for r in self.residuals],
            "underdetermined": self.underdetermined,
            "rounds": self.rounds,
            **self.extras,
        }


def fit_pq_map(samples: SampledMap, p: int, q: int, phase_policy: str = "unit",
               max_rounds: int = 25, rel_tol: float = 1e-10,
               init: tuple | None = None) -> FitReport:
    """Alternating least squares for min sum_j |F(x_j) - lambda_j y_j|^2.

    phase_policy="unit" updates unit-modulus phases in closed form each
    round; "fixed" keeps lambda = 1 (plain least squares against the given
    representatives).  Source representatives are normalized to unit norm.
    Underdetermined systems take numpy's minimum-norm solution and are
    flagged.  init=(coeffs, phases) warm-starts the alternation.
    """
    if phase_policy not in ("unit", "fixed"):
        raise ValueError(f"unknown phase policy {phase_policy!r}")
    xs = samples.xs / np.linalg.norm(samples.xs, axis=1, keepdims=True)
    ys = samples.ys
    m, n = samples.m, samples.n
    A = design_matrix(m, p, q, xs)
    J, K = A.shape
    underdetermined = J < K

    if init is not None:
        coeffs, phases = init
        coeffs = np.asarray(coeffs, dtype=complex)
        phases = np.asarray(phases, dtype=complex)
    else:
        coeffs = np.zeros((n + 1, K), dtype=complex)
        phases = np.ones(J, dtype=complex)

    def values(c):
        return A @ c.T  # (J, n+1)

    def objective(c, lam):
        return float(np.sum(np.abs(values(c) - lam[:, None] * ys) ** 2))

    obj = objective(coeffs, phases)
    rounds = 0
    for rounds in range(1, max_rounds + 1):
        target = phases[:, None] * ys
        sol, _res, rank, _sv = np.linalg.lstsq(A, target, rcond=None)
        coeffs = sol.T
        if rank < K:
            underdetermined = True
        if phase_policy == "unit":
            vals = values(coeffs)
            inner = np.sum(vals * np.conj(ys), axis=1)
            mags = np.abs(inner)
            new_phases = np.where(mags > 1e-300, inner / np.where(mags == 0, 1, mags), phases)
            phases = new_phases
        new_obj = objective(coeffs, phases)
        if obj - new_obj <= rel_tol * max(obj, 1e-30):
            obj = new_obj
            break
        obj = new_obj

    vals = values(coeffs)
    residuals = np.linalg.norm(vals - phases[:, None] * ys, axis=1)
    sup_fs = 0.0
    for j in range(J):
        vj = vals[j]
        if np.linalg.norm(vj) == 0:
            sup_fs = math.pi / 2
            break
        sup_fs = max(sup_fs, fs_distance(vj, ys[j]))
    report = FitReport(p, q, coeffs, phases, obj, residuals, sup_fs,
                       underdetermined, rounds)
    report.map_tuple = coeffs_to_tuple(m, n, p, q, coeffs)
    return report


def fit_ladder(samples: SampledMap, d: int, rungs: int = 4,
               phase_policy: str = "unit", max_rounds: int = 25) -> list:
    """Fits at (d+k, k) for k = 0..rungs-1, warm-started through the
    norm-form inclusion of coefficient spaces."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    reports = []
    init = None
    for k in range(rungs):
        p, q = d + k, k
        rep = fit_pq_map(samples, p, q, phase_policy=phase_policy,
                         max_rounds=max_rounds, init=init)
        if init is not None and reports:
            # warm start makes the minimum non-increasing; keep the better
            # of the warm-started result and the fresh one
            fresh = fit_pq_map(samples, p, q, phase_policy=phase_policy,
                               max_rounds=max_rounds)
            if fresh.objective < rep.objective:
                rep = fresh
        reports.append(rep)
        init = (stabilize_coeffs(samples.m, p, q, rep.coeffs), rep.phases)
    return reports


# ---------------------------------------------------------------------------
# boundary correction


def boundary_correct(P: PQPolynomial, S: PQPolynomial) -> PQPolynomial:
    """Correct P so its hyperplane restriction matches S's exactly.

    Both restrictions are extended constantly (no new-variable monomials)
    and P_1 = P + (s - p) is returned; the correction is the endpoint of the
    linear homotopy P + t (s - p), and on any sample set its sup distance to
    S is at most sup|P - S| plus the restricted sup, hence at most twice the
    ambient sup.
    """
    if (P.m, P.p, P.q) != (S.m, S.p, S.q):
        raise ValueError("sections live in different (m, p, q) spaces")
    s = S.restrict_to_hyperplane()
    pr = P.restrict_to_hyperplane()
    return P + (s - pr).extend(P.m)


def replace_boundary(P: PQPolynomial, f: PQPolynomial) -> PQPolynomial:
    """boundary_correct against a prescribed restriction f (one dimension
    down): P + (f - restrict(P)) extended constantly."""
    if (f.m, f.p, f.q) != (P.m - 1, P.p, P.q):
        raise ValueError("f must be a (p,q)-polynomial in one variable fewer")
    return P + (f - P.restrict_to_hyperplane()).extend(P.m)


@dataclass
class BoundaryFitReport:
    fit: FitReport
    corrected: MapTuple
    sup_fs_before: float
    sup_fs_after: float
    boundary_exact: bool
    meets_eps: bool
    certificate: object = None

    def as_dict(self) -> dict:
        out = {
            "fit": self.fit.as_dict(),
            "sup_fs_before": self.sup_fs_before,
            "sup_fs_after": self.sup_fs_after,
            "boundary_exact": self.boundary_exact,
            "meets_eps": self.meets_eps,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.as_dict()
        return out


def evaluate_tuple(t: MapTuple, xs: np.ndarray) -> np.ndarray:
    from .discriminant import _component_values

    return _component_values(t.components, np.asarray(xs, dtype=complex)).T


def approximate_with_boundary(samples: SampledMap, boundary, p: int, q: int,
                              eps: float, phase_policy: str = "unit",
                              certify: bool = True) -> BoundaryFitReport:
    """Fit, then correct every component to match the exact boundary data.

    boundary is a list of n+1 exact (p,q)-polynomials in m variables (the
    prescribed restrictions).  The corrected tuple's restriction equals the
    boundary coefficientwise (the correction happens in exact arithmetic);
    when the corrected fit is good enough a no-common-zero certificate is
    requested from the discriminant tester and surfaced as-is.
    """
    fit = fit_pq_map(samples, p, q, phase_policy=phase_policy)
    exact = fit.map_tuple
    corrected_comps = [replace_boundary(comp, f)
                       for comp, f in zip(exact.components, boundary)]
    corrected = MapTuple(exact.m, exact.n, p, q, corrected_comps, list(boundary))

    xs = samples.xs / np.linalg.norm(samples.xs, axis=1, keepdims=True)
    vals = evaluate_tuple(corrected, xs)
    sup_after = 0.0
    for j in range(len(xs)):
        if np.linalg.norm(vals[j]) == 0:
            sup_after = math.pi / 2
            break
        sup_after = max(sup_after, fs_distance(vals[j], samples.ys[j]))

    boundary_exact = all(comp.restrict_to_hyperplane() == f
                         for comp, f in zip(corrected.components, boundary))
    certificate = None
    if certify and sup_after < math.pi / 4:
        from .discriminant import has_common_zero

        certificate = has_common_zero(corrected, "numeric")
    return BoundaryFitReport(fit, corrected, fit.sup_fs_error, sup_after,
                             boundary_exact, sup_after <= eps, certificate)


# ---------------------------------------------------------------------------
# the documented non-algebraic test target


def bump_perturbed_identity(xs: np.ndarray) -> np.ndarray:
    """A smooth degree-1 self-map of the projective line that is not given
    by (p,q)-polynomials: the identity perturbed by a radial bump,

        (z0, z1) -> (z0 + 0.35 exp(-3 |z1|^2) z1,  z1 - 0.2 exp(-3 |z1|^2) z0)

    on unit representatives.  Both components scale by lambda under
    (z0, z1) -> (lambda z0, lambda z1) with |lambda| = 1, so the map is well
    defined on the projective line; it never vanishes on the sphere.
    """
    xs = np.asarray(xs, dtype=complex)
    xs = xs / np.linalg.norm(xs, axis=1, keepdims=True)
    z0, z1 = xs[:, 0], xs[:, 1]
    b = np.exp(-3.0 * np.abs(z1) ** 2)
    w = np.stack([z0 + 0.35 * b * z1, z1 - 0.20 * b * z0], axis=1)
    return w / np.linalg.norm(w, axis=1, keepdims=True)
