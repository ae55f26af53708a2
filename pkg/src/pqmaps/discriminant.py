"""Discriminant membership: does a tuple of (p,q)-polynomials share a zero?

The scale-invariant objective

    phi(z) = sum_i |F_i(z)|^2 / (sum_j |z_j|^2)^(p+q)

vanishes exactly on common zeros and is invariant under rescaling both the
point and the stabilization of the tuple, so the numeric test is a
multistart grid search plus damped Gauss-Newton refinement with an honest
"unknown" band between the zero and nonzero thresholds.

In the one-variable holomorphic case (m = 1, q = 0) membership is decided
exactly: the components are binary forms, a common zero means either a
nonconstant gcd of the dehomogenizations or a shared root at [1 : 0], and a
negative verdict is certified by exhibiting both pure powers z_0^D, z_1^D
inside the ideal, which yields an exact positive lower bound for phi on the
unit sphere.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np

from .gaussrat import GaussianRational
from . import linalg
from .linalg import QQI
from .polynomials import MapTuple, PQPolynomial, ProjectivePoint


class UnsupportedModeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# numeric objective


def _component_values(components, pts):
    """Vectorized values of each component at rows of pts (N, m+1) complex."""
    out = np.zeros((len(components), pts.shape[0]), dtype=complex)
    conj = np.conj(pts)
    for ci, poly in enumerate(components):
        acc = np.zeros(pts.shape[0], dtype=complex)
        for (alpha, beta), coeff in poly.terms.items():
            term = np.full(pts.shape[0], complex(coeff))
            for k, e in enumerate(alpha):
                if e:
                    term = term * pts[:, k] ** e
            for k, e in enumerate(beta):
                if e:
                    term = term * conj[:, k] ** e
            acc += term
        out[ci] = acc
    return out


def objective_values(t: MapTuple, pts) -> np.ndarray:
    """phi at each row of pts."""
    vals = _component_values(t.components, pts)
    norms = np.sum(np.abs(pts) ** 2, axis=1)
    return np.sum(np.abs(vals) ** 2, axis=0) / norms ** (t.p + t.q)


def _chart_grid(m: int, chart: int, density: int) -> np.ndarray:
    """Points covering the region |z_i / z_chart| <= 1 of CP^m."""
    side = np.linspace(-1.0, 1.0, density)
    re, im = np.meshgrid(side, side)
    disc = (re + 1j * im).ravel()
    grids = np.meshgrid(*([disc] * m), indexing="ij") if m > 1 else [disc]
    coords = [g.ravel() for g in grids]
    n_pts = coords[0].size
    pts = np.empty((n_pts, m + 1), dtype=complex)
    idx = 0
    for k in range(m + 1):
        if k == chart:
            pts[:, k] = 1.0
        else:
            pts[:, k] = coords[idx]
            idx += 1
    return pts


def _gauss_newton(t: MapTuple, start: np.ndarray, steps: int) -> tuple[float, np.ndarray]:
    """Damped Gauss-Newton on the chart of the largest coordinate of start."""
    m = t.m
    chart = int(np.argmax(np.abs(start)))
    w = np.array([start[k] / start[chart] for k in range(m + 1) if k != chart])

    def embed(wvec):
        z = np.empty(m + 1, dtype=complex)
        idx = 0
        for k in range(m + 1):
            if k == chart:
                z[k] = 1.0
            else:
                z[k] = wvec[idx]
                idx += 1
        return z

    def residuals(wvec):
        z = embed(wvec)
        vals = _component_values(t.components, z[None, :])[:, 0]
        scale = (1.0 + np.sum(np.abs(wvec) ** 2)) ** ((t.p + t.q) / 2.0)
        r = vals / scale
        return np.concatenate([r.real, r.imag])

    def phi(wvec):
        r = residuals(wvec)
        return float(np.dot(r, r))

    def reals(wvec):
        return np.concatenate([wvec.real, wvec.imag])

    def unreals(x):
        return x[:m] + 1j * x[m:]

    x = reals(w)
    value = phi(unreals(x))
    lam = 1e-3
    h = 1e-7
    for _ in range(steps):
        r0 = residuals(unreals(x))
        jac = np.empty((r0.size, x.size))
        for k in range(x.size):
            dx = np.zeros_like(x)
            dx[k] = h
            jac[:, k] = (residuals(unreals(x + dx)) - residuals(unreals(x - dx))) / (2 * h)
        g = jac.T @ r0
        if np.linalg.norm(g) < 1e-16:
            break
        improved = False
        for _ in range(8):
            try:
                delta = np.linalg.solve(jac.T @ jac + lam * np.eye(x.size), -g)
            except np.linalg.LinAlgError:
                lam *= 10
                continue
            cand = x + delta
            cand_val = phi(unreals(cand))
            if cand_val < value:
                x = cand
                value = cand_val
                lam = max(lam / 3.0, 1e-12)
                improved = True
                break
            lam *= 10
        if not improved:
            break
        if value < 1e-32:
            break
    z = embed(unreals(x))
    z = z / np.linalg.norm(z)
    return value, z


def min_norm(t: MapTuple, grid_density: int | None = None,
             refinement_steps: int = 40) -> tuple[float, ProjectivePoint]:
    """Approximate minimum of phi over CP^m: multistart grid + refinement.

    Charts |z_i/z_k| <= 1 for every k cover the projective space.  Returns
    the best value found and a unit-norm witness point.
    """
    m = t.m
    if grid_density is None:
        grid_density = 64 if m == 1 else 16
    best_val = math.inf
    best_pt = None
    starts = []
    for chart in range(m + 1):
        pts = _chart_grid(m, chart, grid_density)
        vals = objective_values(t, pts)
        order = np.argsort(vals)
        take = min(3, len(order))
        for i in order[:take]:
            starts.append((float(vals[i]), pts[i]))
        if float(vals[order[0]]) < best_val:
            best_val = float(vals[order[0]])
            best_pt = pts[order[0]] / np.linalg.norm(pts[order[0]])
    starts.sort(key=lambda sv: sv[0])
    for _, start in starts[:4]:
        val, pt = _gauss_newton(t, start, refinement_steps)
        if val < best_val:
            best_val = val
            best_pt = pt
    return best_val, ProjectivePoint(list(best_pt), normalized=True)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class ZeroCertificate:
    verdict: str                      # "common-zero" | "no-common-zero" | "unknown"
    tolerance: float
    witness: tuple | None = None      # unit-normalized coordinates
    witness_in_affine_chart: bool | None = None
    lower_bound: object = None        # positive Fraction (exact) or float threshold
    minimum_found: float | None = None
    trace: list = dataclass_field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "witness": [[c.real, c.imag] for c in self.witness] if self.witness else None,
            "witness_in_affine_chart": self.witness_in_affine_chart,
            "lower_bound": float(self.lower_bound) if self.lower_bound is not None else None,
            "minimum_found": self.minimum_found,
            "trace": self.trace,
        }


# -- exact decision for binary holomorphic forms -----------------------------


def _dehomogenize(poly: PQPolynomial) -> list:
    """Coefficients c_a of z_0^a z_1^(p-a), index a = 0..p (z_1 = 1)."""
    coeffs = [GaussianRational(0)] * (poly.p + 1)
    for (alpha, _beta), coeff in poly.terms.items():
        coeffs[alpha[0]] = coeffs[alpha[0]] + coeff
    return coeffs


def _poly_degree(coeffs) -> int:
    for d in range(len(coeffs) - 1, -1, -1):
        if coeffs[d]:
            return d
    return -1


def _poly_mod(a, b):
    """Remainder of a by b over Q(i); b nonzero."""
    a = list(a)
    db = _poly_degree(b)
    lead = b[db]
    while True:
        da = _poly_degree(a)
        if da < db:
            return a[:max(da + 1, 0)]
        factor = a[da] / lead
        for k in range(db + 1):
            a[da - db + k] = a[da - db + k] - factor * b[k]
        a[da] = GaussianRational(0)


def _poly_gcd(a, b):
    a, b = list(a), list(b)
    while _poly_degree(b) >= 0:
        a, b = b, _poly_mod(a, b)
    da = _poly_degree(a)
    if da < 0:
        return a
    lead = a[da]
    return [c / lead for c in a[:da + 1]]


def _power_cofactor_bound(components, p: int) -> Fraction:
    """Exact positive lower bound for phi on the unit sphere when the binary
    forms have no common zero.

    Writes z_0^D and z_1^D as combinations sum u_i F_i with homogeneous
    cofactors of degree D - p (D = 2p - 1 suffices; widened defensively).
    On the unit sphere max(|z_0|, |z_1|)^(2D) >= 2^-D, and each |u_i(z)| is
    at most its coefficient 1-norm, giving phi >= 1 / (2^D M^2) with M the
    total cofactor norm.
    """
    n_comp = len(components)
    for D in (2 * p - 1, 2 * p, 3 * p):
        du = D - p
        ncols = n_comp * (du + 1)
        rows = []
        for b in range(D + 1):  # coefficient of z_0^b z_1^(D-b)
            row = []
            for i in range(n_comp):
                f = _dehomogenize(components[i])
                for a in range(du + 1):  # u_i has term z_0^a z_1^(du-a)
                    need = b - a
                    row.append(f[need] if 0 <= need <= p else GaussianRational(0))
            rows.append(row)
        rhs_z0 = [GaussianRational(1) if b == D else GaussianRational(0) for b in range(D + 1)]
        rhs_z1 = [GaussianRational(1) if b == 0 else GaussianRational(0) for b in range(D + 1)]
        u = linalg.solve(rows, rhs_z0, QQI)
        v = linalg.solve(rows, rhs_z1, QQI)
        if u is not None and v is not None:
            norm = Fraction(0)
            for x in list(u) + list(v):
                norm += abs(x.re) + abs(x.im)
            if norm == 0:
                continue
            return Fraction(1, 2 ** D) / (norm * norm)
    raise ArithmeticError("cofactor solve failed although the gcd is constant")


def _exact_binary_decision(t: MapTuple, tol: float) -> ZeroCertificate:
    trace = ["exact: binary-form gcd decision"]
    nonzero = [c for c in t.components if not c.is_zero()]
    if not nonzero:
        return ZeroCertificate("common-zero", tol, witness=(1.0, 0.0),
                               witness_in_affine_chart=False,
                               trace=trace + ["all components vanish identically"])
    # shared root at [1 : 0]: every top coefficient (of z_0^p) vanishes
    if all(not _dehomogenize(c)[t.p] for c in nonzero):
        return ZeroCertificate("common-zero", tol, witness=(1.0, 0.0),
                               witness_in_affine_chart=False,
                               trace=trace + ["common zero at [1:0]"])
    g = _dehomogenize(nonzero[0])
    for c in nonzero[1:]:
        g = _poly_gcd(g, _dehomogenize(c))
        if _poly_degree(g) == 0:
            break
    dg = _poly_degree(g)
    if dg >= 1:
        roots = np.roots([complex(g[d]) for d in range(dg, -1, -1)])
        root = roots[0]
        # polish on the gcd and normalize the witness
        for _ in range(50):
            val = sum(complex(g[d]) * root ** d for d in range(dg + 1))
            dval = sum(d * complex(g[d]) * root ** (d - 1) for d in range(1, dg + 1))
            if abs(dval) < 1e-300 or abs(val) < 1e-30:
                break
            root = root - val / dval
        z = np.array([root, 1.0], dtype=complex)
        z = z / np.linalg.norm(z)
        trace.append(f"gcd degree {dg}; witness from root isolation")
        return ZeroCertificate("common-zero", tol, witness=tuple(z),
                               witness_in_affine_chart=True, trace=trace)
    bound = _power_cofactor_bound(nonzero, t.p)
    trace.append("constant gcd; pure powers exhibited in the ideal")
    return ZeroCertificate("no-common-zero", tol, lower_bound=bound, trace=trace)


def has_common_zero(t: MapTuple, mode: str = "auto", tol: float = 1e-8,
                    grid_density: int | None = None,
                    refinement_steps: int = 40) -> ZeroCertificate:
    """Discriminant membership test.

    mode="exact" (m = 1, q = 0 only) decides by gcd/ideal membership;
    mode="numeric" searches: no-common-zero when the found minimum exceeds
    tol, common-zero when refinement drives the objective below tol^2 (then
    max_i |F_i| <= tol at the unit witness), otherwise unknown.
    """
    if mode not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    exact_ok = t.m == 1 and t.q == 0
    if mode == "exact" and not exact_ok:
        raise UnsupportedModeError("exact mode requires m = 1 and q = 0")
    if mode == "exact" or (mode == "auto" and exact_ok):
        return _exact_binary_decision(t, tol)

    value, point = min_norm(t, grid_density, refinement_steps)
    trace = [f"numeric: multistart grid + refinement, minimum {value:.3e}"]
    coords = tuple(complex(c) for c in point.coords)
    if value > tol:
        return ZeroCertificate("no-common-zero", tol, lower_bound=tol,
                               minimum_found=value,
                               trace=trace + [f"minimum above threshold {tol}"])
    if value < tol * tol:
        in_chart = abs(coords[-1]) > 1e-9
        return ZeroCertificate("common-zero", tol, witness=coords,
                               witness_in_affine_chart=in_chart,
                               minimum_found=value, trace=trace)
    return ZeroCertificate("unknown", tol, minimum_found=value,
                           trace=trace + ["between thresholds: undecided"])


def check_stabilization_membership(t: MapTuple, tol: float = 1e-8):
    """Verdict agreement between a tuple and its stabilization.

    Common zeros are preserved exactly (the multiplier vanishes nowhere);
    the numeric objective is literally unchanged.  Returns (flag, cert,
    cert_stabilized) with flag None when either verdict is unknown.
    """
    cert = has_common_zero(t, "auto", tol)
    cert_stab = has_common_zero(t.stabilize(), "numeric", tol)
    if "unknown" in (cert.verdict, cert_stab.verdict):
        return None, cert, cert_stab
    return cert.verdict == cert_stab.verdict, cert, cert_stab


def linearity_of_stabilization(params, trials: int = 100, seed: int = 0,
                               magnitude: int = 64) -> bool:
    """Stabilization is affine on coefficient tuples with a shared boundary:

        stab(a t1 + b t2 - (a+b-1) t0) = a stab(t1) + b stab(t2) - (a+b-1) stab(t0)

    checked exactly on random Gaussian-rational tuples and weights.
    """
    from .genpos import random_map_tuple

    rng = random.Random(seed)
    for _ in range(trials):
        t0 = random_map_tuple(params, rng, magnitude)
        t1 = random_map_tuple(params, rng, magnitude, boundary=t0.boundary)
        t2 = random_map_tuple(params, rng, magnitude, boundary=t0.boundary)
        a = GaussianRational(Fraction(rng.randint(-8, 8), rng.randint(1, 8)),
                             Fraction(rng.randint(-8, 8), rng.randint(1, 8)))
        b = GaussianRational(Fraction(rng.randint(-8, 8), rng.randint(1, 8)),
                             Fraction(rng.randint(-8, 8), rng.randint(1, 8)))
        combo = MapTuple.affine_combination([t1, t2, t0], [a, b, 1 - (a + b)])
        left = combo.stabilize()
        right = MapTuple.affine_combination(
            [t1.stabilize(), t2.stabilize(), t0.stabilize()], [a, b, 1 - (a + b)])
        if left != right:
            return False
    return True
