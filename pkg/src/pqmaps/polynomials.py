"""Exact arithmetic for (p,q)-polynomials, map tuples and the Veronese map.

A (p,q)-polynomial in ambient projective dimension m is a polynomial in the
homogeneous coordinates z_0..z_m and their conjugates, homogeneous of degree
p in the z_i and of degree q in the conjugates.  Terms are stored sparsely
as {(alpha, beta): coefficient} with exponent tuples of length m+1 and
GaussianRational coefficients, so every identity in this module is exact.

The monomial order used everywhere (serialization, Veronese coordinates,
design matrices) is graded: lower total degree first, and within a grade the
lexicographically larger concatenated exponent vector (alpha, beta) first,
i.e. higher powers of earlier holomorphic variables come first.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .gaussrat import GaussianRational, coerce_scalar


# ---------------------------------------------------------------------------
# monomial bookkeeping


def compositions(total: int, parts: int):
    """All tuples of `parts` non-negative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def monomial_count(m: int, p: int, q: int) -> int:
    """Number of monomials of degree <= p in z_0..z_{m-1} and <= q in conjugates.

    Equals C(p+m, m) * C(q+m, m).  The same number counts the bihomogeneous
    (p,q)-monomials in the m+1 homogeneous variables z_0..z_m, since
    homogenization in z_m is a bijection between the two monomial sets.
    """
    if m < 1:
        raise ValueError("ambient dimension m must be >= 1")
    if p < 0 or q < 0:
        raise ValueError("bidegree must be non-negative")
    return comb(p + m, m) * comb(q + m, m)


def homogeneous_monomial_count(num_vars: int, p: int, q: int) -> int:
    """Number of (p,q)-monomials in `num_vars` homogeneous variables."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    return comb(p + num_vars - 1, num_vars - 1) * comb(q + num_vars - 1, num_vars - 1)


def graded_key(alpha: tuple, beta: tuple):
    """Sort key for the documented graded monomial order."""
    concat = tuple(alpha) + tuple(beta)
    return (sum(concat), tuple(-e for e in concat))


def homogeneous_monomials(m: int, p: int, q: int):
    """All (alpha, beta) with len m+1, |alpha| = p, |beta| = q, graded order."""
    out = [(a, b) for a in compositions(p, m + 1) for b in compositions(q, m + 1)]
    out.sort(key=lambda ab: graded_key(*ab))
    return out


def affine_monomials(m: int, p: int, q: int):
    """All (alpha, beta) with len m, |alpha| <= p, |beta| <= q, graded order.

    These index the coordinates of the Veronese-type embedding of the affine
    chart z_m = 1: the list has length monomial_count(m, p, q).
    """
    out = []
    for dp in range(p + 1):
        for a in compositions(dp, m):
            for dq in range(q + 1):
                for b in compositions(dq, m):
                    out.append((a, b))
    out.sort(key=lambda ab: graded_key(*ab))
    return out


def degree_of_map(p: int, q: int) -> int:
    """Topological degree of a map defined by (p,q)-polynomials: p - q."""
    if p < 0 or q < 0:
        raise ValueError("bidegree must be non-negative")
    return p - q


# ---------------------------------------------------------------------------
# points


class ProjectivePoint:
    """A point of CP^m given by m+1 coordinates, not all zero.

    Coordinates may be exact (GaussianRational) or floating (complex).
    """

    def __init__(self, coords: Sequence, normalized: bool = False):
        coords = tuple(coerce_scalar(c) for c in coords)
        if all(not c for c in coords):
            raise ValueError("projective point needs a nonzero coordinate")
        self.coords = coords
        self.normalized = normalized

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    def unit(self) -> "ProjectivePoint":
        """Floating representative scaled to Euclidean norm 1."""
        cs = [complex(c) for c in self.coords]
        n = sum(abs(c) ** 2 for c in cs) ** 0.5
        return ProjectivePoint([c / n for c in cs], normalized=True)

    def affine_chart(self, k: int | None = None):
        """Coordinates in the chart z_k = 1 (default k = m)."""
        if k is None:
            k = self.m
        zk = self.coords[k]
        if not zk:
            raise ValueError(f"point lies on the hyperplane z_{k} = 0")
        return tuple(c / zk for i, c in enumerate(self.coords) if i != k)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "ProjectivePoint([" + ", ".join(str(c) for c in self.coords) + "])"


def _point_coords(point, expected_len: int):
    coords = tuple(point.coords) if isinstance(point, ProjectivePoint) else tuple(
        coerce_scalar(c) for c in point)
    if len(coords) != expected_len:
        raise ValueError(f"expected {expected_len} coordinates, got {len(coords)}")
    return coords


def _conj(value):
    return value.conjugate()


# ---------------------------------------------------------------------------
# polynomials


class PQPolynomial:
    """Sparse bihomogeneous polynomial of bidegree (p, q) in m+1 variables."""

    def __init__(self, m: int, p: int, q: int, terms=None):
        if m < 0:
            raise ValueError("ambient dimension must be >= 0")
        if p < 0 or q < 0:
            raise ValueError("bidegree must be non-negative")
        self.m = m
        self.p = p
        self.q = q
        clean = {}
        for (alpha, beta), coeff in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            beta = tuple(int(b) for b in beta)
            if len(alpha) != m + 1 or len(beta) != m + 1:
                raise ValueError("exponent vectors must have length m+1")
            if any(a < 0 for a in alpha) or any(b < 0 for b in beta):
                raise ValueError("negative exponent")
            if sum(alpha) != p or sum(beta) != q:
                raise ValueError(
                    f"monomial {(alpha, beta)} does not have bidegree ({p}, {q})")
            coeff = coeff if isinstance(coeff, GaussianRational) else GaussianRational(coeff)
            if coeff:
                clean[(alpha, beta)] = clean.get((alpha, beta), GaussianRational(0)) + coeff
                if not clean[(alpha, beta)]:
                    del clean[(alpha, beta)]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m: int, p: int, q: int) -> "PQPolynomial":
        return cls(m, p, q, {})

    @classmethod
    def monomial(cls, m: int, alpha, beta, coeff=1) -> "PQPolynomial":
        alpha = tuple(alpha)
        beta = tuple(beta)
        return cls(m, sum(alpha), sum(beta), {(alpha, beta): coeff})

    @classmethod
    def variable(cls, m: int, i: int, conjugated: bool = False) -> "PQPolynomial":
        e = tuple(1 if j == i else 0 for j in range(m + 1))
        z = tuple(0 for _ in range(m + 1))
        return cls.monomial(m, z if conjugated else e, e if conjugated else z)

    @classmethod
    def norm_form(cls, m: int) -> "PQPolynomial":
        """The (1,1)-polynomial z_0 conj(z_0) + ... + z_m conj(z_m)."""
        terms = {}
        for i in range(m + 1):
            e = tuple(1 if j == i else 0 for j in range(m + 1))
            terms[(e, e)] = GaussianRational(1)
        return cls(m, 1, 1, terms)

    # -- ring structure ------------------------------------------------------

    def _check_same_space(self, other):
        if (self.m, self.p, self.q) != (other.m, other.p, other.q):
            raise ValueError("polynomials live in different (m, p, q) spaces")

    def __add__(self, other):
        self._check_same_space(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, GaussianRational(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return PQPolynomial(self.m, self.p, self.q, terms)

    def __neg__(self):
        return PQPolynomial(self.m, self.p, self.q,
                            {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PQPolynomial):
            if self.m != other.m:
                raise ValueError("ambient dimensions differ")
            terms = {}
            for (a1, b1), c1 in self.terms.items():
                for (a2, b2), c2 in other.terms.items():
                    key = (tuple(x + y for x, y in zip(a1, a2)),
                           tuple(x + y for x, y in zip(b1, b2)))
                    s = terms.get(key, GaussianRational(0)) + c1 * c2
                    if s:
                        terms[key] = s
                    else:
                        terms.pop(key, None)
            return PQPolynomial(self.m, self.p + other.p, self.q + other.q, terms)
        c = other if isinstance(other, GaussianRational) else GaussianRational(other)
        if not c:
            return PQPolynomial.zero(self.m, self.p, self.q)
        return PQPolynomial(self.m, self.p, self.q,
                            {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, PQPolynomial):
            return NotImplemented
        return (self.m, self.p, self.q) == (other.m, other.p, other.q) and \
            self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.p, self.q, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: graded_key(*kv[0]))

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, point):
        """Value at a point; exact if the coordinates are exact.

        Conjugated variables are evaluated at the conjugate coordinates.
        """
        coords = _point_coords(point, self.m + 1)
        conj = [_conj(c) for c in coords]
        exact = all(isinstance(c, GaussianRational) for c in coords)
        total = GaussianRational(0) if exact else 0j
        for (alpha, beta), coeff in self.terms.items():
            v = coeff if exact else complex(coeff)
            for c, e in zip(coords, alpha):
                if e:
                    v = v * c ** e
            for c, e in zip(conj, beta):
                if e:
                    v = v * c ** e
            total = total + v
        return total

    # -- geometry operations ------------------------------------------------

    def restrict_to_hyperplane(self) -> "PQPolynomial":
        """Restriction to z_m = 0, as a polynomial in the remaining variables.

        Drops every monomial involving z_m or its conjugate; the result lives
        in ambient dimension m-1 and keeps the bidegree (p, q).
        """
        if self.m == 0:
            raise ValueError("no hyperplane to restrict to in ambient dimension 0")
        terms = {}
        for (alpha, beta), coeff in self.terms.items():
            if alpha[-1] or beta[-1]:
                continue
            terms[(alpha[:-1], beta[:-1])] = coeff
        return PQPolynomial(self.m - 1, self.p, self.q, terms)

    def extend(self, new_m: int | None = None) -> "PQPolynomial":
        """View in a larger ambient space, independent of the new variables."""
        if new_m is None:
            new_m = self.m + 1
        if new_m < self.m:
            raise ValueError("extension cannot shrink the ambient space")
        pad = (0,) * (new_m - self.m)
        terms = {(a + pad, b + pad): c for (a, b), c in self.terms.items()}
        return PQPolynomial(new_m, self.p, self.q, terms)

    def stabilize(self) -> "PQPolynomial":
        """Multiplication by the norm form, landing in bidegree (p+1, q+1)."""
        return self * PQPolynomial.norm_form(self.m)

    # -- representation --------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return f"PQPolynomial({self.m}, {self.p}, {self.q}, 0)"
        bits = []
        for (alpha, beta), coeff in self.sorted_terms():
            factors = []
            for i, e in enumerate(alpha):
                if e:
                    factors.append(f"z{i}" + (f"^{e}" if e > 1 else ""))
            for i, e in enumerate(beta):
                if e:
                    factors.append(f"w{i}" + (f"^{e}" if e > 1 else ""))
            mono = "*".join(factors) if factors else "1"
            bits.append(f"({coeff})*{mono}")
        return " + ".join(bits)


def veronese(m: int, p: int, q: int, point) -> list:
    """Monomial-value coordinates of an affine point of the chart z_m = 1.

    `point` gives the m affine coordinates.  Returns the values of all
    monomials of degree <= p in the coordinates and <= q in their conjugates,
    in the documented graded order; length monomial_count(m, p, q).
    """
    coords = tuple(coerce_scalar(c) for c in point)
    if len(coords) != m:
        raise ValueError(f"expected {m} affine coordinates, got {len(coords)}")
    conj = [_conj(c) for c in coords]
    out = []
    for alpha, beta in affine_monomials(m, p, q):
        exact = all(isinstance(c, GaussianRational) for c in coords)
        v = GaussianRational(1) if exact else 1 + 0j
        for c, e in zip(coords, alpha):
            if e:
                v = v * c ** e
        for c, e in zip(conj, beta):
            if e:
                v = v * c ** e
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# map tuples


class MapTuple:
    """n+1 (p,q)-polynomials in m+1 variables with their hyperplane data.

    The boundary is the tuple of restrictions to z_m = 0; when provided it is
    validated against the components, otherwise it is computed.
    """

    def __init__(self, m: int, n: int, p: int, q: int,
                 components: Sequence[PQPolynomial],
                 boundary: Sequence[PQPolynomial] | None = None):
        components = list(components)
        if len(components) != n + 1:
            raise ValueError(f"expected {n + 1} components, got {len(components)}")
        for comp in components:
            if (comp.m, comp.p, comp.q) != (m, p, q):
                raise ValueError("component does not match the tuple's (m, p, q)")
        restrictions = [comp.restrict_to_hyperplane() for comp in components]
        if boundary is None:
            boundary = restrictions
        else:
            boundary = list(boundary)
            if len(boundary) != n + 1:
                raise ValueError("boundary must have n+1 entries")
            for got, want in zip(restrictions, boundary):
                if got != want:
                    raise ValueError("component restriction disagrees with boundary")
        self.m, self.n, self.p, self.q = m, n, p, q
        self.components = components
        self.boundary = boundary

    @property
    def degree(self) -> int:
        return degree_of_map(self.p, self.q)

    def evaluate(self, point):
        return [comp.evaluate(point) for comp in self.components]

    def stabilize(self) -> "MapTuple":
        """Multiply all components by the norm form: a (p+1, q+1) tuple.

        Pointwise this scales values by sum |z_i|^2 > 0, so the induced
        projective map is unchanged; the boundary stabilizes consistently
        with the norm form of the hyperplane.
        """
        comps = [c.stabilize() for c in self.components]
        return MapTuple(self.m, self.n, self.p + 1, self.q + 1, comps)

    @staticmethod
    def affine_combination(tuples: Sequence["MapTuple"], weights: Sequence) -> "MapTuple":
        """Weighted combination with weights summing to 1 (shared boundary)."""
        ws = [w if isinstance(w, GaussianRational) else GaussianRational(w) for w in weights]
        if sum(ws, GaussianRational(0)) != GaussianRational(1):
            raise ValueError("affine combination weights must sum to 1")
        first = tuples[0]
        comps = []
        for i in range(first.n + 1):
            acc = PQPolynomial.zero(first.m, first.p, first.q)
            for t, w in zip(tuples, ws):
                acc = acc + t.components[i] * w
            comps.append(acc)
        return MapTuple(first.m, first.n, first.p, first.q, comps)

    def __eq__(self, other):
        if not isinstance(other, MapTuple):
            return NotImplemented
        return (self.m, self.n, self.p, self.q) == (other.m, other.n, other.p, other.q) \
            and self.components == other.components

    def __repr__(self):
        return (f"MapTuple(m={self.m}, n={self.n}, p={self.p}, q={self.q}, "
                f"components={self.components!r})")


# ---------------------------------------------------------------------------
# JSON serialization


def poly_to_dict(poly: PQPolynomial) -> dict:
    terms = []
    for (alpha, beta), coeff in poly.sorted_terms():
        re, im = coeff.to_pair()
        terms.append({"alpha": list(alpha), "beta": list(beta), "re": re, "im": im})
    return {"m": poly.m, "p": poly.p, "q": poly.q, "terms": terms}


def poly_from_dict(data: dict) -> PQPolynomial:
    terms = {}
    for t in data.get("terms", []):
        coeff = GaussianRational(Fraction(t["re"]), Fraction(t["im"]))
        key = (tuple(t["alpha"]), tuple(t["beta"]))
        terms[key] = terms.get(key, GaussianRational(0)) + coeff
    return PQPolynomial(int(data["m"]), int(data["p"]), int(data["q"]), terms)


def tuple_to_dict(t: MapTuple) -> dict:
    return {
        "m": t.m, "n": t.n, "p": t.p, "q": t.q,
        "components": [poly_to_dict(c) for c in t.components],
        "boundary": [poly_to_dict(b) for b in t.boundary],
    }


def tuple_from_dict(data: dict) -> MapTuple:
    comps = [poly_from_dict(c) for c in data["components"]]
    boundary = [poly_from_dict(b) for b in data["boundary"]] if "boundary" in data else None
    return MapTuple(int(data["m"]), int(data["n"]), int(data["p"]), int(data["q"]),
                    comps, boundary)


def poly_to_json(poly: PQPolynomial) -> str:
    return json.dumps(poly_to_dict(poly), sort_keys=True)


def poly_from_json(text: str) -> PQPolynomial:
    return poly_from_dict(json.loads(text))


def tuple_to_json(t: MapTuple) -> str:
    return json.dumps(tuple_to_dict(t), sort_keys=True)


def tuple_from_json(text: str) -> MapTuple:
    return tuple_from_dict(json.loads(text))
