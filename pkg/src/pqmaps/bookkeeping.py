"""Closed-form invariants of the spaces of boundary-constrained (p,q)-maps.

Everything here is arithmetic in the parameters (m, n, p, q, r): dimensions
of the constrained coefficient spaces, the stable range of the stabilization
maps, the discriminant codimension, the dimension bound for the resolution
strata, the rank of the stratum bundle, the symbolic first-page entries of
the discriminant spectral sequence, and numeric evaluation of a page against
a table of configuration-space Betti numbers.

Cohomology ranks of compactified configuration spaces are never hardcoded:
they are consumed from a BettiTable (see resolution.fox_neuwirth_betti for
the shipped generator).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from importlib import resources


class RangeError(ValueError):
    """Parameter outside the validity range of a formula."""


@dataclass(frozen=True)
class ProblemParams:
    """Source/target projective dimensions and bidegree; d = p - q."""

    m: int
    n: int
    p: int
    q: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("source dimension m must be >= 1")
        if self.m > self.n:
            raise ValueError("need m <= n (otherwise only constant maps exist)")
        if not (self.p >= self.q >= 0):
            raise ValueError("need p >= q >= 0")

    @property
    def d(self) -> int:
        return self.p - self.q


@dataclass(frozen=True)
class DimensionReport:
    """Dimension bookkeeping for one parameter set.

    dim_monomial_space: monomials of bidegree <= (p,q) in the affine chart,
        equivalently all (p,q)-monomials in the m+1 homogeneous variables.
    dim_component: complex dimension of the affine space of (p,q)-polynomials
        with a fixed restriction to the hyperplane z_m = 0.
    dim_total: the same over all n+1 components.
    """

    dim_monomial_space: int
    dim_component: int
    dim_total: int

    def as_dict(self) -> dict:
        return {
            "dim_monomial_space": self.dim_monomial_space,
            "dim_component": self.dim_component,
            "dim_total": self.dim_total,
        }


def dimension_report(params: ProblemParams) -> DimensionReport:
    from .polynomials import monomial_count

    m, n, p, q = params.m, params.n, params.p, params.q
    full = monomial_count(m, p, q)
    # monomials not involving z_m (both exponents zero at the last slot) are
    # pinned by the hyperplane restriction; the rest are free coefficients
    if m >= 2:
        pinned = monomial_count(m - 1, p, q)
    else:
        pinned = 1  # one variable left: the single monomial z_0^p conj(z_0)^q
    dim_component = full - pinned
    return DimensionReport(full, dim_component, (n + 1) * dim_component)


def total_dim(params: ProblemParams) -> int:
    return dimension_report(params).dim_total


def stable_range(m: int, n: int, d: int) -> int:
    """Dimension below which stabilization induces homology isomorphisms."""
    if m > n:
        raise ValueError("need m <= n")
    if d < 0:
        raise ValueError("degree must be >= 0")
    return (2 * n - 2 * m + 1) * ((d + 1) // 2 + 1)


def discriminant_codim(m: int, n: int) -> tuple[int, bool]:
    """Complex codimension of the discriminant, and simple-connectivity flag.

    Codimension n - m + 1; the complement is simply-connected when m < n.
    """
    if m > n:
        raise ValueError("need m <= n")
    return (n - m + 1, m < n)


def dim_bound(params: ProblemParams, r: int) -> int:
    """Real dimension bound for the r-th open stratum of the resolution:

        2*N - 2*r*(n - m + 1) + r - 1,   N = dim_total.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    N = total_dim(params)
    return 2 * N - 2 * r * (params.n - params.m + 1) + r - 1


def segal_case_flag(m: int, q: int) -> bool:
    """True in the one-variable holomorphic case m = 1, q = 0.

    There a nonzero degree-p polynomial in one variable has at most p roots,
    so the resolution is automatically non-degenerate and the bundle/page
    formulas are valid for r <= p instead of r <= floor((p+1)/2).
    """
    return m == 1 and q == 0


def validity_rmax(m: int, p: int, q: int) -> int:
    """Largest r for which the stratum bundle description is guaranteed."""
    return p if segal_case_flag(m, q) else (p + 1) // 2


def bundle_rank(params: ProblemParams, r: int) -> int:
    """Rank of the real vector bundle over the configuration space whose
    total space is the r-th open stratum: 2*N - (2n+1)*r - 1.

    Valid for 1 <= r <= validity_rmax; the identity
    bundle_rank + 2*m*r == dim_bound holds throughout.
    """
    rmax = validity_rmax(params.m, params.p, params.q)
    if not 1 <= r <= rmax:
        raise RangeError(
            f"r={r} outside the validity range [1, {rmax}] for these parameters")
    N = total_dim(params)
    return 2 * N - (2 * params.n + 1) * r - 1


# ---------------------------------------------------------------------------
# symbolic first-page entries


KIND_CONFIG = "compactified-configuration-cohomology"
KIND_RELATIVE = "relative-resolution-cohomology"
KIND_ZERO = "zero"


@dataclass(frozen=True)
class SymbolicGroup:
    """A cohomology group named but not evaluated.

    kind=KIND_CONFIG: reduced H^degree of the one-point compactification of
    the configuration space of r points in C^m (params has r and m).
    kind=KIND_RELATIVE: H^degree of a filtration quotient of the resolved
    discriminant (params has r, p, q).  kind=KIND_ZERO: the zero group.
    """

    kind: str
    degree: int = 0
    params: tuple = ()

    def is_zero(self) -> bool:
        return self.kind == KIND_ZERO


ZERO_GROUP = SymbolicGroup(KIND_ZERO)


def e1_entry_stable(m: int, n: int, r: int, s: int) -> SymbolicGroup:
    """Stable first-page entry at (-r, s): reduced H^{2(n+1)r - s} of the
    compactified configuration space of r points in C^m.

    Independent of p and q.  Zero outside 0 <= degree <= 2mr, which encodes
    exactly the sector s >= 2(n-m+1)r, s <= 2(n+1)r.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    k = 2 * (n + 1) * r - s
    if k < 0 or k > 2 * m * r:
        return ZERO_GROUP
    return SymbolicGroup(KIND_CONFIG, k, (r, m))


def e1_entry_general(params: ProblemParams, r: int, s: int) -> SymbolicGroup:
    """First-page entry at (-r, s) for the resolution filtration:
    H^{2N + r - s - 1} of the r-th relative pair.  Contributes to reduced
    homology of the map space in degree s - r.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if s < 0:
        raise ValueError("s must be >= 0")
    if s < 2 * (params.n - params.m + 1) * r:
        # below the sector the stratum dimension bound forces vanishing
        return ZERO_GROUP
    N = total_dim(params)
    return SymbolicGroup(KIND_RELATIVE, 2 * N + r - s - 1, (r, params.p, params.q))


def contribution_degree(r: int, s: int) -> int:
    """Total homology degree an entry at (-r, s) contributes to."""
    return s - r


def stable_region(m: int, n: int, p: int, r: int, s: int) -> bool:
    """Whether (-r, s) lies in the region stable for the last page:

        r <= floor((p+1)/2),
        2(n-m+1) r <= s <= (2n-2m+1)(floor((p+1)/2) + 1) + r.
    """
    half = (p + 1) // 2
    if r < 1 or r > half:
        return False
    lo = 2 * (n - m + 1) * r
    hi = (2 * n - 2 * m + 1) * (half + 1) + r
    return lo <= s <= hi


@dataclass
class E1Page:
    """Symbolic page: entries at (-r, s) for 1 <= r <= rmax, 0 <= s <= smax.

    Entries in the strip r <= stable_rmax carry configuration-space
    descriptors (independent of p, q); beyond the strip they stay as
    relative-cohomology descriptors.
    """

    params: ProblemParams
    rmax: int
    smax: int
    entries: dict = field(default_factory=dict)
    stable_rmax: int = 0

    @property
    def sector(self) -> str:
        c = 2 * (self.params.n - self.params.m + 1)
        return f"nonzero entries need r >= 1 and s >= {c}*r"


def build_e1_page(params: ProblemParams, rmax: int, smax: int) -> E1Page:
    stable_rmax = validity_rmax(params.m, params.p, params.q)
    page = E1Page(params, rmax, smax, {}, stable_rmax)
    for r in range(1, rmax + 1):
        for s in range(0, smax + 1):
            if r <= stable_rmax:
                g = e1_entry_stable(params.m, params.n, r, s)
            else:
                g = e1_entry_general(params, r, s)
            if not g.is_zero():
                page.entries[(-r, s)] = g
    return page


# ---------------------------------------------------------------------------
# Betti tables and numeric page evaluation


@dataclass
class BettiTable:
    """Ranks of reduced cohomology of compactified configuration spaces.

    ranks maps (r, degree) -> rank over the stated coefficient field; r
    values present in `covered` are asserted complete (absent degrees have
    rank zero for covered r).  Ranks are input data for numeric evaluation,
    not something this module asserts.
    """

    field_name: str
    ranks: dict
    covered: set

    def rank(self, r: int, degree: int):
        if r not in self.covered:
            return None
        return self.ranks.get((r, degree), 0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["r", "degree", "rank", "field"])
        for r in sorted(self.covered):
            degrees = sorted(d for (rr, d) in self.ranks if rr == r)
            if not degrees:
                w.writerow([r, 0, 0, self.field_name])
            for d in degrees:
                w.writerow([r, d, self.ranks[(r, d)], self.field_name])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "BettiTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty Betti table")
        field_name = rows[0]["field"]
        ranks = {}
        covered = set()
        for row in rows:
            if row["field"] != field_name:
                raise ValueError("mixed coefficient fields in one table")
            r = int(row["r"])
            covered.add(r)
            rank = int(row["rank"])
            if rank:
                ranks[(r, int(row["degree"]))] = rank
        return cls(field_name, ranks, covered)

    @classmethod
    def empty(cls, field_name: str = "q") -> "BettiTable":
        return cls(field_name, {}, set())


def load_shipped_table() -> BettiTable:
    """The packaged rational table for configurations in the plane, r <= 4.

    Generated by resolution.make_betti_table (see the shipped demo script
    and the `resolve betti-table` subcommand to re-derive it).
    """
    text = resources.files("pqmaps").joinpath("data/betti_c_r_plane_q.csv").read_text()
    return BettiTable.from_csv(text)


@dataclass
class PageEvaluation:
    """Numeric instantiation of the stable strip of a symbolic page."""

    numeric: dict          # (-r, s) -> rank, for evaluated nonzero entries
    histogram: dict        # contribution degree (s - r) -> total rank
    uncovered: list        # [(-r, s), ...] entries the table does not cover
    skipped_unstable: int  # count of entries left symbolic (beyond the strip)


def evaluate_page(page: E1Page, table: BettiTable) -> PageEvaluation:
    """Replace stable entries by table ranks; histogram contribution degrees.

    Entries whose r the table does not cover are reported as uncovered,
    never silently zero.
    """
    numeric = {}
    histogram = {}
    uncovered = []
    skipped = 0
    for (neg_r, s), group in sorted(page.entries.items()):
        if group.kind != KIND_CONFIG:
            skipped += 1
            continue
        r = -neg_r
        rank = table.rank(r, group.degree)
        if rank is None:
            uncovered.append((neg_r, s))
            continue
        if rank:
            numeric[(neg_r, s)] = rank
            deg = contribution_degree(r, s)
            histogram[deg] = histogram.get(deg, 0) + rank
    return PageEvaluation(numeric, histogram, uncovered, skipped)
