"""Spectral sequence of a chain complex with an increasing basis filtration.

The input is a field-coefficient chain complex whose basis elements carry
integer filtration levels that the boundary never raises.  Pages are
computed from approximate-cycle subspaces: with

    A^r(p, n) = { x in F_p C_n : dx in F_{p-r} C_{n-1} }

the page entry at filtration p and total degree n is

    E^r(p, n) = A^r(p, n) / ( A^{r-1}(p-1, n) + d A^{r-1}(p+r-1, n+1) ),

and all ranks (entries and differentials) reduce to exact ranks of stacked
basis matrices.  Pages stabilize once r exceeds the maximal level; the
convergence certificate checks that stable ranks per total degree sum to
the Betti numbers of the underlying complex.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .linalg import field_from_name


def _coerce_field(f):
    if isinstance(f, str):
        return field_from_name(f)
    return f


class FilteredChainComplex:
    """Chain groups with integer boundary matrices and per-basis levels.

    boundaries[n] maps C_n -> C_{n-1} (rows indexed by the degree n-1 basis,
    columns by the degree n basis).  levels[n][j] is the filtration level of
    the j-th basis element of C_n; levels start at 1 and F_0 = 0.
    """

    def __init__(self, levels: dict, boundaries: dict, labels: dict | None = None):
        self.levels = {n: list(ls) for n, ls in levels.items() if ls}
        self.boundaries = {n: [list(r) for r in mat] for n, mat in boundaries.items()
                           if mat and any(self.levels.get(k) for k in (n, n - 1))}
        self.labels = labels or {}
        self.degrees = sorted(self.levels)
        # sparse columns: _cols[n][j] = list of (row, coeff)
        self._cols = {}
        for n in self.degrees:
            mat = self.boundaries.get(n)
            cols = []
            dim_n = self.dim(n)
            dim_prev = self.dim(n - 1)
            if mat is None or dim_prev == 0:
                cols = [[] for _ in range(dim_n)]
            else:
                for j in range(dim_n):
                    cols.append([(i, mat[i][j]) for i in range(dim_prev) if mat[i][j]])
            self._cols[n] = cols
        self.validate()

    def dim(self, n: int) -> int:
        return len(self.levels.get(n, []))

    @property
    def max_level(self) -> int:
        return max((max(ls) for ls in self.levels.values()), default=0)

    def boundary(self, n: int):
        mat = self.boundaries.get(n)
        if mat is None:
            return [[0] * self.dim(n) for _ in range(self.dim(n - 1))]
        return mat

    def column(self, n: int, j: int):
        return self._cols.get(n, [[]] * (j + 1))[j]

    def validate(self):
        for n in self.degrees:
            dim_prev = self.dim(n - 1)
            mat = self.boundaries.get(n)
            if mat is not None and self.dim(n):
                if len(mat) != dim_prev or any(len(r) != self.dim(n) for r in mat):
                    raise ValueError(f"boundary matrix at degree {n} has wrong shape")
            for j in range(self.dim(n)):
                lvl = self.levels[n][j]
                for i, _ in self.column(n, j):
                    if self.levels[n - 1][i] > lvl:
                        raise ValueError(
                            f"boundary raises filtration at degree {n}, column {j}")
        # d o d = 0 over the integers implies it over every field
        for n in self.degrees:
            if not (self.dim(n) and self.dim(n - 1) and self.dim(n - 2)):
                continue
            for j in range(self.dim(n)):
                acc = {}
                for i, c in self.column(n, j):
                    for i2, c2 in self.column(n - 1, i):
                        acc[i2] = acc.get(i2, 0) + c * c2
                if any(v != 0 for v in acc.values()):
                    raise ValueError("boundary squared is nonzero")

    def betti(self, field) -> list:
        field = _coerce_field(field)
        top = max(self.degrees, default=-1)
        out = []
        for n in range(0, top + 1):
            dim_n = self.dim(n)
            r_in = linalg.rank(self.boundary(n + 1), field) \
                if self.dim(n + 1) and dim_n else 0
            r_out = linalg.rank(self.boundary(n), field) \
                if self.dim(n - 1) and dim_n else 0
            out.append(dim_n - r_in - r_out)
        return out

    def sub_levels(self, k: int) -> "FilteredChainComplex":
        """The subcomplex spanned by basis elements of level <= k."""
        keep = {n: [j for j, l in enumerate(ls) if l <= k]
                for n, ls in self.levels.items()}
        levels = {n: [self.levels[n][j] for j in js] for n, js in keep.items() if js}
        boundaries = {}
        for n in levels:
            rows = keep.get(n - 1, [])
            cols = keep[n]
            if not rows:
                continue
            mat = self.boundary(n)
            boundaries[n] = [[mat[i][j] for j in cols] for i in rows]
        return FilteredChainComplex(levels, boundaries)

    @staticmethod
    def direct_sum(a: "FilteredChainComplex", b: "FilteredChainComplex"):
        degrees = sorted(set(a.degrees) | set(b.degrees))
        levels = {}
        boundaries = {}
        for n in degrees:
            levels[n] = list(a.levels.get(n, [])) + list(b.levels.get(n, []))
            ra, ca = a.dim(n - 1), a.dim(n)
            rb, cb = b.dim(n - 1), b.dim(n)
            if not levels[n] or (ra + rb) == 0:
                continue
            mat = []
            for i in range(ra + rb):
                row = []
                for j in range(ca + cb):
                    if i < ra and j < ca:
                        row.append(a.boundary(n)[i][j])
                    elif i >= ra and j >= ca:
                        row.append(b.boundary(n)[i - ra][j - ca])
                    else:
                        row.append(0)
                mat.append(row)
            boundaries[n] = mat
        return FilteredChainComplex({n: ls for n, ls in levels.items() if ls}, boundaries)


@dataclass
class SpectralPages:
    """Computed pages: pages[r][(level, degree)] = rank, plus differentials,
    the stable page and its convergence certificate."""

    field_name: str
    pages: dict
    diff_ranks: dict
    e_infinity: dict
    total_betti: list
    r_stab: int
    converged: bool

    def page(self, r: int) -> dict:
        return self.pages[min(r, self.r_stab)]


def spectral_sequence(fc: FilteredChainComplex, field="q") -> SpectralPages:
    field = _coerce_field(field)
    L = fc.max_level
    top = max(fc.degrees, default=-1)
    degrees = list(range(0, top + 1))

    def f_indices(p, n):
        return [j for j, l in enumerate(fc.levels.get(n, [])) if l <= p]

    def unit_vectors(n, idxs):
        dim = fc.dim(n)
        out = []
        for j in idxs:
            v = [field.zero] * dim
            v[j] = field.one
            out.append(v)
        return out

    def apply_boundary(n, vec):
        rows = fc.dim(n - 1)
        out = [field.zero] * rows
        for j, x in enumerate(vec):
            if field.is_zero(x):
                continue
            for i, c in fc.column(n, j):
                out[i] = field.add(out[i], field.mul(field.coerce(c), x))
        return out

    a_cache = {}

    def a_basis(r, p, n):
        """Basis of A^r(p, n) = {x in F_p C_n : dx in F_{p-r}}, full coords."""
        if p <= 0 or fc.dim(n) == 0:
            return []
        p_eff = min(p, L)
        cut = p - r
        cut_eff = max(min(cut, L), 0)
        key = (p_eff, cut_eff, n)
        if key in a_cache:
            return a_cache[key]
        cols = f_indices(p_eff, n)
        rows = [i for i, l in enumerate(fc.levels.get(n - 1, [])) if l > cut_eff]
        if not rows or not cols:
            basis = unit_vectors(n, cols)
        else:
            row_pos = {i: k for k, i in enumerate(rows)}
            sub = [[field.zero] * len(cols) for _ in rows]
            for jj, j in enumerate(cols):
                for i, c in fc.column(n, j):
                    if i in row_pos:
                        sub[row_pos[i]][jj] = field.coerce(c)
            null = linalg.nullspace(sub, len(cols), field)
            basis = []
            for v in null:
                full = [field.zero] * fc.dim(n)
                for j, x in zip(cols, v):
                    full[j] = x
                basis.append(full)
        a_cache[key] = basis
        return basis

    def denominator(r, p, n):
        out = list(a_basis(r - 1, p - 1, n))
        for v in a_basis(r - 1, p + r - 1, n + 1):
            out.append(apply_boundary(n + 1, v))
        return out

    def space_rank(vectors):
        vectors = [v for v in vectors if any(not field.is_zero(x) for x in v)]
        if not vectors:
            return 0
        return linalg.rank(vectors, field)

    pages = {}
    diff_ranks = {}
    r_stab = L + 1
    for r in range(1, r_stab + 1):
        page = {}
        diffs = {}
        for n in degrees:
            for p in range(1, L + 1):
                num = a_basis(r, p, n)
                if not num:
                    continue
                den_rank = space_rank(denominator(r, p, n))
                entry = space_rank(num) - den_rank
                if entry:
                    page[(p, n)] = entry
                if fc.dim(n - 1) and p - r >= 1:
                    img = [apply_boundary(n, v) for v in num]
                    den_t = denominator(r, p - r, n - 1)
                    d_rank = space_rank(img + den_t) - space_rank(den_t)
                    if d_rank:
                        diffs[(p, n)] = d_rank
        pages[r] = page
        diff_ranks[r] = diffs

    e_inf = pages[r_stab]
    total = fc.betti(field)
    converged = True
    for n in degrees:
        if sum(rank for (p, nn), rank in e_inf.items() if nn == n) != total[n]:
            converged = False
    return SpectralPages(field.name, pages, diff_ranks, e_inf, total, r_stab, converged)
