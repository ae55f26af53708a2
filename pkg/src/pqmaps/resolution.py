"""Simplicial resolutions of finite-to-one simplicial surjections.

Given a surjection h: X -> Y of finite simplicial complexes that is
finite-to-one on realizations, the resolved space replaces the fiber over
an interior point of a target simplex by the simplex spanned by the
(embedded) fiber points.  Once an embedding in general position is
certified, the resolved space is determined by combinatorics alone: it is
the CW complex with one cell per pair

    (sigma, S),   sigma a simplex of Y,  S a nonempty set of simplices of X
                  mapping isomorphically onto sigma,

of dimension dim(sigma) + |S| - 1 and filtration level |S|.  The cellular
boundary is the product rule: facets of sigma transport S by restriction
(contributing zero when two members of S collapse to a common face, which
is exactly how the resolution glues), and facets of the fiber simplex drop
one member of S.  Level-1 cells reproduce X; the filtration by |S| is the
skeletal filtration of the fibers.

The module also provides plain simplicial homology over a field, embedding
construction/certification on a moment curve, a corpus generator for
randomized checks, and the cell complex computing the (reduced) cohomology
of one-point compactified configuration spaces of the plane, which feeds
the Betti tables consumed by the bookkeeping module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import linalg
from .bookkeeping import BettiTable
from .linalg import QQ, field_from_name
from .spectral import FilteredChainComplex, spectral_sequence


class ResolutionError(ValueError):
    pass


def _coerce_field(f):
    if isinstance(f, str):
        return field_from_name(f)
    return f


# ---------------------------------------------------------------------------
# simplicial complexes


class SimplicialComplexData:
    """A finite abstract simplicial complex given by its maximal simplices."""

    def __init__(self, n_vertices: int, maximal):
        self.n_vertices = int(n_vertices)
        cleaned = set()
        for s in maximal:
            t = tuple(sorted(set(int(v) for v in s)))
            if not t:
                raise ValueError("empty simplex")
            if t[0] < 0 or t[-1] >= self.n_vertices:
                raise ValueError(f"vertex out of range in simplex {t}")
            cleaned.add(t)
        # drop non-maximal duplicates for a canonical description
        self.maximal = tuple(sorted(
            s for s in cleaned
            if not any(set(s) < set(t) for t in cleaned)))
        if not self.maximal:
            raise ValueError("complex needs at least one simplex")
        self._faces = None

    def simplices(self) -> dict:
        """All faces, keyed by dimension, each list sorted."""
        if self._faces is None:
            seen = set()
            for s in self.maximal:
                for k in range(1, len(s) + 1):
                    for f in itertools.combinations(s, k):
                        seen.add(f)
            faces = {}
            for f in seen:
                faces.setdefault(len(f) - 1, []).append(f)
            for k in faces:
                faces[k].sort()
            self._faces = faces
        return self._faces

    def all_simplices(self):
        faces = self.simplices()
        out = []
        for k in sorted(faces):
            out.extend(faces[k])
        return out

    def simplex_count(self) -> int:
        return len(self.all_simplices())

    def dim(self) -> int:
        return max(self.simplices())

    def chain_complex(self) -> "ChainComplex":
        faces = self.simplices()
        index = {k: {s: i for i, s in enumerate(faces[k])} for k in faces}
        dims = [len(faces.get(k, [])) for k in range(self.dim() + 1)]
        boundaries = {}
        for k in range(1, self.dim() + 1):
            mat = [[0] * dims[k] for _ in range(dims[k - 1])]
            for j, s in enumerate(faces[k]):
                for i, v in enumerate(s):
                    face = s[:i] + s[i + 1:]
                    mat[index[k - 1][face]][j] = -1 if i % 2 else 1
            boundaries[k] = mat
        return ChainComplex(dims, boundaries,
                            labels={k: list(faces[k]) for k in faces})

    def to_dict(self) -> dict:
        return {"vertices": self.n_vertices,
                "simplices": [list(s) for s in self.maximal]}

    @classmethod
    def from_dict(cls, data: dict) -> "SimplicialComplexData":
        return cls(data["vertices"], data["simplices"])


@dataclass
class ChainComplex:
    """Integer chain complex: boundaries[n] maps C_n -> C_{n-1}."""

    dims: list
    boundaries: dict
    labels: dict | None = None

    def betti(self, field) -> list:
        field = _coerce_field(field)
        out = []
        for n in range(len(self.dims)):
            r_out = linalg.rank(self.boundaries[n], field) \
                if n in self.boundaries and self.dims[n] else 0
            r_in = linalg.rank(self.boundaries[n + 1], field) \
                if (n + 1) in self.boundaries and self.dims[n] else 0
            out.append(self.dims[n] - r_out - r_in)
        return out

    def check_boundary_squared(self) -> bool:
        for n in self.boundaries:
            if (n + 1) not in self.boundaries:
                continue
            a = self.boundaries[n]
            b = self.boundaries[n + 1]
            if not a or not b or not b[0]:
                continue
            for j in range(len(b[0])):
                col = {i: b[i][j] for i in range(len(b)) if b[i][j]}
                acc = {}
                for i, c in col.items():
                    for i2 in range(len(a)):
                        if a[i2][i]:
                            acc[i2] = acc.get(i2, 0) + c * a[i2][i]
                if any(v != 0 for v in acc.values()):
                    return False
        return True


def homology(obj, field="q") -> list:
    """Betti numbers over a field of a complex, chain complex or resolution."""
    if isinstance(obj, SimplicialComplexData):
        return obj.chain_complex().betti(field)
    if isinstance(obj, ChainComplex):
        return obj.betti(field)
    if isinstance(obj, ResolutionData):
        return obj.filtered_complex().betti(_coerce_field(field))
    if isinstance(obj, FilteredChainComplex):
        return obj.betti(_coerce_field(field))
    raise TypeError(f"cannot compute homology of {type(obj).__name__}")


# ---------------------------------------------------------------------------
# simplicial surjections


class SimplicialSurjection:
    """A simplicial map source -> target, surjective on simplices.

    Finite-to-one on realizations means no source simplex collapses: its
    vertices have pairwise distinct images.  Maps with collapses are only
    accepted with non_finite_ok=True (and then only the depth-1 truncation
    of the resolution exists as a finite complex).
    """

    def __init__(self, source: SimplicialComplexData, target: SimplicialComplexData,
                 vertex_map, non_finite_ok: bool = False):
        self.source = source
        self.target = target
        self.vertex_map = tuple(int(v) for v in vertex_map)
        if len(self.vertex_map) != source.n_vertices:
            raise ValueError("vertex_map must assign every source vertex")
        if any(v < 0 or v >= target.n_vertices for v in self.vertex_map):
            raise ValueError("vertex_map value out of range")
        target_faces = set(target.all_simplices())
        self._finite = True
        for s in source.maximal:
            image = tuple(sorted(set(self.vertex_map[v] for v in s)))
            if image not in target_faces:
                raise ValueError(f"image of {s} is not a simplex of the target")
            if len(image) != len(s):
                self._finite = False
        if not self._finite and not non_finite_ok:
            raise ValueError("map is not finite-to-one "
                             "(pass non_finite_ok=True for the depth-1 truncation)")
        if set(self.vertex_map) != set(range(target.n_vertices)):
            raise ValueError("map is not surjective on vertices")
        images = {self.image_simplex(s) for s in source.all_simplices()}
        missing = [s for s in target.maximal if s not in images]
        if missing:
            raise ValueError(f"map is not surjective on simplices: {missing}")
        self._fibers = None

    def image_simplex(self, simplex) -> tuple:
        return tuple(sorted(set(self.vertex_map[v] for v in simplex)))

    def is_finite_to_one(self) -> bool:
        return self._finite

    def fibers(self) -> dict:
        """target simplex -> sorted list of source simplices mapping onto it
        isomorphically."""
        if self._fibers is None:
            fib = {s: [] for s in self.target.all_simplices()}
            for tau in self.source.all_simplices():
                image = self.image_simplex(tau)
                if len(image) == len(tau):
                    fib[image].append(tau)
            self._fibers = {s: sorted(v) for s, v in fib.items()}
        return self._fibers

    def max_fiber(self) -> int:
        return max(len(v) for v in self.fibers().values())

    def to_dict(self) -> dict:
        return {"source": self.source.to_dict(), "target": self.target.to_dict(),
                "vertex_map": list(self.vertex_map)}

    @classmethod
    def from_dict(cls, data: dict, non_finite_ok: bool = False) -> "SimplicialSurjection":
        source = SimplicialComplexData.from_dict(data["source"])
        vm = data["vertex_map"]
        if "target" in data:
            target = SimplicialComplexData.from_dict(data["target"])
        else:
            # derive the target as the image complex
            n = max(vm) + 1
            maximal = [sorted(set(vm[v] for v in s)) for s in source.maximal]
            target = SimplicialComplexData(n, maximal)
        return cls(source, target, vm, non_finite_ok=non_finite_ok)


# ---------------------------------------------------------------------------
# embeddings on a moment curve


class EmbeddingError(ResolutionError):
    pass


@dataclass
class EmbeddingData:
    """Rational coordinates for the source vertices, with the general-position
    depth k they are certified for (any min(2k, V) images affinely
    independent, hence all fiber subsets of size <= 2k span simplices)."""

    k: int
    dimension: int
    coords: dict
    certified: bool = False

    def covers(self, complex_: SimplicialComplexData) -> bool:
        return all(v in self.coords for v in range(complex_.n_vertices))


def _affinely_independent(points) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    return linalg.rank(rows, QQ) == len(points) - 1


def certify_embedding(emb: EmbeddingData, rng: random.Random | None = None,
                      exhaustive_limit: int = 1500, samples: int = 300) -> bool:
    """Exact rank checks of the 2k-subset condition (all subsets, or a seeded
    sample when there are too many)."""
    verts = sorted(emb.coords)
    size = min(2 * emb.k, len(verts))
    if size <= 1:
        return True
    total = comb(len(verts), size)
    if total <= exhaustive_limit:
        subsets = itertools.combinations(verts, size)
    else:
        rng = rng or random.Random(0)
        subsets = (tuple(sorted(rng.sample(verts, size))) for _ in range(samples))
    for sub in subsets:
        if not _affinely_independent([emb.coords[v] for v in sub]):
            return False
    return True


def moment_embedding(source: SimplicialComplexData, k: int, seed: int = 0,
                     retries: int = 5) -> EmbeddingData:
    """Embed the source vertices on the moment curve t -> (t, t^2, ...,
    t^(2k-1)) at distinct seeded rational parameters, then certify.

    Distinct parameters make any 2k points affinely independent (their
    Vandermonde matrix is nonsingular), so certification normally succeeds
    on the first draw; failure after the retry budget raises.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = random.Random(seed)
    dim = 2 * k - 1
    for _ in range(retries):
        params = set()
        while len(params) < source.n_vertices:
            params.add(Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 1000)))
        ordered = sorted(params)
        rng.shuffle(ordered)
        coords = {v: tuple(t ** e for e in range(1, dim + 1))
                  for v, t in zip(range(source.n_vertices), ordered)}
        emb = EmbeddingData(k, dim, coords)
        if certify_embedding(emb, rng):
            emb.certified = True
            return emb
    raise EmbeddingError(f"could not certify a {2 * k}-general-position embedding")


# ---------------------------------------------------------------------------
# the resolution complex


def _perm_parity(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class ResolutionData:
    """The resolved complex of a finite-to-one simplicial surjection.

    Cells are pairs (sigma, S) as described in the module docstring.  The
    skeletal filtration is by |S|; level-1 cells form a copy of the source
    complex, and the projection to the target forgets S.
    """

    def __init__(self, smap: SimplicialSurjection, depth: int | None,
                 embedding: EmbeddingData | None, mode: str):
        self.map = smap
        self.mode = mode
        self.embedding = embedding
        self.depth = depth
        self.cells = []          # (sigma, S) pairs, S a tuple of source simplices
        self._index = {}
        self._by_degree = {}
        fibers = smap.fibers()
        for sigma in sorted(fibers):
            fib = fibers[sigma]
            cap = len(fib) if depth is None else min(depth, len(fib))
            for size in range(1, cap + 1):
                for S in itertools.combinations(fib, size):
                    self._add_cell(sigma, S)
        self._filtered = None

    def _add_cell(self, sigma, S):
        key = (sigma, S)
        self._index[key] = len(self.cells)
        self.cells.append(key)
        self._by_degree.setdefault(self.cell_degree(key), []).append(key)

    @staticmethod
    def cell_degree(cell) -> int:
        sigma, S = cell
        return (len(sigma) - 1) + (len(S) - 1)

    @staticmethod
    def cell_level(cell) -> int:
        return len(cell[1])

    def fiber_vertex_count(self, sigma) -> int:
        """Vertex count of the fiber polytope over the barycenter of sigma."""
        return len(self.map.fibers()[sigma])

    def cell_boundary(self, cell):
        """Cellular boundary as a list of (coefficient, cell)."""
        sigma, S = cell
        vm = self.map.vertex_map
        out = []
        # facets of the base simplex, transporting the fiber set
        if len(sigma) >= 2:
            for j in range(len(sigma)):
                dropped = sigma[j]
                sigma2 = sigma[:j] + sigma[j + 1:]
                restricted = []
                for tau in S:
                    tau2 = tuple(v for v in tau if vm[v] != dropped)
                    restricted.append(tau2)
                if len(set(restricted)) < len(S):
                    continue  # fiber members merge: degenerate face, no incidence
                order = sorted(range(len(S)), key=lambda i: restricted[i])
                perm = [0] * len(S)
                for pos, i in enumerate(order):
                    perm[i] = pos
                sign = (-1) ** j * _perm_parity(perm)
                out.append((sign, (sigma2, tuple(sorted(restricted)))))
        # facets of the fiber simplex
        if len(S) >= 2:
            base_sign = (-1) ** (len(sigma) - 1)
            for i in range(len(S)):
                out.append((base_sign * (-1) ** i, (sigma, S[:i] + S[i + 1:])))
        return out

    def filtered_complex(self) -> FilteredChainComplex:
        if self._filtered is None:
            degrees = sorted(self._by_degree)
            index_in_degree = {}
            for n in degrees:
                for i, cell in enumerate(self._by_degree[n]):
                    index_in_degree[cell] = i
            levels = {n: [self.cell_level(c) for c in self._by_degree[n]]
                      for n in degrees}
            boundaries = {}
            for n in degrees:
                if n - 1 not in self._by_degree:
                    continue
                rows = len(self._by_degree[n - 1])
                cols = len(self._by_degree[n])
                mat = [[0] * cols for _ in range(rows)]
                for j, cell in enumerate(self._by_degree[n]):
                    for coeff, other in self.cell_boundary(cell):
                        if other in index_in_degree:
                            mat[index_in_degree[other]][j] += coeff
                boundaries[n] = mat
            labels = {n: list(self._by_degree[n]) for n in degrees}
            self._filtered = FilteredChainComplex(levels, boundaries, labels)
        return self._filtered

    def level_homology_table(self, field="q", max_level: int | None = None) -> dict:
        """Betti numbers of every filtration stage: {level: (b_0, b_1, ...)}."""
        fc = self.filtered_complex()
        top = max_level or fc.max_level
        return {k: tuple(fc.sub_levels(k).betti(field)) for k in range(1, top + 1)}

    def betti(self, field="q") -> list:
        return self.filtered_complex().betti(field)

    def to_dict(self) -> dict:
        return {"map": self.map.to_dict(), "mode": self.mode, "depth": self.depth,
                "cells": len(self.cells)}


def build_resolution(smap: SimplicialSurjection, mode: str = "nondegenerate",
                     depth: int | None = None, seed: int = 0,
                     embedding: EmbeddingData | None = None) -> ResolutionData:
    """Build the resolved complex of a simplicial surjection.

    mode="nondegenerate" draws and certifies a moment-curve embedding deep
    enough for the largest fiber; mode="embedded" uses the supplied
    embedding (certifying it if needed).  depth truncates the skeletal
    filtration.  Maps that are not finite-to-one have no finite model beyond
    depth 1, where the truncation is the source complex itself.
    """
    if not smap.is_finite_to_one():
        if depth != 1:
            raise ResolutionError(
                "map is not finite-to-one: fibers have positive dimension, and "
                "only the depth-1 truncation (the source complex) is a finite "
                "complex; pass depth=1")
        res = ResolutionData.__new__(ResolutionData)
        res.map = smap
        res.mode = "truncated-depth-1"
        res.embedding = None
        res.depth = 1
        res.cells = []
        res._index = {}
        res._by_degree = {}
        res._filtered = None
        cc = smap.source.chain_complex()
        levels = {n: [1] * cc.dims[n] for n in range(len(cc.dims)) if cc.dims[n]}
        res._filtered = FilteredChainComplex(levels, cc.boundaries, cc.labels)
        for n, labs in (cc.labels or {}).items():
            res._by_degree[n] = [(smap.image_simplex(t), (t,)) for t in labs]
        return res

    if mode == "nondegenerate":
        k = (smap.max_fiber() + 1) // 2
        embedding = moment_embedding(smap.source, max(k, 1), seed=seed)
    elif mode == "embedded":
        if embedding is None:
            raise ValueError("embedded mode needs EmbeddingData")
        if not embedding.covers(smap.source):
            raise ValueError("embedding does not cover the source vertices")
        if not embedding.certified:
            if not certify_embedding(embedding):
                raise EmbeddingError("supplied embedding failed certification")
            embedding.certified = True
        if 2 * embedding.k < min(smap.max_fiber(), depth or smap.max_fiber()):
            raise EmbeddingError(
                "embedding depth too small for the fibers at the requested depth")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return ResolutionData(smap, depth, embedding, mode)


def check_resolution_equivalence(res: ResolutionData, field="q") -> bool:
    """Homology-level check that resolving does not change the target:
    Betti numbers of the resolved complex match the target's."""
    left = res.betti(field)
    right = res.map.target.chain_complex().betti(field)
    length = max(len(left), len(right))
    left = left + [0] * (length - len(left))
    right = right + [0] * (length - len(right))
    return left == right


def compare_embeddings(smap: SimplicialSurjection, seed_a: int, seed_b: int,
                       field="q") -> bool:
    """Equality of the filtration-level homology tables of the resolutions
    built from two independently drawn certified embeddings (the
    homology-level shadow of embedding independence)."""
    res_a = build_resolution(smap, "nondegenerate", seed=seed_a)
    res_b = build_resolution(smap, "nondegenerate", seed=seed_b)
    return res_a.level_homology_table(field) == res_b.level_homology_table(field)


def induced_cell_map(res_top: ResolutionData, res_bottom: ResolutionData,
                     source_vertex_map, target_vertex_map) -> dict:
    """Cell map of resolutions induced by a commuting square of surjections.

    source_vertex_map sends vertices of res_top's source to res_bottom's
    source, target_vertex_map likewise on targets; the square must commute.
    Returns {cell -> cell}; image levels never exceed source levels.
    """
    h_top = res_top.map
    h_bot = res_bottom.map
    for v in range(h_top.source.n_vertices):
        if target_vertex_map[h_top.vertex_map[v]] != h_bot.vertex_map[source_vertex_map[v]]:
            raise ValueError("square does not commute")
    mapping = {}
    for cell in res_top.cells:
        sigma, S = cell
        sigma2 = tuple(sorted(set(target_vertex_map[v] for v in sigma)))
        images = {tuple(sorted(set(source_vertex_map[v] for v in tau))) for tau in S}
        image_cell = (sigma2, tuple(sorted(images)))
        if image_cell not in res_bottom._index:
            raise ValueError(f"image of cell {cell} is not a cell downstairs")
        mapping[cell] = image_cell
    return mapping


# ---------------------------------------------------------------------------
# corpus generation


def random_target(rng: random.Random) -> SimplicialComplexData:
    nv = rng.randint(4, 8)
    maximal = []
    for _ in range(rng.randint(3, 7)):
        size = rng.randint(2, min(4, nv))
        maximal.append(tuple(sorted(rng.sample(range(nv), size))))
    used = {v for s in maximal for v in s}
    maximal.extend((v,) for v in range(nv) if v not in used)
    return SimplicialComplexData(nv, maximal)


def random_surjection(rng: random.Random, max_total: int = 200,
                      max_copies: int = 3, min_total: int = 0) -> SimplicialSurjection:
    """A random finite-to-one surjection built from glued covers of a random
    target; total source simplex count within [min_total, max_total]."""
    while True:
        target = random_target(rng)
        copies = rng.randint(2, max_copies)
        labels = {}
        vertex_map = []
        for c in range(copies):
            for v in range(target.n_vertices):
                if c > 0 and rng.random() < 0.35:
                    labels[(c, v)] = labels[(rng.randrange(c), v)]
                else:
                    labels[(c, v)] = len(vertex_map)
                    vertex_map.append(v)
        maximal = set()
        for s in target.maximal:
            for c in range(copies):
                maximal.add(tuple(sorted(labels[(c, v)] for v in s)))
        source = SimplicialComplexData(len(vertex_map), maximal)
        if not min_total <= source.simplex_count() <= max_total:
            continue
        try:
            return SimplicialSurjection(source, target, vertex_map)
        except ValueError:
            continue


# ---------------------------------------------------------------------------
# configuration spaces of the plane


def signed_shuffle_count(a: int, b: int) -> int:
    """Sum of signs of all (a,b)-shuffles (the q = -1 binomial).

    Zero when a and b are both odd; otherwise C((a+b)//2, a//2).  Computed
    here by direct enumeration so the closed form never enters the chain
    complex; sizes are tiny.
    """
    total = 0
    for positions in itertools.combinations(range(a + b), a):
        pos_set = set(positions)
        complement = [i for i in range(a + b) if i not in pos_set]
        inversions = sum(1 for pa in positions for pb in complement if pa > pb)
        total += -1 if inversions % 2 else 1
    return total


def fox_neuwirth_complex(r: int) -> ChainComplex:
    """Cell complex computing reduced cohomology of the one-point
    compactification of the space of r distinct unordered points in the
    plane.

    Cells are indexed by compositions (a_1, ..., a_k) of r: configurations
    with k distinct x-coordinates carrying a_i points each, sorted by y in
    each column; such a cell has dimension r + k.  The boundary merges
    adjacent columns; its coefficient is the signed count of the ways the
    two sorted columns interleave, with the alternating sign of the merged
    column position.  All other degenerations (coordinate escapes and point
    collisions) land at the added point and contribute nothing in these
    dimensions.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    comps = {}
    for k in range(1, r + 1):
        comps[k] = [c for c in _compositions_positive(r, k)]
    # degree of a composition with k columns is r + k
    dims = [0] * (2 * r + 1)
    for k, cs in comps.items():
        dims[r + k] = len(cs)
    index = {k: {c: i for i, c in enumerate(cs)} for k, cs in comps.items()}
    boundaries = {}
    for k in range(2, r + 1):
        rows = len(comps[k - 1])
        cols = len(comps[k])
        mat = [[0] * cols for _ in range(rows)]
        for j, c in enumerate(comps[k]):
            for pos in range(k - 1):
                coeff = signed_shuffle_count(c[pos], c[pos + 1])
                if not coeff:
                    continue
                merged = c[:pos] + (c[pos] + c[pos + 1],) + c[pos + 2:]
                sign = -1 if pos % 2 else 1
                mat[index[k - 1][merged]][j] += sign * coeff
        boundaries[r + k] = mat
    labels = {r + k: list(cs) for k, cs in comps.items()}
    return ChainComplex(dims, boundaries, labels)


def _compositions_positive(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions_positive(total - first, parts - 1):
            yield (first,) + rest


def fox_neuwirth_betti(r: int, field="q", r_limit: int = 6) -> dict:
    """Reduced cohomology ranks {degree: rank} of the compactified
    configuration space of r points in the plane, over the field.

    Over a field, ranks of homology and cohomology of the finite cell
    complex agree degreewise, so the cell homology is returned directly.
    """
    if r > r_limit:
        raise ValueError(f"r={r} above the supported bound {r_limit}")
    cc = fox_neuwirth_complex(r)
    betti = cc.betti(field)
    return {deg: b for deg, b in enumerate(betti) if b}


def make_betti_table(rmax: int = 4, field="q") -> BettiTable:
    field_obj = _coerce_field(field)
    ranks = {}
    for r in range(1, rmax + 1):
        for deg, b in fox_neuwirth_betti(r, field_obj).items():
            ranks[(r, deg)] = b
    return BettiTable(field_obj.name, ranks, set(range(1, rmax + 1)))


def plane_pair_configuration_model() -> SimplicialComplexData:
    """A triangulated homotopy model of the space of unordered pairs of
    distinct points in the plane.

    Sending a pair to (midpoint, +-difference) identifies the space with
    C x (C \\ 0)/(z ~ -z), and squaring the difference with C x (C \\ 0),
    which deformation retracts onto an annulus.  This 6-vertex annulus is
    the shipped cross-check model: its Betti numbers (1, 1, 0) match, via
    Poincare duality in the open 4-manifold, the compactified-configuration
    ranks in degrees 4 - 0 and 4 - 1.
    """
    return SimplicialComplexData(6, [
        (0, 1, 3), (1, 3, 4), (1, 2, 4), (2, 4, 5), (0, 2, 5), (0, 3, 5),
    ])
