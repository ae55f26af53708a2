import random

import pytest

from pqmaps.resolution import (SimplicialComplexData, SimplicialSurjection,
                               build_resolution, random_surjection)
from pqmaps.spectral import FilteredChainComplex, spectral_sequence


def two_point_complex():
    """The resolved two-points-over-a-point complex: two level-1 vertices
    joined by one level-2 edge."""
    levels = {0: [1, 1], 1: [2]}
    boundaries = {1: [[-1], [1]]}
    return FilteredChainComplex(levels, boundaries)


def test_micro_example_pages():
    fc = two_point_complex()
    pages = spectral_sequence(fc, "q")
    assert pages.pages[1] == {(1, 0): 2, (2, 1): 1}
    assert pages.diff_ranks[1] == {(2, 1): 1}
    assert pages.e_infinity == {(1, 0): 1}
    assert pages.total_betti == [1, 0]
    assert pages.converged


def test_trivial_filtration_collapses():
    # one filtration level: first page is the homology, no differentials
    circle = SimplicialComplexData(3, [(0, 1), (1, 2), (0, 2)]).chain_complex()
    levels = {n: [1] * circle.dims[n] for n in range(len(circle.dims))}
    fc = FilteredChainComplex(levels, circle.boundaries)
    pages = spectral_sequence(fc, "q")
    assert pages.pages[1] == {(1, 0): 1, (1, 1): 1}
    assert pages.e_infinity == pages.pages[1]
    assert all(not d for d in pages.diff_ranks.values())


def test_direct_sum_additivity():
    a = two_point_complex()
    circle = SimplicialComplexData(3, [(0, 1), (1, 2), (0, 2)]).chain_complex()
    levels = {n: [1] * circle.dims[n] for n in range(len(circle.dims))}
    b = FilteredChainComplex(levels, circle.boundaries)
    s = FilteredChainComplex.direct_sum(a, b)
    pa = spectral_sequence(a, "q")
    pb = spectral_sequence(b, "q")
    ps = spectral_sequence(s, "q")
    for r in ps.pages:
        combined = {}
        for src in (pa.page(r), pb.page(r)):
            for key, rank in src.items():
                combined[key] = combined.get(key, 0) + rank
        assert ps.page(r) == combined


def test_filtration_violation_rejected():
    levels = {0: [2], 1: [1]}  # edge at level 1 with boundary at level 2
    boundaries = {1: [[1]]}
    with pytest.raises(ValueError):
        FilteredChainComplex(levels, boundaries)


def test_boundary_squared_rejected():
    levels = {0: [1], 1: [1], 2: [1]}
    boundaries = {1: [[1]], 2: [[1]]}  # d(e2) = e1, d(e1) = e0: d^2 != 0
    with pytest.raises(ValueError):
        FilteredChainComplex(levels, boundaries)


def test_convergence_certificate_on_corpus():
    rng = random.Random(8)
    for i in range(6):
        smap = random_surjection(rng, max_total=80)
        fc = build_resolution(smap, seed=i).filtered_complex()
        for field in ("q", "f2"):
            pages = spectral_sequence(fc, field)
            assert pages.converged
            for n in range(len(pages.total_betti)):
                total = sum(rank for (p, nn), rank in pages.e_infinity.items()
                            if nn == n)
                assert total == pages.total_betti[n]


def test_page_rank_accounting():
    # consecutive pages differ by the ranks of incoming and outgoing arrows
    rng = random.Random(12)
    smap = random_surjection(rng, max_total=60)
    fc = build_resolution(smap, seed=0).filtered_complex()
    pages = spectral_sequence(fc, "f2")
    for r in range(1, pages.r_stab):
        for key, rank in pages.pages[r].items():
            p, n = key
            out_rank = pages.diff_ranks[r].get((p, n), 0)
            in_rank = pages.diff_ranks[r].get((p + r, n + 1), 0)
            nxt = pages.pages[r + 1].get(key, 0)
            assert nxt == rank - out_rank - in_rank


def test_determinism():
    rng = random.Random(4)
    smap = random_surjection(rng, max_total=60)
    fc = build_resolution(smap, seed=3).filtered_complex()
    p1 = spectral_sequence(fc, "f2")
    p2 = spectral_sequence(fc, "f2")
    assert p1.pages == p2.pages and p1.diff_ranks == p2.diff_ranks


def test_sub_levels():
    fc = two_point_complex()
    sub = fc.sub_levels(1)
    assert sub.dim(0) == 2 and sub.dim(1) == 0
    assert sub.betti("q") == [2]
