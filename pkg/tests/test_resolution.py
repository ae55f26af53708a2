import random
from fractions import Fraction

import pytest

from pqmaps.resolution import (EmbeddingData, ResolutionError,
                               SimplicialComplexData, SimplicialSurjection,
                               build_resolution, certify_embedding,
                               check_resolution_equivalence, compare_embeddings,
                               homology, induced_cell_map, moment_embedding,
                               random_surjection)
from pqmaps.spectral import spectral_sequence

TRIANGLE = SimplicialComplexData(3, [(0, 1), (1, 2), (0, 2)])
HEXAGON = SimplicialComplexData(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])


def two_points_map():
    src = SimplicialComplexData(2, [(0,), (1,)])
    tgt = SimplicialComplexData(1, [(0,)])
    return SimplicialSurjection(src, tgt, [0, 0])


def double_cover():
    return SimplicialSurjection(HEXAGON, TRIANGLE, [0, 1, 2, 0, 1, 2])


def test_complex_faces_and_counts():
    c = SimplicialComplexData(4, [(0, 1, 2), (2, 3)])
    faces = c.simplices()
    assert len(faces[0]) == 4 and len(faces[1]) == 4 and len(faces[2]) == 1
    assert c.simplex_count() == 9
    assert c.dim() == 2


def test_homology_classics():
    s2 = SimplicialComplexData(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    assert homology(s2, "q") == [1, 0, 1]
    torus = SimplicialComplexData(7, [
        tuple(sorted((i % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7)
    ] + [tuple(sorted((i % 7, (i + 2) % 7, (i + 3) % 7))) for i in range(7)])
    assert homology(torus, "q") == [1, 2, 1]
    assert homology(torus, "f2") == [1, 2, 1]
    point = SimplicialComplexData(1, [(0,)])
    assert homology(point, "q") == [1]


def test_boundary_squared_zero():
    rng = random.Random(3)
    for i in range(6):
        smap = random_surjection(rng, max_total=80)
        res = build_resolution(smap, seed=i)
        # FilteredChainComplex.validate checks both d^2 = 0 and the filtration
        res.filtered_complex()
        assert res.filtered_complex().max_level == smap.max_fiber()


def test_surjection_validation():
    src = SimplicialComplexData(2, [(0,), (1,)])
    tgt = SimplicialComplexData(2, [(0,), (1,)])
    with pytest.raises(ValueError):  # vertex 1 of the target is not hit
        SimplicialSurjection(src, tgt, [0, 0])
    # image of an edge must be a simplex of the target
    src2 = SimplicialComplexData(2, [(0, 1)])
    tgt2 = SimplicialComplexData(2, [(0,), (1,)])
    with pytest.raises(ValueError):
        SimplicialSurjection(src2, tgt2, [0, 1])
    # collapse is rejected unless flagged
    src3 = SimplicialComplexData(2, [(0, 1)])
    tgt3 = SimplicialComplexData(1, [(0,)])
    with pytest.raises(ValueError):
        SimplicialSurjection(src3, tgt3, [0, 0])
    smap = SimplicialSurjection(src3, tgt3, [0, 0], non_finite_ok=True)
    assert not smap.is_finite_to_one()


def test_non_finite_depth_one_only():
    src = SimplicialComplexData(2, [(0, 1)])
    tgt = SimplicialComplexData(1, [(0,)])
    smap = SimplicialSurjection(src, tgt, [0, 0], non_finite_ok=True)
    res = build_resolution(smap, depth=1)
    assert res.mode == "truncated-depth-1"
    assert res.betti("q") == homology(src, "q")
    with pytest.raises(ResolutionError):
        build_resolution(smap, depth=2)
    with pytest.raises(ResolutionError):
        build_resolution(smap)


def test_two_points_resolution():
    res = build_resolution(two_points_map())
    assert sorted(res.cells) == [
        ((0,), (((0,),), )) if False else ((0,), ((0,),)),
        ((0,), ((0,), (1,))),
        ((0,), ((1,),)),
    ]
    fc = res.filtered_complex()
    assert fc.dim(0) == 2 and fc.dim(1) == 1
    assert res.betti("q") == [1, 0]
    assert check_resolution_equivalence(res, "q")
    assert res.fiber_vertex_count((0,)) == 2


def test_identity_resolution():
    smap = SimplicialSurjection(TRIANGLE, TRIANGLE, [0, 1, 2])
    res = build_resolution(smap)
    fc = res.filtered_complex()
    assert fc.max_level == 1
    assert res.betti("q") == homology(TRIANGLE, "q") == [1, 1]
    assert res.level_homology_table("q") == {1: (1, 1)}


def test_double_cover_resolution():
    res = build_resolution(double_cover())
    assert res.betti("q") == [1, 1, 0]
    assert res.betti("f2") == [1, 1, 0]
    assert check_resolution_equivalence(res, "q")
    assert check_resolution_equivalence(res, "f2")
    # level 1 is the source complex
    table = res.level_homology_table("q")
    assert table[1] == tuple(homology(HEXAGON, "q"))
    # fibers over edges and vertices have two points each
    for sigma in TRIANGLE.all_simplices():
        assert res.fiber_vertex_count(sigma) == 2


def test_level_one_is_source():
    rng = random.Random(17)
    for i in range(5):
        smap = random_surjection(rng, max_total=60)
        res = build_resolution(smap, seed=i)
        fc = res.filtered_complex()
        sub = fc.sub_levels(1)
        src_betti = homology(smap.source, "q")
        got = sub.betti("q")
        length = max(len(got), len(src_betti))
        assert got + [0] * (length - len(got)) == src_betti + [0] * (length - len(src_betti))


def test_corpus_equivalence():
    rng = random.Random(23)
    for i in range(8):
        smap = random_surjection(rng, max_total=100)
        res = build_resolution(smap, seed=i)
        assert check_resolution_equivalence(res, "q")
        assert check_resolution_equivalence(res, "f2")


def test_moment_embedding_certifies():
    emb = moment_embedding(HEXAGON, k=2, seed=0)
    assert emb.certified and emb.dimension == 3
    assert emb.covers(HEXAGON)
    assert certify_embedding(emb)


def test_duplicate_coordinates_fail_certification():
    coords = {v: (Fraction(1), Fraction(1)) for v in range(4)}
    emb = EmbeddingData(k=1, dimension=2, coords=coords)
    assert not certify_embedding(emb)
    src = SimplicialComplexData(4, [(0,), (1,), (2,), (3,)])
    tgt = SimplicialComplexData(1, [(0,)])
    smap = SimplicialSurjection(src, tgt, [0, 0, 0, 0])
    with pytest.raises(ResolutionError):
        build_resolution(smap, mode="embedded", embedding=emb, depth=2)


def test_embedded_mode_accepts_good_embedding():
    smap = double_cover()
    emb = moment_embedding(HEXAGON, k=1, seed=4)
    res = build_resolution(smap, mode="embedded", embedding=emb)
    assert check_resolution_equivalence(res, "q")


def test_compare_embeddings():
    smap = double_cover()
    assert compare_embeddings(smap, 1, 2, "q")
    rng = random.Random(5)
    smap2 = random_surjection(rng, max_total=60)
    for j in range(3):
        assert compare_embeddings(smap2, 10 + j, 20 + j, "f2")


def test_same_seed_same_tables():
    smap = double_cover()
    res_a = build_resolution(smap, seed=7)
    res_b = build_resolution(smap, seed=7)
    assert res_a.level_homology_table("q") == res_b.level_homology_table("q")


def test_functoriality_identity_square():
    # top map: fold of a doubled source; bottom: identity on the target
    smap = double_cover()
    doubled_src = SimplicialComplexData(12, [
        tuple(s) for s in HEXAGON.maximal
    ] + [tuple(v + 6 for v in s) for s in HEXAGON.maximal])
    doubled = SimplicialSurjection(doubled_src, TRIANGLE,
                                   [0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2])
    res_top = build_resolution(doubled, seed=0)
    res_bottom = build_resolution(smap, seed=0)
    fold = list(range(6)) + list(range(6))
    mapping = induced_cell_map(res_top, res_bottom, fold, [0, 1, 2])
    assert len(mapping) == len(res_top.cells)
    for cell, image in mapping.items():
        assert len(image[1]) <= len(cell[1])  # filtration level preserved
    # merging actually happens somewhere (two copies fold to one simplex)
    assert any(len(image[1]) < len(cell[1]) for cell, image in mapping.items())


def test_functoriality_commutation_enforced():
    res = build_resolution(double_cover(), seed=0)
    with pytest.raises(ValueError):
        induced_cell_map(res, res, [0, 1, 2, 3, 4, 5], [1, 0, 2])


def test_serialization_round_trip():
    smap = double_cover()
    data = smap.to_dict()
    back = SimplicialSurjection.from_dict(data)
    assert back.source.maximal == smap.source.maximal
    assert back.vertex_map == smap.vertex_map
    # target may be derived as the image complex
    no_target = {"source": data["source"], "vertex_map": data["vertex_map"]}
    derived = SimplicialSurjection.from_dict(no_target)
    assert derived.target.maximal == smap.target.maximal
