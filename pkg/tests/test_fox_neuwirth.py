from math import comb

import pytest

from pqmaps.bookkeeping import BettiTable, load_shipped_table
from pqmaps.resolution import (fox_neuwirth_betti, fox_neuwirth_complex,
                               homology, make_betti_table,
                               plane_pair_configuration_model,
                               signed_shuffle_count)


def test_signed_shuffle_closed_form():
    # independent check of the enumeration against the parity-binomial form
    for a in range(1, 6):
        for b in range(1, 6):
            expected = 0 if (a % 2 and b % 2) else comb((a + b) // 2, a // 2)
            assert signed_shuffle_count(a, b) == expected


def test_complex_is_a_complex():
    for r in (2, 3, 4):
        cc = fox_neuwirth_complex(r)
        assert cc.check_boundary_squared()
        # cells are compositions: 2^(r-1) in total, dimension r+k for k parts
        assert sum(cc.dims) == 2 ** (r - 1)
        assert cc.dims[r + 1] == 1 and cc.dims[2 * r] == 1


@pytest.mark.parametrize("r,expected", [
    (1, {2: 1}),
    (2, {3: 1, 4: 1}),
    (3, {5: 1, 6: 1}),
    (4, {7: 1, 8: 1}),
])
def test_rational_betti(r, expected):
    assert fox_neuwirth_betti(r, "q") == expected


def test_degrees_within_dimension_window():
    for r in (1, 2, 3, 4):
        for field in ("q", "f2"):
            table = fox_neuwirth_betti(r, field)
            assert all(0 <= deg <= 2 * r for deg in table)


def test_r_bound_rejected():
    with pytest.raises(ValueError):
        fox_neuwirth_betti(9)


def test_pair_configuration_cross_check():
    """The r = 2 ranks, checked against an independent triangulated model.

    The pair-configuration space deformation retracts onto the shipped
    annulus; by Poincare duality in the open 4-manifold, the rank of the
    compactified cohomology in degree d equals the annulus Betti number in
    degree 4 - d."""
    annulus = plane_pair_configuration_model()
    betti = homology(annulus, "q")
    assert betti == [1, 1, 0]
    fn = fox_neuwirth_betti(2, "q")
    dual = {4 - i: b for i, b in enumerate(betti) if b}
    assert fn == dual


def test_shipped_table_matches_regeneration():
    shipped = load_shipped_table()
    fresh = make_betti_table(4, "q")
    assert shipped.ranks == fresh.ranks
    assert shipped.covered == fresh.covered
    assert shipped.field_name == "q"


def test_table_round_trip_through_csv():
    fresh = make_betti_table(3, "q")
    back = BettiTable.from_csv(fresh.to_csv())
    assert back.ranks == fresh.ranks and back.covered == fresh.covered
