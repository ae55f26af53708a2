import itertools
import random
from fractions import Fraction

import pytest

from pqmaps.gaussrat import GaussianRational, I
from pqmaps.polynomials import (MapTuple, PQPolynomial, ProjectivePoint,
                                affine_monomials, degree_of_map,
                                homogeneous_monomials, monomial_count,
                                poly_from_json, poly_to_json, tuple_from_json,
                                tuple_to_json, veronese)


def count_by_enumeration(m, p, q):
    """Oracle: enumerate exponent vectors directly."""
    alphas = [a for a in itertools.product(range(p + 1), repeat=m) if sum(a) <= p]
    betas = [b for b in itertools.product(range(q + 1), repeat=m) if sum(b) <= q]
    return len(alphas) * len(betas)


@pytest.mark.parametrize("m,p,q,expected", [
    (1, 1, 0, 2),
    (2, 1, 1, 9),
    (1, 2, 1, 6),
])
def test_monomial_count_examples(m, p, q, expected):
    assert monomial_count(m, p, q) == expected
    assert count_by_enumeration(m, p, q) == expected


def test_monomial_count_matches_enumeration():
    for m in (1, 2, 3):
        for p in range(4):
            for q in range(3):
                assert monomial_count(m, p, q) == count_by_enumeration(m, p, q)
                # the homogeneous monomial count in m+1 variables coincides
                assert len(homogeneous_monomials(m, p, q)) == monomial_count(m, p, q)


def rand_gauss(rng, mag=10):
    return GaussianRational(Fraction(rng.randint(-mag, mag), rng.randint(1, mag)),
                            Fraction(rng.randint(-mag, mag), rng.randint(1, mag)))


def random_poly(rng, m, p, q, density=0.7):
    terms = {}
    for alpha, beta in homogeneous_monomials(m, p, q):
        if rng.random() < density:
            terms[(alpha, beta)] = rand_gauss(rng)
    return PQPolynomial(m, p, q, terms)


def test_evaluate_examples():
    # z0 * conj(z1) at (1, i) -> -i
    poly = PQPolynomial.monomial(1, (1, 0), (0, 1))
    assert poly.evaluate([GaussianRational(1), I]) == GaussianRational(0, -1)
    # zero polynomial
    assert PQPolynomial.zero(1, 2, 0).evaluate([I, I]) == GaussianRational(0)
    # z0^2 + z1^2 at (3, 4) -> 25
    poly = PQPolynomial(1, 2, 0, {((2, 0), (0, 0)): 1, ((0, 2), (0, 0)): 1})
    assert poly.evaluate([GaussianRational(3), GaussianRational(4)]) == 25


def test_evaluate_complex_path():
    poly = PQPolynomial.monomial(1, (1, 0), (0, 1))
    assert poly.evaluate([1 + 0j, 1j]) == -1j


def test_degree_of_map():
    assert degree_of_map(3, 0) == 3
    assert degree_of_map(5, 5) == 0
    assert degree_of_map(0, 1) == -1


def test_stabilize_definition():
    z0 = PQPolynomial.variable(1, 0)
    z1 = PQPolynomial.variable(1, 1)
    t = MapTuple(1, 1, 1, 0, [z0, z1])
    st = t.stabilize()
    norm = PQPolynomial.norm_form(1)
    assert st.components == [z0 * norm, z1 * norm]
    assert st.p == 2 and st.q == 1
    assert degree_of_map(st.p, st.q) == degree_of_map(t.p, t.q)


def test_stabilize_scales_evaluation():
    rng = random.Random(11)
    for _ in range(30):
        t = _random_tuple(rng, m=1, n=1, p=2, q=1)
        st = t.stabilize()
        pt = [rand_gauss(rng), rand_gauss(rng)]
        if all(not c for c in pt):
            continue
        norm = sum((c * c.conjugate() for c in pt), GaussianRational(0))
        assert st.evaluate(pt) == [norm * v for v in t.evaluate(pt)]


def _random_tuple(rng, m, n, p, q):
    comps = [random_poly(rng, m, p, q) for _ in range(n + 1)]
    return MapTuple(m, n, p, q, comps)


def test_restrict_examples():
    # z0^2 + z0 z1 restricted to z1 = 0 gives z0^2
    poly = PQPolynomial(1, 2, 0, {((2, 0), (0, 0)): 1, ((1, 1), (0, 0)): 1})
    r = poly.restrict_to_hyperplane()
    assert r.m == 0 and r.terms == {((2,), (0,)): GaussianRational(1)}


def test_restrict_of_stabilize():
    rng = random.Random(5)
    for m in (1, 2):
        poly = random_poly(rng, m, 2, 1)
        lhs = poly.stabilize().restrict_to_hyperplane()
        rhs = PQPolynomial.norm_form(m - 1) * poly.restrict_to_hyperplane()
        assert lhs == rhs


def test_map_tuple_boundary_invariant():
    rng = random.Random(7)
    t = _random_tuple(rng, 2, 1, 2, 0)
    assert [c.restrict_to_hyperplane() for c in t.components] == t.boundary
    # a wrong boundary is rejected
    with pytest.raises(ValueError):
        MapTuple(2, 1, 2, 0, t.components,
                 [PQPolynomial.zero(1, 2, 0) for _ in range(2)])


def test_homogeneity_property():
    rng = random.Random(13)
    for _ in range(50):
        m = rng.choice((1, 2))
        p, q = rng.randint(0, 3), rng.randint(0, 2)
        poly = random_poly(rng, m, p, q)
        pt = [rand_gauss(rng) for _ in range(m + 1)]
        lam = rand_gauss(rng)
        scaled = [lam * c for c in pt]
        expected = lam ** p * lam.conjugate() ** q * poly.evaluate(pt)
        assert poly.evaluate(scaled) == expected


@pytest.mark.parametrize("m,p,q,x,expected", [
    (1, 2, 0, [GaussianRational(2)], [1, 2, 4]),
    (1, 1, 1, [I], [1, I, GaussianRational(0, -1), 1]),
])
def test_veronese_examples(m, p, q, x, expected):
    assert veronese(m, p, q, x) == [GaussianRational(e) if isinstance(e, int) else e
                                    for e in expected]


def test_veronese_at_zero():
    for m, p, q in ((1, 2, 1), (2, 1, 1)):
        v = veronese(m, p, q, [GaussianRational(0)] * m)
        assert v[0] == 1 and all(not x for x in v[1:])


def test_veronese_order_is_graded():
    order = affine_monomials(2, 2, 1)
    degrees = [sum(a) + sum(b) for a, b in order]
    assert degrees == sorted(degrees)
    assert len(order) == monomial_count(2, 2, 1)
    # within a grade, higher powers of earlier variables come first
    assert order[0] == ((0, 0), (0, 0))
    grade1 = [ab for ab in order if sum(ab[0]) + sum(ab[1]) == 1]
    assert grade1[0] == ((1, 0), (0, 0))


def test_json_round_trip():
    rng = random.Random(17)
    poly = random_poly(rng, 2, 2, 1)
    text = poly_to_json(poly)
    back = poly_from_json(text)
    assert back == poly
    assert poly_to_json(back) == text  # bit-exact serialization round trip

    t = _random_tuple(rng, 1, 2, 2, 1)
    ttext = tuple_to_json(t)
    tback = tuple_from_json(ttext)
    assert tback == t
    assert tuple_to_json(tback) == ttext


def test_projective_point():
    pt = ProjectivePoint([GaussianRational(3), GaussianRational(4)])
    assert pt.m == 1
    unit = pt.unit()
    assert abs(sum(abs(complex(c)) ** 2 for c in unit.coords) - 1) < 1e-12
    assert pt.affine_chart(0) == (GaussianRational(Fraction(4, 3)),)
    with pytest.raises(ValueError):
        ProjectivePoint([GaussianRational(0), GaussianRational(0)])


def test_bidegree_validation():
    with pytest.raises(ValueError):
        PQPolynomial(1, 2, 0, {((1, 0), (0, 0)): 1})  # degree 1 term in a (2,0) space
    with pytest.raises(ValueError):
        PQPolynomial.monomial(1, (1, 0, 0), (0, 0, 0))  # wrong ambient length


def test_affine_combination():
    rng = random.Random(23)
    t0 = _random_tuple(rng, 1, 1, 2, 0)
    combo = MapTuple.affine_combination([t0, t0], [Fraction(1, 3), Fraction(2, 3)])
    assert combo == t0
    with pytest.raises(ValueError):
        MapTuple.affine_combination([t0, t0], [1, 1])
