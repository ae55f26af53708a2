from fractions import Fraction

import pytest

from pqmaps.gaussrat import GaussianRational, I, coerce_scalar


def test_arithmetic():
    a = GaussianRational(2, 3)
    b = GaussianRational(4, -1)
    assert a + b == GaussianRational(6, 2)
    assert a - b == GaussianRational(-2, 4)
    assert a * b == GaussianRational(11, 10)  # (2+3i)(4-i) = 8 - 2i + 12i + 3
    assert (a * b) / b == a
    assert -a == GaussianRational(-2, -3)
    assert a * 0 == GaussianRational(0)


def test_mixed_scalars():
    a = GaussianRational(1, 1)
    assert a + 1 == GaussianRational(2, 1)
    assert 2 * a == GaussianRational(2, 2)
    assert a - Fraction(1, 2) == GaussianRational(Fraction(1, 2), 1)
    assert 1 / GaussianRational(0, 1) == GaussianRational(0, -1)


def test_powers():
    assert I ** 2 == GaussianRational(-1)
    assert I ** 103 == I ** 3
    assert GaussianRational(2, 1) ** 0 == GaussianRational(1)
    with pytest.raises(ValueError):
        I ** -1


def test_conjugate_norm():
    a = GaussianRational(Fraction(3, 5), Fraction(-4, 5))
    assert a.conjugate() == GaussianRational(Fraction(3, 5), Fraction(4, 5))
    assert a.norm_sq() == 1
    assert (a * a.conjugate()) == GaussianRational(1)


def test_canonical_form():
    a = GaussianRational(Fraction(2, 4), Fraction(-6, 3))
    assert a.re == Fraction(1, 2) and a.re.denominator == 2
    assert a.im == -2 and a.im.denominator == 1


def test_equality_and_hash():
    assert GaussianRational(3) == 3
    assert hash(GaussianRational(3)) == hash(3)
    assert GaussianRational(1, 1) != 1
    assert complex(GaussianRational(1, -2)) == 1 - 2j
    d = {GaussianRational(1, 2): "x"}
    assert d[GaussianRational(1, 2)] == "x"


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_serialization_pair():
    a = GaussianRational(Fraction(-7, 3), Fraction(0))
    re, im = a.to_pair()
    assert re == "-7/3" and im == "0/1"
    assert GaussianRational.from_pair(re, im) == a


def test_immutable():
    a = GaussianRational(1)
    with pytest.raises(AttributeError):
        a.re = Fraction(2)


def test_coerce_scalar():
    assert coerce_scalar(2) == GaussianRational(2)
    assert coerce_scalar(1.5) == 1.5 + 0j
    assert isinstance(coerce_scalar(1 + 1j), complex)
