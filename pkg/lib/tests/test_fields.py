import numpy as np
import pytest

from dposet_lib import UnsupportedFieldError
from dposet_lib.fields import FIELD_MODULI, GaloisField, plane_incidence, projective_points


@pytest.mark.parametrize("q", sorted(FIELD_MODULI))
def test_field_axioms(q):
    F = GaloisField(q)
    elements = np.arange(q)
    # additive and multiplicative identities
    assert (F.add_table[0] == elements).all()
    assert (F.mul_table[1] == elements).all()
    # every nonzero element is invertible and the multiplicative group has no zero divisors
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert (F.mul_table[a, 1:] != 0).all()
    # distributivity
    for a in range(q):
        for b in range(q):
            left = F.mul_table[a, F.add_table[b]]
            right = F.add_table[F.mul_table[a, b], F.mul_table[a]]
            assert (left == right).all()


@pytest.mark.parametrize("q", sorted(FIELD_MODULI))
def test_plane_counts(q):
    incidence = plane_incidence(q)
    n = q * q + q + 1
    assert incidence.shape == (n, n)
    assert (incidence.sum(axis=1) == q + 1).all()
    assert (incidence.sum(axis=0) == q + 1).all()
    # two distinct lines meet in exactly one point
    meets = incidence.astype(np.int64) @ incidence.T.astype(np.int64)
    assert (meets[~np.eye(n, dtype=bool)] == 1).all()


def test_points_are_normalized():
    points = projective_points(3)
    assert len(points) == 13
    assert all(next(x for x in p if x) == 1 for p in points)
    assert points == sorted(points)


def test_characteristic_two_addition():
    F = GaloisField(8)
    assert all(F.add(a, a) == 0 for a in range(8))


@pytest.mark.parametrize("q", [1, 6, 10, 11, 16])
def test_unsupported_orders(q):
    with pytest.raises(UnsupportedFieldError):
        GaloisField(q)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        GaloisField(5).inv(0)
