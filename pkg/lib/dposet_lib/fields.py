"""
Small finite fields and the Desarguesian projective plane over them.

An element of GF(p^k) is the int whose base-p digits are the coefficients of
its polynomial representative, lowest degree first. Addition and
multiplication are precomputed numpy tables.
"""

import logging
from functools import lru_cache
from itertools import product
from typing import List, Tuple

import numpy as np

from .errors import UnsupportedFieldError

logger = logging.getLogger(__name__)

# q -> (p, k, monic irreducible modulus coefficients, lowest degree first)
FIELD_MODULI = {
    2: (2, 1, (0, 1)),
    3: (3, 1, (0, 1)),
    4: (2, 2, (1, 1, 1)),      # x^2 + x + 1
    5: (5, 1, (0, 1)),
    7: (7, 1, (0, 1)),
    8: (2, 3, (1, 1, 0, 1)),   # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),      # x^2 + 1
}


def _digits(a: int, p: int, k: int) -> List[int]:
    out = []
    for _ in range(k):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _from_digits(digits: List[int], p: int) -> int:
    return sum(d * p ** i for i, d in enumerate(digits))


class GaloisField:
    """The field with q elements, q in {2, 3, 4, 5, 7, 8, 9}."""

    def __init__(self, q: int):
        if q not in FIELD_MODULI:
            raise UnsupportedFieldError(f"GF({q}) is not supported; choose one of {sorted(FIELD_MODULI)}")
        self.q = q
        self.p, self.k, self.modulus = FIELD_MODULI[q]
        self.add_table = np.zeros((q, q), dtype=np.int64)
        self.mul_table = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = _digits(a, self.p, self.k)
            for b in range(q):
                db = _digits(b, self.p, self.k)
                self.add_table[a, b] = _from_digits([(x + y) % self.p for x, y in zip(da, db)], self.p)
                self.mul_table[a, b] = self._poly_mul(da, db)
        self.inv_table = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv_table[a] = int(np.flatnonzero(self.mul_table[a] == 1)[0])

    def _poly_mul(self, da: List[int], db: List[int]) -> int:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus from the top degree down
        for deg in range(len(prod) - 1, k - 1, -1):
            coef = prod[deg]
            if coef:
                for i, m in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - coef * m) % p
        return _from_digits(prod[:k], p)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[a])

    def dot_all(self, points: np.ndarray, lines: np.ndarray) -> np.ndarray:
        """Matrix of dot products lines[i] . points[j] over the field."""
        total = np.zeros((len(lines), len(points)), dtype=np.int64)
        for c in range(points.shape[1]):
            terms = self.mul_table[lines[:, c][:, None], points[:, c][None, :]]
            total = self.add_table[total, terms]
        return total


@lru_cache(maxsize=None)
def get_field(q: int) -> GaloisField:
    return GaloisField(q)


def projective_points(q: int, dim: int = 3) -> List[Tuple[int, ...]]:
    """Normalized representatives (first nonzero coordinate 1) of the points of PG(dim-1, q), in lex order."""
    field = get_field(q)
    points = set()
    for v in product(range(q), repeat=dim):
        lead = next((x for x in v if x != 0), None)
        if lead is None:
            continue
        scale = field.inv(lead)
        points.add(tuple(field.mul(x, scale) for x in v))
    return sorted(points)


def plane_incidence(q: int) -> np.ndarray:
    """
    Incidence matrix of PG(2, q).

    Lines are indexed by their dual coordinate vectors, in the same order as
    points; entry [i, j] is True iff point j lies on line i.
    """
    field = get_field(q)
    pts = np.array(projective_points(q), dtype=np.int64)
    incidence = field.dot_all(pts, pts) == 0
    logger.debug(f"PG(2,{q}): {len(pts)} points, line sizes {set(incidence.sum(axis=1).tolist())}")
    return incidence
