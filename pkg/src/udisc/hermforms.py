"""Hermitian forms over an imaginary quadratic field, given by Gram matrices.

Convention: H is linear in the first argument and conjugate-linear in the
second, so Gram matrices satisfy entries[j][i] = conj(entries[i][j]) and
change under a basis matrix G as G^T M sigma(G). All arithmetic is exact.

The discriminant of an n-dimensional form is the square class of
(-1)^(n(n-1)/2) det(H), read modulo norms of L; its discriminant algebra
is the quaternion class (field_disc, disc)_Q. Transfer to a 2n-dimensional
rational quadratic form preserves that class as the Clifford invariant.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from sympy import primefactors

from .brauer import BrauerClassQ, from_pair, l_disc
from .quadfield import ImagQuadField, PrimeBehavior, QuadElem, prime_behavior
from .symbols import (
    INF,
    Place,
    Rational,
    _as_fraction,
    _unit_mod,
    _val_unit,
    hilbert,
    legendre,
    squarefree_part,
)


class SquareTest(enum.Enum):
    SQUARE = "Square"
    NONSQUARE = "Nonsquare"


@dataclass(frozen=True)
class HermitianGram:
    """Gram matrix of a nondegenerate Hermitian form."""

    field: ImagQuadField
    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        if n < 1:
            raise ValueError("empty Gram matrix")
        for row in self.entries:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
            for e in row:
                if not isinstance(e, QuadElem) or e.field != self.field:
                    raise ValueError("entries must be elements of the given field")
        for i in range(n):
            for j in range(n):
                if self.entries[j][i] != self.entries[i][j].conj():
                    raise ValueError(
                        "not Hermitian: entry (%d,%d) is not the conjugate "
                        "of entry (%d,%d)" % (j, i, i, j)
                    )
        if _determinant(self.entries, self.field).is_zero():
            raise ValueError("degenerate Hermitian Gram matrix")

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class DiagQuadFormQ:
    """Diagonal quadratic form over Q."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.coefficients)
        if not coeffs or any(c == 0 for c in coeffs):
            raise ValueError("coefficients must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def dim(self) -> int:
        return len(self.coefficients)


def identity_gram(field: ImagQuadField, n: int) -> HermitianGram:
    return diagonal_gram(field, [1] * n)


def diagonal_gram(field: ImagQuadField, coeffs) -> HermitianGram:
    zero = field.elem(0, 0)
    ent = tuple(
        tuple(field.elem(c, 0) if i == j else zero for j, c in enumerate(coeffs))
        for i in range(len(coeffs))
    )
    return HermitianGram(field, ent)


def _determinant(entries, field: ImagQuadField) -> QuadElem:
    n = len(entries)
    m = [list(row) for row in entries]
    det = field.elem(1, 0)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return field.elem(0, 0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            m[r] = [m[r][j] - factor * m[col][j] for j in range(n)]
    return det


def _swap_basis(m, a, b):
    m[a], m[b] = m[b], m[a]
    for row in m:
        row[a], row[b] = row[b], row[a]


def _add_multiple(m, e, f, c: QuadElem):
    # v_e <- v_e + c v_f
    n = len(m)
    cc = c.conj()
    for j in range(n):
        m[e][j] = m[e][j] + c * m[f][j]
    for i in range(n):
        m[i][e] = m[i][e] + cc * m[i][f]


def diagonalize(h: HermitianGram) -> list:
    """Rationals a_1..a_n with h isometric to diag(a_1..a_n).

    Unit-determinant (up to norms) basis changes only, so the product of
    the outputs equals det(h) exactly.
    """
    n = h.n
    m = [list(row) for row in h.entries]
    field = h.field
    diag = []
    for e in range(n):
        if m[e][e].is_zero():
            swap = next((f for f in range(e + 1, n) if not m[f][f].is_zero()), None)
            if swap is not None:
                _swap_basis(m, e, swap)
            else:
                f = next(f for f in range(e + 1, n) if not m[e][f].is_zero())
                # all remaining diagonal values vanish; v_e + c v_f has
                # H-value Tr(conj(c) H(v_e,v_f)), nonzero for c = 1 or
                # c = sqrt(-delta0)
                for c in (field.elem(1, 0), field.sqrt_gen()):
                    if not (c.conj() * m[e][f] + c * m[f][e]).is_zero():
                        _add_multiple(m, e, f, c)
                        break
        pivot = m[e][e]
        for f in range(e + 1, n):
            if m[f][e].is_zero():
                continue
            r = m[f][e] / pivot
            rc = r.conj()
            for j in range(n):
                m[f][j] = m[f][j] - r * m[e][j]
            for i in range(n):
                m[i][f] = m[i][f] - rc * m[i][e]
        assert pivot.y == 0
        diag.append(pivot.x)
    return diag


def signed_det(h: HermitianGram) -> Fraction:
    det = _determinant(h.entries, h.field)
    sign = -1 if (h.n * (h.n - 1) // 2) % 2 else 1
    return sign * det.x


def delta(h: HermitianGram) -> BrauerClassQ:
    """Discriminant algebra class (field_disc, signed det)_Q."""
    return from_pair(h.field.field_disc, signed_det(h))


def disc(h: HermitianGram) -> int:
    """Canonical representative of the signed determinant modulo norms."""
    return l_disc(delta(h), h.field)


def is_positive_definite(h: HermitianGram) -> bool:
    return all(a > 0 for a in diagonalize(h))


def isometric(h1: HermitianGram, h2: HermitianGram) -> bool:
    """Definite forms are isometric iff dimensions and disc classes agree."""
    if h1.field != h2.field:
        raise ValueError("forms must live over the same field")
    if not (is_positive_definite(h1) and is_positive_definite(h2)):
        raise ValueError("corollary applies to definite forms only")
    return h1.n == h2.n and delta(h1) == delta(h2)


def transfer_quadratic(h: HermitianGram) -> DiagQuadFormQ:
    """Q_H(v) = H(v,v) as a rational form on the 2n-dimensional Q-space.

    On the basis (b_i, sqrt(-delta0) b_i) for a diagonalizing basis (b_i),
    the Gram is diag(a_1, delta0 a_1, ..., a_n, delta0 a_n).
    """
    coeffs = []
    for a in diagonalize(h):
        coeffs.append(a)
        coeffs.append(h.field.delta0 * a)
    return DiagQuadFormQ(tuple(coeffs))


class QuadInvariants(NamedTuple):
    dim: int
    disc: int
    hasse: dict
    signature: tuple


def _relevant_places_of(coeffs) -> list:
    prod = 1
    for c in coeffs:
        prod *= c.numerator * c.denominator
    return [INF] + sorted(int(p) for p in primefactors(2 * abs(prod)))


def quad_invariants(q: DiagQuadFormQ) -> QuadInvariants:
    """Dimension, signed squarefree disc, Hasse symbols, and signature."""
    cs = q.coefficients
    m = len(cs)
    prod = Fraction(1)
    for c in cs:
        prod *= c
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    disc_val = squarefree_part(sign * prod)
    hasse = {}
    for v in _relevant_places_of(cs):
        s = 1
        for i in range(m):
            for j in range(i + 1, m):
                s *= hilbert(cs[i], cs[j], v)
        hasse[v] = s
    pos = sum(1 for c in cs if c > 0)
    return QuadInvariants(m, disc_val, hasse, (pos, m - pos))


def clifford_invariant(q: DiagQuadFormQ) -> BrauerClassQ:
    """Clifford (Witt) invariant of q as a Brauer class.

    Convention: with s the product of the symbol classes (c_i, c_j) over
    i < j and d the signed disc, the full Clifford algebra class is s for
    dim 1,2 mod 8, s*(-1,-d) for 3,4, s*(-1,-1) for 5,6, s*(-1,d) for 7,0.
    """
    cs = q.coefficients
    m = len(cs)
    s = BrauerClassQ(frozenset())
    for i in range(m):
        for j in range(i + 1, m):
            s = s.mul(from_pair(cs[i], cs[j]))
    prod = Fraction(1)
    for c in cs:
        prod *= c
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    d = squarefree_part(sign * prod)
    r = m % 8
    if r in (1, 2):
        return s
    if r in (3, 4):
        return s.mul(from_pair(-1, -d))
    if r in (5, 6):
        return s.mul(from_pair(-1, -1))
    return s.mul(from_pair(-1, d))


def squarefree_reduce_at(diag, L: ImagQuadField, p: int):
    """Scale entries by even p-powers to valuations {0,1} at an inert p.

    Returns (scaled diagonal, k) with k the number of valuation-1 entries;
    the p-valuation of disc is congruent to k mod 2.
    """
    if prime_behavior(L, p) != PrimeBehavior.INERT:
        raise ValueError(f"{p} is not inert in Q(sqrt(-{L.delta0}))")
    scaled = []
    k = 0
    for a in diag:
        a = _as_fraction(a)
        nu, _ = _val_unit(a, p)
        a = a * Fraction(p) ** (-2 * (nu // 2))
        if nu % 2:
            k += 1
        scaled.append(a)
    return scaled, k


def unimodular_reduce_at(diag, L: ImagQuadField, p: int) -> SquareTest:
    """Square test of the unimodular rescaling of disc at an odd ramified p.

    Entries are scaled by powers of delta0 (valuation 1 at p, trivial on
    the class modulo norms up to squares) to clear their p-valuation; the
    verdict is the Legendre symbol of the signed product mod p, and is
    NONSQUARE exactly when p ramifies in the discriminant algebra.
    """
    if p == 2:
        raise ValueError("dyadic place excluded")
    if prime_behavior(L, p) != PrimeBehavior.RAMIFIED:
        raise ValueError(f"{p} is not ramified in Q(sqrt(-{L.delta0}))")
    n = len(diag)
    t = Fraction(-1 if (n * (n - 1) // 2) % 2 else 1)
    for a in diag:
        a = _as_fraction(a)
        nu, _ = _val_unit(a, p)
        t *= a * Fraction(L.delta0) ** (-nu)
    verdict = legendre(_unit_mod(t, p), p)
    return SquareTest.SQUARE if verdict == 1 else SquareTest.NONSQUARE
