"""Discriminants and discriminant algebras of Hermitian forms, and the
transfer to rational quadratic forms that certifies them.

Run with: python3 demos/hermitian_forms.py
"""
from fractions import Fraction

from udisc.brauer import pair_presentation
from udisc.hermforms import (
    HermitianGram,
    clifford_invariant,
    delta,
    diagonal_gram,
    disc,
    identity_gram,
    is_positive_definite,
    quad_invariants,
    transfer_quadratic,
)
from udisc.quadfield import ImagQuadField
from udisc.symbols import render_places

L = ImagQuadField(10)
print("Base field L = Q(sqrt(-10)), discriminant %d" % L.field_disc)
print()

print("Identity forms: the discriminant only depends on the dimension mod 4.")
for n in (1, 2, 3, 4):
    h = identity_gram(L, n)
    a, b = pair_presentation(delta(h))
    print("  I_%d  disc=%-2d  Delta=(%s,%s)_Q  %s"
          % (n, disc(h), a, b, render_places(delta(h).ram)))

print()
print("Scaling one entry by 1/5 moves the class at the ramified prime 5:")
for coeffs in ([1, Fraction(1, 5)], [1, 1, 1, Fraction(1, 5)]):
    h = diagonal_gram(L, coeffs)
    label = ", ".join(str(c) for c in coeffs)
    print("  diag(%s)  disc=%-2d  %s"
          % (label, disc(h), render_places(delta(h).ram)))

print()
print("A dense Gram matrix with determinant 1:")
e = L.elem
h = HermitianGram(L, (
    (e(2), e(1, Fraction(1, 2))),
    (e(1, Fraction(-1, 2)), e(2)),
))
print("  positive definite: %s" % is_positive_definite(h))
print("  disc=%d  %s" % (disc(h), render_places(delta(h).ram)))

print()
print("Transfer to a rational quadratic form of twice the dimension.")
print("The Clifford invariant of the transfer equals the class of the form:")
q = transfer_quadratic(h)
inv = quad_invariants(q)
print("  dim=%d  disc=%s  signature=%s" % (inv.dim, inv.disc, inv.signature))
print("  hasse symbols: %s" % " ".join(
    "%s:%d" % (v, s) for v, s in sorted(
        inv.hasse.items(), key=lambda kv: (0, 0) if kv[0] == "inf" else (1, kv[0])
    )
))
print("  clifford == delta: %s" % (clifford_invariant(q) == delta(h)))
