"""Exact arithmetic for discriminants of Hermitian forms over
imaginary quadratic fields, and a rule engine that deduces unitary
discriminants of even-degree characters from fact sheets."""

__version__ = "0.1.0"
