"""Exact-arithmetic computations with valuations, adic unit-disc points,
finite spectral spaces and Cech cohomology of Laurent covers.

All arithmetic is over exact rationals; no floating point anywhere.
"""

__version__ = "0.1.0"
