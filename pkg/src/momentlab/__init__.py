"""Numerical verification of the arithmetic and analytic identities behind a
cubic moment computation for modular L-functions: exponential sums, cusps
and Kloosterman sums, Eisenstein coefficients, integral transforms,
oscillatory integrals, approximate functional equations and summation
rearrangements."""

__version__ = "0.1.0"
