"""Exact symbolic verification of elliptic-curve cycle identities.

Building blocks: exact elliptic-curve arithmetic, divisor calculus on E and
E^n, the symmetric-group projector calculus, the GL2 motive label algebra,
symbolic parametric cubical cycles with their boundary, and bar-complex
chains with cocycle, comultiplication, and nontriviality certificates.
"""

__version__ = "0.1.0"
