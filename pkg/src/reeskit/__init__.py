"""reeskit: defining equations of blowup algebras, with built-in verification.

The package constructs the matrices, ideals and algebra maps presenting the
Rees algebra and special fiber ring of direct sums of powers of the maximal
ideal and of truncations of complete intersections, and checks every
finite-scale structural claim (Groebner bases of minors, initial ideals,
dimensions, kernel equalities, colon and symbolic-power identities) against
independent brute-force oracles built on its own exact Groebner engine.
"""

__version__ = "0.1.0"
