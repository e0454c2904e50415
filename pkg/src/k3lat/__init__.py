"""Exact lattice-theoretic computations for a quartic K3 surface in
characteristic 3 and its characteristic-zero lift.

Subpackages are organized by layer: exact integer/rational linear algebra
(intlinalg), even lattices and their enumerative machinery (lattice),
weighted graphs and graph lattices (graphs), the finite-field line
geometry (gf9, fermat), the rank-26 chamber engine (leech, borcherds),
and the K3-specific layer (k3aut), with a click CLI (cli) on top.
"""

__version__ = "0.1.0"
