"""Exact construction of logarithmic models and meromorphic functions.

The package builds, validates and realizes the combinatorial data attached to
plane curve branches under sequences of quadratic blow-ups: dicritical
structures, configurations of separatrices, index and residue systems,
logarithmic 1-forms with escape analysis, their real symmetric variants and
sectorial models of real vector fields.
"""

__version__ = "0.1.0"
