"""Gödel coding, equational saturation, finite Kripke semantics, Hilbert proofs and bounded
arithmetical evaluation for theories and logics coded as sets of naturals."""

__version__ = "0.1.0"
