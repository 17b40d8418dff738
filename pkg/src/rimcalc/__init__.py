"""Alexander polynomials and rim-surgery bookkeeping for Seiberg-Witten invariants."""

__version__ = "0.1.0"
