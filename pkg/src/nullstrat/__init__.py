"""Exact computational invariant theory for products of SL_n.

Nullcone strata are read off weight polytopes with exact arithmetic.  The
remaining modules supply character calculus, explicit SL_3 tensor operators
and the certificate runner built on them.
"""

__version__ = "0.1.0"
