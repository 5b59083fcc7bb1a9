"""punctline: exact-arithmetic toolkit for punctured projective lines.

Free-group and metabelian bookkeeping (Fox calculus, Magnus embedding,
truncated completed group rings), exact field arithmetic with unique
factorization in Q, Q(rho) and F_p(t), Kummer-theoretic subgroup decisions,
cross-ratio geometry with Frobenius twists, and an end-to-end pipeline that
reconstructs the isomorphism of two punctured lines from cusp coordinates
and a cusp bijection.
"""

__version__ = "0.1.0"
