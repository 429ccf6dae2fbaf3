"""Exact-arithmetic 2-groupoid of 2-term chain complexes.

The package implements the weak 2-groupoid whose objects are 2-term chain
complexes of finite dimensional rational vector spaces, whose arrows are
quasi-isomorphisms and whose 2-cells are chain homotopies, together with its
simplicial nerve, horn filling, and the correspondence between 2-term
representations up to homotopy of finite groupoids and pseudo-functors into
that 2-groupoid.
"""

__version__ = "0.1.0"
