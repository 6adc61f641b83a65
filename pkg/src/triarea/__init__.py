"""triarea: exact area relations of triangulations of a square.

Compute the polynomial relation satisfied by the triangle areas of any
drawing of a combinatorial triangulation of a square, assemble the finite
catalog of irreducible specialization factors in up to four variables, and
demonstrate the limit behaviour of degenerating drawings numerically.
"""

__version__ = "0.1.0"
