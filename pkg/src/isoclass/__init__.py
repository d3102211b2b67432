"""Exact classification machinery for countable algebraic fields and trees.

Subpackages
-----------
arith
    Rational polynomials and factorization over the rationals.
field
    Towers of number fields, factorization over them, embeddings and lattices.
canonical
    The canonical Cantor-tree node family and the field/bit-string codecs.
measure
    Haar-compatible and Lebesgue measures of field events.
categoricity
    The isomorphism functional, distinguishing rationals, Scott parameters.
trees
    Finite trees, canonical codes and the Baire-space codec.
quotient
    Finite models of the quotient relations and principal open-set posets.
"""

__version__ = "0.1.0"
