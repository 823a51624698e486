"""crystalkit: affine crystal graph combinatorics.

Abstract crystals and the tensor product rule, finite crystal graphs with
head machinery, the seven coordinate families of perfect crystals, a
truncated path-model realization of highest weight crystals, and machine
verification of the head-location and tensor isomorphism theorems.
"""

__version__ = "0.1.0"
