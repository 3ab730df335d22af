"""Exact normalizer of the tensor Pauli MAD-group in Aut sl(p^2, C).

The coefficient map sends this normalizer onto {X : X^T J X = +-J} over Z_p.
The modules here build that map, invert it constructively, and check it by brute force.
"""

from .cyclo import CycloMatrix, CycloNumber
from .errors import (
    DomainError,
    NotAMonomial,
    NotInGroup,
    NotInNormalizer,
    NotInvertible,
    NotPrime,
    NotSymplectic,
    ParseError,
    Unsupported,
)
from .normalizer import AutomorphismRep, ad_B, build_B, coeff_matrix, grading_action, lift, out_I, realize
from .pauli import GradingIndex, PauliMonomial, matrix_to_monomial
from .symplectic import GeneratorWord, build_D, build_S, decompose, is_symplectic, six_equations
from .zmod import ZModMatrix, ZModScalar

__version__ = "0.1.0"
