"""Exact computer algebra for homotopy associative and homotopy Lie
structures presented as codifferentials on tensor, symmetric and exterior
coalgebras of finite-dimensional Z2-graded spaces."""

from .fields import QQ, FpElement, PrimeField, Rationals
from .graded import (EXTERIOR, PARITY_ONLY, PRODUCT_FORM, SHIFTED_FORM,
                     SYMMETRIC, TENSOR, GradedSpace, Word, grading_pair,
                     koszul_sign, permutation_sign, reduced_diagonal,
                     unshuffles)
from .cochain import (Cochain, InnerProduct, ScalarCochain, add,
                      canonical_tuples, evaluate, scale, tilde, untilde,
                      zero_cochain)
from .coderivation import (CONVENTIONS, V_OF_W, W_OF_V, CoderivationGenerator,
                           Restriction, bracket, compose, extend,
                           family_bracket, modified_bracket, restrict)
from .reversion import (check_extension_conjugation,
                        check_reversion_sign_identity,
                        conjugate_family, conjugate_part,
                        convert_convention_parts, eta_inverse_word, eta_word)
from .structures import (A_INFINITY, L_INFINITY, Deformation,
                         InfinityStructure, StructureError, ValidationReport,
                         deform_check, structure_residual, validate,
                         validate_dga)
from .homology import (CohomologyReport, DeformationClass, InvarianceError,
                       classify_deformation, coboundary, cohomology,
                       cyclic_coboundary, cyclic_cohomology, cyclicize,
                       is_cyclic, is_cyclic_scalar, is_cyclic_scalar_blockwise)
from .algfile import AlgebraFile, ParseError, parse, serialize

__version__ = "0.1.0"
