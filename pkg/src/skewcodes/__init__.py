"""Nonlinear Reed-Solomon and skew quasi-cyclic codes over finite field towers."""

from .errors import (DescriptorError, EnumerationCapError, InvariantViolation,
                     PreconditionError, SkewCodesError)
from .galois import (FieldElement, FieldTower, Level, NormalBasis, cyclotomic_coset,
                     decompose, find_normal_basis, frobenius, make_tower,
                     minimal_polynomial, subfield_membership)
from .nrscode import (NrsCode, OrbitLayout, classical_dual, detect_orbit_layout,
                      meets_singleton, min_distance, nrs_dimension, nrs_encode,
                      orbit_evaluation_vector, q_dual, singleton_bound)
from .skewpoly import (SkewPoly, TwoSidedGenerator, gcrd_extended, is_central,
                       is_total_divisor, lclm, module_decompose, two_sided_generator)
from .smithform import (SkewMatrix, SnfResult, smith_normal_form, stacked_basis_mod_ideal,
                        verify_snf)
from .sqccode import (SqcCode, SqcStructure, circulant_repr, is_sqc, lift_generators,
                      matrix_ring_check, module_structure, phi, phi_inv, q_inner_product,
                      star_dual)

__version__ = "0.1.0"
