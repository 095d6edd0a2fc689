"""glab: exact computations with group gradings of matrix algebras over finite fields.

Submodules
----------
ff        finite fields GF(p^k) on int64 code arrays
groups    finite abelian groups, quotients, primary parts, characters
grading   subspaces of M_n, gradings, verification, elementary and Pauli gradings
hopf      the dual group algebra (FG)*, its action on graded algebras, divided powers
lie       Lie derivations, the trace splitting, generalized Leibniz checks
sl        type I / type II gradings of sl_n, involutions, exchange, classification
suites    desk-scale property sweeps
scenario  JSON scenarios and reports
cli       the ``glab`` command
"""

from .ff import FieldCtx, FieldElem, build_field, min_ext_degree, root_of_unity, binom_mod_p
from .groups import (AbelianGroup, GroupElem, build_group, decompose_by_p, quotient_group,
                     characters, multiplicative_characters, additive_characters)
from .grading import (Subspace, Grading, verify_grading, elementary_grading, pauli_grading,
                      clock_shift, tensor_gradings, factor_grading, support, compatible)
from .hopf import (DualElem, dual_basis, dual_coproduct, counit, antipode, is_grouplike, is_primitive,
                   lift_mult_char, lift_add_char, divided_powers, act, verify_module_algebra,
                   grading_from_action, grouplike_census, primitive_dimension)
from .lie import (LinMap, ad, trace_map, is_lie_derivation, martindale_decompose,
                  check_corollary_p_grading, generalized_leibniz_check)
from .sl import (Involution, Antiautomorphism, sl_subspace, type1_grading, type2_grading,
                 twisted_lie_grading, symmetric_split, apply_involution, involution_preserves,
                 exchange, correct_antiautomorphism, classify_sl_grading, enumerate_elementary_candidates)
from .scenario import run_scenario, __version__
from .suites import run_suite, SUITES
