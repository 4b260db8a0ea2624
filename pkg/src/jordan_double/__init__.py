"""Exact computations in the double of the Jordan plane and its finite-dimensional modules."""

from .algebra import (Element, Tensor, antipode, coproduct, counit, generator, grade, multiply, normal_form,
                      raising_factorial, to_text, verify_presentation)
from .homology import (UNDETERMINED, ExtResult, HomSpace, build_extension, composition_factors, ext1,
                       hom_space, is_indecomposable, is_isomorphic, socle)
from .linalg import Matrix, Subspace, algebra_radical, generalized_eigenspace, inverse, kernel, solve
from .modules import (FdModule, TruncatedVerma, build_S, build_simple, build_T, build_verma2_trunc,
                      build_verma_trunc, dual, hw_data, hw_series, pullback_sl2, quotient, submodule_generated,
                      tensor, verify_module, weight_decomposition)
from .parser import parse, parse_element
from .quiver import classify_graph, gabriel_quiver, representation_type_report, separated_quiver

__version__ = "0.1.0"
