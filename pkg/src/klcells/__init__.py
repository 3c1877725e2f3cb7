"""Exact Kazhdan-Lusztig cell combinatorics.

Modules: laurent (the coefficient ring), coxeter (elements, words, balls),
hecke (KL coefficients and products), cells (cells, a-function, gamma,
asymptotic tables), typea (partition dictionary and GL fusion), demazure
(divided differences and Frobenius data), cli (command-line surface).
"""

from .coxeter import (
    GroupDescriptor,
    Element,
    get_group,
    element_from_word,
    multiply,
    length,
    reduced_word,
    descent_set,
    bruhat_leq,
    ball,
    rho_shift,
    longest_parabolic,
    format_element,
    parse_element,
)
from .hecke import (
    HeckeElt,
    kl_coefficient,
    mu,
    mult_by_bs,
    mult_kl,
    mult_extended,
    mult_standard_oracle,
)
from .laurent import LaurentPoly, lp_bar, lp_coeff, lp_mul
from .cells import (
    CellData,
    GammaTable,
    a_value,
    cell_partition,
    duflo_involutions,
    gamma,
    jring_structure,
    verify_gammacan,
    verify_positivity_properties,
)
from .typea import (
    LeviDescriptor,
    dual_partition,
    fusion_match,
    fusion_tensor,
    lr_coeff,
    n_lambda,
    parabolic_data,
    pi_I,
    schur_multiplier_torus,
)
from .demazure import (
    DualBases,
    MultiPoly,
    act,
    demazure_s,
    demazure_w,
    dual_bases,
    frobenius_check,
    p_top,
    tensor_normal_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
