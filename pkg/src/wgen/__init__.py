"""wgen: exact symbolic construction of the generator matrix W(z) and the
Lax operator L(z) of finite W-algebras W(gl_N, f), for any nilpotent f
(given by a partition) and any good grading (given by a pyramid), with
mechanical verification of the defining identities over exact rationals.
"""

from .pyramid import (Partition, Pyramid, build_pyramid, right_aligned_chain,
                      lagrangian_pair, m_pairs, p_pairs, neutral_h,
                      grading_difference, is_neutral)
from .uea import Env, format_env
from .envmatrix import ZSeries, EMat, series_equal, mat_series_equal, quasidet
from .reduction import WContext, transport, transport_reps
from .centralizer import (Label, centralizer_basis, centralizer_labels,
                          gf_dimension, SliceProjection, z_matrix,
                          z_matrix_recursive)
from .generators import (w_tilde, decompose_w, assemble_w, GeneratorSet,
                         premet_check, two_column_w_tilde)
from .lax import (shell, t_matrix, t_recursive, l_tilde, l_direct,
                  l_recursive, quasidet_of_w, w_quasidet_recursive,
                  yangian_residual)
from .verify import CheckReport, run_checks, CHECK_NAMES

__all__ = [
    "Partition", "Pyramid", "build_pyramid", "right_aligned_chain",
    "lagrangian_pair", "m_pairs", "p_pairs", "neutral_h",
    "grading_difference", "is_neutral",
    "Env", "format_env",
    "ZSeries", "EMat", "series_equal", "mat_series_equal", "quasidet",
    "WContext", "transport", "transport_reps",
    "Label", "centralizer_basis", "centralizer_labels", "gf_dimension",
    "SliceProjection", "z_matrix", "z_matrix_recursive",
    "w_tilde", "decompose_w", "assemble_w", "GeneratorSet", "premet_check",
    "two_column_w_tilde",
    "shell", "t_matrix", "t_recursive", "l_tilde", "l_direct", "l_recursive",
    "quasidet_of_w", "w_quasidet_recursive", "yangian_residual",
    "CheckReport", "run_checks", "CHECK_NAMES",
]

__version__ = "1.0.0"
