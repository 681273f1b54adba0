"""Exact heat kernels on the integer lattice for Darboux-transformed
discrete Laplacians, with independent numerical verification.

The main entry points:

    >>> from fractions import Fraction
    >>> from heatkernel import ParamVector, assemble_kernel, kernel_eval
    >>> params = ParamVector(1, 0, [Fraction(1, 2)])
    >>> formula = assemble_kernel(params, 0, 0)
    >>> formula.to_text()
    'exp(-2t) * [ (1 - 4/3 t) I_0(2t) + (-4/3 t) I_1(2t) ]'
    >>> round(kernel_eval(formula, 1.0), 6)
    -0.389862
"""

from .bessel import (
    AlphaTable,
    BesselCombo,
    BesselRow,
    alpha_table,
    bessel_row,
    tail_resum,
)
from .chebring import (
    NodeSet,
    NotMember,
    WVCertificate,
    av_membership,
    chebyshev_U,
    F_build,
    interp_Q,
    lagrange_vanishing_sum,
    reduce_to_wx,
)
from .exactcore import (
    LaurentPoly,
    Poly,
    PolyFraction,
    Rational,
    RationalFunc,
    SeriesSegment,
    coefficient,
    rat,
    rat_str,
    series_at_zero,
)
from .kernel import (
    ExactZeroReport,
    GammaSeries,
    KernelFormula,
    assemble_kernel,
    decomposition_residual,
    gamma_series,
    kernel_eval,
    node_poly,
    pde_residual,
    symmetry_transport,
)
from .oracle import (
    ComparisonReport,
    QuadratureSpec,
    circle_quadrature,
    compare_kernel_to_lattice,
    compare_report,
    lattice_evolve,
    orthogonality_gram,
)
from .taudarboux import (
    BandOperator,
    ParamVector,
    SingularTau,
    TauFunction,
    WaveFunction,
    darboux_one_step,
    operator_build,
    qp_build,
    schur_component,
    tau_build,
    wave_p,
    wave_p_star,
)

__version__ = "0.1.0"
