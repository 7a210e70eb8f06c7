"""Statistical causality between time series.

Four measures (linear Geweke, kernelised Geweke, HSNCIC, transfer entropy)
plus mutual information for instantaneous coupling, all assessed by
permutation tests.
"""

from ._backend import BACKEND
from .embedding import LagDesign, LagSpec, ModelVariant, build_design, shift_column
from .geweke import GewekeIndex, geweke_causality, geweke_instantaneous
from .hsncic import HsncicValue, OperatorRegularizer, hsic, hsncic, hsncic_causality
from .infotheory import (
    HistogramSpec,
    JointHistogram,
    entropy,
    histogram,
    mutual_information,
    transfer_entropy,
)
from .kernels import GramMatrix, KernelKind, KernelSpec, center, gram, kernel_eval, median_heuristic
from .krr import RidgeFit, fit, predict, residual_variance
from .measures import MEASURES, CausalityQuery, bind, compute
from .modelselect import CvGrid, CvReport, cross_validate
from .panel import (
    TimeSeriesPanel,
    demean,
    detrend,
    difference,
    load_csv,
    log_returns,
    window,
)
from .significance import (
    MeasureResult,
    PermutationPlan,
    WindowPlan,
    permutation_test,
    pvalue_matrix,
    rolling_scan,
)
from .synthetic import (
    LinearBenchmarkSpec,
    NonlinearBenchmarkSpec,
    generate_linear_benchmark,
    generate_nonlinear_benchmark,
)

__version__ = "0.1.0"
