from .empirical import (
    EmpiricalDist,
    binomial_band,
    from_samples,
    kolmogorov_quantile,
    ks_band,
    ks_distance,
    sine_cdf,
)
from .report import Report, failed_report, invariance_report, macro_invariance_report
