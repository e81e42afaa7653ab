"""Integers whose digits stay small in several bases at once.

The package splits into layers: exact digit bookkeeping (`digits`),
carry-free binomial arithmetic (`kummer`), threshold conditions
(`criteria`), exhaustive searches (`searcher`), explicit constructions
(`constructors`), digit-set exponential sums (`harmonic`), and
equidistribution experiments (`equidist`). The `smalldigits` console
script exposes each layer as a subcommand.
"""

__version__ = "0.1.0"

from .constructors import (
    BlockConfig,
    BlockTrace,
    EgrsTrace,
    RepairMove,
    block_construct,
    block_find_shift,
    egrs_construct,
    egrs_repair_step,
    stability_check,
)
from .criteria import (
    ConditionReport,
    EqualBaseThreshold,
    conjecture_sum,
    egrs_condition,
    equal_base_threshold,
    prop_sum,
    theorem_sum,
)
from .digits import (
    BaseSpec,
    DigitVector,
    digit_window,
    from_digits,
    large_digit_count,
    multi_base_profile,
    render_digit_grid,
    to_digits,
)
from .equidist import (
    ExponentSystem,
    bad_n_census,
    discrepancy_estimate,
    frac_exponents,
    lattice_min_combination,
    power_sum_norm,
    power_sum_separation_check,
)
from .errors import BudgetExceededError, DeadEndError
from .harmonic import (
    BumpParams,
    BumpReport,
    SmallDigitFamily,
    SpectrumQuery,
    bump_fourier_coeff,
    bump_property_report,
    centered_digits,
    exp_sum_direct,
    exp_sum_product,
    gamma_vectors,
    large_spectrum_enumerate,
    spectrum_bound,
)
from .kummer import GrahamSplit, central_binom_valuation, graham_split, is_prime, lucas_coprime_oracle
from .searcher import (
    DensityReport,
    SearchSpec,
    density_vs_heuristic,
    enumerate_small,
    graham_census,
    multi_base_search,
    resumable_search,
)

__all__ = [
    "__version__",
    "BaseSpec",
    "DigitVector",
    "to_digits",
    "from_digits",
    "large_digit_count",
    "digit_window",
    "multi_base_profile",
    "render_digit_grid",
    "is_prime",
    "central_binom_valuation",
    "GrahamSplit",
    "graham_split",
    "lucas_coprime_oracle",
    "ConditionReport",
    "conjecture_sum",
    "theorem_sum",
    "prop_sum",
    "egrs_condition",
    "EqualBaseThreshold",
    "equal_base_threshold",
    "SearchSpec",
    "enumerate_small",
    "multi_base_search",
    "resumable_search",
    "DensityReport",
    "density_vs_heuristic",
    "graham_census",
    "RepairMove",
    "egrs_repair_step",
    "EgrsTrace",
    "egrs_construct",
    "BlockConfig",
    "BlockTrace",
    "block_find_shift",
    "block_construct",
    "stability_check",
    "SmallDigitFamily",
    "exp_sum_product",
    "exp_sum_direct",
    "centered_digits",
    "SpectrumQuery",
    "large_spectrum_enumerate",
    "spectrum_bound",
    "gamma_vectors",
    "BumpParams",
    "BumpReport",
    "bump_fourier_coeff",
    "bump_property_report",
    "ExponentSystem",
    "frac_exponents",
    "power_sum_norm",
    "bad_n_census",
    "discrepancy_estimate",
    "power_sum_separation_check",
    "lattice_min_combination",
    "BudgetExceededError",
    "DeadEndError",
]
