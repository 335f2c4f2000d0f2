from .ksat import (
    CnfFormula,
    build_ksat_dependency,
    check_ksat,
    exact_ksat_probability,
    exact_threshold,
    ksat_sampler,
    sample_assignment,
    simplified_threshold,
)
from .latin import (
    IntegerMatrix,
    build_latin_structures,
    check_latin,
    exact_latin_probability,
    latin_sampler,
    latin_threshold,
    sample_latin,
)
from .montecarlo import MonteCarloResult, monte_carlo, wilson_interval
from .transversal import (
    PartitionedGraph,
    build_transversal_dependency,
    check_transversal,
    exact_transversal_probability,
    sample_transversal,
    transversal_sampler,
)
