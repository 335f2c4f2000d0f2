"""Local-lemma certificates from hard-core gas bounds.

Classical, improved (cluster-expansion) and Shearer criteria for a family of
bad events with a dependency graph, plus the transversal, Latin-transversal
and k-SAT applications.
"""

from .criteria import (
    CertificateReport,
    check_classical,
    check_improved,
    check_shearer,
    radius_bar,
    radius_chain,
    radius_classical,
    radius_star,
    radius_tilde_star,
)
from .errors import InvalidInputError, ResourceLimitError
from .fixedpoint import FixedPointTrace, Verdict, find_mu, iterate_t_map, t_map
from .graph import DependencyGraph, enumerate_independent_sets
from .hardcore import (
    masked_activities,
    partition_function,
    partition_function_elim,
    phi_classical,
    phi_star,
    phi_tilde_star,
    shearer_P,
)

__version__ = "0.1.0"
