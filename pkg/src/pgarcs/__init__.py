"""Complete-arc search and verification in the projective planes PG(2,q)."""

__version__ = "0.1.0"

from .gf import Field, build_field, factor_prime_power
from .plane import Plane, build_plane
from .arc import (ArcState, CertificateError, VerifyReport, certificate_points,
                  conic_arc, conic_nucleus, format_certificate, max_arc_size,
                  parse_certificate, verify_certificate)
from .search import (BudgetExhausted, SearchConfig, SearchOutcome, greedy_min,
                     oracle_min, spectrum_search)
from .dataset import KnownSizeRecord, PublishedRow, dataset, known_sizes
from .metrics import (MetricsRow, bound_regions, check_dataset, compute_metrics,
                      emit_plot_data, spectrum_ceiling)

__all__ = [
    "__version__",
    "Field",
    "build_field",
    "factor_prime_power",
    "Plane",
    "build_plane",
    "ArcState",
    "VerifyReport",
    "CertificateError",
    "verify_certificate",
    "certificate_points",
    "format_certificate",
    "parse_certificate",
    "conic_arc",
    "conic_nucleus",
    "max_arc_size",
    "BudgetExhausted",
    "SearchConfig",
    "SearchOutcome",
    "greedy_min",
    "spectrum_search",
    "oracle_min",
    "KnownSizeRecord",
    "PublishedRow",
    "dataset",
    "known_sizes",
    "MetricsRow",
    "compute_metrics",
    "check_dataset",
    "bound_regions",
    "spectrum_ceiling",
    "emit_plot_data",
]
