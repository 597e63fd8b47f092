"""Maximum fractional matchings, star-cycle factors and critical-graph audits."""

from .critical import (
    CriticalityReport,
    chromatic_index,
    conjecture_scan,
    is_k_critical,
    meredith_extension,
    meredith_round_trip,
)
from .edge_test import (
    ExclusionCertificate,
    edge_in_some_k12_factor,
    find_exclusion_certificate,
    forced_zero_weight,
)
from .errors import (
    BoundExceededError,
    GraphFormatError,
    InvariantViolation,
    NoFactorError,
    StarFactorError,
)
from .factors import (
    StarCycleFactor,
    build_minimal_factor,
    decompose_paths,
    has_k12_factor,
    k12_factor_with_edge,
    min_k12,
)
from .fractional import (
    FractionalMatching,
    HalfIntegralMatching,
    canonical_max_fractional_matching,
    canonicalize,
    fractional_matching_number,
    is_canonical,
    max_fractional_matching_with_edge,
)
from .gallai_edmonds import GEDecomposition, StructureReport, decompose, structure_report
from .graph import (
    Graph,
    MultiGraph,
    contract_edge,
    emit_graph6,
    induced_subgraph,
    isolated_vertices,
    parse_dimacs,
    parse_edge_list,
    parse_graph6,
)
from .matching import (
    DegreeBounds,
    Matching,
    deficiency,
    evaluate_gamma,
    gf_factor,
    matching_number,
    maximum_matching,
)

__all__ = [name for name in dir() if not name.startswith("_") and name not in {"critical", "edge_test", "errors", "factors", "fractional", "gallai_edmonds", "graph", "matching"}]
__version__ = "0.1.0"
