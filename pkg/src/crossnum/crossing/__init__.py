"""Drawing certificates, exact crossing search and upper-bound heuristics."""

from .certificate import (
    AccountTable,
    CrossingPair,
    CrossingReport,
    DrawingCertificate,
    EdgeClassPartition,
    HostId,
    Planarization,
    account,
    crossing_report,
    format_certificate,
    is_valid_certificate,
    parse_certificate,
    planarization,
    planarize,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from .heuristic import upper_bound_heuristic
from .search import (
    Constraints,
    DecideResult,
    ExactResult,
    SearchOptions,
    cr_decide,
    cr_decide_naive,
    cr_exact,
    enumerate_realizable,
    iter_configurations,
)
