"""
Statistical primitives: FDS pre-selection, membership probability,
1-D Mahalanobis distance and the per-sample feature verdict.
"""

from .fisher import (
    EPS,
    FDS_THRESHOLD,
    FdsTable,
    fds_or_limit,
    fds_table,
    pairwise_fds,
    preselect_features,
)
from .membership import ClassStats, MembershipModel, mahal_1d, membership_probability
from .verdict import (
    FeatureVerdict,
    SelectionThresholds,
    class_stats_matrix,
    feature_verdict,
    sample_verdicts,
)

__all__ = [
    "EPS",
    "FDS_THRESHOLD",
    "FdsTable",
    "fds_or_limit",
    "fds_table",
    "pairwise_fds",
    "preselect_features",
    "ClassStats",
    "MembershipModel",
    "mahal_1d",
    "membership_probability",
    "FeatureVerdict",
    "SelectionThresholds",
    "class_stats_matrix",
    "feature_verdict",
    "sample_verdicts",
]
