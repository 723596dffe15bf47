"""Numerical experiments: monodromy, vanishing cycles, degenerations."""
from .kernel import BACKEND
from .lab import (
    BranchPoints,
    DegenerationReport,
    IsotopyReport,
    MonodromyComparison,
    RootTrackConfig,
    TrackResult,
    branch_points,
    compare_monodromy,
    cp1_vanishing,
    critical_values_line,
    critical_values_plane,
    f0_critical_values,
    f0_expected,
    hirzebruch_W,
    hirzebruch_critical_points,
    hirzebruch_critical_values,
    hirzebruch_degeneration,
    hirzebruch_isotopy,
    hirzebruch_roots,
    merge_pair,
    sheet_approximation,
    track_monodromy,
)

__all__ = [
    "BACKEND",
    "BranchPoints",
    "DegenerationReport",
    "IsotopyReport",
    "MonodromyComparison",
    "RootTrackConfig",
    "TrackResult",
    "branch_points",
    "compare_monodromy",
    "cp1_vanishing",
    "critical_values_line",
    "critical_values_plane",
    "f0_critical_values",
    "f0_expected",
    "hirzebruch_W",
    "hirzebruch_critical_points",
    "hirzebruch_critical_values",
    "hirzebruch_degeneration",
    "hirzebruch_isotopy",
    "hirzebruch_roots",
    "merge_pair",
    "sheet_approximation",
    "track_monodromy",
]
