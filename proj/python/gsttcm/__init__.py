"""Golden space-time trellis coded modulation toolkit.

Thin Python surface over the C++ core: code algebra, partition analysis,
and the Monte-Carlo fading-channel harness.
"""

from ._core import (
    code_generator,
    delta_p,
    delta_s,
    det_metric,
    gain_table,
    golden_codeword,
    min_det_subcode,
    preset_names,
    roundtrip,
    run_preset,
    shortest_error_events,
    snr_at_target,
    sublattice_check,
)

__all__ = [
    "code_generator",
    "delta_p",
    "delta_s",
    "det_metric",
    "gain_table",
    "golden_codeword",
    "min_det_subcode",
    "preset_names",
    "roundtrip",
    "run_preset",
    "shortest_error_events",
    "snr_at_target",
    "sublattice_check",
]
