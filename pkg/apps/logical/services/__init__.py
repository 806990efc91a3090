from apps.logical.services.encoding import (
    decode_density,
    decode_density_normalized,
    encode_control,
    encode_target,
    run_gate,
)
from apps.logical.services.gates import gate_overlap, ideal_gate, logical_map, truth_table

__all__ = [
    "encode_control",
    "encode_target",
    "decode_density",
    "decode_density_normalized",
    "run_gate",
    "ideal_gate",
    "logical_map",
    "gate_overlap",
    "truth_table",
]
