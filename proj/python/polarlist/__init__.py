"""Polar-code encoding, SC/SCL decoding, and Monte-Carlo simulation."""

from ._core import (
    ChannelModel,
    CodeSpec,
    NumericError,
    ParseError,
    SclResult,
    TrialStats,
    __version__,
    bhattacharyya_construct,
    crc_compute,
    crc_verify,
    encode,
    load_spec,
    monte_carlo_construct,
    polar_transform,
    run_point,
    run_sweep,
    save_spec,
    sc_decode,
    sc_decode_reference,
    scl_decode,
    snr_db_to_sigma,
)

__all__ = [
    "ChannelModel",
    "CodeSpec",
    "NumericError",
    "ParseError",
    "SclResult",
    "TrialStats",
    "__version__",
    "bhattacharyya_construct",
    "crc_compute",
    "crc_verify",
    "encode",
    "load_spec",
    "monte_carlo_construct",
    "polar_transform",
    "run_point",
    "run_sweep",
    "save_spec",
    "sc_decode",
    "sc_decode_reference",
    "scl_decode",
    "snr_db_to_sigma",
]
