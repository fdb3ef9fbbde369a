"""Base noun phrase chunking with combined classifiers."""

from ._npchunk import (
    ChunkModel,
    ConfigError,
    FormatError,
    InvalidArgument,
    NpchunkError,
    convert,
    decode,
    encode,
    evaluate,
    f_beta,
    generate_corpus,
    pair_brackets,
    run_experiment,
    to_brackets,
    vote,
)

__all__ = [
    "ChunkModel",
    "ConfigError",
    "FormatError",
    "InvalidArgument",
    "NpchunkError",
    "convert",
    "decode",
    "encode",
    "evaluate",
    "f_beta",
    "generate_corpus",
    "pair_brackets",
    "run_experiment",
    "to_brackets",
    "vote",
]
