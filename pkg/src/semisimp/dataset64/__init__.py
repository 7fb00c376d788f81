"""The degree-64 field unramified outside 2: constants and an end-to-end replay."""

from .data import (
    CYCLIC_TUPLES,
    F64_TEXT,
    T_CHARPOLY,
    T_TRACES,
    Dataset,
    dataset,
    f64,
    parse_polynomial_text,
    surrogate_charpoly,
)
from .replay import Item, ReproductionReport, example_bundle, reproduce

__all__ = [
    "CYCLIC_TUPLES", "F64_TEXT", "T_CHARPOLY", "T_TRACES", "Dataset", "dataset", "f64",
    "parse_polynomial_text", "surrogate_charpoly",
    "Item", "ReproductionReport", "example_bundle", "reproduce",
]
