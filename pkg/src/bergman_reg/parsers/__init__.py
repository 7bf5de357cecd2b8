"""Text parsers for weight specifications and series JSON."""

from bergman_reg.parsers.series_json import (
    parse_holo_json,
    parse_series_json,
    series_to_dict,
    series_to_json,
)
from bergman_reg.parsers.weight_spec import format_weight_spec, parse_weight_spec

__all__ = [
    "format_weight_spec",
    "parse_holo_json",
    "parse_series_json",
    "parse_weight_spec",
    "series_to_dict",
    "series_to_json",
]
