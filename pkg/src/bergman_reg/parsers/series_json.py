"""JSON codec for monomial series.

Format: ``{"terms": [{"a": int, "b": int, "re": float, "im": float}, ...]}``;
holomorphic series use the same layout with every ``b`` equal to 0.
"""

import json
import logging
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from bergman_reg.models.series import HoloSeries, MonomialSeries

logger = logging.getLogger(__name__)


class _TermModel(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False)

    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    re: float = 0.0
    im: float = 0.0


class _SeriesModel(BaseModel):
    terms: list[_TermModel]


def parse_series_json(text: str) -> MonomialSeries:
    """Parse series JSON text.

    Raises:
        ValueError: If the text is not valid series JSON
    """
    try:
        payload = _SeriesModel.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]["msg"]
        raise ValueError(f"Invalid series JSON: {e.error_count()} error(s): {first}") from e
    series = MonomialSeries.from_terms(
        (term.a, term.b, complex(term.re, term.im)) for term in payload.terms
    )
    logger.debug(f"Parsed series with {len(series)} terms, degree {series.degree}")
    return series


def parse_holo_json(text: str) -> HoloSeries:
    """Parse series JSON that must be holomorphic."""
    return parse_series_json(text).to_holo()


def series_to_dict(series: MonomialSeries | HoloSeries) -> dict[str, Any]:
    if isinstance(series, HoloSeries):
        series = series.to_monomial()
    return {
        "terms": [
            {"a": a, "b": b, "re": c.real, "im": c.imag} for (a, b), c in series.items()
        ]
    }


def series_to_json(series: MonomialSeries | HoloSeries) -> str:
    return json.dumps(series_to_dict(series))
