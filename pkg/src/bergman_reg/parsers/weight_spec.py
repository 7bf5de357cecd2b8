"""Parser for weight specification strings.

Grammar::

    spec  := "power:t=" FLOAT
           | "exp:A=" FLOAT ",B=" FLOAT ",alpha=" FLOAT
           | "cutoff:t=" FLOAT ";base=" spec

Whitespace is not allowed anywhere.
"""

import logging
import re

from pydantic import ValidationError

from bergman_reg.exceptions import NestingError, WeightDomainError, WeightSpecError
from bergman_reg.models.weight import CutoffWeight, ExponentialWeight, PowerWeight, RadialWeight

logger = logging.getLogger(__name__)

_FLOAT = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_POWER_RE = re.compile(rf"power:t=({_FLOAT})")
_EXP_RE = re.compile(rf"exp:A=({_FLOAT}),B=({_FLOAT}),alpha=({_FLOAT})")
_CUTOFF_RE = re.compile(rf"cutoff:t=({_FLOAT});base=(.+)")


def parse_weight_spec(spec: str) -> RadialWeight:
    """Parse a weight specification into a RadialWeight.

    Args:
        spec: Specification string, e.g. ``cutoff:t=0.1;base=power:t=0``

    Returns:
        The corresponding weight model

    Raises:
        WeightSpecError: If the string does not follow the grammar
        WeightDomainError: If a parameter is outside its admissible range
        NestingError: If a cutoff is applied to another cutoff
    """
    if any(ch.isspace() for ch in spec):
        raise WeightSpecError(f"Whitespace is not allowed in weight spec: {spec!r}")

    if match := _POWER_RE.fullmatch(spec):
        return _build(PowerWeight, spec, t=float(match.group(1)))

    if match := _EXP_RE.fullmatch(spec):
        return _build(
            ExponentialWeight,
            spec,
            A=float(match.group(1)),
            B=float(match.group(2)),
            alpha=float(match.group(3)),
        )

    if match := _CUTOFF_RE.fullmatch(spec):
        base = parse_weight_spec(match.group(2))
        if isinstance(base, CutoffWeight):
            raise NestingError(f"Cutoff of a cutoff weight is not supported: {spec!r}")
        return _build(CutoffWeight, spec, t=float(match.group(1)), base=base)

    raise WeightSpecError(f"Malformed weight spec: {spec!r}")


def format_weight_spec(weight: RadialWeight) -> str:
    """Render a weight back into the specification grammar."""
    if isinstance(weight, PowerWeight):
        return f"power:t={weight.t!r}"
    if isinstance(weight, ExponentialWeight):
        return f"exp:A={weight.A!r},B={weight.B!r},alpha={weight.alpha!r}"
    return f"cutoff:t={weight.t!r};base={format_weight_spec(weight.base)}"


def _build(model: type, spec: str, **params: object) -> RadialWeight:
    try:
        weight: RadialWeight = model(**params)
    except ValidationError as e:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise WeightDomainError(f"Parameter out of range in {spec!r}: {details}") from e
    logger.debug(f"Parsed weight spec {spec!r} -> {weight!r}")
    return weight
