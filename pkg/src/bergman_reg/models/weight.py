"""Radial weight models using Pydantic."""

from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PowerWeight(BaseModel):
    """Standard weight lambda(r) = (1 - r^2)^t."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    family: Literal["power"] = "power"
    t: float = Field(..., gt=-1.0, description="Exponent, t > -1 keeps the weight integrable")


class ExponentialWeight(BaseModel):
    """Weight lambda(r) = (1 - r^2)^A exp(-B / (1 - r^2)^alpha)."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    family: Literal["exp"] = "exp"
    A: float = Field(..., ge=0.0, description="Polynomial exponent")
    B: float = Field(..., gt=0.0, description="Exponential rate")
    alpha: float = Field(..., gt=0.0, description="Blow-up order of the exponent")


class CutoffWeight(BaseModel):
    """Base weight multiplied by the smooth boundary cutoff chi_t."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    family: Literal["cutoff"] = "cutoff"
    t: float = Field(..., gt=0.0, lt=1.0, description="Width of the cutoff collar")
    base: PowerWeight | ExponentialWeight = Field(..., description="Non-cutoff base weight")

    @model_validator(mode="before")
    @classmethod
    def _reject_nesting(cls, data: object) -> object:
        if isinstance(data, dict):
            base = data.get("base")
            family = base.get("family") if isinstance(base, dict) else getattr(base, "family", None)
            if family == "cutoff":
                raise ValueError("cutoff weights cannot be nested")
        return data


RadialWeight = Annotated[
    PowerWeight | ExponentialWeight | CutoffWeight, Field(discriminator="family")
]
BaseWeight = PowerWeight | ExponentialWeight
