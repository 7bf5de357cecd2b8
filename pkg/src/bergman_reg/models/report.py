"""Result models for kernels, norms and regularity sweeps."""

from pydantic import BaseModel, ConfigDict, Field

from bergman_reg.models.weight import RadialWeight


class KernelEval(BaseModel):
    """Truncated kernel value with a certified tail bound."""

    model_config = ConfigDict(frozen=True)

    re: float = Field(..., description="Real part of the truncated series")
    im: float = Field(..., description="Imaginary part of the truncated series")
    N: int = Field(..., ge=0, description="Last index kept in the series")
    tail_bound: float = Field(..., ge=0.0, description="Bound on the discarded tail, inf if none")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class MultiIndexTerm(BaseModel):
    """Squared lambda-norm of one mixed derivative."""

    model_config = ConfigDict(frozen=True)

    b1: int = Field(..., ge=0, description="Order of d/dz")
    b2: int = Field(..., ge=0, description="Order of d/dzbar")
    sq: float = Field(..., ge=0.0, description="Squared norm of the derivative")


class SobolevResult(BaseModel):
    """Weighted Sobolev norm with its per-multi-index decomposition."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=0)
    total: float = Field(..., ge=0.0)
    terms: list[MultiIndexTerm] = Field(default_factory=list)

    @property
    def per_multiindex(self) -> dict[tuple[int, int], float]:
        return {(term.b1, term.b2): term.sq for term in self.terms}


class LogConvexityViolation(BaseModel):
    n: int
    j: int
    excess: float = Field(..., description="2 log_mu[n+j] - log_mu[n] - log_mu[n+2j]")


class LogConvexityReport(BaseModel):
    j_max: int
    checked: int = Field(..., description="Number of (n, j) pairs inspected")
    violations: list[LogConvexityViolation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class IdentityReport(BaseModel):
    """Radial Wirtinger identity residuals over sampled points."""

    weight: RadialWeight
    l: int
    points: int
    seed: int
    max_residual: float
    max_relative: float


class PlateauCheck(BaseModel):
    j: int
    n_mid: int
    n_end: int
    bracket_mid: float
    bracket_end: float
    sweep_max: float
    rel_change: float
    ok: bool


class RegularityReport(BaseModel):
    """Constants of the regularity argument for one weight."""

    j: int = Field(..., ge=1)
    N: int = Field(..., ge=1)
    bracket_sup: float = Field(..., gt=0.0, description="sup over 1 <= n <= N of the bracket")
    bracket_argmax: int
    opnorm_bound: float = Field(..., gt=0.0, description="sqrt(bracket_sup)")
    opnorm_exact: float = Field(..., gt=0.0, description="Operator norm of M_j on degree <= N")
    bracket_tail: float = Field(..., gt=0.0, description="Bracket at n = N")
    d_j_estimate: float | None = Field(default=None, ge=0.0)
    k: int | None = Field(default=None, ge=0)
    theorem_max_ratio: float | None = Field(default=None, ge=0.0)
    samples: int = Field(default=0, ge=0)
    seed: int = Field(default=42, ge=0)


class DjEstimate(BaseModel):
    j: int
    estimate: float
    samples: int
    used: int = Field(..., description="Samples that were not skipped")
    seed: int
    ratios: list[float] = Field(default_factory=list)


class TheoremSweep(BaseModel):
    """Ratios ||B f||_k / ||f||_k over random test functions."""

    k: int
    degree: int
    samples: int
    seed: int
    max_ratio: float
    per_sample: list[float] = Field(default_factory=list)
    skipped: int = 0


class TruncatedEstimate(BaseModel):
    lhs: float
    rhs: float
    ratio: float | None
    ok: bool


class ConvergenceRow(BaseModel):
    t: float
    n: int
    log_alpha_t: float
    log_alpha: float
    rel_gap: float = Field(..., ge=0.0)


class ConvergenceReport(BaseModel):
    """Bergman coefficients of cutoff weights against their base weight."""

    base: RadialWeight
    rows: list[ConvergenceRow] = Field(default_factory=list)
    monotone: dict[int, bool] = Field(default_factory=dict)

    @property
    def non_monotone(self) -> list[int]:
        return [n for n, flag in self.monotone.items() if not flag]

    def gaps(self, n: int) -> list[float]:
        return [row.rel_gap for row in self.rows if row.n == n]


class CutoffBracketRow(BaseModel):
    t: float | None = Field(..., description="None for the base weight")
    bracket_sup: float
    bracket_argmax: int


class TruncatedLimitRow(BaseModel):
    t: float | None = Field(..., description="None for the base weight")
    value: float = Field(..., description="||S_N d^j B f||^2 in the weight's own norm")
    sobolev: float = Field(..., description="||f||_{j} in the weight's own norm")


class TruncatedLimitReport(BaseModel):
    j: int
    N: int
    rows: list[TruncatedLimitRow] = Field(default_factory=list)
