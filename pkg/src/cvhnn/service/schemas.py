"""Request/response models for the HTTP service.

The network document schema mirrors the on-disk JSON model format exactly
(same key names, same [re, im] pair encoding), so a file produced by the
CLI can be posted verbatim and a /weights response can be saved verbatim.
Deep shape checks (row lengths, pair arity, image membership) stay in the
core parsers; these models only enforce coarse structure and ranges.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from ..activations import ActivationSpec
from ..harness import DEFAULT_RECT, DEFAULT_STATE_SEED, DEFAULT_WEIGHT_SEED

Pair = tuple[float, float]


class ActivationModel(BaseModel):
    """Wire form of an activation: kind plus K/Q/R tuning fields."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["csign", "split_sign", "coceil", "cosign"]
    K: int = Field(default=1, ge=1)
    Q: int = Field(default=1, ge=1)
    R: float = Field(default=1.0, gt=0)
    boundary_epsilon: float = Field(default=0.0, ge=0)

    def to_spec(self) -> ActivationSpec:
        return ActivationSpec(self.kind, k=self.K, q=self.Q, r=self.R,
                              boundary_epsilon=self.boundary_epsilon)


class NetworkModelDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    activation: ActivationModel
    weights: list[list[Pair]]
    thresholds: list[Pair]


class GenerateWeightsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    seed: int = Field(ge=0)
    activation: ActivationModel


class ValidateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    network: NetworkModelDoc


class ValidationReport(BaseModel):
    is_hermitian: bool
    diagonal_real_nonneg: bool
    max_violation: float
    ok: bool


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    network: NetworkModelDoc
    mode: Literal["serial", "parallel"] = "serial"
    sweeps: int = Field(default=100, ge=1)
    order: Literal["cyclic", "random"] = "cyclic"
    order_seed: int = Field(default=0, ge=0)
    initial: list[Pair] | None = None
    init_seed: int = Field(default=0, ge=0)
    rect: Pair = DEFAULT_RECT
    disk_radius: float | None = Field(default=None, gt=0)


class TraceEntry(BaseModel):
    update: int
    neuron: int | None
    energy: float | None


class RunResponse(BaseModel):
    verdict: str
    outcome: str
    cycle_length: int | None
    settled_at: int | None
    updates: int
    final_state: list[Pair]
    final_energy: float | None
    trace: list[TraceEntry]


class ExperimentRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    activation: ActivationModel
    n: int = Field(default=10, ge=1)
    trials: int = Field(default=5, ge=1)
    sweeps: int = Field(default=5, ge=1)
    mode: Literal["serial", "parallel"] = "serial"
    weight_seed: int = Field(default=DEFAULT_WEIGHT_SEED, ge=0)
    state_seed: int = Field(default=DEFAULT_STATE_SEED, ge=0)
    rect: Pair = DEFAULT_RECT
    disk_radius: float | None = Field(default=None, gt=0)


class ExperimentResponse(BaseModel):
    report: dict
    trace_csv: str
    chart_svg: str


class HealthResponse(BaseModel):
    status: str
    version: str
