"""
Pydantic v2 models for everything the CLI prints as JSON.
"""

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

# Exact value, [lo, hi] interval (hi may be null) or null for NotDefined / not computed
BoundValue = Optional[Union[int, list[Optional[int]]]]


class Witness(BaseModel):
    labels: Optional[list[int]] = None
    edge_labels: Optional[list[list[int]]] = None


class ComputeResult(BaseModel):
    graph: str
    name: str = ""
    what: Literal["number", "index", "aut"]
    value: Optional[int]
    defined: bool = True
    group_order: int
    orbits: Optional[list[list[int]]] = None
    witness: Optional[Witness] = None
    verified: Optional[bool] = None
    runtime_s: Optional[float] = None


class GammaClassModel(BaseModel):
    members: list[list[int]]
    tag: Literal["merged", "left_only", "right_only"]


class CoverModel(BaseModel):
    pairs: list[list[int]]
    bipartite: list[list[int]]
    epsilon: BoundValue = None


class GammaCertificate(BaseModel):
    A: list[list[int]]
    B: list[list[int]]
    gamma: list[GammaClassModel]
    q: int
    z: Optional[int] = None
    lambda1: Optional[int] = None
    lambda2: BoundValue = None
    witness: Optional[CoverModel] = None


class BoundEntry(BaseModel):
    theorem: str
    kind: Literal["upper", "lower", "sandwich", "equality", "value"] = "upper"
    applicable: bool
    bound: BoundValue = None
    exact: Optional[int] = None
    holds: Optional[bool] = None
    tight: Optional[bool] = None
    hypothesis_violated: bool = False
    reason: Optional[str] = None
    detail: dict = Field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.applicable and self.holds is False and not self.hypothesis_violated


class Descriptors(BaseModel):
    n: int
    m: int
    delta1: int
    delta2: int
    k: int
    k_prime: int
    q: int
    z: Optional[int] = None
    lambda1: Optional[int] = None
    lambda2: BoundValue = None
    cover_pairs: Optional[list[list[int]]] = None


class BoundReport(BaseModel):
    left: str
    right: str
    descriptors: Descriptors
    entries: list[BoundEntry]
    violations: list[str] = []

    @property
    def ok(self) -> bool:
        return not self.violations


class CheckOutcome(BaseModel):
    theorem: str
    instance: str
    passed: bool
    skipped: bool = False
    detail: dict = Field(default_factory=dict)
    elapsed_s: Optional[float] = None


class RunManifest(BaseModel):
    tool_version: str
    command: str
    caps: dict
    input_digests: list[str] = []
    entries: list[CheckOutcome] = []
    passed: bool = True
    failure: Optional[dict] = None
