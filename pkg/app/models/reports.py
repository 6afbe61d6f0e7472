"""
CLI 보고서 모델

모든 보고서는 model_dump(mode="json", by_alias=True) 후 키 정렬 JSON 으로 나간다.
transcript 필드는 --transcript 플래그가 있을 때만 채워진다.

@since 2026-10-16
"""
from typing import Any, Optional

from pydantic import BaseModel, Field

from app.models.schemas import (
    ChainDoc,
    GradedChainDoc,
    GradedIsocrystalDoc,
    GradedLatticeDoc,
    IsocrystalDoc,
    LatticeDoc,
    MatrixDoc,
    WeylElementDoc,
)

Vertex = tuple[int, str]


class NewtonReport(BaseModel):
    nu: list[str]
    certified: bool
    method: str
    bounds: list[tuple[int, list[int]]] = Field(default_factory=list)
    polygon: list[Vertex] = Field(default_factory=list)


class HodgeReport(BaseModel):
    mu: list[str]
    polygon: list[Vertex] = Field(default_factory=list)
    transcript: list[str] = Field(default_factory=list)


class MazurReportModel(BaseModel):
    newton: NewtonReport
    hodge: list[str]
    verdict: bool
    kappa_ok: bool
    newton_polygon: list[Vertex]
    hodge_polygon: list[Vertex]


class BGMuReport(BaseModel):
    """[b] ∈ B(G, μ); verdict 가 None 이면 ν̄ 미인증"""
    mu: list[str]
    nu: list[str]
    group: str
    verdict: Optional[bool]
    certified: bool


class WitnessReport(BaseModel):
    """construct 출력. 그대로 hodge 입력이 된다"""
    isocrystal: IsocrystalDoc
    lattice: LatticeDoc
    mu: list[str]
    method: str
    field_degree: int
    transcript: list[str] = Field(default_factory=list)


class ChainReport(BaseModel):
    """chain-build / chain-extend 출력. 그대로 chain-check 입력이 된다"""
    isocrystal: IsocrystalDoc
    chain: ChainDoc
    r: int
    steps: list[dict[str, Any]] = Field(default_factory=list)


class MembershipReport(BaseModel):
    member: bool
    type: list[int]
    r: Any
    defect: Optional[int] = None


class SolutionReport(BaseModel):
    lines: list[list[list[int]]]
    field_degree: int
    base: dict[str, int]
    transcript: list[str] = Field(default_factory=list)


class IncidenceCheckReport(BaseModel):
    valid: bool
    failing_index: Optional[int] = None


class AdmReport(BaseModel):
    mu: list[str]
    group: str
    types: Optional[list[int]] = None
    count: int
    elements: list[WeylElementDoc]
    flagged: bool
    notes: list[str] = Field(default_factory=list)
    permissible_count: Optional[int] = None
    realised_count: Optional[int] = None
    adm_equals_perm: Optional[bool] = None
    adm_equals_realised: Optional[bool] = None


class HodgeSetReport(BaseModel):
    nu: list[str]
    window: int
    observed: list[list[str]]
    predicted: list[list[str]]
    missing: list[list[str]]
    unexpected: list[list[str]]
    agrees: bool


class GradedWitnessReport(BaseModel):
    isocrystal: GradedIsocrystalDoc
    lattice: GradedLatticeDoc
    mu: list[list[str]]
    chain: list[MatrixDoc]
    method: str
    field_degree: int
    transcript: list[str] = Field(default_factory=list)


class GradedChainReport(BaseModel):
    isocrystal: GradedIsocrystalDoc
    chain: GradedChainDoc
    r: list[int]
    steps: list[dict[str, Any]] = Field(default_factory=list)


class EmptyResult(BaseModel):
    """검증된 수학적 부정 결과 (예: X(μ, b) = ∅)"""
    empty: bool = True
    reason: str
    detail: dict[str, Any] = Field(default_factory=dict)


class ErrorReport(BaseModel):
    error: str
    message: str
    detail: dict[str, Any] = Field(default_factory=dict)
