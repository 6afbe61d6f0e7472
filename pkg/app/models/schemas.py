"""
JSON 문서 스키마 (입력 파일과 증인 파일)

표기 규약:
  - 체 원소: F_p 좌표 리스트 [c_0, c_1, …] (α^0 계수부터), 정수 하나는 소체 원소 k mod p
  - Laurent 다항식: [[지수, 계수], …] 지수 오름차순
  - 행렬: 행 우선 2차원 배열 (성분은 Laurent 다항식)
  - 유리수: "a/b" 문자열

@since 2026-10-16
"""
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Coeff = Union[int, list[int]]
PolyDoc = list[tuple[int, Coeff]]
MatrixDoc = list[list[PolyDoc]]
ResidueMatrixDoc = list[list[Coeff]]


class TowerDoc(BaseModel):
    """F_{q^m}, q = p^e"""
    p: int = Field(..., ge=2)
    e: int = Field(default=1, ge=1)
    m: int = Field(default=1, ge=1)


class IsocrystalDoc(BaseModel):
    """
    {base, b, n?, form?}

    form 은 상수 교대 Gram 행렬 (GSp 입력에서만)
    """
    base: TowerDoc
    b: MatrixDoc
    n: Optional[int] = None
    form: Optional[ResidueMatrixDoc] = None

    @model_validator(mode="after")
    def _square(self) -> "IsocrystalDoc":
        if not self.b or any(len(row) != len(self.b) for row in self.b):
            raise ValueError("b must be a nonempty square matrix")
        if self.n is not None and self.n != len(self.b):
            raise ValueError(f"n = {self.n} but b is {len(self.b)}x{len(self.b)}")
        return self


class LatticeDoc(BaseModel):
    base: TowerDoc
    basis: MatrixDoc


class ChainDoc(BaseModel):
    """{type, lattices: {i: matrix}, defect?}"""
    base: TowerDoc
    type: list[int]
    lattices: dict[str, MatrixDoc]
    defect: Optional[int] = None

    @model_validator(mode="after")
    def _indices(self) -> "ChainDoc":
        keys = sorted(int(k) for k in self.lattices)
        if not keys:
            raise ValueError("chain needs at least one lattice")
        if sorted(set(self.type)) != keys:
            raise ValueError(f"type {self.type} does not match lattice indices {keys}")
        return self


class WitnessDoc(BaseModel):
    """construct / construct-gsp 출력이자 hodge, mazur 입력"""
    isocrystal: IsocrystalDoc
    lattice: LatticeDoc
    mu: Optional[list[str]] = None
    method: Optional[str] = None
    transcript: list[str] = Field(default_factory=list)


class ChainInputDoc(BaseModel):
    """chain-extend / chain-check 입력"""
    isocrystal: IsocrystalDoc
    chain: ChainDoc
    r: int = Field(..., ge=0)


class LinkDoc(BaseModel):
    """노드 i 로 들어오는 φ_i (σ^sigma) 와 나가는 ψ_i (σ^tau)"""
    phi: ResidueMatrixDoc
    sigma: int
    psi: ResidueMatrixDoc
    tau: int


class DiagramDoc(BaseModel):
    """{base, f, m, maps, lines?}"""
    base: TowerDoc
    f: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    maps: list[LinkDoc]
    lines: Optional[list[list[Coeff]]] = None

    @model_validator(mode="after")
    def _sizes(self) -> "DiagramDoc":
        if len(self.maps) != self.f:
            raise ValueError(f"expected {self.f} maps, got {len(self.maps)}")
        if self.lines is not None and len(self.lines) != self.f:
            raise ValueError(f"expected {self.f} lines, got {len(self.lines)}")
        return self


class WeylElementDoc(BaseModel):
    """{lambda, w, group}"""
    model_config = ConfigDict(populate_by_name=True)

    lambda_: list[int] = Field(..., alias="lambda")
    w: list[int]
    group: str = "gl"


# ── 등급 문서 ──────────────────────────────────────────

class GradedIsocrystalDoc(BaseModel):
    """b[j]: N_{j-1} → N_j, base.m 은 f 의 배수"""
    base: TowerDoc
    f: int = Field(..., ge=1)
    b: list[MatrixDoc]
    form: Optional[ResidueMatrixDoc] = None

    @model_validator(mode="after")
    def _pieces(self) -> "GradedIsocrystalDoc":
        if len(self.b) != self.f:
            raise ValueError(f"expected {self.f} matrices, got {len(self.b)}")
        if self.base.m % self.f:
            raise ValueError(f"base.m = {self.base.m} is not a multiple of f = {self.f}")
        return self


class GradedLatticeDoc(BaseModel):
    base: TowerDoc
    members: list[MatrixDoc]


class GradedChainDoc(BaseModel):
    base: TowerDoc
    chains: list[ChainDoc]


class GradedChainInputDoc(BaseModel):
    isocrystal: GradedIsocrystalDoc
    chain: GradedChainDoc
    r: list[int]
