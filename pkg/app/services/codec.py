"""
JSON 문서 ↔ 도메인 객체 변환

역할:
  - CLI 인자 (인라인 JSON 또는 @경로) 를 읽어 pydantic 문서로 검증
  - 문서를 FieldTower / Matrix / Lattice / LatticeChain / CircularDiagram 등으로 변환
  - 결과 객체를 다시 문서로 (격자는 항상 정규형으로 출력)

잘못된 JSON 과 스키마 위반은 모두 InvalidInputError 로 바뀐다.

@since 2026-10-16
"""
import json
from pathlib import Path
from typing import Any, Optional, Sequence, TypeVar

from pydantic import BaseModel, ValidationError

from app.algebra import matrix as mx
from app.algebra.arith import FieldTower, LaurentPoly, field_tower, int_to_field
from app.algebra.coweight import Coweight
from app.algebra.matrix import Matrix
from app.crystal.isocrystal import Isocrystal
from app.incidence.diagram import CircularDiagram
from app.lattice.chain import LatticeChain
from app.lattice.lattice import Lattice, SymplecticForm, normalize
from app.models.schemas import (
    ChainDoc,
    Coeff,
    DiagramDoc,
    GradedChainDoc,
    GradedIsocrystalDoc,
    GradedLatticeDoc,
    IsocrystalDoc,
    LatticeDoc,
    MatrixDoc,
    PolyDoc,
    ResidueMatrixDoc,
    TowerDoc,
)
from app.resscalars.chains import GradedChain
from app.resscalars.graded import GradedIsocrystal, GradedLattice
from app.utils.errors import InvalidInputError

DocT = TypeVar("DocT", bound=BaseModel)


# ── 읽기 ──────────────────────────────────────────

def load_json(arg: str) -> Any:
    """
    인라인 JSON 또는 '@경로' 를 읽는다.

    Raises:
        InvalidInputError: 파일이 없거나 JSON 이 잘못됨 (줄/열 위치 포함)
    """
    source = "<inline>"
    text = arg
    if arg.startswith("@"):
        path = Path(arg[1:])
        source = str(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise InvalidInputError(f"cannot read {path}: {e.strerror}", {"path": source})
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(
            f"malformed JSON in {source}: {e.msg}",
            {"source": source, "line": e.lineno, "column": e.colno, "position": e.pos},
        )


def parse_doc(model: type[DocT], arg: str) -> DocT:
    return validate_doc(model, load_json(arg))


def validate_doc(model: type[DocT], data: Any) -> DocT:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        errors = e.errors(include_url=False, include_context=False, include_input=False)
        raise InvalidInputError(f"invalid {model.__name__}: {e.error_count()} error(s)", {"errors": errors})


def parse_coweight(text: str) -> Coweight:
    """'1/2,1/2,0' 또는 JSON 배열"""
    text = text.strip()
    try:
        values = json.loads(text) if text.startswith("[") else [x for x in text.split(",") if x.strip()]
        return Coweight.of(values)
    except (ValueError, ZeroDivisionError, json.JSONDecodeError) as e:
        raise InvalidInputError(f"cannot parse coweight {text!r}: {e}")


def parse_graded_coweight(text: str) -> list[Coweight]:
    """부분을 ';' 로 구분: '1,0;1,0'"""
    return [parse_coweight(part) for part in text.split(";")]


def parse_ints(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"expected a comma separated list of integers, got {text!r}")


# ── 체와 행렬 ──────────────────────────────────────────

def tower_from_doc(doc: TowerDoc) -> FieldTower:
    return field_tower(doc.p, doc.e, doc.m)


def tower_to_doc(tower: FieldTower) -> TowerDoc:
    return TowerDoc(p=tower.p, e=tower.e, m=tower.m)


def coeff_from_doc(tower: FieldTower, c: Coeff) -> int:
    field = tower.field
    if isinstance(c, int):
        return int_to_field(field, c)
    if len(c) > field.degree:
        raise InvalidInputError(f"{len(c)} coordinates given for F_{field.order}")
    return field.from_digits(list(c) + [0] * (field.degree - len(c)))


def coeff_to_doc(tower: FieldTower, a: int) -> list[int]:
    return tower.field.digits(a)


def poly_from_doc(tower: FieldTower, doc: PolyDoc) -> LaurentPoly:
    return LaurentPoly(tower, [(e, coeff_from_doc(tower, c)) for e, c in doc])


def poly_to_doc(f: LaurentPoly) -> list[list[Any]]:
    return [[e, coeff_to_doc(f.tower, c)] for e, c in f.terms]


def matrix_from_doc(tower: FieldTower, doc: MatrixDoc) -> Matrix:
    width = len(doc[0]) if doc else 0
    if not doc or any(len(row) != width for row in doc):
        raise InvalidInputError("matrix rows must be nonempty and of equal length")
    return mx.as_matrix([poly_from_doc(tower, x) for x in row] for row in doc)


def matrix_to_doc(A: Matrix) -> list[list[list[list[Any]]]]:
    return [[poly_to_doc(x) for x in row] for row in A]


def residue_from_doc(tower: FieldTower, doc: ResidueMatrixDoc) -> list[list[int]]:
    return [[coeff_from_doc(tower, c) for c in row] for row in doc]


def residue_to_doc(tower: FieldTower, rows: Sequence[Sequence[int]]) -> list[list[list[int]]]:
    return [[coeff_to_doc(tower, a) for a in row] for row in rows]


# ── 아이소크리스탈과 격자 ──────────────────────────────────────────

def form_from_doc(tower: FieldTower, doc: Optional[ResidueMatrixDoc]) -> Optional[SymplecticForm]:
    if doc is None:
        return None
    return SymplecticForm.of(tower, residue_from_doc(tower, doc))


def isocrystal_from_doc(doc: IsocrystalDoc) -> tuple[Isocrystal, Optional[SymplecticForm]]:
    tower = tower_from_doc(doc.base)
    return Isocrystal(tower, matrix_from_doc(tower, doc.b)), form_from_doc(tower, doc.form)


def isocrystal_to_doc(X: Isocrystal, form: Optional[SymplecticForm] = None) -> IsocrystalDoc:
    gram = None
    if form is not None:
        form = form.embed(X.tower) if form.tower is not X.tower else form
        gram = residue_to_doc(X.tower, form.gram)
    return IsocrystalDoc(base=tower_to_doc(X.tower), b=matrix_to_doc(X.b), n=X.n, form=gram)


def lattice_from_doc(doc: LatticeDoc, tower: Optional[FieldTower] = None) -> Lattice:
    """기저 열들이 생성하는 격자 (정규형으로 다시 쓴다)"""
    own = tower_from_doc(doc.base)
    M = normalize(matrix_from_doc(own, doc.basis))
    if tower is not None and tower is not own:
        M = M.embed(tower)
    return M


def lattice_to_doc(M: Lattice) -> LatticeDoc:
    return LatticeDoc(base=tower_to_doc(M.tower), basis=matrix_to_doc(M.basis))


def chain_from_doc(doc: ChainDoc, tower: Optional[FieldTower] = None) -> LatticeChain:
    own = tower_from_doc(doc.base)
    members = {}
    for key, basis in doc.lattices.items():
        M = normalize(matrix_from_doc(own, basis))
        members[int(key)] = M.embed(tower) if tower is not None and tower is not own else M
    return LatticeChain.from_members(members, doc.defect)


def chain_to_doc(chain: LatticeChain) -> ChainDoc:
    return ChainDoc(
        base=tower_to_doc(chain.tower),
        type=list(chain.type),
        lattices={str(i): matrix_to_doc(M.basis) for i, M in chain.members},
        defect=chain.defect,
    )


# ── 원형 도표 ──────────────────────────────────────────

def diagram_from_doc(doc: DiagramDoc) -> CircularDiagram:
    tower = tower_from_doc(doc.base)
    for i, link in enumerate(doc.maps):
        for name, rows in (("phi", link.phi), ("psi", link.psi)):
            if len(rows) != doc.m or any(len(r) != doc.m for r in rows):
                raise InvalidInputError(f"{name}_{i} must be {doc.m}x{doc.m}", {"index": i})
    return CircularDiagram.of(
        tower,
        [residue_from_doc(tower, link.phi) for link in doc.maps],
        [residue_from_doc(tower, link.psi) for link in doc.maps],
        [link.sigma for link in doc.maps],
        [link.tau for link in doc.maps],
    )


def lines_from_doc(tower: FieldTower, doc: Sequence[Sequence[Coeff]]) -> list[list[int]]:
    return [[coeff_from_doc(tower, c) for c in x] for x in doc]


def lines_to_doc(tower: FieldTower, lines: Sequence[Sequence[int]]) -> list[list[list[int]]]:
    return [[coeff_to_doc(tower, a) for a in x] for x in lines]


# ── 등급 ──────────────────────────────────────────

def graded_isocrystal_from_doc(doc: GradedIsocrystalDoc) -> tuple[GradedIsocrystal, Optional[SymplecticForm]]:
    tower = tower_from_doc(doc.base)
    X = GradedIsocrystal(tower, tuple(matrix_from_doc(tower, b) for b in doc.b))
    return X, form_from_doc(tower, doc.form)


def graded_isocrystal_to_doc(X: GradedIsocrystal, form: Optional[SymplecticForm] = None) -> GradedIsocrystalDoc:
    gram = None
    if form is not None:
        form = form.embed(X.tower) if form.tower is not X.tower else form
        gram = residue_to_doc(X.tower, form.gram)
    return GradedIsocrystalDoc(
        base=tower_to_doc(X.tower), f=X.f, b=[matrix_to_doc(b) for b in X.bs], form=gram
    )


def graded_lattice_to_doc(GM: GradedLattice) -> GradedLatticeDoc:
    return GradedLatticeDoc(base=tower_to_doc(GM.tower), members=[matrix_to_doc(M.basis) for M in GM.members])


def graded_chain_from_doc(doc: GradedChainDoc, tower: Optional[FieldTower] = None) -> GradedChain:
    return GradedChain.of([chain_from_doc(c, tower) for c in doc.chains])


def graded_chain_to_doc(GC: GradedChain) -> GradedChainDoc:
    return GradedChainDoc(base=tower_to_doc(GC.chain(0).tower), chains=[chain_to_doc(c) for c in GC.chains])


# ── 출력 ──────────────────────────────────────────

def dump_json(payload: Any) -> str:
    """키 정렬 JSON (pydantic 모델은 alias 기준으로 덤프)"""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)
