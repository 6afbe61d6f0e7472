"""
원형 도표의 직선 모음 ℓ_i ⊂ W_i 찾기: φ_iℓ_{i-1} ⊂ ℓ_i, ψ_iℓ_i ⊂ ℓ_{i-1}

순서:
    1. f = 1: 두 경우 (φ 가역이면 고유직선, 아니면 ψ|ker φ)
    2. ψ_j 가역 → W_{j-1} ≅ W_j 로 묶어 f − 1 로 줄임 (φ_j 가역이면 거울 축약)
    3. Φ 가 im Φ ≠ 0 위에서 가역 → Φ 고유직선을 φ 로 밀어 보냄
    4. 나머지: W_0 직선부터 깊이 우선 탐색, 실패하면 작업체 확대

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional, Sequence

from app.algebra import semilinear as ff
from app.algebra.arith import FieldTower, FiniteField
from app.algebra.semilinear import SemilinearMap
from app.incidence.diagram import CircularDiagram, Link, validate
from app.models.search import SearchConfig
from app.utils.errors import BudgetExhaustedError, InvalidInputError
from app.utils.logger import log

_NO_EIGENVECTOR = "such an eigenvector need not exist without hypotheses on the field"


@dataclass(frozen=True)
class LineSolution:
    lines: tuple[tuple[int, ...], ...]
    tower: FieldTower
    transcript: tuple[str, ...] = field(default=())

    @property
    def field_degree(self) -> int:
        return self.tower.m


# ── 직선 도구 ──────────────────────────────────────────

def canonical_line(field_: FiniteField, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(ff.normalize_vector(field_, x))


def in_line(field_: FiniteField, y: Sequence[int], x: Sequence[int]) -> bool:
    """y ∈ span(x) (x ≠ 0)"""
    return not any(y) or ff.rank(field_, [list(x), list(y)]) == 1


def projective_points(field_: FiniteField, m: int) -> Iterator[tuple[int, ...]]:
    """첫 0 아닌 좌표가 1 인 벡터 전체 (정규 순서)"""
    elements = list(field_.elements())
    for lead in range(m):
        for tail in product(elements, repeat=m - lead - 1):
            yield (0,) * lead + (1,) + tuple(tail)


def verify_lines(diagram: CircularDiagram, lines: Sequence[Sequence[int]]) -> Optional[int]:
    """조건을 깨는 첫 인덱스, 모두 만족하면 None"""
    field_ = diagram.tower.field
    f = diagram.f
    for i in range(f):
        prev = lines[(i - 1) % f]
        cur = lines[i]
        if not any(cur):
            return i
        if not in_line(field_, diagram.phi(i).apply(prev), cur):
            return i
        if not in_line(field_, diagram.psi(i).apply(cur), prev):
            return i
    return None


# ── 고유직선 ──────────────────────────────────────────

def semilinear_eigenline(
    tower: FieldTower,
    A: Sequence[Sequence[int]],
    power: int,
    cfg: Optional[SearchConfig] = None,
) -> tuple[FieldTower, tuple[int, ...]]:
    """
    A·σ^power 로 자기 자신에 가는 직선.

    power ≠ 0 이면 고정 벡터 Aσ^k x = x (없으면 작업체 확대),
    power = 0 이면 작업체 안의 고윳값 λ 에 대한 고유벡터.

    Raises:
        BudgetExhaustedError: field_cap 까지 찾지 못함
    """
    cfg = cfg or SearchConfig()
    n = len(A)
    if power:
        try:
            target, x = ff.fixed_vector_extending(tower, A, power, 1, cfg.field_cap)
        except BudgetExhaustedError as e:
            raise BudgetExhaustedError("field-extension", _NO_EIGENVECTOR, field_cap=cfg.field_cap) from e
        return target, canonical_line(target.field, x)

    k = 1
    while tower.m * k <= max(cfg.field_cap, tower.m):
        target = tower.extend(k)
        field_ = target.field
        rows = ff.embed_rows(tower, target, A)
        for lam in field_.elements():
            if not lam:
                continue
            shifted = [[field_.sub(rows[i][j], lam if i == j else 0) for j in range(n)] for i in range(n)]
            kernel = ff.null_space(field_, shifted, n)
            if kernel:
                return target, canonical_line(field_, kernel[0])
        k += 1
    raise BudgetExhaustedError("field-extension", _NO_EIGENVECTOR, field_cap=cfg.field_cap)


# ── 축약 ──────────────────────────────────────────

def _reduce_psi(diagram: CircularDiagram, j: int) -> tuple[CircularDiagram, int]:
    """ψ_j 로 W_{j-1} 을 W_j 에 묶는다. 제거된 노드 번호를 함께 돌려준다."""
    f = diagram.f
    a = (j - 1) % f
    inv = diagram.psi(j).inverse()
    new = Link(inv.compose(diagram.phi(j - 1)), diagram.psi(j - 1).compose(diagram.psi(j)))
    links = [new if i == j % f else diagram.links[i] for i in range(f) if i != a]
    return diagram.with_links(links), a


def _reduce_phi(diagram: CircularDiagram, j: int) -> tuple[CircularDiagram, int]:
    """φ_j 로 W_j 를 W_{j-1} 에 묶는다 (거울 축약)."""
    f = diagram.f
    a = j % f
    inv = diagram.phi(j).inverse()
    new = Link(diagram.phi(j + 1).compose(diagram.phi(j)), inv.compose(diagram.psi(j + 1)))
    links = [new if i == (j + 1) % f else diagram.links[i] for i in range(f) if i != a]
    return diagram.with_links(links), a


def _insert(lines: list[tuple[int, ...]], a: int, line: tuple[int, ...]) -> list[tuple[int, ...]]:
    return lines[:a] + [line] + lines[a:]


# ── 풀이 ──────────────────────────────────────────

def _solve_single(diagram: CircularDiagram, cfg: SearchConfig, notes: list[str]) -> tuple[FieldTower, list[tuple[int, ...]]]:
    tower = diagram.tower
    field_ = tower.field
    phi, psi = diagram.phi(0), diagram.psi(0)
    if phi.is_bijective():
        notes.append("f=1: eigenline of phi")
        target, x = semilinear_eigenline(tower, phi.matrix, phi.power, cfg)
        return target, [x]
    K = phi.kernel()
    cols = ff.transpose(K)
    images = ff.transpose([psi.apply(v) for v in K])
    coords = ff.solve(field_, cols, images)
    if coords is None:
        raise InvalidInputError("psi does not map into ker phi")
    B = SemilinearMap.of(tower, coords, psi.power)
    if not B.is_bijective():
        notes.append("f=1: kernel line of psi on ker phi")
        y = B.kernel()[0]
        return tower, [canonical_line(field_, ff.mat_vec(field_, cols, y))]
    notes.append("f=1: eigenline of psi on ker phi")
    target, y = semilinear_eigenline(tower, B.matrix, B.power, cfg)
    x = ff.mat_vec(target.field, ff.embed_rows(tower, target, cols), y)
    return target, [canonical_line(target.field, x)]


def _eigenline_path(diagram: CircularDiagram, cfg: SearchConfig, notes: list[str]) -> Optional[tuple[FieldTower, list[tuple[int, ...]]]]:
    Phi = diagram.Phi()
    rank = Phi.rank()
    if not rank or Phi.compose(Phi).rank() != rank:
        return None
    tower = diagram.tower
    field_ = tower.field
    U = ff.column_space_basis(field_, Phi.matrix)
    images = Phi.apply_columns(U)
    coords = ff.solve(field_, U, images)
    if coords is None:
        return None
    notes.append(f"eigenline of Phi on im Phi (rank {rank})")
    target, y = semilinear_eigenline(tower, coords, Phi.power, cfg)
    D = diagram.embed(target)
    x0 = ff.mat_vec(target.field, ff.embed_rows(tower, target, U), y)
    lines = [canonical_line(target.field, x0)]
    for i in range(1, D.f):
        lines.append(canonical_line(target.field, D.phi(i).apply(lines[-1])))
    return target, lines


def _dfs(diagram: CircularDiagram) -> Optional[list[tuple[int, ...]]]:
    field_ = diagram.tower.field
    m, f = diagram.m, diagram.f
    points = list(projective_points(field_, m))

    def extend(lines: list[tuple[int, ...]]) -> Optional[list[tuple[int, ...]]]:
        i = len(lines)
        prev = lines[-1]
        if i == f:
            return lines if verify_lines(diagram, lines) is None else None
        forced = diagram.phi(i).apply(prev)
        candidates = [canonical_line(field_, forced)] if any(forced) else points
        for cur in candidates:
            if in_line(field_, diagram.psi(i).apply(cur), prev):
                out = extend(lines + [cur])
                if out is not None:
                    return out
        return None

    for start in points:
        out = extend([start])
        if out is not None:
            return out
    return None


def _solve(diagram: CircularDiagram, cfg: SearchConfig, notes: list[str]) -> tuple[FieldTower, list[tuple[int, ...]]]:
    if diagram.f == 1:
        return _solve_single(diagram, cfg, notes)

    for j in range(diagram.f):
        if diagram.psi(j).is_bijective():
            notes.append(f"reduce: psi_{j} identifies W_{(j - 1) % diagram.f} with W_{j}")
            reduced, a = _reduce_psi(diagram, j)
            tower, lines = _solve(reduced, cfg, notes)
            D = diagram.embed(tower)
            line = canonical_line(tower.field, D.psi(j).apply(lines[reduced_position(a, j, diagram.f)]))
            return tower, _insert(lines, a, line)
        if diagram.phi(j).is_bijective():
            notes.append(f"mirror reduction: phi_{j} identifies W_{j} with W_{(j - 1) % diagram.f}")
            reduced, a = _reduce_phi(diagram, j)
            tower, lines = _solve(reduced, cfg, notes)
            D = diagram.embed(tower)
            prev = (j - 1) % diagram.f
            line = canonical_line(tower.field, D.phi(j).apply(lines[prev if prev < a else prev - 1]))
            return tower, _insert(lines, a, line)

    found = _eigenline_path(diagram, cfg, notes)
    if found is not None:
        return found

    k = 1
    base = diagram.tower
    while base.m * k <= max(cfg.field_cap, base.m):
        D = diagram.extend(k) if k > 1 else diagram
        lines = _dfs(D)
        if lines is not None:
            notes.append(f"depth-first search over lines (m={D.tower.m})")
            return D.tower, lines
        k += 1
    raise BudgetExhaustedError("field-extension", _NO_EIGENVECTOR, field_cap=cfg.field_cap)


def reduced_position(removed: int, node: int, f: int) -> int:
    """노드 하나를 지운 뒤 원래 node 의 위치"""
    node %= f
    return node if node < removed else node - 1


def solve_lines(diagram: CircularDiagram, cfg: Optional[SearchConfig] = None) -> LineSolution:
    """
    Raises:
        InvalidInputError: 도표 조건 위반
        BudgetExhaustedError: field_cap 안에서 해를 찾지 못함
    """
    cfg = cfg or SearchConfig()
    validate(diagram)
    notes: list[str] = []
    tower, lines = _solve(diagram, cfg, notes)
    D = diagram.embed(tower)
    bad = verify_lines(D, lines)
    if bad is not None:
        raise InvalidInputError(f"internal check failed: lines violate incidence at index {bad}")
    if tower is not diagram.tower:
        notes.append(f"field extended to m={tower.m}")
    log.debug(f"[incidence] solved f={diagram.f}, m={diagram.m}: {'; '.join(notes)}")
    return LineSolution(tuple(tuple(x) for x in lines), tower, tuple(notes))


def brute_force_lines(diagram: CircularDiagram) -> list[tuple[tuple[int, ...], ...]]:
    """작업체 위 모든 해 (검증용)"""
    points = list(projective_points(diagram.tower.field, diagram.m))
    return [lines for lines in product(points, repeat=diagram.f) if verify_lines(diagram, lines) is None]
