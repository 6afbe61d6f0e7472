"""
Mazur 부등식 검사와 역방향 (주어진 μ 에 대한 격자 존재) 증인 구성

구성 순서:
    1. 분해 가능 (Hodge 다각형이 Newton 꺾임점을 모두 지남):
       블록마다 순환 블록용 대각 격자 t^{c_j}e_j (c_j = Σ_{i>j} μ_i) 의 직합
    2. λ-유도 후보: u·t^λ·Λ_0, λ ∈ P_μ (κ_M 일치하는 λ 먼저), u 는 희소 단위 하삼각/상삼각
    3. 창 안 정규형 격자 전수 열거 (창/체 차수 반복 심화)

모든 증인은 반환 전에 inv(M, FM) = μ 를 다시 확인한다.

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from app.algebra import matrix as mx
from app.algebra.arith import FieldTower, LaurentPoly
from app.algebra.coweight import (
    Coweight,
    Rational,
    decomposable_wrt,
    dominance_leq,
    gsp_defect,
    integral_points_conv,
    kappa_levi,
    newton_blocks,
    polygon_vertices,
)
from app.crystal.isocrystal import (
    Isocrystal,
    hodge_point,
    standard_isocrystal,
    standard_symplectic_isocrystal,
)
from app.crystal.newton import NewtonPoint, newton_point
from app.lattice.lattice import (
    Lattice,
    SymplecticForm,
    dual,
    enumerate_lattices,
    is_selfdual_up_to_scalar,
    normalize,
)
from app.models.search import Deadline, SearchConfig
from app.utils.errors import BudgetExhaustedError, InvalidInputError, MazurViolationError
from app.utils.logger import log


@dataclass(frozen=True)
class MazurReport:
    """
    verdict: ν̄ ≤ μ(M) (ν̄ 미인증이면 후보 ν 기준이며 certified=False)
    """
    newton: NewtonPoint
    hodge: Coweight
    verdict: bool
    kappa_ok: bool

    @property
    def certified(self) -> bool:
        return self.newton.certified

    def newton_polygon(self):
        return polygon_vertices(self.newton.nu)

    def hodge_polygon(self):
        return polygon_vertices(self.hodge)


@dataclass(frozen=True)
class LatticeWitness:
    """구성된 격자와 그것이 사는 아이소크리스탈 (필요 시 체 확대됨)"""
    lattice: Lattice
    isocrystal: Isocrystal
    mu: Coweight
    method: str
    form: Optional[SymplecticForm] = None
    transcript: tuple[str, ...] = field(default=())

    @property
    def field_degree(self) -> int:
        return self.lattice.tower.m


def lattice_key(M: Lattice) -> tuple:
    """정규 행렬의 사전식 비교 키"""
    return tuple(tuple(x.terms) for row in M.basis for x in row)


# ── 검사 ──────────────────────────────────────────

def mazur_check(M: Lattice, X: Isocrystal, cfg: Optional[SearchConfig] = None) -> MazurReport:
    nu = newton_point(X, cfg)
    mu = hodge_point(M, X)
    return MazurReport(nu, mu, dominance_leq(nu.nu, mu), nu.nu.total == mu.total)


def in_b_g_mu(X: Isocrystal, mu: Iterable[Rational], group: str = "gl", cfg: Optional[SearchConfig] = None) -> Optional[bool]:
    """
    [b] ∈ B(G, μ): Σμ = val det b 이고 ν̄(b) ≤ μ.

    ν̄ 가 인증되지 않았으면 None (unknown).
    """
    mu = Coweight.of(mu)
    if not mu.integral or not mu.is_dominant:
        raise InvalidInputError(f"{mu} is not dominant integral")
    if mu.n != X.n:
        raise InvalidInputError(f"mu has length {mu.n}, isocrystal has rank {X.n}")
    if group == "gsp" and gsp_defect(mu) is None:
        raise InvalidInputError(f"{mu} is not a GSp coweight")
    if mu.total != X.det_valuation:
        return False
    nu = newton_point(X, cfg)
    verdict = dominance_leq(nu.nu, mu)
    if group == "gsp" and gsp_defect(nu.nu) != gsp_defect(mu):
        verdict = False
    return verdict if nu.certified else None


def kappa_witness_predicate(nu: Iterable[Rational], mu: Iterable[Rational], P: Optional[Sequence[int]] = None) -> bool:
    """κ_M(ν) ∈ κ_M(P_μ)"""
    nu, mu = Coweight.of(nu), Coweight.of(mu)
    P = newton_blocks(nu)[0] if P is None else tuple(P)
    target = kappa_levi(nu, P)
    return any(kappa_levi(lam, P) == target for lam in integral_points_conv(mu))


# ── 명시적 격자 ──────────────────────────────────────────

def cyclic_block_exponents(mu_piece: Sequence[int]) -> list[int]:
    """순환 블록 안 격자 t^{c_j}e_j 의 c_j = Σ_{i>j} μ_i"""
    return [sum(mu_piece[j + 1:]) for j in range(len(mu_piece))]


def block_diagonal_lattice(tower: FieldTower, blocks: Sequence[Sequence[int]]) -> Lattice:
    """블록별 μ 조각을 받아 표준형의 대각 격자를 만든다"""
    exps: list[int] = []
    for piece in blocks:
        exps.extend(cyclic_block_exponents(list(piece)))
    return Lattice.diagonal(tower, exps)


def minuscule_lattice(tower: FieldTower, nu: Iterable[Rational]) -> Lattice:
    """
    무게 r 미니스큘 ν 의 표준형에서 inv(M, FM) = ω_r 인 격자:
    블록마다 ⟨t^{r-1}e_1, …, t·e_{r-1}, e_r, …, e_m⟩ (r = 블록 무게).
    """
    parts, slopes = newton_blocks(nu)
    pieces = []
    for m, s in zip(parts, slopes):
        r = int(m * s)
        if not 0 <= r <= m:
            raise InvalidInputError(f"block slope {s} is outside [0, 1], not minuscule")
        pieces.append([1] * r + [0] * (m - r))
    return block_diagonal_lattice(tower, pieces)


def selfdual_minuscule_lattice(tower: FieldTower, nu: Iterable[Rational]) -> tuple[Lattice, Isocrystal, SymplecticForm]:
    """
    심플렉틱 표준형에서 M ⊃ FM ⊃ tM, (FM)^⊥ = t^{-1}FM 인 자기쌍대 격자.

    N″ (기울기 > d/2) 에는 미니스큘 격자, N′ 에는 그 쌍대 (지수 부호 반전), Ñ 에는 표준 격자.
    """
    nu = Coweight.of(nu)
    X, form = standard_symplectic_isocrystal(tower, nu)
    d = int(gsp_defect(nu))
    size = nu.n
    n = size // 2
    upper = [x for x in nu.entries[:n] if 2 * x > d]
    exps = [0] * size
    if upper:
        inner = minuscule_lattice(tower, upper).exponents
        for j, e in enumerate(inner):
            exps[j] = e
            exps[size - 1 - j] = -e
    M = Lattice.diagonal(tower, exps)
    FM = X.apply(M)
    if not (M.contains(FM) and FM.contains(M.scale(1))):
        raise InvalidInputError(f"{nu} is not minuscule: M ⊃ FM ⊃ tM fails")
    if dual(M, form) != M:
        raise InvalidInputError("constructed lattice is not selfdual")
    if d == 1 and dual(FM, form) != FM.scale(-1):
        raise InvalidInputError("(FM)^perp != t^-1 FM")
    return M, X, form


# ── 탐색 ──────────────────────────────────────────

def _split_pieces(mu: Coweight, parts: Sequence[int]) -> list[list[int]]:
    out, start = [], 0
    vals = mu.ints()
    for m in parts:
        out.append(list(vals[start:start + m]))
        start += m
    return out


def _unipotents(tower: FieldTower, n: int, window: int, depth: int) -> Iterator[mx.Matrix]:
    """I + Σ c·t^e·E_ij (i ≠ j), 성분 depth 개"""
    z = LaurentPoly.zero(tower)
    entries = [
        (i, j, LaurentPoly.monomial(tower, e, c))
        for i in range(n) for j in range(n) if i != j
        for e in range(-window, window + 1)
        for c in range(1, tower.size)
    ]
    if depth == 0:
        yield mx.identity(tower, n)
        return
    for picked in combinations(entries, depth):
        if len({(i, j) for i, j, _ in picked}) < depth:
            continue
        rows = [[LaurentPoly.one(tower) if i == j else z for j in range(n)] for i in range(n)]
        for i, j, x in picked:
            rows[i][j] = x
        u = mx.as_matrix(rows)
        # (i, j), (j, i) 성분의 곱이 1 이면 det u = 0
        if mx.det(u).is_zero():
            continue
        yield u


def _lambda_order(nu: Coweight, mu: Coweight) -> list[Coweight]:
    """P_μ, κ_M(λ) = κ_M(ν) 인 λ 먼저 (각 묶음 안은 사전식 내림차순)"""
    parts = newton_blocks(nu)[0]
    target = kappa_levi(nu, parts)
    points = integral_points_conv(mu)
    matching = [lam for lam in points if kappa_levi(lam, parts) == target]
    rest = [lam for lam in points if kappa_levi(lam, parts) != target]
    return matching + rest


def _accept(M: Lattice, X: Isocrystal, mu: Coweight, form: Optional[SymplecticForm]) -> bool:
    if form is not None and is_selfdual_up_to_scalar(M, form) is None:
        return False
    return hodge_point(M, X) == mu


def enumerated_witness(
    X: Isocrystal,
    mu: Coweight,
    cfg: SearchConfig,
    form: Optional[SymplecticForm] = None,
    clock: Optional[Deadline] = None,
) -> Optional[tuple[Lattice, Isocrystal, str]]:
    """창 a = 0, 1, … 의 모든 격자 중 첫 증인이 나온 창의 사전식 최소 증인"""
    clock = clock or cfg.start()
    base = X.tower
    for k in range(1, max(cfg.field_cap // base.m, 1) + 1):
        tower = base.extend(k)
        Xk = X.embed(tower) if k > 1 else X
        formk = form.embed(tower) if form is not None and k > 1 else form
        for a in range(cfg.window + 1):
            found: list[Lattice] = []
            for M in enumerate_lattices(tower, X.n, a):
                if clock.expired():
                    raise BudgetExhaustedError("deadline", window=cfg.window, field_cap=cfg.field_cap, deadline=cfg.deadline)
                if _accept(M, Xk, mu, formk):
                    found.append(M)
            if found:
                log.info(f"[mazur] witness for mu={mu} by enumeration (window {a}, m={tower.m})")
                return min(found, key=lattice_key), Xk, f"enumeration(window={a}, m={tower.m})"
    return None


def search_witness(
    X: Isocrystal,
    nu: Coweight,
    mu: Coweight,
    cfg: SearchConfig,
    form: Optional[SymplecticForm] = None,
) -> tuple[Lattice, Isocrystal, str]:
    """
    inv(M, FM) = μ 인 격자 M 을 두 단계로 찾는다.

    1. λ-유도 후보 u·t^λ·Λ_0: (체 차수, 깊이, λ) 순서로 훑고, 처음 증인이 나온 묶음의 사전식 최소
    2. 전수 열거: (체 차수, 창 a) 순서로 훑고, 처음 증인이 나온 창의 사전식 최소

    같은 입력이면 항상 같은 증인이 나온다.

    Raises:
        BudgetExhaustedError: 마감 시간 또는 창/체 차수 상한까지 증인이 없을 때
    """
    clock = cfg.start()
    base = X.tower
    lambdas = _lambda_order(nu, mu)
    n = X.n

    # λ-유도 단위 후보: (체 차수, 깊이, λ) 묶음마다 사전식 최소 증인
    for k in range(1, max(cfg.field_cap // base.m, 1) + 1):
        tower = base.extend(k)
        Xk = X.embed(tower) if k > 1 else X
        formk = form.embed(tower) if form is not None and k > 1 else form
        for depth in (0, 1, 2):
            for lam in lambdas:
                found: list[Lattice] = []
                diag = mx.diagonal(tower, list(lam.ints()))
                for u in _unipotents(tower, n, cfg.window, depth):
                    if clock.expired():
                        raise BudgetExhaustedError("deadline", window=cfg.window, field_cap=cfg.field_cap, deadline=cfg.deadline)
                    M = normalize(mx.mat_mul(u, diag))
                    if _accept(M, Xk, mu, formk):
                        found.append(M)
                if found:
                    best = min(found, key=lattice_key)
                    log.info(f"[mazur] witness for mu={mu} from lambda={lam} (depth {depth}, m={tower.m})")
                    return best, Xk, f"unipotent(depth={depth}, m={tower.m})"

    enumerated = enumerated_witness(X, mu, cfg, form, clock)
    if enumerated is not None:
        return enumerated

    raise BudgetExhaustedError(
        "lattice-search", "witness not found within budget", window=cfg.window, field_cap=cfg.field_cap
    )


def _validate_pair(nu: Coweight, mu: Coweight) -> None:
    if nu.n != mu.n:
        raise InvalidInputError(f"nu has length {nu.n}, mu has length {mu.n}")
    if not mu.integral or not mu.is_dominant:
        raise InvalidInputError(f"{mu} is not dominant integral")
    newton_blocks(nu)
    if not dominance_leq(nu, mu):
        raise MazurViolationError(nu, mu)


def construct_lattice(
    tower: FieldTower,
    nu: Iterable[Rational],
    mu: Iterable[Rational],
    cfg: Optional[SearchConfig] = None,
) -> LatticeWitness:
    """
    표준형 X(ν) 안에서 inv(M, FM) = μ 인 격자 M.

    Raises:
        MazurViolationError: ν ≰ μ
        BudgetExhaustedError: 탐색 예산 소진
    """
    cfg = cfg or SearchConfig()
    nu, mu = Coweight.of(nu), Coweight.of(mu)
    _validate_pair(nu, mu)
    X = standard_isocrystal(tower, nu)
    parts = newton_blocks(nu)[0]

    if decomposable_wrt(mu, nu, parts):
        M = block_diagonal_lattice(tower, _split_pieces(mu, parts))
        method = "decomposable"
    else:
        M, X, method = search_witness(X, nu, mu, cfg)
    if hodge_point(M, X) != mu:
        raise InvalidInputError(f"internal check failed: inv(M, FM) != {mu}")
    return LatticeWitness(M, X, mu, method)


def construct_lattice_gsp(
    tower: FieldTower,
    nu: Iterable[Rational],
    mu: Iterable[Rational],
    cfg: Optional[SearchConfig] = None,
) -> LatticeWitness:
    """
    심플렉틱 표준형 안의 증인. μ = ω_r (r ∈ {0, n, 2n}) 이고 ν 가 같은 무게로 미니스큘이면
    명시적 구성, 아니면 스칼라배 자기쌍대 후보만 남기는 탐색.
    """
    cfg = cfg or SearchConfig()
    nu, mu = Coweight.of(nu), Coweight.of(mu)
    _validate_pair(nu, mu)
    d_nu, d_mu = gsp_defect(nu), gsp_defect(mu)
    if d_nu is None or d_mu is None:
        raise InvalidInputError("nu and mu must satisfy x_i + x_(2n+1-i) = d")
    if d_nu != d_mu:
        raise MazurViolationError(nu, mu, "similitude defects of nu and mu differ")

    size = nu.n
    minuscule = all(x in (0, 1) for x in mu.entries) and all(0 <= x <= 1 for x in nu.entries)
    if minuscule and int(mu.total) in (0, size // 2, size):
        M, X, form = selfdual_minuscule_lattice(tower, nu)
        method = "selfdual-explicit"
    else:
        X, form = standard_symplectic_isocrystal(tower, nu)
        M, X, method = search_witness(X, nu, mu, cfg, form)
        form = form.embed(X.tower) if X.tower is not form.tower else form
    if hodge_point(M, X) != mu or is_selfdual_up_to_scalar(M, form) is None:
        raise InvalidInputError("internal check failed for symplectic witness")
    return LatticeWitness(M, X, mu, method, form)


# ── 전수 Hodge 집합 ──────────────────────────────────────────

def enumerate_hodge_set(X: Isocrystal, window: int, min_degree: int = 2) -> set[Coweight]:
    """
    창 안 모든 격자 M 의 μ(M).

    F_q 위에서는 σ 가 항등이라 상수 좌표 격자가 움직이지 않으므로
    기본적으로 최소 2차 확대 위에서 열거한다.
    """
    tower = X.tower
    if tower.m < min_degree:
        k = -(-min_degree // tower.m)
        tower = tower.extend(k)
        X = X.embed(tower)
    return {hodge_point(M, X) for M in enumerate_lattices(tower, X.n, window)}


def predicted_hodge_set(nu: Iterable[Rational], window: int) -> set[Coweight]:
    """{μ 지배 정수 : |μ_i| ≤ window, ν ≤ μ}"""
    nu = Coweight.of(nu)
    if nu.total.denominator != 1:
        return set()
    return {lam for lam in _window_dominant(nu.n, window, int(nu.total)) if dominance_leq(nu, lam)}


@dataclass(frozen=True)
class HodgeComparison:
    observed: frozenset
    predicted: frozenset

    @property
    def missing(self) -> frozenset:
        return self.predicted - self.observed

    @property
    def unexpected(self) -> frozenset:
        return self.observed - self.predicted

    @property
    def agrees(self) -> bool:
        return not self.missing and not self.unexpected


def compare_hodge_sets(X: Isocrystal, nu: Iterable[Rational], window: int) -> HodgeComparison:
    """
    창 안 열거로 얻은 μ(M) 과 {μ : ν ≤ μ} 비교.

    관측값은 |μ_i| ≤ window 인 것만 남긴다 (창 밖 μ 는 창 안 격자로 다 닿지 않는다).
    """
    observed = {mu for mu in enumerate_hodge_set(X, window) if all(abs(x) <= window for x in mu.entries)}
    predicted = predicted_hodge_set(nu, window)
    log.info(f"[mazur] hodge set: {len(observed)} observed, {len(predicted)} predicted (window {window})")
    return HodgeComparison(frozenset(observed), frozenset(predicted))


def _window_dominant(n: int, window: int, total: int) -> Iterator[Coweight]:
    def rec(i: int, prev: int, acc: list[int]) -> Iterator[list[int]]:
        if i == n:
            if sum(acc) == total:
                yield list(acc)
            return
        for v in range(prev, -window - 1, -1):
            acc.append(v)
            yield from rec(i + 1, v, acc)
            acc.pop()

    for vals in rec(0, window, []):
        yield Coweight.of(vals)
