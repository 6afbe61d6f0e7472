"""
Newton 점 ν̄(b) 계산

경로 (앞에서부터 시도):
    monomial    : b = 순열·diag(c_i t^{a_i}) → 순환마다 지수 평균
    triangular  : 지지 그래프의 강연결 성분으로 블록 삼각화 → 대각 블록 재귀
    cyclic-skew : v, Fv, …, F^{n-1}v 가 독립이면 F^n v = Σ c_i F^i v 의 Newton 다각형
                  (val c_i 는 Cramer 공식의 행렬식 값매김 차)
    bounds      : d_k(s) = N_s(b) 의 k×k 소행렬식 최소 값매김, d_k(s)/s → 작은 k개 기울기 합.
                  s*, 2s* 에서 정확히 일치할 때만 certified

@since 2026-10-16
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from app.algebra import matrix as mx
from app.algebra.arith import LaurentPoly
from app.algebra.coweight import Coweight, dominant_sort, newton_blocks
from app.crystal.isocrystal import Isocrystal
from app.models.search import SearchConfig
from app.utils.errors import InvalidInputError
from app.utils.logger import log


@dataclass(frozen=True)
class NewtonPoint:
    """지배 유리 벡터 ν 와 인증 여부"""
    nu: Coweight
    certified: bool
    method: str
    bounds: tuple[tuple[int, tuple[int, ...]], ...] = field(default=())

    @property
    def n(self) -> int:
        return self.nu.n


# ── 단항 ──────────────────────────────────────────

def _monomial_slopes(X: Isocrystal) -> Optional[list[Fraction]]:
    n = X.n
    target = [-1] * n
    exps = [0] * n
    for j in range(n):
        rows = [i for i in range(n) if X.b[i][j].terms]
        if len(rows) != 1 or not X.b[rows[0]][j].is_monomial():
            return None
        target[j] = rows[0]
        exps[j] = X.b[rows[0]][j].valuation()
    if sorted(target) != list(range(n)):
        return None
    slopes: list[Fraction] = []
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        cycle, j = [], start
        while not seen[j]:
            seen[j] = True
            cycle.append(j)
            j = target[j]
        avg = Fraction(sum(exps[k] for k in cycle), len(cycle))
        slopes.extend([avg] * len(cycle))
    return slopes


# ── 강연결 성분 ──────────────────────────────────────────

def support_components(X: Isocrystal) -> list[list[int]]:
    """간선 i→j (b_ij ≠ 0) 그래프의 강연결 성분 (Kosaraju)"""
    n = X.n
    adj = [[j for j in range(n) if X.b[i][j].terms] for i in range(n)]
    radj = [[i for i in range(n) if X.b[i][j].terms] for j in range(n)]
    order: list[int] = []
    seen = [False] * n

    def visit(u: int) -> None:
        seen[u] = True
        for v in adj[u]:
            if not seen[v]:
                visit(v)
        order.append(u)

    for u in range(n):
        if not seen[u]:
            visit(u)
    comp = [-1] * n
    comps: list[list[int]] = []

    def assign(u: int, c: int) -> None:
        comp[u] = c
        comps[c].append(u)
        for v in radj[u]:
            if comp[v] < 0:
                assign(v, c)

    for u in reversed(order):
        if comp[u] < 0:
            comps.append([])
            assign(u, len(comps) - 1)
    return [sorted(c) for c in comps]


# ── 순환 벡터 ──────────────────────────────────────────

def _candidate_vectors(X: Isocrystal, seed: int, tries: int = 6):
    n = X.n
    for i in range(n):
        yield [1 if k == i else 0 for k in range(n)]
    yield [1] * n
    rng = random.Random(seed)
    size = X.tower.size
    for _ in range(tries):
        yield [rng.randrange(size) for _ in range(n)]


def _lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    hull: list[tuple[int, Fraction]] = []
    for p in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # hull[-1] 이 hull[-2] 에서 p 로 가는 선분 위/위쪽이면 제거
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _hull_slopes(hull: list[tuple[int, Fraction]]) -> list[Fraction]:
    out: list[Fraction] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.extend([Fraction(y2 - y1) / (x2 - x1)] * (x2 - x1))
    return out


def _cyclic_slopes(X: Isocrystal, seed: int) -> Optional[list[Fraction]]:
    n = X.n
    tower = X.tower
    norms = [X.norm_matrix(0)]
    for k in range(1, n + 1):
        norms.append(mx.mat_mul(norms[-1], mx.frobenius_matrix(X.b, k - 1)))
    for v in _candidate_vectors(X, seed):
        if not any(v):
            continue
        cols = []
        for k in range(n + 1):
            sv = tuple((LaurentPoly.constant(tower, tower.frobenius(x, k)),) for x in v)
            cols.append(mx.mat_mul(norms[k], sv))
        K = mx.hstack(*cols[:n])
        dk = mx.det(K)
        if not dk.terms:
            continue
        base = dk.valuation()
        points: list[tuple[int, Fraction]] = [(n, Fraction(0))]
        for i in range(n):
            Ki = mx.hstack(*(cols[n] if j == i else cols[j] for j in range(n)))
            di = mx.det(Ki)
            if di.terms:
                points.append((i, Fraction(di.valuation() - base)))
        hull = _lower_hull(points)
        if hull[0][0] != 0:
            continue
        return [-s for s in _hull_slopes(hull)]
    return None


# ── Fekete 상하한 ──────────────────────────────────────────

def _fekete(X: Isocrystal, budget: int) -> NewtonPoint:
    n = X.n
    f = X.f_def
    total = X.det_valuation
    grid: list[int] = []
    norms: dict[int, mx.Matrix] = {}
    s = f
    current = X.norm_matrix(f)
    while s <= max(budget, f):
        grid.append(s)
        norms[s] = current
        current = mx.mat_mul(current, mx.frobenius_matrix(current, s))
        s *= 2
    d: dict[int, list[int]] = {s: [int(x) for x in mx.minor_valuations(norms[s])] for s in grid}
    last = grid[-1]
    approx = [Fraction(d[last][k], last).limit_denominator(n) for k in range(n)]
    points = [(0, Fraction(0))] + [(k + 1, approx[k]) for k in range(n - 1)] + [(n, Fraction(total))]
    ascending = _hull_slopes(_lower_hull(points))
    nu = dominant_sort(ascending)[0]
    partial = [sum(ascending[:k + 1], Fraction(0)) for k in range(n)]
    bounds = tuple((s, tuple(d[s])) for s in grid)

    try:
        newton_blocks(nu)
    except InvalidInputError:
        return NewtonPoint(nu, False, "bounds", bounds)

    def exact_at(s: int) -> bool:
        return all(s * partial[k] == d[s][k] for k in range(n))

    for s in grid:
        if 2 * s in d and exact_at(s) and exact_at(2 * s):
            return NewtonPoint(nu, True, "bounds", bounds)
    return NewtonPoint(nu, False, "bounds", bounds)


# ── 진입점 ──────────────────────────────────────────

def newton_point(X: Isocrystal, cfg: Optional[SearchConfig] = None) -> NewtonPoint:
    """
    ν̄(b): Σν_i = val det b 인 지배 유리 벡터.

    Fekete 상하한이 예산 안에 인증하지 못하면 certified=False 와 상하한 자료를 돌려준다.
    """
    cfg = cfg or SearchConfig()
    slopes = _monomial_slopes(X)
    if slopes is not None:
        return NewtonPoint(dominant_sort(slopes)[0], True, "monomial")

    comps = support_components(X)
    if len(comps) > 1:
        parts = [newton_point(X.block(c), cfg) for c in comps]
        merged = [x for p in parts for x in p.nu]
        certified = all(p.certified for p in parts)
        log.debug(f"[newton] block-triangular split into {[len(c) for c in comps]}")
        return NewtonPoint(dominant_sort(merged)[0], certified, "triangular")

    slopes = _cyclic_slopes(X, cfg.seed)
    if slopes is not None and sum(slopes, Fraction(0)) == X.det_valuation:
        nu = dominant_sort(slopes)[0]
        try:
            newton_blocks(nu)
            return NewtonPoint(nu, True, "cyclic-skew")
        except InvalidInputError:
            log.warning(f"[newton] cyclic-vector polygon {nu} fails integrality, using minor bounds")

    result = _fekete(X, cfg.newton_budget)
    if not result.certified:
        log.warning(f"[newton] Newton point not certified within s <= {cfg.newton_budget}: candidate {result.nu}")
    return result


def is_basic(X: Isocrystal, cfg: Optional[SearchConfig] = None) -> bool:
    nu = newton_point(X, cfg).nu
    return len(set(nu.entries)) == 1
