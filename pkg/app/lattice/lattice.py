"""
L^n 안의 격자: 정규 Hermite 형, 상대 위치, 쌍대

정규형:
    열 기저를 하삼각으로 만들고 대각 성분을 t^{a_i}, 대각 아래 성분은
    같은 행의 a_i 보다 작은 지수 항만 남긴다. 두 격자는 정규 행렬이 같을 때만 같다.

계산 원칙:
    - normalize는 t^D·O^n ⊂ M 인 D를 행렬식/최소 값매김으로 구해 mod t^D 에서 소거한다.
    - 상대 위치는 소행렬식 최소 값매김 d_k 로, 쌍대는 삼각 역행렬로 정확히 구한다.
    - 역상 g^{-1}M 은 쌍대를 통해 (gᵀ M^∨)^∨ 로 계산하므로 급수 역원이 필요 없다.

@since 2026-10-16
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Optional, Sequence

from app.algebra import matrix as mx
from app.algebra import semilinear as ff
from app.algebra.arith import FieldTower, LaurentPoly, series_invert
from app.algebra.coweight import Coweight, dominant_sort
from app.algebra.matrix import Matrix
from app.utils.errors import InvalidInputError, PrecisionError


@dataclass(frozen=True)
class SymplecticForm:
    """
    상수 교대 Gram 행렬 J (정수 표현 성분)

    사용 예시:
        J = SymplecticForm.standard(tower, 2)      # ⟨e_i, e_{5-i}⟩ = 1 (i ≤ 2)
    """
    tower: FieldTower
    gram: tuple[tuple[int, ...], ...]

    @classmethod
    def standard(cls, tower: FieldTower, n: int) -> "SymplecticForm":
        size = 2 * n
        minus_one = tower.field.neg(1)
        rows = [[0] * size for _ in range(size)]
        for i in range(n):
            rows[i][size - 1 - i] = 1
            rows[size - 1 - i][i] = minus_one
        return cls(tower, tuple(tuple(r) for r in rows))

    @classmethod
    def of(cls, tower: FieldTower, rows: Sequence[Sequence[int]]) -> "SymplecticForm":
        form = cls(tower, tuple(tuple(int(v) for v in r) for r in rows))
        form.validate()
        return form

    @property
    def size(self) -> int:
        return len(self.gram)

    def validate(self) -> None:
        F = self.tower.field
        n = self.size
        if n % 2:
            raise InvalidInputError("symplectic form needs even dimension")
        for i in range(n):
            if self.gram[i][i]:
                raise InvalidInputError("symplectic form is not alternating")
            for j in range(n):
                if F.add(self.gram[i][j], self.gram[j][i]):
                    raise InvalidInputError("symplectic form is not antisymmetric")
        if ff.rank(F, self.gram) != n:
            raise InvalidInputError("symplectic form is degenerate")

    def matrix(self) -> Matrix:
        return mx.from_constants(self.tower, self.gram)

    def embed(self, target: FieldTower) -> "SymplecticForm":
        return SymplecticForm(target, tuple(tuple(r) for r in ff.embed_rows(self.tower, target, self.gram)))

    def pair(self, x: Sequence[LaurentPoly], y: Sequence[LaurentPoly]) -> LaurentPoly:
        """xᵀ J y"""
        acc = LaurentPoly.zero(x[0].tower)
        for i, xi in enumerate(x):
            if not xi.terms:
                continue
            for j, yj in enumerate(y):
                g = self.gram[i][j]
                if g and yj.terms:
                    acc = acc + (xi * yj).scale(g)
        return acc

    def gram_of(self, A: Matrix, B: Matrix) -> Matrix:
        """Aᵀ J B"""
        return mx.mat_mul(mx.mat_mul(mx.transpose(A), self.matrix()), B)


@dataclass(frozen=True)
class Lattice:
    """
    정규형 기저 행렬을 가진 O-격자

    사용 예시:
        L0 = Lattice.standard(tower, 2)
        M = normalize(mx.diagonal(tower, [2, 0]))
        relative_position(L0, M)     # (2, 0)
    """
    tower: FieldTower
    basis: Matrix = field(repr=False)

    @classmethod
    def standard(cls, tower: FieldTower, n: int) -> "Lattice":
        return cls(tower, mx.identity(tower, n))

    @classmethod
    def diagonal(cls, tower: FieldTower, exponents: Sequence[int]) -> "Lattice":
        return cls(tower, mx.diagonal(tower, exponents))

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def exponents(self) -> tuple[int, ...]:
        """대각 지수 a_i"""
        return tuple(self.basis[i][i].valuation() for i in range(self.n))

    @property
    def volume(self) -> int:
        """val det = Σ a_i"""
        return sum(self.exponents)

    def inverse_basis(self) -> Matrix:
        return mx.lower_triangular_inverse(self.basis)

    def coordinates(self, vectors: Matrix) -> Matrix:
        """열 벡터들의 이 격자 기저 좌표"""
        return mx.mat_mul(self.inverse_basis(), vectors)

    def contains(self, other: "Lattice") -> bool:
        """other ⊂ self"""
        return mx.is_integral(self.coordinates(other.basis))

    def contains_vectors(self, vectors: Matrix) -> bool:
        return mx.is_integral(self.coordinates(vectors))

    def scale(self, k: int) -> "Lattice":
        """t^k·M (정규형 유지)"""
        return Lattice(self.tower, mx.mat_shift(self.basis, k))

    def frobenius(self, k: int) -> "Lattice":
        """σ^k(M): 정규형은 성분별 σ에 대해 닫혀 있다"""
        return Lattice(self.tower, mx.frobenius_matrix(self.basis, k))

    def embed(self, target: FieldTower) -> "Lattice":
        return Lattice(target, mx.embed_matrix(self.basis, target))

    def rebase(self, target: FieldTower) -> "Lattice":
        return Lattice(target, mx.rebase_matrix(self.basis, target))

    def image(self, g: Matrix, power: int = 0) -> "Lattice":
        """g·σ^power(M)"""
        return normalize(mx.mat_mul(g, mx.frobenius_matrix(self.basis, power)))

    def preimage(self, g: Matrix) -> "Lattice":
        """{x : g·x ∈ M}"""
        return dual(dual(self).image(mx.transpose(g)))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(repr(x) for x in r) for r in self.basis) + "]"


# ── 정규화 ──────────────────────────────────────────

def _first_invertible(cols: Matrix) -> Optional[tuple[int, ...]]:
    n, k = mx.shape(cols)
    if k < n:
        return None
    for idx in combinations(range(k), n):
        if mx.det(mx.submatrix(cols, range(n), idx)).terms:
            return idx
    return None


def _unit_inverse(unit: LaurentPoly, bound: int) -> LaurentPoly:
    """상수항이 0이 아닌 unit의 mod t^bound 역 (정확한 다항식, 그 자체로 단원)"""
    if unit.is_monomial():
        return LaurentPoly.constant(unit.tower, unit.tower.field.inv(unit.terms[0][1]))
    return series_invert(unit, max(bound, 1)).truncate(max(bound, 1))


def normalize(cols: Matrix) -> Lattice:
    """
    열들이 생성하는 O-가군의 정규 Hermite 형.

    Raises:
        InvalidInputError: 열들이 L^n 을 생성하지 않을 때 (singular matrix)
    """
    n, k = mx.shape(cols)
    if not n:
        raise InvalidInputError("empty lattice basis")
    tower = cols[0][0].tower
    idx = _first_invertible(cols)
    if idx is None:
        raise InvalidInputError("singular matrix: columns do not span L^n")
    g = mx.submatrix(cols, range(n), idx)
    D = int(mx.det(g).valuation() - (n - 1) * mx.min_valuation(g))

    remaining: list[list[LaurentPoly]] = [[x.truncate(D) for x in mx.column(cols, j)] for j in range(k)]
    z = LaurentPoly.zero(tower)
    for i in range(n):
        remaining.append([LaurentPoly.t(tower, D) if r == i else z for r in range(n)])

    H: list[list[LaurentPoly]] = []
    for i in range(n):
        best, best_val = -1, math.inf
        for pos, c in enumerate(remaining):
            if c[i].terms and c[i].valuation() < best_val:
                best, best_val = pos, c[i].valuation()
        pivot = remaining.pop(best)
        a = int(best_val)
        w = _unit_inverse(pivot[i].shift(-a), D - a)
        pivot = [(x * w).truncate(D) if x.terms else x for x in pivot]
        pivot[i] = LaurentPoly.t(tower, a)
        for pos, c in enumerate(remaining):
            x = c[i]
            if not x.terms:
                continue
            coef = x.shift(-a)
            remaining[pos] = [
                (c[r] - coef * pivot[r]).truncate(D) if pivot[r].terms else c[r] for r in range(n)
            ]
            remaining[pos][i] = z
        H.append(pivot)

    # 대각 아래 성분을 같은 행의 t^{a_i} 로 축약 (위에서 아래로)
    exps = [H[i][i].valuation() for i in range(n)]
    for j in range(n):
        col = H[j]
        for i in range(j + 1, n):
            low, high = col[i].split(exps[i])
            if high.terms:
                coef = high.shift(-exps[i])
                col = [col[r] - coef * H[i][r] if r >= i and H[i][r].terms else col[r] for r in range(n)]
                col[i] = low
        H[j] = col
    return Lattice(tower, mx.transpose(mx.as_matrix(H)))


def lattice_sum(*lattices: Lattice) -> Lattice:
    return normalize(mx.hstack(*(L.basis for L in lattices)))


def intersection(A: Lattice, B: Lattice) -> Lattice:
    return dual(lattice_sum(dual(A), dual(B)))


def colength(big: Lattice, small: Lattice) -> int:
    """length(big/small) (small ⊂ big 일 때), 일반적으로는 val det 차"""
    return small.volume - big.volume


def scale_relation(A: Lattice, B: Lattice) -> Optional[int]:
    """A = t^k·B 이면 k"""
    diff = A.volume - B.volume
    if diff % A.n:
        return None
    k = diff // A.n
    return k if B.scale(k) == A else None


# ── 상대 위치 ──────────────────────────────────────────

def transition(M: Lattice, M2: Lattice) -> Matrix:
    """M2 = M·g 인 g (M 기저 좌표)"""
    return M.coordinates(M2.basis)


def relative_position(M: Lattice, M2: Lattice) -> Coweight:
    """
    inv(M, M2): M 기저로 나타낸 M2 기저 행렬 g의 기본 인자 지수 (지배 정렬).

    d_k = k×k 소행렬식 최소 값매김, 작은 쪽 k개 합이 d_k.
    """
    if M.n != M2.n:
        raise InvalidInputError(f"dimension mismatch {M.n} vs {M2.n}")
    d = mx.minor_valuations(transition(M, M2))
    ascending = [d[0]] + [d[k] - d[k - 1] for k in range(1, len(d))]
    return dominant_sort([int(x) for x in ascending])[0]


def relative_position_elimination(M: Lattice, M2: Lattice) -> Coweight:
    """adapted_basis 소거로 얻는 상대 위치 (검증용)"""
    return adapted_basis(M, M2)[1]


def adapted_basis(M: Lattice, M2: Lattice) -> tuple[Matrix, Coweight]:
    """
    M의 O-기저 P와 지배 지수 μ: M2 = ⟨t^{μ_i}·P_i⟩.

    g = transition(M, M2) 에 t^{D}·I 열을 붙인 가군에서 Smith 소거를 하고
    행 연산만 P 쪽에 기록한다. 열 단원 스케일은 mod t^D 절단 다항식으로 충분하다.
    """
    tower = M.tower
    n = M.n
    g = transition(M, M2)
    D = int(mx.det(g).valuation() - (n - 1) * mx.min_valuation(g))
    z = LaurentPoly.zero(tower)
    one = LaurentPoly.one(tower)
    G = [[g[i][j].truncate(D) for j in range(n)] + [LaurentPoly.t(tower, D) if i == j else z for j in range(n)]
         for i in range(n)]
    width = 2 * n
    Uinv = [[one if i == j else z for j in range(n)] for i in range(n)]
    exps: list[int] = []

    for k in range(n):
        best, best_val = None, math.inf
        for i in range(k, n):
            for j in range(k, width):
                if G[i][j].terms and G[i][j].valuation() < best_val:
                    best, best_val = (i, j), G[i][j].valuation()
        bi, bj = best
        a = int(best_val)
        if bi != k:
            G[k], G[bi] = G[bi], G[k]
            for r in range(n):
                Uinv[r][k], Uinv[r][bi] = Uinv[r][bi], Uinv[r][k]
        if bj != k:
            for r in range(n):
                G[r][k], G[r][bj] = G[r][bj], G[r][k]
        w = _unit_inverse(G[k][k].shift(-a), D - a)
        for r in range(n):
            if G[r][k].terms:
                G[r][k] = (G[r][k] * w).truncate(D)
        G[k][k] = LaurentPoly.t(tower, a)
        for i in range(k + 1, n):
            if G[i][k].terms:
                c = G[i][k].shift(-a)
                G[i] = [(G[i][j] - c * G[k][j]).truncate(D) if G[k][j].terms else G[i][j] for j in range(width)]
                G[i][k] = z
                for r in range(n):
                    if Uinv[r][i].terms:
                        Uinv[r][k] = Uinv[r][k] + c * Uinv[r][i]
        for j in range(k + 1, width):
            if G[k][j].terms:
                c = G[k][j].shift(-a)
                for r in range(n):
                    if G[r][k].terms:
                        G[r][j] = (G[r][j] - c * G[r][k]).truncate(D)
                G[k][j] = z
        exps.append(a)

    order = sorted(range(n), key=lambda i: (-exps[i], i))
    P = mx.mat_mul(M.basis, mx.as_matrix(Uinv))
    P = mx.as_matrix([[P[r][i] for i in order] for r in range(n)])
    mu = [exps[i] for i in order]
    check = normalize(mx.mat_mul(P, mx.diagonal(tower, mu)))
    if check != M2:
        raise PrecisionError(required=D + 1, available=D)
    return P, Coweight.of(mu)


# ── 쌍대 ──────────────────────────────────────────

def dual(M: Lattice, form: Optional[SymplecticForm] = None) -> Lattice:
    """
    M^⊥ = {x : ⟨x, M⟩ ⊂ O}. form이 없으면 표준 쌍 xᵀy.
    """
    inv_t = mx.transpose(M.inverse_basis())
    if form is None:
        return normalize(inv_t)
    if form.size != M.n:
        raise InvalidInputError(f"form of size {form.size} on lattice of rank {M.n}")
    J_inv_t = mx.from_constants(form.tower, ff.transpose(ff.inverse(form.tower.field, form.gram)))
    if not form.tower.same_field(M.tower):
        raise InvalidInputError("form and lattice over different fields")
    J_inv_t = mx.rebase_matrix(J_inv_t, M.tower)
    return normalize(mx.mat_mul(J_inv_t, inv_t))


def is_selfdual_up_to_scalar(M: Lattice, form: SymplecticForm) -> Optional[int]:
    """M^⊥ = t^c·M 이면 c"""
    return scale_relation(dual(M, form), M)


# ── 열거 ──────────────────────────────────────────

def _polys(tower: FieldTower, lo: int, hi: int) -> Iterator[LaurentPoly]:
    """지수 [lo, hi) 의 모든 다항식"""
    exps = list(range(lo, hi))
    for coeffs in product(list(tower.field.elements()), repeat=len(exps)):
        yield LaurentPoly(tower, zip(exps, coeffs))


def enumerate_lattices(tower: FieldTower, n: int, window: int, total: Optional[int] = None) -> Iterator[Lattice]:
    """
    창 안의 정규형 격자 전체: 대각 a_i ∈ [−a, a], 대각 아래 지수 ∈ [−a, a_i).

    total을 주면 Σ a_i = total 인 것만.
    """
    z = LaurentPoly.zero(tower)
    for diag in product(range(-window, window + 1), repeat=n):
        if total is not None and sum(diag) != total:
            continue
        slots = [(i, j) for i in range(n) for j in range(i)]
        choices = [list(_polys(tower, -window, diag[i])) for i, _ in slots]
        for picked in product(*choices):
            rows = [[z] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = LaurentPoly.t(tower, diag[i])
            for (i, j), x in zip(slots, picked):
                rows[i][j] = x
            yield Lattice(tower, mx.as_matrix(rows))
