"""
F_{q^m}((t)) 위 행렬 유틸리티

행렬은 LaurentPoly 튜플의 튜플로 표현한다 (불변, 해시 가능).
행렬식과 소행렬식은 메모이즈한 Laplace 전개로 정확히 계산하므로
급수 역원 없이 값매김을 얻을 수 있다.

@since 2026-10-16
"""
from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Optional, Sequence

from app.algebra.arith import FieldTower, LaurentPoly, series_invert
from app.utils.errors import InvalidInputError

Matrix = tuple[tuple[LaurentPoly, ...], ...]


# ── 생성 ──────────────────────────────────────────

def as_matrix(rows: Iterable[Iterable[LaurentPoly]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zeros(tower: FieldTower, n: int, k: Optional[int] = None) -> Matrix:
    z = LaurentPoly.zero(tower)
    return tuple(tuple(z for _ in range(n if k is None else k)) for _ in range(n))


def identity(tower: FieldTower, n: int) -> Matrix:
    return diagonal(tower, [0] * n)


def diagonal(tower: FieldTower, exponents: Sequence[int], coeffs: Optional[Sequence[int]] = None) -> Matrix:
    """diag(c_i t^{e_i})"""
    n = len(exponents)
    z = LaurentPoly.zero(tower)
    rows = []
    for i in range(n):
        c = 1 if coeffs is None else coeffs[i]
        rows.append(tuple(LaurentPoly.monomial(tower, exponents[i], c) if i == j else z for j in range(n)))
    return tuple(rows)


def from_constants(tower: FieldTower, rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(LaurentPoly.constant(tower, v) for v in r) for r in rows)


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def tower_of(A: Matrix) -> FieldTower:
    return A[0][0].tower


# ── 산술 ──────────────────────────────────────────

def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k = shape(A)
    k2, l = shape(B)
    if k != k2:
        raise InvalidInputError(f"shape mismatch {n}x{k} · {k2}x{l}")
    tower = A[0][0].tower if A and k else B[0][0].tower
    z = LaurentPoly.zero(tower)
    out = []
    for i in range(n):
        row = []
        for j in range(l):
            acc = z
            for r in range(k):
                a = A[i][r]
                if a.terms:
                    b = B[r][j]
                    if b.terms:
                        acc = acc + a * b
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(A: Matrix, f: LaurentPoly) -> Matrix:
    return tuple(tuple(a * f for a in r) for r in A)


def mat_shift(A: Matrix, k: int) -> Matrix:
    """t^k·A"""
    return tuple(tuple(a.shift(k) for a in r) for r in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def frobenius_matrix(A: Matrix, k: int) -> Matrix:
    return tuple(tuple(a.frobenius(k) for a in r) for r in A)


def embed_matrix(A: Matrix, target: FieldTower) -> Matrix:
    return tuple(tuple(a.embed(target) for a in r) for r in A)


def rebase_matrix(A: Matrix, target: FieldTower) -> Matrix:
    return tuple(tuple(a.rebase(target) for a in r) for r in A)


def truncate_matrix(A: Matrix, bound: int) -> Matrix:
    return tuple(tuple(a.truncate(bound) for a in r) for r in A)


def column(A: Matrix, j: int) -> tuple[LaurentPoly, ...]:
    return tuple(r[j] for r in A)


def hstack(*blocks: Matrix) -> Matrix:
    return tuple(tuple(x for b in blocks for x in b[i]) for i in range(len(blocks[0])))


def block_diagonal(tower: FieldTower, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    z = LaurentPoly.zero(tower)
    rows = [[z] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                rows[offset + i][offset + j] = x
        offset += len(b)
    return as_matrix(rows)


def submatrix(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(A[i][j] for j in cols) for i in rows)


# ── 값매김 ──────────────────────────────────────────

def min_valuation(A: Matrix) -> float | int:
    return min((a.valuation() for r in A for a in r), default=math.inf)


def is_integral(A: Matrix) -> bool:
    return min_valuation(A) >= 0


def residue(A: Matrix) -> list[list[int]]:
    """정수 행렬의 mod t 환원"""
    if not is_integral(A):
        raise InvalidInputError("matrix is not integral, no residue")
    return [[a.constant_term() for a in r] for r in A]


def is_lower_triangular(A: Matrix) -> bool:
    return all(not A[i][j].terms for i in range(len(A)) for j in range(i + 1, len(A)))


# ── 행렬식 ──────────────────────────────────────────

def minor(A: Matrix, rows: Sequence[int], cols: Sequence[int]) -> LaurentPoly:
    """행 rows, 열 cols 소행렬식 (첫 행 Laplace 전개 + 메모)"""
    tower = A[0][0].tower
    rows = tuple(rows)
    memo: dict[tuple[int, tuple[int, ...]], LaurentPoly] = {}

    def expand(r: int, remaining: tuple[int, ...]) -> LaurentPoly:
        if r == len(rows):
            return LaurentPoly.one(tower)
        key = (r, remaining)
        if key in memo:
            return memo[key]
        acc = LaurentPoly.zero(tower)
        for pos, c in enumerate(remaining):
            a = A[rows[r]][c]
            if not a.terms:
                continue
            sub = expand(r + 1, remaining[:pos] + remaining[pos + 1:])
            if not sub.terms:
                continue
            term = a * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return expand(0, tuple(cols))


def det(A: Matrix) -> LaurentPoly:
    n, k = shape(A)
    if n != k:
        raise InvalidInputError(f"det of non-square {n}x{k} matrix")
    if n == 0:
        raise InvalidInputError("det of empty matrix")
    return minor(A, range(n), range(n))


def minor_valuations(A: Matrix) -> list[float | int]:
    """d_k = 모든 k×k 소행렬식의 최소 값매김 (k = 1..min(n, l))"""
    n, l = shape(A)
    out = []
    for k in range(1, min(n, l) + 1):
        best: float | int = math.inf
        for rows in combinations(range(n), k):
            for cols in combinations(range(l), k):
                m = minor(A, rows, cols)
                if m.terms:
                    best = min(best, m.valuation())
        out.append(best)
    return out


def adjugate(A: Matrix) -> Matrix:
    n = len(A)
    tower = A[0][0].tower
    if n == 1:
        return ((LaurentPoly.one(tower),),)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            m = minor(A, rows, cols)
            row.append(-m if (i + j) % 2 else m)
        out.append(tuple(row))
    return tuple(out)


def lower_triangular_inverse(A: Matrix) -> Matrix:
    """대각이 단항식인 하삼각 행렬의 정확한 역행렬"""
    n = len(A)
    tower = A[0][0].tower
    if not is_lower_triangular(A):
        raise InvalidInputError("matrix is not lower triangular")
    for i in range(n):
        if not A[i][i].is_monomial():
            raise InvalidInputError(f"diagonal entry {i} is not a monomial")
    z = LaurentPoly.zero(tower)
    X = [[z] * n for _ in range(n)]
    for j in range(n):
        for i in range(j, n):
            acc = LaurentPoly.one(tower) if i == j else z
            for k in range(j, i):
                if A[i][k].terms and X[k][j].terms:
                    acc = acc - A[i][k] * X[k][j]
            X[i][j] = acc.divide_monomial(A[i][i])
    return as_matrix(X)


def inverse(A: Matrix, precision: Optional[int] = None) -> Matrix:
    """
    역행렬. det가 단항식이면 정확, 아니면 precision까지의 급수 근사.
    """
    if is_lower_triangular(A) and all(A[i][i].is_monomial() for i in range(len(A))):
        return lower_triangular_inverse(A)
    d = det(A)
    if not d.terms:
        raise InvalidInputError("matrix is singular")
    if d.is_monomial():
        return mat_scale(adjugate(A), LaurentPoly.monomial(d.tower, -d.terms[0][0], d.tower.field.inv(d.terms[0][1])))
    if precision is None:
        raise InvalidInputError("determinant is not a monomial, precision required for inverse")
    return mat_scale(adjugate(A), series_invert(d, precision))
