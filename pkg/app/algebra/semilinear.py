"""
F_{q^m} 위 선형대수와 σ^k-반선형 사상

동작 원리:
    - 행 축약은 galois FieldArray.row_reduce에 맡기고, 피벗/영공간 기저는
      축약 결과에서 결정적으로 읽어낸다 (같은 입력 → 같은 기저).
    - 반선형 방정식 A·σ^k(x) = λ·x 는 F_p-선형이므로 작업체를 F_p 위
      nD 차원 공간으로 펼쳐 galois GF(p) 영공간으로 푼다.
    - 해가 없으면 m의 배수로 작업체를 확장하며 다시 시도한다 (상한 field_cap).

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from app.algebra.arith import FieldTower, FiniteField, finite_field
from app.utils.errors import BudgetExhaustedError, InvalidInputError
from app.utils.logger import log

IntMatrix = list[list[int]]
IntVector = list[int]


# ── 기본 선형대수 ──────────────────────────────────────────

def _gf(field: FiniteField, rows: Sequence[Sequence[int]]):
    return field.gf(np.array(rows, dtype=np.int64))


def rref(field: FiniteField, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[IntMatrix, list[int]]:
    """기약 행 사다리꼴과 피벗 열 목록"""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or not ncols:
        return rows, []
    reduced = _gf(field, rows).row_reduce()
    out = [[int(x) for x in r] for r in reduced.view(np.ndarray).tolist()]
    pivots = []
    for r in out:
        for j, x in enumerate(r):
            if x:
                pivots.append(j)
                break
    return out, pivots


def rank(field: FiniteField, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(field, rows)[1])


def null_space(field: FiniteField, rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """A·x = 0 의 기저 (자유 변수마다 하나, 그 자리 1)"""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(field, rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in enumerate(pivots):
            x[pc] = field.neg(reduced[r][f])
        basis.append(x)
    return basis


def mat_mul(field: FiniteField, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(A)
    k = len(B)
    l = len(B[0]) if B else 0
    if not n or not l:
        return [[0] * l for _ in range(n)]
    if not k:
        return [[0] * l for _ in range(n)]
    prod = _gf(field, A) @ _gf(field, B)
    return [[int(x) for x in r] for r in prod.view(np.ndarray).tolist()]


def mat_vec(field: FiniteField, A: Sequence[Sequence[int]], x: Sequence[int]) -> IntVector:
    return [r[0] for r in mat_mul(field, A, [[v] for v in x])]


def transpose(A: Sequence[Sequence[int]], ncols: int = 0) -> IntMatrix:
    if not A:
        return [[] for _ in range(ncols)]
    return [list(c) for c in zip(*A)]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def solve(field: FiniteField, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Optional[IntMatrix]:
    """A·X = B 의 한 해 (자유 변수 0), 해가 없으면 None"""
    n = len(A)
    k = len(A[0]) if A else 0
    l = len(B[0]) if B else 0
    if not n:
        return [[0] * l for _ in range(k)]
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    reduced, pivots = rref(field, aug, k + l)
    X = [[0] * l for _ in range(k)]
    for r, pc in enumerate(pivots):
        if pc >= k:
            return None
        for j in range(l):
            X[pc][j] = reduced[r][k + j]
    return X


def inverse(field: FiniteField, A: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(A)
    X = solve(field, A, identity(n))
    if X is None or rank(field, A) != n:
        raise InvalidInputError("matrix over the residue field is singular")
    return X


def column_space_basis(field: FiniteField, A: Sequence[Sequence[int]]) -> IntMatrix:
    """열공간 기저를 열로 갖는 행렬 (RREF(Aᵀ)의 0 아닌 행)"""
    n = len(A)
    cols = transpose(A)
    if not cols:
        return [[] for _ in range(n)]
    reduced, pivots = rref(field, cols, n)
    return transpose(reduced[:len(pivots)], n)


def complement_columns(field: FiniteField, U: Sequence[Sequence[int]], n: int) -> list[int]:
    """U의 열공간에 대한 표준기저 여공간의 단위벡터 번호"""
    cols = transpose(U, n)
    if not cols or not cols[0]:
        return list(range(n))
    _, pivots = rref(field, cols, n)
    return [j for j in range(n) if j not in pivots]


def frobenius_vector(tower: FieldTower, x: Sequence[int], k: int) -> IntVector:
    return [tower.frobenius(v, k) for v in x]


def frobenius_rows(tower: FieldTower, A: Sequence[Sequence[int]], k: int) -> IntMatrix:
    return [[tower.frobenius(v, k) for v in r] for r in A]


def embed_rows(source: FieldTower, target: FieldTower, A: Sequence[Sequence[int]]) -> IntMatrix:
    return [[source.embed_value(v, target) for v in r] for r in A]


def normalize_vector(field: FiniteField, x: Sequence[int]) -> IntVector:
    """첫 0 아닌 좌표를 1로 맞춤 (직선의 정규 대표)"""
    for v in x:
        if v:
            inv = field.inv(v)
            return [field.mul(inv, w) for w in x]
    return list(x)


# ── 반선형 사상 ──────────────────────────────────────────

@dataclass(frozen=True)
class SemilinearMap:
    """
    x ↦ A·σ^power(x)

    사용 예시:
        phi = SemilinearMap(tower, ((0, 1), (1, 0)), power=1)
        phi.apply([1, 0])
    """
    tower: FieldTower
    matrix: tuple[tuple[int, ...], ...]
    power: int = 0

    @classmethod
    def of(cls, tower: FieldTower, rows: Sequence[Sequence[int]], power: int = 0) -> "SemilinearMap":
        return cls(tower, tuple(tuple(int(v) for v in r) for r in rows), power)

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def apply(self, x: Sequence[int]) -> IntVector:
        return mat_vec(self.tower.field, self.matrix, frobenius_vector(self.tower, x, self.power))

    def apply_columns(self, U: Sequence[Sequence[int]]) -> IntMatrix:
        return mat_mul(self.tower.field, self.matrix, frobenius_rows(self.tower, U, self.power))

    def compose(self, inner: "SemilinearMap") -> "SemilinearMap":
        """self ∘ inner : x ↦ A σ^a(B σ^b x) = A σ^a(B) σ^{a+b}(x)"""
        twisted = frobenius_rows(self.tower, inner.matrix, self.power)
        return SemilinearMap.of(self.tower, mat_mul(self.tower.field, self.matrix, twisted), self.power + inner.power)

    def rank(self) -> int:
        return rank(self.tower.field, self.matrix) if self.matrix and self.cols else 0

    def is_bijective(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def kernel(self) -> list[IntVector]:
        """σ^{-power}(null A)"""
        return [frobenius_vector(self.tower, v, -self.power) for v in null_space(self.tower.field, self.matrix, self.cols)]

    def inverse(self) -> "SemilinearMap":
        """(A σ^k)^{-1} = σ^{-k}(A^{-1}) σ^{-k}"""
        inv = inverse(self.tower.field, self.matrix)
        return SemilinearMap.of(self.tower, frobenius_rows(self.tower, inv, -self.power), -self.power)

    def embed(self, target: FieldTower) -> "SemilinearMap":
        return SemilinearMap.of(target, embed_rows(self.tower, target, self.matrix), self.power)


def fixed_vector(tower: FieldTower, A: Sequence[Sequence[int]], power: int, scalar: int = 1) -> Optional[IntVector]:
    """
    A·σ^power(x) = scalar·x 의 0 아닌 해 (작업체 안에서), 없으면 None

    F_p-선형화 후 galois GF(p) 영공간의 첫 기저 벡터를 사용한다.
    """
    field = tower.field
    n = len(A)
    if not n:
        return None
    D = field.degree
    basis_elems = [field.p ** j for j in range(D)]
    columns = []
    for i in range(n):
        for beta in basis_elems:
            x = [0] * n
            x[i] = beta
            image = mat_vec(field, A, frobenius_vector(tower, x, power))
            image = [field.sub(image[r], field.mul(scalar, x[r])) for r in range(n)]
            columns.append([d for v in image for d in field.digits(v)])
    prime = finite_field(field.p, 1)
    system = prime.gf(np.array(columns, dtype=np.int64).T)
    kernel = system.null_space()
    if kernel.shape[0] == 0:
        return None
    coords = [int(v) for v in kernel[0].view(np.ndarray).tolist()]
    return [field.from_digits(coords[i * D:(i + 1) * D]) for i in range(n)]


def fixed_vector_extending(
    tower: FieldTower,
    A: Sequence[Sequence[int]],
    power: int,
    scalar: int = 1,
    field_cap: int = 4,
) -> tuple[FieldTower, IntVector]:
    """
    작업체를 m, 2m, 3m, … (≤ field_cap) 로 키우며 고정 벡터를 찾는다.

    Raises:
        BudgetExhaustedError: 상한까지 해가 없을 때
    """
    k = 1
    while tower.m * k <= max(field_cap, tower.m):
        target = tower.extend(k)
        rows = embed_rows(tower, target, A)
        lam = tower.embed_value(scalar, target)
        x = fixed_vector(target, rows, power, lam)
        if x is not None:
            if k > 1:
                log.debug(f"[semilinear] fixed vector found after extending to m={target.m}")
            return target, x
        k += 1
    raise BudgetExhaustedError(
        "field-extension",
        f"no fixed vector of a {len(A)}x{len(A)} σ^{power}-linear map up to m={field_cap}",
        field_cap=field_cap,
    )
