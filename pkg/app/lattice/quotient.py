"""
잉여 몫공간 W = M/M′ (tM ⊂ M′ ⊂ M)

M 기저에서 M′ 의 mod t 상을 U, 표준 단위벡터 여공간을 C 로 잡아
P = [U | C] 의 뒤쪽 좌표를 W 의 좌표로 쓴다. 격자 사이 반선형 사상은
이 기저들에서 F_{q^m} 행렬로 내려온다.

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from app.algebra import matrix as mx
from app.algebra import semilinear as ff
from app.algebra.arith import FieldTower, LaurentPoly
from app.algebra.matrix import Matrix
from app.algebra.semilinear import IntMatrix, IntVector, SemilinearMap
from app.lattice.lattice import Lattice, normalize
from app.utils.errors import InvalidInputError


@dataclass(frozen=True)
class ResidueQuotient:
    """
    M/M′ 의 명시적 기저

    사용 예시:
        W = ResidueQuotient.of(M, M_sub)
        W.dim
        W.lift_line([1, 0])     # M′ + O·lift
    """
    big: Lattice
    small: Lattice
    image: tuple[tuple[int, ...], ...]       # U: M′ 의 mod t 상 (열)
    complement: tuple[int, ...]              # C: 단위벡터 번호
    change: tuple[tuple[int, ...], ...]      # P^{-1}

    @classmethod
    def of(cls, big: Lattice, small: Lattice) -> "ResidueQuotient":
        if not big.contains(small) or not small.contains(big.scale(1)):
            raise InvalidInputError("quotient requires tM ⊂ M′ ⊂ M")
        field = big.tower.field
        h = mx.residue(big.coordinates(small.basis))
        U = ff.column_space_basis(field, h)
        n = big.n
        comp = ff.complement_columns(field, U, n)
        P = [list(U[r]) + [1 if r == c else 0 for c in comp] for r in range(n)]
        Pinv = ff.inverse(field, P)
        return cls(big, small, tuple(tuple(r) for r in U), tuple(comp), tuple(tuple(r) for r in Pinv))

    @property
    def tower(self) -> FieldTower:
        return self.big.tower

    @property
    def dim(self) -> int:
        return len(self.complement)

    @property
    def rank_small(self) -> int:
        return self.big.n - self.dim

    def coordinates_of_residue(self, xbar: Sequence[int]) -> IntVector:
        """M 기저 mod t 좌표 → W 좌표"""
        y = ff.mat_vec(self.tower.field, self.change, xbar)
        return y[self.rank_small:]

    def coordinates(self, vectors: Matrix) -> IntMatrix:
        """M 안 벡터(열)들의 W 좌표 (열)"""
        xbar = mx.residue(self.big.coordinates(vectors))
        cols = ff.transpose(xbar, len(vectors[0]) if vectors else 0)
        return ff.transpose([self.coordinates_of_residue(c) for c in cols], self.dim)

    def lift(self, w: Sequence[int]) -> tuple[LaurentPoly, ...]:
        """W 벡터 → M 안의 상수 좌표 대표"""
        coeffs = [0] * self.big.n
        for c, v in zip(self.complement, w):
            coeffs[c] = v
        vec = tuple((LaurentPoly.constant(self.tower, v),) for v in coeffs)
        return mx.column(mx.mat_mul(self.big.basis, vec), 0)

    def lift_line(self, w: Sequence[int]) -> Lattice:
        """M′ + O·lift(w)"""
        if not any(w):
            raise InvalidInputError("zero vector does not span a line")
        col = tuple((x,) for x in self.lift(w))
        return normalize(mx.hstack(self.small.basis, col))

    def lift_subspace(self, vectors: Sequence[Sequence[int]]) -> Lattice:
        """M′ + O·lift(span)"""
        if not vectors:
            return self.small
        cols = [tuple((x,) for x in self.lift(w)) for w in vectors]
        return normalize(mx.hstack(self.small.basis, *cols))

    def embed(self, target: FieldTower) -> "ResidueQuotient":
        return ResidueQuotient.of(self.big.embed(target), self.small.embed(target))


def induced_map(source: ResidueQuotient, target: ResidueQuotient, g: Matrix, power: int) -> SemilinearMap:
    """
    x ↦ g·σ^power(x) 가 source.big → target.big, source.small → target.small 일 때
    W_source → W_target 로 내려온 반선형 사상
    """
    field = source.tower.field
    A = target.big.coordinates(mx.mat_mul(g, mx.frobenius_matrix(source.big.basis, power)))
    if not mx.is_integral(A):
        raise InvalidInputError("map does not send the source lattice into the target lattice")
    if not target.small.contains_vectors(mx.mat_mul(g, mx.frobenius_matrix(source.small.basis, power))):
        raise InvalidInputError("map does not send the source sublattice into the target sublattice")
    Abar = mx.residue(A)
    C = [[1 if r == c else 0 for c in source.complement] for r in range(source.big.n)]
    image = ff.mat_mul(field, target.change, ff.mat_mul(field, Abar, C))
    return SemilinearMap.of(source.tower, image[target.rank_small:], power)

