"""
F-아이소크리스탈 (L^n, F = b·σ)

역할:
  - 표준형 (순환 블록) 과 심플렉틱 표준형 N″ ⊕ Ñ ⊕ N′ 구성
  - 노름 행렬 N_s(b) = b·σ(b)⋯σ^{s-1}(b), 격자 변환 F^s(M)
  - 닮음 인자 c (⟨Fx, Fy⟩ = c·⟨x, y⟩^σ) 와 d = val(c)

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from app.algebra import matrix as mx
from app.algebra.arith import FieldTower, LaurentPoly
from app.algebra.coweight import Coweight, Rational, gsp_defect, newton_blocks
from app.algebra.matrix import Matrix
from app.lattice.lattice import Lattice, SymplecticForm, relative_position
from app.utils.errors import InvalidInputError


@dataclass(frozen=True)
class Isocrystal:
    """
    b ∈ GL_n(L), F = b·σ

    사용 예시:
        X = standard_isocrystal(tower, ["1/2", "1/2"])
        X.apply(Lattice.standard(tower, 2))        # F·Λ_0
    """
    tower: FieldTower
    b: Matrix

    def __post_init__(self):
        n, k = mx.shape(self.b)
        if n != k or not n:
            raise InvalidInputError(f"isocrystal matrix must be square and nonempty, got {n}x{k}")
        if not mx.det(self.b).terms:
            raise InvalidInputError("isocrystal matrix is singular")

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def det_valuation(self) -> int:
        return int(mx.det(self.b).valuation())

    @property
    def f_def(self) -> int:
        """성분이 모두 F_{q^{m'}} 에 들어가는 최소 m'"""
        m = self.tower.m
        for d in range(1, m + 1):
            if m % d == 0 and mx.frobenius_matrix(self.b, d) == self.b:
                return d
        return m

    def norm_matrix(self, s: int) -> Matrix:
        """N_s(b) = b·σ(b)⋯σ^{s-1}(b)"""
        if s < 0:
            raise InvalidInputError("norm_matrix needs s >= 0")
        out = mx.identity(self.tower, self.n)
        for k in range(s):
            out = mx.mat_mul(out, mx.frobenius_matrix(self.b, k))
        return out

    def apply(self, M: Lattice) -> Lattice:
        """F·M"""
        return M.image(self.b, 1)

    def twist_apply(self, M: Lattice, s: int) -> Lattice:
        """F^s·M, s < 0 이면 F^{-1}M = σ^{-1}(b^{-1}M) 반복 (정확한 역상)"""
        if s >= 0:
            return M.image(self.norm_matrix(s), s) if s else M
        out = M
        for _ in range(-s):
            out = out.preimage(self.b).frobenius(-1)
        return out

    def embed(self, target: FieldTower) -> "Isocrystal":
        return Isocrystal(target, mx.embed_matrix(self.b, target))

    def rebase(self, target: FieldTower) -> "Isocrystal":
        return Isocrystal(target, mx.rebase_matrix(self.b, target))

    def sigma_conjugate(self, g: Matrix, precision: Optional[int] = None) -> "Isocrystal":
        """g·b·σ(g)^{-1}"""
        return Isocrystal(self.tower, mx.mat_mul(mx.mat_mul(g, self.b), mx.inverse(mx.frobenius_matrix(g, 1), precision)))

    def block(self, indices: Sequence[int]) -> "Isocrystal":
        return Isocrystal(self.tower, mx.submatrix(self.b, indices, indices))


def hodge_point(M: Lattice, X: Isocrystal) -> Coweight:
    """μ(M) = inv(M, FM)"""
    return relative_position(M, X.apply(M))


# ── 표준형 ──────────────────────────────────────────

def cyclic_block(tower: FieldTower, size: int, corner: int) -> Matrix:
    """Fe_1 = e_2, …, Fe_{size-1} = e_size, Fe_size = t^corner·e_1"""
    z = LaurentPoly.zero(tower)
    rows = [[z] * size for _ in range(size)]
    for j in range(size - 1):
        rows[j + 1][j] = LaurentPoly.one(tower)
    rows[0][size - 1] = LaurentPoly.t(tower, corner)
    return mx.as_matrix(rows)


def standard_isocrystal(tower: FieldTower, nu: Iterable[Rational]) -> Isocrystal:
    """
    등경사 부분마다 순환 블록 하나, 기울기 큰 블록이 앞.

    Raises:
        InvalidInputError: m_i·ν(i) ∉ Z
    """
    parts, slopes = newton_blocks(nu)
    blocks = [cyclic_block(tower, m, int(m * s)) for m, s in zip(parts, slopes)]
    return Isocrystal(tower, mx.block_diagonal(tower, blocks))


def standard_symplectic_isocrystal(tower: FieldTower, nu: Iterable[Rational], d: Optional[int] = None) -> tuple[Isocrystal, SymplecticForm]:
    """
    ν_i + ν_{2n+1-i} = d 인 ν 에 대한 심플렉틱 표준형 (c = t^d).

    위치 1..p: 기울기 > d/2 (N″, 순환 블록 A)
    위치 2n+1-p..2n: 짝 N′, 행렬 t^d·A^{-T}
    가운데 Ñ: d 홀수면 Fe_i = −t^{(d-1)/2}e_{i'}, Fe_{i'} = t^{(d+1)/2}e_i, 짝수면 t^{d/2}·I
    """
    nu = Coweight.of(nu)
    defect = gsp_defect(nu)
    if defect is None:
        raise InvalidInputError(f"{nu} does not satisfy nu_i + nu_(2n+1-i) = const")
    if d is not None and Fraction(d) != defect:
        raise InvalidInputError(f"defect {d} does not match {nu}")
    if defect.denominator != 1:
        raise InvalidInputError(f"similitude valuation {defect} is not an integer")
    d = int(defect)
    newton_blocks(nu)
    size = nu.n
    n = size // 2
    half = Fraction(d, 2)
    upper = [x for x in nu.entries[:n] if x > half]
    p = len(upper)
    z = LaurentPoly.zero(tower)
    rows = [[z] * size for _ in range(size)]

    if p:
        A = standard_isocrystal(tower, upper).b
        D = mx.mat_shift(mx.transpose(mx.inverse(A)), d)
        # N′ 기저 e'_j = e_{2n+1-j} (0-기준: size-1-j)
        for i in range(p):
            for j in range(p):
                rows[i][j] = A[i][j]
                rows[size - 1 - i][size - 1 - j] = D[i][j]

    minus_one = tower.field.neg(1)
    for i in range(p, n):
        partner = size - 1 - i
        if d % 2:
            h = (d - 1) // 2
            rows[partner][i] = LaurentPoly.monomial(tower, h, minus_one)
            rows[i][partner] = LaurentPoly.t(tower, h + 1)
        else:
            rows[i][i] = LaurentPoly.t(tower, d // 2)
            rows[partner][partner] = LaurentPoly.t(tower, d // 2)
    return Isocrystal(tower, mx.as_matrix(rows)), SymplecticForm.standard(tower, n)


def twisted_example(tower: FieldTower, a: int = 1, variant: str = "b") -> Isocrystal:
    """
    GL_3 예시: variant "b" 는 단항 행렬, "b_prime" 은 (3,2) 성분 1 을 더한 σ-공액.

    ν̄ = (a + 1/2, a + 1/2, a)
    """
    if a < 0:
        raise InvalidInputError("a must be non-negative")
    z = LaurentPoly.zero(tower)
    def t(k: int) -> LaurentPoly:
        return LaurentPoly.t(tower, k)

    rows = [
        [z, t(a), z],
        [t(a + 1), z, z],
        [z, LaurentPoly.one(tower) if variant == "b_prime" else z, t(a)],
    ]
    if variant not in ("b", "b_prime"):
        raise InvalidInputError(f"unknown example variant {variant!r}")
    return Isocrystal(tower, mx.as_matrix(rows))


# ── 심플렉틱 ──────────────────────────────────────────

def similitude_scale(X: Isocrystal, form: SymplecticForm, nu: Optional[Coweight] = None) -> tuple[LaurentPoly, int]:
    """
    bᵀJb = c·σ(J) 인 c 와 val(c).

    Raises:
        InvalidInputError: 닮음이 아닐 때 (위반하는 기저쌍 포함)
    """
    if form.size != X.n:
        raise InvalidInputError(f"form of size {form.size} on isocrystal of rank {X.n}")
    F = X.tower.field
    J = mx.rebase_matrix(form.matrix(), X.tower)
    G = mx.mat_mul(mx.mat_mul(mx.transpose(X.b), J), X.b)
    sigma_J = mx.frobenius_matrix(J, 1)
    c = None
    for i in range(X.n):
        for j in range(X.n):
            g = sigma_J[i][j].constant_term()
            if g:
                c = G[i][j].scale(F.inv(g))
                break
        if c is not None:
            break
    for i in range(X.n):
        for j in range(X.n):
            if G[i][j] != c * sigma_J[i][j]:
                raise InvalidInputError(
                    "b is not a similitude of the form",
                    {"witness": [i, j], "expected": repr(c * sigma_J[i][j]), "found": repr(G[i][j])},
                )
    if not c.terms:
        raise InvalidInputError("similitude factor is zero")
    d = int(c.valuation())
    if nu is not None:
        defect = gsp_defect(nu)
        if defect is None or defect != d:
            raise InvalidInputError(f"Newton point {nu} violates nu_i + nu_(2n+1-i) = {d}")
    return c, d
