"""
X(ω_r, F)_Ī 의 격자 사슬: 소속 판정, 안정 직선, 사슬 완성

GL: 인접한 두 구성원 M_k ⊂ M_ℓ 사이의 W = M_ℓ/M_k 에서 F̄, V̄ 안정 직선을 찾아
    M_{k+1} = M_k + O·lift(ℓ) 을 끼워 넣는다.
GSp: 같은 직선으로 X_{k+1} = M 을 만들고 짝 인덱스에는 Y_{−(k+1)} = t^d·M^⊥ 를 넣는다.

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from app.algebra import matrix as mx
from app.algebra import semilinear as ff
from app.algebra.arith import FieldTower
from app.algebra.coweight import Coweight, is_minuscule_weight_r, omega
from app.algebra.matrix import Matrix
from app.algebra.semilinear import IntVector, SemilinearMap
from app.crystal.isocrystal import (
    Isocrystal,
    hodge_point,
    standard_isocrystal,
    standard_symplectic_isocrystal,
)
from app.crystal.mazur import minuscule_lattice, search_witness, selfdual_minuscule_lattice
from app.crystal.newton import newton_point
from app.lattice.chain import LatticeChain, chain_validate
from app.lattice.lattice import Lattice, SymplecticForm, dual, is_selfdual_up_to_scalar
from app.lattice.quotient import ResidueQuotient, induced_map
from app.models.search import SearchConfig
from app.utils.errors import BudgetExhaustedError, InvalidInputError, NewtonUncertifiedError
from app.utils.logger import log


# ── 잉여 공간 ──────────────────────────────────────────

@dataclass(frozen=True)
class ResidueSpace:
    """
    W = M/M′ 와 유도된 F̄ (σ^{+1}-선형), V̄ (σ^{-1}-선형)
    """
    quotient: ResidueQuotient
    F: SemilinearMap
    V: SemilinearMap

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def tower(self) -> FieldTower:
        return self.quotient.tower

    def embed(self, target: FieldTower) -> "ResidueSpace":
        return ResidueSpace(self.quotient.embed(target), self.F.embed(target), self.V.embed(target))


def inverse_precision(b: Matrix, source: Lattice, target: Lattice) -> int:
    """source 를 target 의 좌표로 옮길 때 b^{-1} 급수가 mod t 까지 정확해지는 정밀도"""
    n = target.n
    floor = target.volume - (n - 1) * int(mx.min_valuation(target.basis))
    adj = mx.adjugate(b)
    det_val = int(mx.det(b).valuation())
    return floor - int(mx.min_valuation(source.basis)) - min(0, int(mx.min_valuation(adj))) + 2 * abs(det_val) + n + 2


def v_matrix(X: Isocrystal, precision: Optional[int] = None) -> Matrix:
    """V = t·F^{-1} = σ^{-1}(t·b^{-1})·σ^{-1}"""
    inv = mx.inverse(X.b, precision)
    return mx.frobenius_matrix(mx.mat_shift(inv, 1), -1)


def residue_space(big: Lattice, small: Lattice, X: Isocrystal) -> ResidueSpace:
    """
    Raises:
        InvalidInputError: tM ⊂ M′ ⊂ M 가 아니거나 F, V 가 두 격자를 보존하지 않을 때
    """
    Q = ResidueQuotient.of(big, small)
    precision = None if mx.det(X.b).is_monomial() else inverse_precision(X.b, big, small)
    F = induced_map(Q, Q, X.b, 1)
    V = induced_map(Q, Q, v_matrix(X, precision), -1)
    return ResidueSpace(Q, F, V)


# ── 안정 직선 ──────────────────────────────────────────

@dataclass(frozen=True)
class StableLine:
    vector: tuple[int, ...]
    tower: FieldTower
    case: str


def is_stable_line(W: ResidueSpace, x: Sequence[int]) -> bool:
    """F̄x, V̄x ∈ span(x)"""
    if not any(x):
        return False
    field = W.tower.field
    for image in (W.F.apply(x), W.V.apply(x)):
        if ff.rank(field, [list(x), list(image)]) > 1:
            return False
    return True


def _restricted(field, K: list[IntVector], images: list[IntVector]) -> list[list[int]]:
    """K 기저 좌표로 표시한 사상 행렬 (images 는 K 의 상)"""
    cols = ff.transpose(K)
    sol = ff.solve(field, cols, ff.transpose(images))
    if sol is None:
        raise InvalidInputError("residue operator does not preserve ker F")
    return sol


def stable_line(W: ResidueSpace, cfg: Optional[SearchConfig] = None) -> StableLine:
    """
    F̄ℓ ⊂ ℓ, V̄ℓ ⊂ ℓ 인 직선.

    F̄ 가 전단사이면 F̄ 고정 벡터 (필요하면 잉여체 확대),
    아니면 V̄|ker F̄ 의 핵 또는 고정 벡터.

    Raises:
        BudgetExhaustedError: field_cap 까지 고정 벡터가 없을 때
    """
    cfg = cfg or SearchConfig()
    if W.dim < 1:
        raise InvalidInputError("stable line needs dim W >= 1")
    tower = W.tower
    field = tower.field

    if W.F.is_bijective():
        target, x = ff.fixed_vector_extending(tower, W.F.matrix, 1, 1, cfg.field_cap)
        return StableLine(tuple(ff.normalize_vector(target.field, x)), target, "fixed")

    K = W.F.kernel()
    images = [W.V.apply(v) for v in K]
    B = SemilinearMap.of(tower, _restricted(field, K, images), -1)
    if not B.is_bijective():
        y = B.kernel()[0]
        x = ff.mat_vec(field, ff.transpose(K), y)
        return StableLine(tuple(ff.normalize_vector(field, x)), tower, "kernel")

    target, y = ff.fixed_vector_extending(tower, B.matrix, -1, 1, cfg.field_cap)
    Kt = ff.embed_rows(tower, target, ff.transpose(K))
    x = ff.mat_vec(target.field, Kt, y)
    return StableLine(tuple(ff.normalize_vector(target.field, x)), target, "V-fixed")


# ── 소속 판정 ──────────────────────────────────────────

def member_ok(M: Lattice, X: Isocrystal, r: int) -> bool:
    """tM ⊂ FM ⊂ M, 여길이 r"""
    return hodge_point(M, X) == omega(r, M.n)


def chain_membership(chain: LatticeChain, X: Isocrystal, r: int, form: Optional[SymplecticForm] = None) -> bool:
    """
    Raises:
        InvalidInputError: 사슬이 유효하지 않을 때
    """
    check = chain_validate(chain, form)
    if not check.valid:
        raise InvalidInputError(f"invalid lattice chain: {check.failure}", {"pair": check.pair})
    return all(member_ok(M, X, r) for _, M in chain.members)


# ── 사슬 완성 ──────────────────────────────────────────

@dataclass(frozen=True)
class ExtensionStep:
    index: int
    line: tuple[int, ...]
    field_degree: int
    kind: str

    def as_dict(self) -> dict:
        return {"index": self.index, "line": list(self.line), "field_degree": self.field_degree, "kind": self.kind}


@dataclass(frozen=True)
class ChainExtension:
    chain: LatticeChain
    isocrystal: Isocrystal
    form: Optional[SymplecticForm] = None
    steps: tuple[ExtensionStep, ...] = field(default=())


def _line_lattice(W: ResidueSpace, line: StableLine) -> Lattice:
    Q = W.quotient if line.tower is W.tower else W.quotient.embed(line.tower)
    return Q.lift_line(list(line.vector))


def refine_selfdual(
    chain: LatticeChain,
    k: int,
    M: Lattice,
    form: SymplecticForm,
) -> LatticeChain:
    """
    M_k ⊂ M ⊂ M_ℓ, dim M/M_k = 1 인 M 으로부터 X_{k+1} = M, Y_{−(k+1)} = t^d·M^⊥ 를 더한 자기쌍대 사슬.

    Raises:
        InvalidInputError: M_k ⊂ M ⊂ M_ℓ 조건 또는 결과 사슬 검사 실패
    """
    check = chain_validate(chain, form)
    if not check.valid:
        raise InvalidInputError(f"invalid selfdual chain: {check.failure}")
    d = check.defect
    N = chain.N
    if not chain.has_index(k) or chain.has_index(k + 1):
        raise InvalidInputError(f"refinement needs k in J and k+1 not in J (k={k})")
    lower = chain.member(k)
    _, upper_index = chain.neighbours(k + 1)
    if not (M.contains(lower) and chain.member(upper_index).contains(M) and M.volume == lower.volume - 1):
        raise InvalidInputError(f"M does not satisfy M_{k} ⊂ M ⊂ M_{upper_index} with dim M/M_{k} = 1")

    Y = dual(M, form).scale(d)
    out = chain.with_defect(d).with_member(k + 1, M)
    partner = -(k + 1)
    if (partner - (k + 1)) % N == 0:
        shift = (partner - (k + 1)) // N
        if Y != M.scale(-shift):
            raise InvalidInputError(f"self-paired index {k + 1}: t^d M^perp differs from M")
    else:
        out = out.with_member(partner, Y)
    result = chain_validate(out, form)
    if not result.valid:
        raise InvalidInputError(f"refined chain is invalid: {result.failure}", {"pair": result.pair})
    return out


def extend_chain(
    chain: LatticeChain,
    X: Isocrystal,
    r: int,
    target: Iterable[int],
    form: Optional[SymplecticForm] = None,
    cfg: Optional[SearchConfig] = None,
) -> ChainExtension:
    """
    J̄ 형 사슬을 Ī 형으로 완성. 결과는 입력으로 제한된다.

    Raises:
        InvalidInputError: 입력 사슬이 소속 조건을 만족하지 않거나 J̄ ⊄ Ī
        BudgetExhaustedError: 안정 직선 탐색 예산 소진
    """
    cfg = cfg or SearchConfig()
    clock = cfg.start()
    N = chain.N
    goal = sorted({i % N for i in target})
    if not set(chain.type) <= set(goal):
        raise InvalidInputError(f"chain type {list(chain.type)} is not contained in {goal}")
    if form is not None and set(goal) != {(-i) % N for i in goal}:
        raise InvalidInputError(f"target type {goal} is not symmetric")
    if not chain_membership(chain, X, r, form):
        raise InvalidInputError(f"input chain is not in X(omega_{r}, F)")
    if form is not None:
        chain = chain.with_defect(chain_validate(chain, form).defect)

    steps: list[ExtensionStep] = []
    while True:
        missing = [i for i in goal if not chain.has_index(i)]
        if not missing:
            break
        if clock.expired():
            raise BudgetExhaustedError("deadline", "chain extension ran out of time", deadline=cfg.deadline)
        k, upper = chain.neighbours(missing[0])
        W = residue_space(chain.member(upper), chain.member(k), X)
        line = stable_line(W, cfg)
        if line.tower is not chain.tower:
            log.info(f"[chains] residue field extended to m={line.tower.m}")
            chain = chain.embed(line.tower)
            X = X.embed(line.tower)
            form = form.embed(line.tower) if form is not None else None
        M = _line_lattice(W, line)
        if form is None:
            chain = chain.with_member(k + 1, M)
            kind = "gl"
        else:
            chain = refine_selfdual(chain, k, M, form)
            kind = "selfdual"
        if not member_ok(M, X, r):
            raise InvalidInputError(f"inserted lattice at index {k + 1} fails the membership condition")
        steps.append(ExtensionStep((k + 1) % N, line.vector, line.tower.m, kind))
        log.debug(f"[chains] added index {(k + 1) % N} via {line.case} line {list(line.vector)}")

    out = chain.restrict(goal)
    if not chain_membership(out, X, r, form):
        raise InvalidInputError("extended chain fails the membership condition")
    return ChainExtension(out, X, form, tuple(steps))


# ── 증인 ──────────────────────────────────────────

@dataclass(frozen=True)
class EmptyChain:
    """X(ω_r, F)_Ī = ∅ 인 이유"""
    reason: str
    nu: Coweight


def _base_lattice(
    X: Isocrystal, nu: Coweight, r: int, form: Optional[SymplecticForm], cfg: SearchConfig
) -> tuple[Lattice, Isocrystal]:
    tower = X.tower
    mu = omega(r, X.n)
    if form is None:
        if standard_isocrystal(tower, nu).b == X.b:
            return minuscule_lattice(tower, nu), X
    else:
        Xs, fs = standard_symplectic_isocrystal(tower, nu)
        if Xs.b == X.b and fs.gram == form.gram:
            M, _, _ = selfdual_minuscule_lattice(tower, nu)
            return M, X
    M, Xk, _ = search_witness(X, nu, mu, cfg, form)
    return M, Xk


def build_chain(
    X: Isocrystal,
    r: int,
    indices: Iterable[int],
    form: Optional[SymplecticForm] = None,
    cfg: Optional[SearchConfig] = None,
) -> Union[ChainExtension, EmptyChain]:
    """
    ν̄ 가 무게 r 미니스큘이면 Ī 형 증인 사슬, 아니면 EmptyChain.

    GSp 에서는 r ∈ {0, n, 2n} 만 가능하다.

    Raises:
        NewtonUncertifiedError: ν̄ 가 인증되지 않아 공집합 여부를 정할 수 없을 때
    """
    cfg = cfg or SearchConfig()
    indices = sorted({i % X.n for i in indices})
    if not indices:
        raise InvalidInputError("chain type must be nonempty")
    newton = newton_point(X, cfg)
    nu = newton.nu
    if form is not None and r not in (0, X.n // 2, X.n):
        return EmptyChain(f"for GSp only r in {{0, n, 2n}} occur, got r={r}", nu)
    if not newton.certified:
        log.warning(f"[chains] Newton point {nu} is not certified; emptiness is undecided")
        raise NewtonUncertifiedError(nu)
    if not is_minuscule_weight_r(nu, r):
        return EmptyChain(f"Mazur violation: {nu} is not minuscule of weight {r}", nu)

    M, X = _base_lattice(X, nu, r, form, cfg)
    if form is not None:
        form = form.embed(X.tower) if X.tower is not form.tower else form
        c = is_selfdual_up_to_scalar(M, form)
        base = LatticeChain.single(0, M).with_defect(-c)
    else:
        base = LatticeChain.single(0, M)
    goal = sorted(set(indices) | {0})
    ext = extend_chain(base, X, r, goal, form, cfg)
    chain = ext.chain.restrict(indices)
    log.info(f"[chains] built chain of type {indices} for r={r}, nu={nu}")
    return ChainExtension(chain, ext.isocrystal, ext.form, ext.steps)
