"""
스칼라 제한 R_{F′/F}: Z/fZ 등급 아이소크리스탈과 등급 격자

V ⊗ L = ⊕_{j ∈ Z/f} N_j 이고 F: N_{j-1} → N_j 는 b_j·σ (차수 1).
N_0 위의 F^f = b_0·σ(b_{f-1})⋯σ^{f-1}(b_1)·σ^f 가 σ^f 에 대한 아이소크리스탈이다.

등급 격자 M̃ 은 사슬 M_j = F^j M̃_{−j} (j = 0..f) 로 바꿔 다룬다.
부분 μ_j 는 사슬 순서를 따른다: inv(M_j, M_{j+1}) = μ_j
(등급 쪽에서 보면 inv(M̃_{−j}, F M̃_{−j−1}) = μ_j).

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from app.algebra import matrix as mx
from app.algebra.arith import FieldTower
from app.algebra.coweight import Coweight, Rational, gsp_defect, omega
from app.algebra.matrix import Matrix
from app.crystal.isocrystal import (
    Isocrystal,
    similitude_scale,
    standard_isocrystal,
    standard_symplectic_isocrystal,
)
from app.crystal.mazur import construct_lattice, construct_lattice_gsp, in_b_g_mu, search_witness
from app.crystal.newton import newton_point
from app.lattice.lattice import (
    Lattice,
    SymplecticForm,
    adapted_basis,
    is_selfdual_up_to_scalar,
    normalize,
    relative_position,
)
from app.models.search import SearchConfig
from app.utils.errors import InvalidInputError, NewtonUncertifiedError
from app.utils.logger import log


# ── 등급 아이소크리스탈 ──────────────────────────────────────────

@dataclass(frozen=True)
class GradedIsocrystal:
    """
    b_j: N_{j-1} → N_j (j ∈ Z/f), 작업체의 σ 위수 m 은 f 의 배수

    사용 예시:
        X, _ = standard_graded_isocrystal(field_tower(2, 1, 2), ["1/2", "1/2"], f=2)
        X.norm()                  # σ^2 에 대한 Isocrystal
        ungrade(GradedLattice.standard(X.tower, 2, 2), X)
    """
    tower: FieldTower
    bs: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.bs:
            raise InvalidInputError("graded isocrystal needs f >= 1")
        if self.tower.m % len(self.bs):
            raise InvalidInputError(f"working field degree m={self.tower.m} is not a multiple of f={len(self.bs)}")
        sizes = set()
        for j, b in enumerate(self.bs):
            try:
                sizes.add(Isocrystal(self.tower, b).n)
            except InvalidInputError as e:
                raise InvalidInputError(f"b_{j}: {e.message}") from e
        if len(sizes) != 1:
            raise InvalidInputError(f"graded pieces have different ranks {sorted(sizes)}")

    @property
    def f(self) -> int:
        return len(self.bs)

    @property
    def n(self) -> int:
        return len(self.bs[0])

    def b(self, j: int) -> Matrix:
        return self.bs[j % self.f]

    def power_matrix(self, j: int) -> Matrix:
        """F^j: N_{−j} → N_0 의 행렬 b_0·σ(b_{−1})⋯σ^{j−1}(b_{−j+1}) (σ^j 앞)"""
        out = mx.identity(self.tower, self.n)
        for k in range(j):
            out = mx.mat_mul(out, mx.frobenius_matrix(self.b(-k), k))
        return out

    def norm_matrix(self) -> Matrix:
        return self.power_matrix(self.f)

    def norm_tower(self) -> FieldTower:
        """같은 작업체를 σ^f 로 읽는 탑"""
        return self.tower.rebase(self.tower.e * self.f)

    def norm(self) -> Isocrystal:
        """(N_0, F^f)"""
        target = self.norm_tower()
        return Isocrystal(target, mx.rebase_matrix(self.norm_matrix(), target))

    def apply_power(self, M: Lattice, j: int) -> Lattice:
        """M ⊂ N_{−j} 의 F^j 상 (N_0 안)"""
        return M.image(self.power_matrix(j), j) if j else M

    def pull_power(self, M: Lattice, j: int) -> Lattice:
        """apply_power 의 역: F^{−j}M ⊂ N_{−j}"""
        return M.preimage(self.power_matrix(j)).frobenius(-j) if j else M

    def embed(self, target: FieldTower) -> "GradedIsocrystal":
        if target is self.tower:
            return self
        return GradedIsocrystal(target, tuple(mx.embed_matrix(b, target) for b in self.bs))


def graded_isocrystal(tower: FieldTower, bs: Sequence[Matrix]) -> GradedIsocrystal:
    return GradedIsocrystal(tower, tuple(bs))


def standard_graded_isocrystal(
    tower: FieldTower,
    nu: Iterable[Rational],
    f: int,
    group: str = "gl",
) -> tuple[GradedIsocrystal, Optional[SymplecticForm]]:
    """
    b_0 = ν 의 (심플렉틱) 표준형, 나머지 b_j = 1. 노름이 곧 σ^f 에 대한 표준형이다.

    Raises:
        InvalidInputError: f < 1, m 이 f 의 배수가 아님, ν 가 표준형을 갖지 않음
    """
    if f < 1:
        raise InvalidInputError("f must be positive")
    if group == "gsp":
        X0, form = standard_symplectic_isocrystal(tower, nu)
    elif group == "gl":
        X0, form = standard_isocrystal(tower, nu), None
    else:
        raise InvalidInputError(f"unknown group {group!r}")
    rest = [mx.identity(tower, X0.n) for _ in range(f - 1)]
    return GradedIsocrystal(tower, (X0.b, *rest)), form


def similitude_defects(X: GradedIsocrystal, form: SymplecticForm) -> list[int]:
    """⟨Fv, Fw⟩ = c_j·⟨v, w⟩^σ (v, w ∈ N_{j-1}) 의 val(c_j)"""
    return [similitude_scale(Isocrystal(X.tower, b), form)[1] for b in X.bs]


# ── 등급 여무게 ──────────────────────────────────────────

@dataclass(frozen=True)
class GradedCoweight:
    """μ = (μ_j)_{j ∈ Z/f}, 각 μ_j 지배 정수"""
    parts: tuple[Coweight, ...]

    @classmethod
    def of(cls, values: Iterable[Iterable[Rational]]) -> "GradedCoweight":
        parts = tuple(Coweight.of(v) for v in values)
        if not parts:
            raise InvalidInputError("graded coweight needs at least one part")
        if len({p.n for p in parts}) != 1:
            raise InvalidInputError(f"parts have different lengths {[p.n for p in parts]}")
        for j, p in enumerate(parts):
            if not p.integral or not p.is_dominant:
                raise InvalidInputError(f"part mu_{j} = {p} is not dominant integral")
        return cls(parts)

    @classmethod
    def minuscule(cls, ranks: Sequence[int], n: int) -> "GradedCoweight":
        return cls.of([omega(r, n) for r in ranks])

    @property
    def f(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return self.parts[0].n

    @property
    def total(self) -> Coweight:
        """μ′ = Σ_j μ_j (좌표별 합, 지배 부분끼리라 지배)"""
        out = self.parts[0]
        for p in self.parts[1:]:
            out = out + p
        return out

    def is_gsp(self) -> bool:
        return all(gsp_defect(p) is not None for p in self.parts)

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


# ── 등급 격자 ──────────────────────────────────────────

@dataclass(frozen=True)
class GradedLattice:
    """M̃ = ⊕_j M̃_j"""
    members: tuple[Lattice, ...]

    @classmethod
    def standard(cls, tower: FieldTower, n: int, f: int) -> "GradedLattice":
        return cls(tuple(Lattice.standard(tower, n) for _ in range(f)))

    @property
    def f(self) -> int:
        return len(self.members)

    @property
    def tower(self) -> FieldTower:
        return self.members[0].tower

    def member(self, j: int) -> Lattice:
        return self.members[j % self.f]

    def embed(self, target: FieldTower) -> "GradedLattice":
        return GradedLattice(tuple(M.embed(target) for M in self.members))


def _check_shapes(f: int, X: GradedIsocrystal) -> None:
    if f != X.f:
        raise InvalidInputError(f"graded object has f={f}, isocrystal has f={X.f}")


def ungrade(GM: GradedLattice, X: GradedIsocrystal) -> list[Lattice]:
    """(M_0, …, M_f), M_j = F^j M̃_{−j}; 항상 M_f = F^f M_0"""
    _check_shapes(GM.f, X)
    return [X.apply_power(GM.member(-j), j) for j in range(X.f + 1)]


def regrade(chain: Sequence[Lattice], X: GradedIsocrystal) -> GradedLattice:
    """
    ungrade 의 역: M̃_{−j} = F^{−j}M_j

    Raises:
        InvalidInputError: 길이가 f + 1 이 아니거나 M_f ≠ F^f M_0
    """
    f = X.f
    if len(chain) != f + 1:
        raise InvalidInputError(f"expected f + 1 = {f + 1} lattices, got {len(chain)}")
    if X.apply_power(chain[0], f) != chain[f]:
        raise InvalidInputError("chain does not close up: M_f != F^f M_0")
    members: list[Optional[Lattice]] = [None] * f
    for j in range(f):
        members[(-j) % f] = X.pull_power(chain[j], j)
    return GradedLattice(tuple(members))


# ── 보간 ──────────────────────────────────────────

def interpolate_chain(M0: Lattice, Mf: Lattice, parts: Union[GradedCoweight, Sequence[Coweight]]) -> list[Lattice]:
    """
    inv(M_0, M_f) = Σμ_j 일 때 inv(M_j, M_{j+1}) = μ_j 인 (M_0, …, M_f).

    공통 적합 기저 P (M_f = ⟨t^{μ′_i}P_i⟩) 에서 M_j = ⟨t^{c_i(j)}P_i⟩, c(j) = Σ_{l<j} μ_l.

    Raises:
        InvalidInputError: inv(M_0, M_f) ≠ Σμ_j
    """
    parts = parts if isinstance(parts, GradedCoweight) else GradedCoweight.of(parts)
    if parts.n != M0.n:
        raise InvalidInputError(f"parts have length {parts.n}, lattices have rank {M0.n}")
    P, position = adapted_basis(M0, Mf)
    if position != parts.total:
        raise InvalidInputError(
            "relative position of the end lattices differs from the sum of the parts",
            {"relative_position": position.to_strings(), "sum": parts.total.to_strings()},
        )
    out = [M0]
    c = [0] * M0.n
    for j, part in enumerate(parts.parts[:-1]):
        c = [a + int(x) for a, x in zip(c, part.entries)]
        out.append(normalize(mx.mat_mul(P, mx.diagonal(M0.tower, c))))
    out.append(Mf)
    for j, part in enumerate(parts.parts):
        if relative_position(out[j], out[j + 1]) != part:
            raise InvalidInputError(f"internal check failed: inv(M_{j}, M_{j + 1}) != {part}")
    return out


# ── 소속 판정 ──────────────────────────────────────────

def graded_membership(
    GM: GradedLattice,
    X: GradedIsocrystal,
    mu: GradedCoweight,
    form: Optional[SymplecticForm] = None,
) -> bool:
    """
    inv(M_j, M_{j+1}) = μ_j (j = 0..f−1), form 이 있으면 각 M̃_j 가 스칼라배 자기쌍대
    """
    _check_shapes(GM.f, X)
    if mu.f != X.f:
        raise InvalidInputError(f"mu has {mu.f} parts, isocrystal has f={X.f}")
    if form is not None and any(is_selfdual_up_to_scalar(M, form) is None for M in GM.members):
        return False
    chain = ungrade(GM, X)
    return all(relative_position(chain[j], chain[j + 1]) == mu.parts[j] for j in range(X.f))


# ── 증인 ──────────────────────────────────────────

@dataclass(frozen=True)
class GradedWitness:
    lattice: GradedLattice
    isocrystal: GradedIsocrystal
    mu: GradedCoweight
    chain: tuple[Lattice, ...]
    method: str
    form: Optional[SymplecticForm] = None
    transcript: tuple[str, ...] = field(default=())

    @property
    def field_degree(self) -> int:
        return self.lattice.tower.m


@dataclass(frozen=True)
class EmptyGraded:
    """X̊(μ, b)_K = ∅ 인 이유"""
    reason: str
    nu: Coweight
    mu_total: Coweight


def _norm_witness(
    norm: Isocrystal,
    nu: Coweight,
    mu: Coweight,
    form: Optional[SymplecticForm],
    cfg: SearchConfig,
) -> tuple[Lattice, Isocrystal, str]:
    """(N_0, F^f) 안의 inv(M_0, F^f M_0) = μ′ 격자"""
    tower = norm.tower
    if form is None:
        if standard_isocrystal(tower, nu).b == norm.b:
            w = construct_lattice(tower, nu, mu, cfg)
            return w.lattice, w.isocrystal, w.method
        return search_witness(norm, nu, mu, cfg)
    form_n = SymplecticForm.of(tower, form.gram)
    Xs, fs = standard_symplectic_isocrystal(tower, nu)
    if Xs.b == norm.b and fs.gram == form_n.gram:
        w = construct_lattice_gsp(tower, nu, mu, cfg)
        return w.lattice, w.isocrystal, w.method
    return search_witness(norm, nu, mu, cfg, form_n)


def witness_graded(
    mu: GradedCoweight,
    X: GradedIsocrystal,
    group: str = "gl",
    form: Optional[SymplecticForm] = None,
    cfg: Optional[SearchConfig] = None,
) -> Union[GradedWitness, EmptyGraded]:
    """
    [b] ∈ B(G, μ) 이면 X̊(μ, b)_K 의 원소, 아니면 EmptyGraded.

    노름 (N_0, F^f) 에서 inv(M_0, F^f M_0) = μ′ 인 M_0 를 만들고
    사슬을 보간한 뒤 다시 등급으로 돌린다. GSp 는 모든 단계에서 스칼라배 자기쌍대를 확인한다.

    Raises:
        InvalidInputError: 형태 불일치, GSp 인데 form 이 없음
        BudgetExhaustedError: 노름 격자 탐색 예산 소진
        NewtonUncertifiedError: 노름의 ν̄ 가 인증되지 않아 판정할 수 없을 때
    """
    cfg = cfg or SearchConfig()
    if mu.f != X.f or mu.n != X.n:
        raise InvalidInputError(f"mu has shape ({mu.f}, {mu.n}), isocrystal has ({X.f}, {X.n})")
    if group == "gsp":
        if form is None:
            raise InvalidInputError("GSp witness needs a symplectic form")
        if not mu.is_gsp():
            raise InvalidInputError(f"{mu} has a part that is not a GSp coweight")
        similitude_defects(X, form)
    elif group != "gl":
        raise InvalidInputError(f"unknown group {group!r}")

    norm = X.norm()
    total = mu.total
    newton = newton_point(norm, cfg)
    verdict = in_b_g_mu(norm, total, group, cfg)
    if verdict is None:
        log.warning(f"[resscalars] Newton point {newton.nu} of the norm is not certified; emptiness is undecided")
        raise NewtonUncertifiedError(newton.nu)
    if not verdict:
        if total.total != norm.det_valuation:
            reason = f"kappa mismatch: |mu'| = {total.total} but val det of the norm is {norm.det_valuation}"
        else:
            reason = f"Mazur violation: {newton.nu} is not below {total}"
        return EmptyGraded(reason, newton.nu, total)

    M0, Xn, method = _norm_witness(norm, newton.nu, total, form if group == "gsp" else None, cfg)
    target = Xn.tower.rebase(X.tower.e)
    M0 = M0.rebase(target)
    X = X.embed(target)
    if form is not None:
        form = form.embed(target) if form.tower is not target else form
    chain = interpolate_chain(M0, X.apply_power(M0, X.f), mu)
    GM = regrade(chain, X)

    transcript = [f"M_0 by {method} for mu'={total}"]
    transcript += [f"inv(M_{j}, M_{j + 1}) = {mu.parts[j]}" for j in range(X.f)]
    if group == "gsp":
        for j, M in enumerate(chain):
            c = is_selfdual_up_to_scalar(M, form)
            if c is None:
                raise InvalidInputError(f"internal check failed: M_{j} is not selfdual up to a scalar")
            transcript.append(f"M_{j} selfdual up to t^{c}")
    if not graded_membership(GM, X, mu, form if group == "gsp" else None):
        raise InvalidInputError("internal check failed: graded witness fails the membership condition")
    log.info(f"[resscalars] graded witness for mu={mu} (f={X.f}, m={target.m})")
    return GradedWitness(GM, X, mu, tuple(chain), method, form if group == "gsp" else None, tuple(transcript))
