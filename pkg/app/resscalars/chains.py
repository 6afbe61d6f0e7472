"""
Z/fZ 등급 주기 격자 사슬과 사슬 완성

사슬 순서로 바꾼 (M_j^i)_{j=0..f} 에서 조건은
    M_j^i ⊃ M_{j+1}^i ⊃ t·M_j^i,  dim M_j^i/M_{j+1}^i = r_j,  M_f^i = F^f M_0^i.

새 인덱스 하나를 넣을 때는 W_j = M_j/M′_j 위의 원형 도표
    φ: W_j → W_{j+1} (t 곱), ψ: W_{j+1} → W_j (포함), j = 0..f−2
    ψ: W_0 → W_{f−1} (F^f, σ^f-선형), φ: W_{f−1} → W_0 (t·F^{−f}, σ^{−f}-선형)
의 직선 해를 올려 L_j 를 얻는다. GSp 는 L_j 마다 짝 인덱스에 t^d·L_j^⊥ 를 더한다.

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from app.algebra import matrix as mx
from app.algebra.coweight import omega
from app.crystal.chains import inverse_precision, refine_selfdual
from app.crystal.newton import newton_point
from app.incidence.diagram import CircularDiagram, Link
from app.incidence.solver import LineSolution, solve_lines
from app.lattice.chain import LatticeChain, chain_validate
from app.lattice.lattice import Lattice, SymplecticForm, colength, is_selfdual_up_to_scalar, relative_position
from app.lattice.quotient import ResidueQuotient, induced_map
from app.models.search import SearchConfig
from app.resscalars.graded import (
    EmptyGraded,
    GradedCoweight,
    GradedIsocrystal,
    witness_graded,
)
from app.utils.errors import BudgetExhaustedError, InvalidInputError
from app.utils.logger import log


# ── 등급 사슬 ──────────────────────────────────────────

@dataclass(frozen=True)
class GradedChain:
    """
    j ∈ Z/f 마다 N_j 안의 같은 형 Ī 사슬

    사용 예시:
        GC = GradedChain.of([standard_chain(tower, 2, [0, 1])] * 2)
        graded_chain_membership(GC, X, [1, 1])
    """
    chains: tuple[LatticeChain, ...]

    @classmethod
    def of(cls, chains: Sequence[LatticeChain]) -> "GradedChain":
        if not chains:
            raise InvalidInputError("graded chain needs f >= 1")
        types = {c.type for c in chains}
        if len(types) != 1:
            raise InvalidInputError(f"graded pieces have different types {sorted(types)}")
        return cls(tuple(chains))

    @property
    def f(self) -> int:
        return len(self.chains)

    @property
    def type(self) -> tuple[int, ...]:
        return self.chains[0].type

    @property
    def N(self) -> int:
        return self.chains[0].N

    def chain(self, j: int) -> LatticeChain:
        return self.chains[j % self.f]

    def restrict(self, indices: Iterable[int]) -> "GradedChain":
        indices = list(indices)
        return GradedChain(tuple(c.restrict(indices) for c in self.chains))


def _map_chain(chain: LatticeChain, fn) -> LatticeChain:
    return LatticeChain.from_members({i: fn(M) for i, M in chain.members})


def ungrade_chain(GC: GradedChain, X: GradedIsocrystal) -> list[LatticeChain]:
    """(C_0, …, C_f), C_j = F^j C̃_{−j}"""
    if GC.f != X.f:
        raise InvalidInputError(f"graded chain has f={GC.f}, isocrystal has f={X.f}")
    return [_map_chain(GC.chain(-j), lambda M, j=j: X.apply_power(M, j)) for j in range(X.f + 1)]


def regrade_chain(chains: Sequence[LatticeChain], X: GradedIsocrystal) -> GradedChain:
    """
    Raises:
        InvalidInputError: 길이가 f + 1 이 아니거나 C_f ≠ F^f C_0
    """
    f = X.f
    if len(chains) != f + 1:
        raise InvalidInputError(f"expected f + 1 = {f + 1} chains, got {len(chains)}")
    if _map_chain(chains[0], lambda M: X.apply_power(M, f)).members != chains[f].members:
        raise InvalidInputError("chains do not close up: C_f != F^f C_0")
    out: list[Optional[LatticeChain]] = [None] * f
    for j in range(f):
        out[(-j) % f] = _map_chain(chains[j], lambda M, j=j: X.pull_power(M, j))
    return GradedChain.of(out)


def _check_ranks(r: Sequence[int], X: GradedIsocrystal, N: int) -> list[int]:
    r = [int(x) for x in r]
    if len(r) != X.f:
        raise InvalidInputError(f"expected {X.f} ranks, got {len(r)}")
    if any(not 0 <= x <= N for x in r):
        raise InvalidInputError(f"ranks {r} out of range [0, {N}]")
    return r


def graded_chain_membership(
    GC: GradedChain,
    X: GradedIsocrystal,
    r: Sequence[int],
    form: Optional[SymplecticForm] = None,
) -> bool:
    """
    모든 i ∈ I, j = 0..f−1 에서 inv(M_j^i, M_{j+1}^i) = ω_{r_j}

    Raises:
        InvalidInputError: 어떤 등급 조각이 (자기쌍대) 사슬이 아닐 때
    """
    r = _check_ranks(r, X, GC.N)
    for j, c in enumerate(GC.chains):
        check = chain_validate(c, form)
        if not check.valid:
            raise InvalidInputError(f"graded piece {j} is not a valid chain: {check.failure}", {"pair": check.pair})
    chains = ungrade_chain(GC, X)
    N = GC.N
    for j in range(X.f):
        target = omega(r[j], N)
        for i in GC.type:
            if relative_position(chains[j].member(i), chains[j + 1].member(i)) != target:
                return False
    return True


# ── 한 단계 완성 ──────────────────────────────────────────

@dataclass(frozen=True)
class IncidenceLift:
    """원형 도표의 직선 해와 그것을 올린 (L_0, …, L_f)"""
    lattices: tuple[Lattice, ...]
    solution: LineSolution
    isocrystal: GradedIsocrystal


def _seam_inverse(X: GradedIsocrystal, source: Lattice, target: Lattice) -> mx.Matrix:
    """σ^{−f}(t·Nm^{−1}): t·F^{−f} = 이 행렬·σ^{−f}"""
    Nm = X.norm_matrix()
    precision = None if mx.det(Nm).is_monomial() else inverse_precision(Nm, source, target)
    return mx.frobenius_matrix(mx.mat_shift(mx.inverse(Nm, precision), 1), -X.f)


def _check_nested(upper: Sequence[Lattice], lower: Sequence[Lattice], X: GradedIsocrystal, r: Sequence[int]) -> None:
    f = X.f
    if len(upper) != f or len(lower) != f:
        raise InvalidInputError(f"expected {f} upper and {f} lower lattices")
    N = X.n
    big = list(upper) + [X.apply_power(upper[0], f)]
    small = list(lower) + [X.apply_power(lower[0], f)]
    for j in range(f):
        target = omega(r[j], N)
        if relative_position(big[j], big[j + 1]) != target or relative_position(small[j], small[j + 1]) != target:
            raise InvalidInputError(f"colength pattern fails at j={j}: expected r_{j} = {r[j]}", {"index": j})
        if not (big[j].contains(small[j]) and small[j].contains(big[j].scale(1))):
            raise InvalidInputError(f"need t M_{j} ⊂ M'_{j} ⊂ M_{j}", {"index": j})
        if big[j] == small[j]:
            raise InvalidInputError(f"M_{j} = M'_{j}; nothing to insert", {"index": j})


def graded_chain_extend(
    upper: Sequence[Lattice],
    lower: Sequence[Lattice],
    X: GradedIsocrystal,
    r: Sequence[int],
    cfg: Optional[SearchConfig] = None,
) -> IncidenceLift:
    """
    M′_j ⊂ L_j ⊂ M_j (dim L_j/M′_j = 1) 이고 L_j ⊃ L_{j+1} ⊃ t·L_j (여길이 r_j), L_f = F^f L_0.

    upper, lower 는 사슬 순서 (M_0, …, M_{f−1}), (M′_0, …, M′_{f−1}).

    Raises:
        InvalidInputError: 입력 사슬 조건 위반, W_j 차원 불일치
        BudgetExhaustedError: 직선 탐색 예산 소진
    """
    cfg = cfg or SearchConfig()
    f = X.f
    r = _check_ranks(r, X, X.n)
    _check_nested(upper, lower, X, r)

    Q = [ResidueQuotient.of(upper[j], lower[j]) for j in range(f)]
    dims = {q.dim for q in Q}
    if len(dims) != 1:
        raise InvalidInputError(f"residue spaces have different dimensions {[q.dim for q in Q]}")
    tower = X.tower
    n = X.n
    t_id = mx.diagonal(tower, [1] * n)
    one = mx.identity(tower, n)

    seam_phi = induced_map(Q[f - 1], Q[0], _seam_inverse(X, upper[f - 1], lower[0]), -f)
    seam_psi = induced_map(Q[0], Q[f - 1], X.norm_matrix(), f)
    links = [Link(seam_phi, seam_psi)]
    for i in range(1, f):
        links.append(Link(induced_map(Q[i - 1], Q[i], t_id, 0), induced_map(Q[i], Q[i - 1], one, 0)))
    diagram = CircularDiagram(tower, dims.pop(), tuple(links))

    solution = solve_lines(diagram, cfg)
    target = solution.tower
    if target is not tower:
        log.info(f"[resscalars] residue field extended to m={target.m}")
        Q = [q.embed(target) for q in Q]
        X = X.embed(target)
    L = [Q[j].lift_line(list(solution.lines[j])) for j in range(f)]
    L.append(X.apply_power(L[0], f))

    for j in range(f):
        if relative_position(L[j], L[j + 1]) != omega(r[j], n):
            raise InvalidInputError(f"internal check failed: L_{j} ⊃ L_{j + 1} has the wrong colength")
        small, big = Q[j].small, Q[j].big
        if not (L[j].contains(small) and big.contains(L[j]) and colength(L[j], small) == 1):
            raise InvalidInputError(f"internal check failed: M'_{j} ⊂ L_{j} ⊂ M_{j} with colength 1 fails")
    return IncidenceLift(tuple(L), solution, X)


# ── 사슬 완성 ──────────────────────────────────────────

@dataclass(frozen=True)
class GradedStep:
    index: int
    lines: tuple[tuple[int, ...], ...]
    field_degree: int
    kind: str

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "lines": [list(x) for x in self.lines],
            "field_degree": self.field_degree,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class GradedChainExtension:
    chain: GradedChain
    isocrystal: GradedIsocrystal
    form: Optional[SymplecticForm] = None
    steps: tuple[GradedStep, ...] = field(default=())


def extend_graded_chain(
    GC: GradedChain,
    X: GradedIsocrystal,
    r: Sequence[int],
    target: Iterable[int],
    form: Optional[SymplecticForm] = None,
    cfg: Optional[SearchConfig] = None,
) -> GradedChainExtension:
    """
    J̄ 형 등급 사슬을 Ī 형으로 완성 (인덱스 하나, GSp 는 짝 하나씩). 결과는 입력으로 제한된다.

    Raises:
        InvalidInputError: 입력이 소속 조건을 만족하지 않거나 J̄ ⊄ Ī
        BudgetExhaustedError: 직선 탐색 예산 또는 마감 시간 소진
    """
    cfg = cfg or SearchConfig()
    clock = cfg.start()
    N = GC.N
    goal = sorted({i % N for i in target})
    if not set(GC.type) <= set(goal):
        raise InvalidInputError(f"chain type {list(GC.type)} is not contained in {goal}")
    if form is not None and set(goal) != {(-i) % N for i in goal}:
        raise InvalidInputError(f"target type {goal} is not symmetric")
    if not graded_chain_membership(GC, X, r, form):
        raise InvalidInputError("input graded chain fails the membership condition")

    f = X.f
    chains = ungrade_chain(GC, X)[:f]
    steps: list[GradedStep] = []
    while True:
        missing = [i for i in goal if not chains[0].has_index(i)]
        if not missing:
            break
        if clock.expired():
            raise BudgetExhaustedError("deadline", "graded chain extension ran out of time", deadline=cfg.deadline)
        k, upper = chains[0].neighbours(missing[0])
        lift = graded_chain_extend(
            [c.member(upper) for c in chains], [c.member(k) for c in chains], X, r, cfg
        )
        if lift.isocrystal.tower is not X.tower:
            tower = lift.isocrystal.tower
            chains = [c.embed(tower) for c in chains]
            X = lift.isocrystal
            form = form.embed(tower) if form is not None else None
        if form is None:
            chains = [c.with_member(k + 1, L) for c, L in zip(chains, lift.lattices)]
            kind = "gl"
        else:
            chains = [refine_selfdual(c, k, L, form) for c, L in zip(chains, lift.lattices)]
            kind = "selfdual"
        steps.append(GradedStep((k + 1) % N, lift.solution.lines, lift.solution.field_degree, kind))
        log.debug(f"[resscalars] added index {(k + 1) % N} to all {f} graded pieces")

    full = chains + [_map_chain(chains[0], lambda M: X.apply_power(M, f))]
    out = regrade_chain(full, X).restrict(goal)
    if not graded_chain_membership(out, X, r, form):
        raise InvalidInputError("extended graded chain fails the membership condition")
    return GradedChainExtension(out, X, form, tuple(steps))


def build_graded_chain(
    X: GradedIsocrystal,
    r: Sequence[int],
    indices: Iterable[int],
    form: Optional[SymplecticForm] = None,
    cfg: Optional[SearchConfig] = None,
) -> Union[GradedChainExtension, EmptyGraded]:
    """
    μ_j = ω_{r_j} 에 대한 Ī 형 등급 증인 사슬. [b] ∉ B(G, μ) 이면 EmptyGraded.

    GSp 에서는 r_j ∈ {0, n, 2n} 만 가능하다.
    """
    cfg = cfg or SearchConfig()
    N = X.n
    r = _check_ranks(r, X, N)
    indices = sorted({i % N for i in indices})
    if not indices:
        raise InvalidInputError("chain type must be nonempty")
    mu = GradedCoweight.minuscule(r, N)
    if form is not None and any(x not in (0, N // 2, N) for x in r):
        return EmptyGraded(f"for GSp only r_j in {{0, n, 2n}} occur, got {r}", newton_point(X.norm(), cfg).nu, mu.total)

    w = witness_graded(mu, X, "gsp" if form is not None else "gl", form, cfg)
    if isinstance(w, EmptyGraded):
        return w
    X, form = w.isocrystal, w.form
    pieces = []
    for M in w.lattice.members:
        base = LatticeChain.single(0, M)
        if form is not None:
            base = base.with_defect(-is_selfdual_up_to_scalar(M, form))
        pieces.append(base)
    goal = sorted(set(indices) | {0})
    ext = extend_graded_chain(GradedChain.of(pieces), X, r, goal, form, cfg)
    log.info(f"[resscalars] built graded chain of type {indices} for r={r}")
    return GradedChainExtension(ext.chain.restrict(indices), ext.isocrystal, ext.form, ext.steps)
