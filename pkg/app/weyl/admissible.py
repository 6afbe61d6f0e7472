r"""
Adm(μ), 파라호릭 사영 W̃^Ī\W̃/W̃^Ī, μ-허용(permissible) 이중잉여류, 사슬 쌍의 상대 위치

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Optional, Sequence

from app.algebra.arith import FieldTower
from app.algebra.coweight import (
    Coweight,
    Rational,
    dominance_leq,
    gsp_defect,
    integral_points_conv,
    is_minuscule,
)
from app.lattice.chain import LatticeChain, chain_validate, standard_chain
from app.lattice.lattice import Lattice, SymplecticForm, enumerate_lattices, relative_position
from app.lattice.quotient import ResidueQuotient
from app.utils.errors import InvalidInputError
from app.utils.logger import log
from app.weyl.affine import (
    AffineWeylElement,
    generators,
    gl_length,
    lower_interval,
    rank_of,
    similitude_shift,
    translation,
)


@dataclass(frozen=True)
class AdmissibleSet:
    mu: Coweight
    group: str
    elements: frozenset
    types: Optional[tuple[int, ...]] = None
    flagged: bool = False
    notes: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements


def _check_types(types: Iterable[int], n: int, group: str) -> tuple[int, ...]:
    N = 2 * n if group == "gsp" else n
    out = tuple(sorted({i % N for i in types}))
    if not out:
        raise InvalidInputError("parahoric type must be a nonempty subset")
    if group == "gsp" and set(out) != {(-i) % N for i in out}:
        raise InvalidInputError(f"GSp parahoric type {list(out)} is not symmetric")
    return out


def parahoric_generators(n: int, group: str, types: Sequence[int]) -> list[AffineWeylElement]:
    """W̃^Ī: Ī 에 없는 꼭짓점의 단순 반사"""
    gens = generators(n, group)
    return [s for j, s in enumerate(gens) if j not in types]


def double_coset_rep(x: AffineWeylElement, types: Sequence[int]) -> AffineWeylElement:
    """W̃^Ī x W̃^Ī 의 최소 길이 대표 (양쪽 내림차순 반복)"""
    n = rank_of(x)
    gens = parahoric_generators(n, x.group, _check_types(types, n, x.group))
    cur = x
    changed = True
    while changed:
        changed = False
        base = gl_length(cur.window)
        for s in gens:
            for cand in (s * cur, cur * s):
                if gl_length(cand.window) < base:
                    cur = cand
                    changed = True
                    break
            if changed:
                break
    return cur


def _orbit(mu: Coweight, group: str) -> list[Coweight]:
    out = sorted({Coweight(p) for p in permutations(mu.entries)}, key=lambda c: c.entries, reverse=True)
    if group == "gsp":
        out = [c for c in out if gsp_defect(c) is not None]
    return out


def _rank(mu: Coweight, group: str) -> int:
    if group == "gsp":
        if mu.n % 2 or gsp_defect(mu) is None:
            raise InvalidInputError(f"{mu} is not a GSp coweight")
        return mu.n // 2
    return mu.n


def adm_set(mu: Iterable[Rational], group: str = "gl", types: Optional[Iterable[int]] = None) -> AdmissibleSet:
    """
    Adm(μ) = {x : x ≤ t_{μ′}, μ′ ∈ Wμ}, types 를 주면 이중잉여류 대표로 사영.

    GSp 미니스큘 μ 는 GL_2n 의 Adm(μ) ∩ GSp 로도 계산해 맞춰 본다.
    """
    mu = Coweight.of(mu)
    if not mu.integral or not mu.is_dominant:
        raise InvalidInputError(f"{mu} is not dominant integral")
    n = _rank(mu, group)
    elements: set[AffineWeylElement] = set()
    for nu in _orbit(mu, group):
        elements |= lower_interval(translation(nu, group))

    notes: list[str] = []
    flagged = False
    if group == "gsp":
        if is_minuscule(mu):
            gl = set()
            for nu in _orbit(mu, "gl"):
                gl |= lower_interval(translation(nu))
            inter = {AffineWeylElement(x.window, "gsp") for x in gl if _is_gsp(x)}
            if inter != elements:
                raise InvalidInputError("GSp admissible set disagrees with the GL intersection rule")
            notes.append("intersection rule verified")
        else:
            flagged = True
            notes.append("non-minuscule: direct Bruhat definition only")

    parahoric = None
    if types is not None:
        parahoric = _check_types(types, n, group)
        elements = {double_coset_rep(x, parahoric) for x in elements}
    log.debug(f"[weyl] Adm({mu}) for {group}: {len(elements)} elements")
    return AdmissibleSet(mu, group, frozenset(elements), parahoric, flagged, tuple(notes))


def _is_gsp(x: AffineWeylElement) -> bool:
    return similitude_shift(x.window) is not None


# ── 사슬 쌍 ──────────────────────────────────────────

def chain_inv_admissible(chain_a: LatticeChain, chain_b: LatticeChain, mu: Iterable[Rational]) -> bool:
    """
    inv(M_i, M′_i) ≤ μ (모든 대표 i). μ 가 미니스큘이면 등호여야 한다.

    Raises:
        InvalidInputError: 사슬 형이 다를 때
    """
    mu = Coweight.of(mu)
    if chain_a.type != chain_b.type:
        raise InvalidInputError(f"chain types differ: {list(chain_a.type)} vs {list(chain_b.type)}")
    minuscule = is_minuscule(mu)
    for i in chain_a.type:
        rel = relative_position(chain_a.member(i), chain_b.member(i))
        if rel.total != mu.total or not dominance_leq(rel, mu):
            return False
        if minuscule and rel != mu:
            return False
    return True


def monomial_chain(x: AffineWeylElement, tower: FieldTower, types: Sequence[int]) -> LatticeChain:
    """x·Λ_Ī"""
    base = standard_chain(tower, x.n, types)
    g = x.matrix(tower)
    return LatticeChain.from_members({i: M.image(g) for i, M in base.members})


def _candidates(mu: Coweight, group: str) -> Iterable[AffineWeylElement]:
    n = mu.n
    for lam in integral_points_conv(mu):
        if group == "gsp" and gsp_defect(lam) is None:
            continue
        for w in permutations(range(1, n + 1)):
            x = AffineWeylElement.of(lam.ints(), w)
            if group == "gsp":
                if not _is_gsp(x):
                    continue
                x = AffineWeylElement(x.window, "gsp")
            yield x


def perm_set(
    mu: Iterable[Rational],
    group: str,
    types: Iterable[int],
    tower: FieldTower,
) -> frozenset:
    """
    단항 사슬 쌍 (Λ_Ī, xΛ_Ī) 가 inv(Λ_i, xΛ_i) ≤ μ 를 만족하는 x 의 이중잉여류 대표
    """
    mu = Coweight.of(mu)
    n = _rank(mu, group)
    types = _check_types(types, n, group)
    base = standard_chain(tower, mu.n, types)
    out = set()
    for x in _candidates(mu, group):
        if _permissible(base, x, tower, types, mu):
            out.add(double_coset_rep(x, types))
    return frozenset(out)


def _permissible(base: LatticeChain, x: AffineWeylElement, tower: FieldTower, types, mu: Coweight) -> bool:
    other = monomial_chain(x, tower, types)
    for i in base.type:
        rel = relative_position(base.member(i), other.member(i))
        if rel.total != mu.total or not dominance_leq(rel, mu):
            return False
    return True


def pair_signature(chain_a: LatticeChain, chain_b: LatticeChain) -> tuple:
    """모든 대표 쌍 (i, j) 의 inv(A_i, B_j)"""
    return tuple(
        (i, j, relative_position(chain_a.member(i), chain_b.member(j)).entries)
        for i in chain_a.type for j in chain_b.type
    )


def chain_pair_label(
    chain_a: LatticeChain,
    chain_b: LatticeChain,
    group: str = "gl",
) -> AffineWeylElement:
    """
    사슬 쌍의 이중잉여류 대표: 단항 쌍 (Λ_Ī, xΛ_Ī) 의 서명과 맞춰 찾는다.

    Raises:
        InvalidInputError: 형이 다르거나 맞는 단항 쌍이 없을 때
    """
    if chain_a.type != chain_b.type:
        raise InvalidInputError(f"chain types differ: {list(chain_a.type)} vs {list(chain_b.type)}")
    types = chain_a.type
    N = chain_a.N
    n = N // 2 if group == "gsp" else N
    target = pair_signature(chain_a, chain_b)
    bound = int(max((abs(v) for *_, rel in target for v in rel), default=0)) + 1
    total = relative_position(chain_a.member(types[0]), chain_b.member(types[0])).total
    tower = chain_a.tower
    base = standard_chain(tower, N, types)
    seen = set()
    for lam in product(range(-bound, bound + 1), repeat=N):
        if sum(lam) != total:
            continue
        if group == "gsp" and gsp_defect(lam) is None:
            continue
        for w in permutations(range(1, N + 1)):
            x = AffineWeylElement.of(lam, w)
            if group == "gsp":
                if not _is_gsp(x):
                    continue
                x = AffineWeylElement(x.window, "gsp")
            rep = double_coset_rep(x, _check_types(types, n, group))
            if rep in seen:
                continue
            seen.add(rep)
            if pair_signature(base, monomial_chain(rep, tower, types)) == target:
                return rep
    raise InvalidInputError("no monomial chain pair has the same relative positions")


def realised_double_cosets(
    mu: Iterable[Rational],
    group: str,
    types: Iterable[int],
    tower: FieldTower,
    form: Optional[SymplecticForm] = None,
) -> frozenset:
    """
    inv(Λ_i, M′_i) ≤ μ 인 모든 사슬 M′ (창 1, 작업체 위) 과 Λ_Ī 쌍의 이중잉여류
    """
    mu = Coweight.of(mu)
    n = _rank(mu, group)
    types = _check_types(types, n, group)
    N = mu.n
    base = standard_chain(tower, N, types)
    if group == "gsp" and form is None:
        form = SymplecticForm.standard(tower, n)

    choices: list[list[Lattice]] = []
    for i in types:
        Li = base.member(i)
        if is_minuscule(mu) and min(mu.entries) >= 0:
            # tΛ_i ⊂ M′ ⊂ Λ_i, dim Λ_i/M′ = Σμ
            Q = ResidueQuotient.of(Li, Li.scale(1))
            k = N - int(mu.total)
            opts = [Q.lift_subspace(V) for V in subspaces(tower.field, N, k)]
        else:
            opts = [M for M in enumerate_lattices(tower, N, 1) if _within(Li, M, mu)]
        choices.append(opts)

    labels = set()
    for picked in product(*choices):
        try:
            chain = LatticeChain.from_members(dict(zip(types, picked)))
        except InvalidInputError:
            continue
        if not chain_validate(chain, form if group == "gsp" else None).valid:
            continue
        labels.add(chain_pair_label(base, chain, group))
    return frozenset(labels)


def _within(big: Lattice, M: Lattice, mu: Coweight) -> bool:
    rel = relative_position(big, M)
    return rel.total == mu.total and dominance_leq(rel, mu)


def subspaces(field_, n: int, k: int) -> Iterable[list[list[int]]]:
    """F^n 의 k 차원 부분공간 (기약 행 사다리꼴 기저 행들)"""
    elements = list(field_.elements())
    for pivots in combinations(range(n), k):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
        for values in product(elements, repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield rows
