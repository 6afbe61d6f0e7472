"""
원형 반선형 도표 (W_i, φ_i: W_{i-1} → W_i, ψ_i: W_i → W_{i-1}), i ∈ Z/fZ

조건: ψ_i∘φ_i = 0, φ_i∘ψ_i = 0 (되돌아보면 죽는다).

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from app.algebra import semilinear as ff
from app.algebra.arith import FieldTower
from app.algebra.semilinear import SemilinearMap
from app.utils.errors import InvalidInputError

RankProfile = tuple[int, ...]


@dataclass(frozen=True)
class Link:
    """노드 i 로 들어오는 φ_i 와 노드 i 에서 나가는 ψ_i"""
    phi: SemilinearMap
    psi: SemilinearMap

    def embed(self, target: FieldTower) -> "Link":
        return Link(self.phi.embed(target), self.psi.embed(target))


@dataclass(frozen=True)
class CircularDiagram:
    """
    사용 예시:
        D = canonical_witness(tower, [1, 1], m=2)
        validate(D)          # (1, 1)
        solve_lines(D, cfg)
    """
    tower: FieldTower
    m: int
    links: tuple[Link, ...]

    @classmethod
    def of(
        cls,
        tower: FieldTower,
        phis: Sequence[Sequence[Sequence[int]]],
        psis: Sequence[Sequence[Sequence[int]]],
        sigmas: Sequence[int],
        taus: Sequence[int],
    ) -> "CircularDiagram":
        if not (len(phis) == len(psis) == len(sigmas) == len(taus)) or not phis:
            raise InvalidInputError("diagram needs f >= 1 and one (phi, sigma, psi, tau) per index")
        m = len(phis[0])
        links = tuple(
            Link(SemilinearMap.of(tower, a, s), SemilinearMap.of(tower, b, t))
            for a, b, s, t in zip(phis, psis, sigmas, taus)
        )
        return cls(tower, m, links)

    @property
    def f(self) -> int:
        return len(self.links)

    def phi(self, i: int) -> SemilinearMap:
        return self.links[i % self.f].phi

    def psi(self, i: int) -> SemilinearMap:
        return self.links[i % self.f].psi

    def Phi(self) -> SemilinearMap:
        """Φ = φ_f ∘ ⋯ ∘ φ_1 : W_0 → W_0"""
        out = self.phi(1)
        for i in range(2, self.f + 1):
            out = self.phi(i).compose(out)
        return out

    def extend(self, k: int) -> "CircularDiagram":
        return self.embed(self.tower.extend(k))

    def embed(self, target: FieldTower) -> "CircularDiagram":
        if target is self.tower:
            return self
        return CircularDiagram(target, self.m, tuple(l.embed(target) for l in self.links))

    def with_links(self, links: Sequence[Link]) -> "CircularDiagram":
        return CircularDiagram(self.tower, self.m, tuple(links))


def _is_zero(A) -> bool:
    return not any(any(r) for r in A)


def validate(diagram: CircularDiagram) -> RankProfile:
    """
    차원과 ψ_i∘φ_i = φ_i∘ψ_i = 0 을 확인하고 (rank φ_i) 를 돌려준다.

    Raises:
        InvalidInputError: 크기가 맞지 않거나 조건이 깨진 첫 i
    """
    m = diagram.m
    if m < 1:
        raise InvalidInputError("diagram spaces must have positive dimension")
    for i, link in enumerate(diagram.links):
        for name, A in (("phi", link.phi), ("psi", link.psi)):
            if A.rows != m or A.cols != m:
                raise InvalidInputError(f"{name}_{i} is {A.rows}x{A.cols}, expected {m}x{m}", {"index": i})
        if not _is_zero(link.psi.compose(link.phi).matrix):
            raise InvalidInputError(f"psi_{i} o phi_{i} != 0", {"index": i})
        if not _is_zero(link.phi.compose(link.psi).matrix):
            raise InvalidInputError(f"phi_{i} o psi_{i} != 0", {"index": i})
    return tuple(l.phi.rank() for l in diagram.links)


def in_U_r(diagram: CircularDiagram) -> bool:
    """
    열린 조건 두 가지:
        rank ψ_i = m − r_i (모든 i)
        rank Φ = r_min 이고 Φ 가 im Φ 위에서 가역 (rank Φ² = rank Φ)
    """
    r = validate(diagram)
    m = diagram.m
    if any(l.psi.rank() != m - ri for l, ri in zip(diagram.links, r)):
        return False
    Phi = diagram.Phi()
    rank_phi = Phi.rank()
    if rank_phi != min(r):
        return False
    return Phi.compose(Phi).rank() == rank_phi


def canonical_witness(
    tower: FieldTower,
    r: Sequence[int],
    m: int,
    sigmas: Optional[Sequence[int]] = None,
    taus: Optional[Sequence[int]] = None,
) -> CircularDiagram:
    """φ_i = E_{r_i}σ^{σ_i}, ψ_i = F_{r_i}σ^{τ_i} (E_s = diag(1^s, 0^{m-s}), F_s = diag(0^s, 1^{m-s}))"""
    f = len(r)
    sigmas = list(sigmas) if sigmas is not None else [1] * f
    taus = list(taus) if taus is not None else [-1] * f
    if any(not 0 <= ri <= m for ri in r):
        raise InvalidInputError(f"rank profile {list(r)} out of range [0, {m}]")

    def E(s: int) -> list[list[int]]:
        return [[1 if i == j and i < s else 0 for j in range(m)] for i in range(m)]

    def F(s: int) -> list[list[int]]:
        return [[1 if i == j and i >= s else 0 for j in range(m)] for i in range(m)]

    return CircularDiagram.of(tower, [E(s) for s in r], [F(s) for s in r], sigmas, taus)


def rank_profile(diagram: CircularDiagram) -> RankProfile:
    return tuple(l.phi.rank() for l in diagram.links)


def change_basis(diagram: CircularDiagram, g: Sequence[Sequence[Sequence[int]]]) -> CircularDiagram:
    """
    W_i 의 기저를 g_i 로 바꾼 도표: φ_i ↦ g_i φ_i g_{i-1}^{-1}, ψ_i ↦ g_{i-1} ψ_i g_i^{-1}
    """
    tower = diagram.tower
    field = tower.field
    f = diagram.f
    mats = [SemilinearMap.of(tower, gi, 0) for gi in g]
    invs = [SemilinearMap.of(tower, ff.inverse(field, gi), 0) for gi in g]
    links = []
    for i in range(f):
        prev = (i - 1) % f
        phi = mats[i].compose(diagram.phi(i)).compose(invs[prev])
        psi = mats[prev].compose(diagram.psi(i)).compose(invs[i])
        links.append(Link(phi, psi))
    return diagram.with_links(links)
