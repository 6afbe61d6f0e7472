"""
주기적 격자 사슬

규약:
  - i < j 이면 M_i ⊂ M_j, length(M_j/M_i) = j − i
  - M_{i+N} = t^{-1}·M_i (N = 격자 차원)
  - 자기쌍대 사슬: M_i^⊥ = M_{−i + d·N}

사슬은 대표 인덱스 [0, N) 의 격자만 저장하고 나머지는 주기성으로 얻는다.

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from app.algebra.arith import FieldTower
from app.lattice.lattice import Lattice, SymplecticForm, colength, dual, scale_relation
from app.utils.errors import InvalidInputError


@dataclass(frozen=True)
class LatticeChain:
    """
    대표 인덱스 → 격자

    사용 예시:
        chain = standard_chain(tower, 2, [0, 1])
        chain.member(2) == chain.member(0).scale(-1)    # True
    """
    members: tuple[tuple[int, Lattice], ...]
    defect: Optional[int] = None

    @classmethod
    def from_members(cls, lattices: Mapping[int, Lattice], defect: Optional[int] = None) -> "LatticeChain":
        if not lattices:
            raise InvalidInputError("a lattice chain needs at least one member")
        N = next(iter(lattices.values())).n
        reps: dict[int, Lattice] = {}
        for i, L in lattices.items():
            if L.n != N:
                raise InvalidInputError(f"member {i} has rank {L.n}, expected {N}")
            r = i % N
            k = (i - r) // N
            M = L.scale(k)
            if r in reps and reps[r] != M:
                raise InvalidInputError(f"indices {i} and {r} disagree under periodicity")
            reps[r] = M
        return cls(tuple(sorted(reps.items())), defect)

    @classmethod
    def single(cls, index: int, M: Lattice) -> "LatticeChain":
        return cls.from_members({index: M})

    @property
    def N(self) -> int:
        return self.members[0][1].n

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.members)

    @property
    def tower(self) -> FieldTower:
        return self.members[0][1].tower

    def as_dict(self) -> dict[int, Lattice]:
        return dict(self.members)

    def member(self, i: int) -> Lattice:
        r = i % self.N
        k = (i - r) // self.N
        reps = self.as_dict()
        if r not in reps:
            raise InvalidInputError(f"index {i} is not in the chain type {list(self.type)}")
        return reps[r].scale(-k)

    def has_index(self, i: int) -> bool:
        return i % self.N in self.type

    def restrict(self, indices: Iterable[int]) -> "LatticeChain":
        return LatticeChain.from_members({i: self.member(i) for i in indices}, self.defect)

    def with_member(self, i: int, M: Lattice) -> "LatticeChain":
        reps = self.as_dict()
        reps[i] = M
        return LatticeChain.from_members(reps, self.defect)

    def with_defect(self, d: Optional[int]) -> "LatticeChain":
        return LatticeChain(self.members, d)

    def embed(self, target: FieldTower) -> "LatticeChain":
        return LatticeChain(tuple((i, L.embed(target)) for i, L in self.members), self.defect)

    def neighbours(self, k: int) -> tuple[int, int]:
        """k 를 사이에 두는 가장 가까운 사슬 인덱스 (아래, 위)"""
        lower = k - 1
        while not self.has_index(lower):
            lower -= 1
        upper = k + 1
        while not self.has_index(upper):
            upper += 1
        return lower, upper


def standard_lattice(tower: FieldTower, n: int) -> Lattice:
    return Lattice.standard(tower, n)


def standard_chain(tower: FieldTower, n: int, indices: Iterable[int]) -> LatticeChain:
    """Λ_i = ⟨t^{-1}e_1, …, t^{-1}e_i, e_{i+1}, …, e_n⟩"""
    return LatticeChain.from_members({i % n: Lattice.diagonal(tower, [-1] * (i % n) + [0] * (n - i % n)) for i in indices})


@dataclass(frozen=True)
class ChainCheck:
    """chain_validate 결과"""
    valid: bool
    defect: Optional[int] = None
    failure: Optional[str] = None
    pair: Optional[tuple[int, int]] = None


def chain_validate(chain: LatticeChain, form: Optional[SymplecticForm] = None) -> ChainCheck:
    """
    포함, 여길이 j − i, 주기성, (form이 있으면) 자기쌍대성과 결손 d 검사
    """
    reps = list(chain.type)
    N = chain.N
    pairs = [(reps[k], reps[k + 1]) for k in range(len(reps) - 1)] + [(reps[-1], reps[0] + N)]
    for i, j in pairs:
        small, big = chain.member(i), chain.member(j)
        if not big.contains(small):
            return ChainCheck(False, failure=f"M_{i} is not contained in M_{j}", pair=(i, j))
        if colength(big, small) != j - i:
            return ChainCheck(False, failure=f"length(M_{j}/M_{i}) = {colength(big, small)} != {j - i}", pair=(i, j))

    if form is None:
        return ChainCheck(True, defect=chain.defect)

    i0 = reps[0]
    D = dual(chain.member(i0), form)
    d = None
    for r in reps:
        k = scale_relation(D, chain.member(r))
        if k is None:
            continue
        # D = t^k·M_r = M_{r − kN} = M_{−i0 + dN}
        j = r - k * N
        if (j + i0) % N == 0:
            d = (j + i0) // N
        break
    if d is None:
        return ChainCheck(False, failure=f"dual of M_{i0} is not a chain member", pair=(i0, i0))
    if chain.defect is not None and chain.defect != d:
        return ChainCheck(False, defect=d, failure=f"declared defect {chain.defect} but found {d}", pair=(i0, -i0 + d * N))
    for i in reps:
        j = -i + d * N
        if not chain.has_index(j) or dual(chain.member(i), form) != chain.member(j):
            return ChainCheck(False, defect=d, failure=f"M_{i}^perp != M_{j}", pair=(i, j))
    return ChainCheck(True, defect=d)

