"""
확장 아핀 바일 군 W̃ = Z^n ⋊ S_n (GL_n) 과 그 안의 GSp_2n 부분군

원소는 아핀 순열 f: Z → Z, f(j + n) = f(j) + n 의 창 (f(1), …, f(n)) 으로 저장한다.
t_λ·w 의 창은 f(j) = w(j) − n·λ_{w(j)} 이고, 곱은 함수 합성이다.
이 규약에서 t_λ 는 격자 기저 e_j 를 t^{λ_j}e_j 로 보낸다.

GSp_2n 원소는 f(2n+1−j) + f(j) 가 상수인 GL_2n 원소이고,
단순 반사는 s_0, s_n, s_i·s_{2n−i} (1 ≤ i < n) 이다.

@since 2026-10-16
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from app.algebra import matrix as mx
from app.algebra.arith import FieldTower, LaurentPoly
from app.algebra.coweight import Coweight, Rational
from app.utils.errors import InvalidInputError

GROUPS = ("gl", "gsp")


@dataclass(frozen=True)
class AffineWeylElement:
    """
    사용 예시:
        x = translation([1, 0])
        x.length            # 1
        tau(2) * tau(2)     # t_(1,1)
    """
    window: tuple[int, ...]
    group: str = "gl"

    def __post_init__(self):
        n = len(self.window)
        if sorted(v % n for v in self.window) != list(range(n)):
            raise InvalidInputError(f"{list(self.window)} is not an affine permutation window")
        if self.group not in GROUPS:
            raise InvalidInputError(f"unknown group {self.group!r}")
        if self.group == "gsp" and similitude_shift(self.window) is None:
            raise InvalidInputError(f"{list(self.window)} does not commute with the symplectic involution")

    @classmethod
    def of(cls, lam: Iterable[int], w: Sequence[int], group: str = "gl") -> "AffineWeylElement":
        """t_λ·w (w 는 1-기준 한 줄 표기)"""
        lam = list(lam)
        n = len(lam)
        if sorted(w) != list(range(1, n + 1)):
            raise InvalidInputError(f"{list(w)} is not a permutation of 1..{n}")
        return cls(tuple(w[j] - n * lam[w[j] - 1] for j in range(n)), group)

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, k: int) -> int:
        n = self.n
        r = (k - 1) % n
        return self.window[r] + (k - 1 - r)

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        if other.n != self.n:
            raise InvalidInputError("cannot multiply elements of different rank")
        group = self.group if self.group == other.group else "gl"
        return AffineWeylElement(tuple(self(other(j)) for j in range(1, self.n + 1)), group)

    def inverse(self) -> "AffineWeylElement":
        n = self.n
        out = [0] * n
        for j, v in enumerate(self.window, start=1):
            r = (v - 1) % n
            out[r] = j - (v - 1 - r)
        return AffineWeylElement(tuple(out), self.group)

    @property
    def permutation(self) -> tuple[int, ...]:
        n = self.n
        return tuple((v - 1) % n + 1 for v in self.window)

    @property
    def translation(self) -> tuple[int, ...]:
        """λ (t_λ·w 분해)"""
        n = self.n
        lam = [0] * n
        for v, w in zip(self.window, self.permutation):
            lam[w - 1] = (w - v) // n
        return tuple(lam)

    @property
    def kappa(self) -> int:
        """Σλ_i"""
        return sum(self.translation)

    @property
    def length(self) -> int:
        return gsp_length(self) if self.group == "gsp" else gl_length(self.window)

    def as_gl(self) -> "AffineWeylElement":
        return AffineWeylElement(self.window, "gl")

    def matrix(self, tower: FieldTower) -> mx.Matrix:
        """e_j ↦ t^{-k}e_r (f(j) = r + kn) 인 단항 행렬"""
        n = self.n
        z = LaurentPoly.zero(tower)
        rows = [[z] * n for _ in range(n)]
        for j, v in enumerate(self.window):
            r = (v - 1) % n
            k = (v - 1 - r) // n
            rows[r][j] = LaurentPoly.t(tower, -k)
        return mx.as_matrix(rows)

    def as_dict(self) -> dict:
        return {"lambda": list(self.translation), "w": list(self.permutation), "group": self.group}

    def __str__(self) -> str:
        return f"t{list(self.translation)}·{list(self.permutation)}"


def similitude_shift(window: Sequence[int]) -> Optional[int]:
    """f(N+1−j) + f(j) = N + 1 − N·c 인 c (없으면 None)"""
    N = len(window)
    if N % 2:
        return None
    sums = {window[j] + window[N - 1 - j] for j in range(N)}
    if len(sums) != 1:
        return None
    s = sums.pop()
    if (N + 1 - s) % N:
        return None
    return (N + 1 - s) // N


# ── 길이 ──────────────────────────────────────────

def gl_length(window: Sequence[int]) -> int:
    """ℓ(f) = Σ_{i<j} |⌊(f(j) − f(i))/n⌋|"""
    n = len(window)
    return sum(abs((window[j] - window[i]) // n) for i in range(n) for j in range(i + 1, n))


@lru_cache(maxsize=None)
def gsp_length(x: AffineWeylElement) -> int:
    return len(reduced_word(x))


# ── 생성원 ──────────────────────────────────────────

def identity(n: int, group: str = "gl") -> AffineWeylElement:
    return AffineWeylElement(tuple(range(1, n + 1)), group)


def translation(lam: Iterable[Rational], group: str = "gl") -> AffineWeylElement:
    lam = Coweight.of(lam)
    if not lam.integral:
        raise InvalidInputError(f"{lam} is not integral")
    return AffineWeylElement.of(lam.ints(), list(range(1, lam.n + 1)), group)


def tau(n: int) -> AffineWeylElement:
    """길이 0, κ = 1: f(j) = j − 1"""
    return AffineWeylElement(tuple(range(0, n)))


def gl_reflection(i: int, n: int) -> AffineWeylElement:
    """s_i (1 ≤ i < n 는 창의 i, i+1 교환, s_0 는 f(1) ↔ f(0))"""
    if not 0 <= i < n:
        raise InvalidInputError(f"no simple reflection s_{i} for n={n}")
    w = list(range(1, n + 1))
    if i == 0:
        w[0], w[-1] = 0, n + 1
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return AffineWeylElement(tuple(w))


def gsp_reflection(j: int, n: int) -> AffineWeylElement:
    """C̃_n 의 j 번째 단순 반사 (GL_2n 안에서)"""
    if not 0 <= j <= n:
        raise InvalidInputError(f"no simple reflection s_{j} for GSp_{2 * n}")
    N = 2 * n
    if j in (0, n):
        g = gl_reflection(j, N)
    else:
        g = gl_reflection(j, N) * gl_reflection(N - j, N)
    return AffineWeylElement(g.window, "gsp")


def generators(n: int, group: str = "gl") -> list[AffineWeylElement]:
    """group='gsp' 이면 n 은 GSp_2n 의 n"""
    if group == "gsp":
        return [gsp_reflection(j, n) for j in range(n + 1)]
    if n == 1:
        return []
    return [gl_reflection(i, n) for i in range(n)]


def rank_of(x: AffineWeylElement) -> int:
    return x.n // 2 if x.group == "gsp" else x.n


def right_descents(x: AffineWeylElement) -> list[int]:
    """ℓ(x·s_j) < ℓ(x) 인 j (GL 길이 비교는 두 군 모두에서 유효)"""
    base = gl_length(x.window)
    return [j for j, s in enumerate(generators(rank_of(x), x.group)) if gl_length((x * s).window) < base]


def reduced_word(x: AffineWeylElement) -> tuple[int, ...]:
    """
    x = ω·s_{j_1}⋯s_{j_k} (ω 길이 0) 의 (j_1, …, j_k).
    """
    gens = generators(rank_of(x), x.group)
    word: list[int] = []
    cur = x
    while True:
        desc = right_descents(cur)
        if not desc:
            break
        j = desc[0]
        word.append(j)
        cur = cur * gens[j]
    return tuple(reversed(word))


def omega_part(x: AffineWeylElement) -> AffineWeylElement:
    """x 의 길이 0 성분 ω"""
    gens = generators(rank_of(x), x.group)
    cur = x
    for j in reversed(reduced_word(x)):
        cur = cur * gens[j]
    return cur


# ── 브뤼아 순서 ──────────────────────────────────────────

@lru_cache(maxsize=None)
def bruhat_leq(x: AffineWeylElement, y: AffineWeylElement) -> bool:
    """
    x ≤ y: 같은 길이 0 성분이고 y 의 축약어의 부분어로 x 를 얻을 수 있을 때.

    내림차순 s (ys < y) 에 대한 들어올림 성질로 재귀한다.
    """
    if x.n != y.n or x.group != y.group:
        return False
    if x == y:
        return True
    if x.length >= y.length:
        return False
    gens = generators(rank_of(y), y.group)
    j = right_descents(y)[0]
    s = gens[j]
    ys = y * s
    xs = x * s
    if gl_length(xs.window) < gl_length(x.window):
        return bruhat_leq(xs, ys)
    return bruhat_leq(x, ys)


def lower_interval(y: AffineWeylElement) -> set[AffineWeylElement]:
    """{x : x ≤ y} (부분어 곱 전체)"""
    gens = generators(rank_of(y), y.group)
    layer = {omega_part(y)}
    for j in reduced_word(y):
        layer |= {x * gens[j] for x in layer}
    return layer
