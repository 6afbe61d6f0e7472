"""
(여)무게 벡터 조합론

역할:
  - 지배 순서 ≤ (부분합 비교 + 총합 일치), 미니스큘 판정
  - Levi 분할 M = M_{(m_1,…,m_r)} 과 블록 합 κ_M
  - Newton 벡터의 블록 분해, ν̃ 와 [ν̃] (ν 위의 최소 지배 정수 벡터)
  - GSp_{2n} 벡터 (x_i + x_{2n+1-i} = d) 판정

모든 성분은 fractions.Fraction 으로 보관한다.

@since 2026-10-16
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence, Union

from app.utils.errors import InvalidInputError

Rational = Union[int, Fraction, str]
LeviPartition = tuple[int, ...]
KappaValue = tuple[Fraction, ...]


def parse_rational(value: Rational) -> Fraction:
    """'3/2', 3, Fraction(3, 2) 모두 허용"""
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise InvalidInputError(f"not a rational number: {value!r}") from e


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Coweight:
    """
    유리수 성분 벡터

    사용 예시:
        nu = Coweight.of(["1/2", "1/2", 0])
        nu.is_dominant          # True
        nu.integral             # False
    """
    entries: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable[Rational]) -> "Coweight":
        if isinstance(values, Coweight):
            return values
        return cls(tuple(parse_rational(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    @property
    def is_dominant(self) -> bool:
        return all(a >= b for a, b in zip(self.entries, self.entries[1:]))

    def ints(self) -> tuple[int, ...]:
        if not self.integral:
            raise InvalidInputError(f"coweight {self} is not integral")
        return tuple(int(x) for x in self.entries)

    def prefix_sums(self) -> list[Fraction]:
        out, acc = [], Fraction(0)
        for x in self.entries:
            acc += x
            out.append(acc)
        return out

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a + b for a, b in zip(self.entries, Coweight.of(other).entries)))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a - b for a, b in zip(self.entries, Coweight.of(other).entries)))

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-a for a in self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def to_strings(self) -> list[str]:
        return [format_rational(x) for x in self.entries]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class GSpCoweight:
    """x_i + x_{2n+1-i} = d 인 길이 2n 벡터"""
    coweight: Coweight
    defect: Fraction

    @classmethod
    def of(cls, values: Iterable[Rational]) -> "GSpCoweight":
        x = Coweight.of(values)
        d = gsp_defect(x)
        if d is None:
            raise InvalidInputError(f"{x} is not a GSp coweight (x_i + x_(2n+1-i) not constant)")
        return cls(x, d)


# ── 기본 벡터 ──────────────────────────────────────────

def omega(r: int, n: int) -> Coweight:
    if not 0 <= r <= n:
        raise InvalidInputError(f"omega_{r} undefined for n={n}")
    return Coweight.of([1] * r + [0] * (n - r))


def ones(n: int) -> Coweight:
    return Coweight.of([1] * n)


def gsp_omega_n(n: int) -> Coweight:
    """GSp_{2n}의 미니스큘 여무게 (1^n, 0^n)"""
    return omega(n, 2 * n)


def dominant_sort(x: Iterable[Rational]) -> tuple[Coweight, tuple[int, ...]]:
    """(내림차순 정렬, 정렬 순열 perm): sorted[i] = x[perm[i]], 안정 정렬"""
    x = Coweight.of(x)
    perm = tuple(sorted(range(x.n), key=lambda i: (-x.entries[i], i)))
    return Coweight(tuple(x.entries[i] for i in perm)), perm


def _require_dominant(*xs: Coweight) -> None:
    for x in xs:
        if not x.is_dominant:
            raise InvalidInputError(f"coweight {x} is not dominant")


# ── 지배 순서 ──────────────────────────────────────────

def dominance_leq(nu: Iterable[Rational], mu: Iterable[Rational]) -> bool:
    """ν ≤ μ: 부분합 ν_1+…+ν_k ≤ μ_1+…+μ_k, 총합 일치"""
    nu, mu = Coweight.of(nu), Coweight.of(mu)
    if nu.n != mu.n:
        raise InvalidInputError(f"length mismatch {nu.n} vs {mu.n}")
    _require_dominant(nu, mu)
    if nu.total != mu.total:
        return False
    return all(a <= b for a, b in zip(nu.prefix_sums(), mu.prefix_sums()))


def conv_contains(mu: Iterable[Rational], x: Iterable[Rational]) -> bool:
    """x ∈ Conv(Wμ) (x는 정렬 전이어도 됨)"""
    return dominance_leq(dominant_sort(x)[0], dominant_sort(mu)[0])


def is_minuscule_weight_r(nu: Iterable[Rational], r: int) -> bool:
    nu = Coweight.of(nu)
    _require_dominant(nu)
    if not 0 <= r <= nu.n:
        raise InvalidInputError(f"weight r={r} outside [0, {nu.n}]")
    return all(0 <= x <= 1 for x in nu) and nu.total == r


def is_minuscule(mu: Iterable[Rational]) -> bool:
    """μ = ω_r + k·𝟏 꼴인가"""
    mu = Coweight.of(mu)
    if not mu.integral or not mu.n:
        return False
    return max(mu) - min(mu) <= 1


# ── Levi 분할 ──────────────────────────────────────────

def check_partition(P: Sequence[int], n: int) -> LeviPartition:
    P = tuple(int(m) for m in P)
    if not P or any(m <= 0 for m in P) or sum(P) != n:
        raise InvalidInputError(f"{list(P)} is not a partition of {n}")
    return P


def is_symmetric_partition(P: Sequence[int]) -> bool:
    """GSp Levi: (m_1,…,m_r,2j,m_r,…,m_1)"""
    P = tuple(P)
    return P == P[::-1] and (len(P) % 2 == 0 or P[len(P) // 2] % 2 == 0)


def blocks(P: Sequence[int]) -> list[range]:
    out, start = [], 0
    for m in P:
        out.append(range(start, start + m))
        start += m
    return out


def kappa_levi(x: Iterable[Rational], P: Sequence[int]) -> KappaValue:
    """블록별 성분 합 (κ_M)"""
    x = Coweight.of(x)
    P = check_partition(P, x.n)
    return tuple(sum((x.entries[i] for i in b), Fraction(0)) for b in blocks(P))


def kappa_orbit_image(mu: Iterable[Rational], P: Sequence[int]) -> set[KappaValue]:
    """κ_M(Wμ)"""
    mu = Coweight.of(mu)
    P = check_partition(P, mu.n)
    return {kappa_levi(w, P) for w in set(permutations(mu.entries))}


def coroot_coefficients(nu: Iterable[Rational], mu: Iterable[Rational]) -> list[Fraction]:
    """μ − ν = Σ c_k (e_k − e_{k+1}) 의 계수 c_1..c_{n-1} (총합이 같을 때)"""
    diff = Coweight.of(mu) - Coweight.of(nu)
    if diff.total != 0:
        raise InvalidInputError("totals differ, μ − ν is not in the coroot lattice span")
    return diff.prefix_sums()[:-1]


def levi_dominance_leq(nu: Iterable[Rational], mu: Iterable[Rational], P: Sequence[int]) -> bool:
    """
    ν ≤^M μ: μ − ν 가 M 안의 단순 쌍대근들의 음이 아닌 결합.

    블록 경계의 계수는 0, 블록 내부 계수는 ≥ 0 이어야 한다.
    """
    nu, mu = Coweight.of(nu), Coweight.of(mu)
    P = check_partition(P, nu.n)
    if nu.total != mu.total:
        return False
    boundaries = set()
    acc = 0
    for m in P[:-1]:
        acc += m
        boundaries.add(acc)
    for k, c in enumerate(coroot_coefficients(nu, mu), start=1):
        if k in boundaries:
            if c != 0:
                return False
        elif c < 0:
            return False
    return True


# ── Newton 벡터 ──────────────────────────────────────────

def newton_blocks(nu: Iterable[Rational]) -> tuple[LeviPartition, tuple[Fraction, ...]]:
    """
    ν가 상수인 가장 거친 분할과 블록 기울기.

    Raises:
        InvalidInputError: m_i·ν(i) ∉ Z ("not a Newton vector")
    """
    nu = Coweight.of(nu)
    _require_dominant(nu)
    parts: list[int] = []
    slopes: list[Fraction] = []
    for x in nu:
        if slopes and slopes[-1] == x:
            parts[-1] += 1
        else:
            parts.append(1)
            slopes.append(x)
    for m, s in zip(parts, slopes):
        if (m * s).denominator != 1:
            raise InvalidInputError(f"not a Newton vector: block of size {m} has slope {format_rational(s)}")
    return tuple(parts), tuple(slopes)


def _check_central(nu: Coweight, P: LeviPartition) -> None:
    for b in blocks(P):
        vals = {nu.entries[i] for i in b}
        if len(vals) != 1:
            raise InvalidInputError(f"{nu} is not constant on the blocks of {list(P)}")
        (v,) = vals
        if (len(b) * v).denominator != 1:
            raise InvalidInputError(f"not a Newton vector: m*nu = {format_rational(len(b) * v)} on a block of size {len(b)}")


def nu_tilde(nu: Iterable[Rational], P: Optional[Sequence[int]] = None) -> Coweight:
    """
    블록마다 M-미니스큘인 정수 벡터 ν̃ (정렬 전).

    블록 i: 성분 ⌊ν(i)⌋, ⌈ν(i)⌉ 로만 이루어지고 합이 m_i·ν(i), 큰 값이 앞.
    """
    nu = Coweight.of(nu)
    P = newton_blocks(nu)[0] if P is None else check_partition(P, nu.n)
    _check_central(nu, P)
    out: list[int] = []
    for b in blocks(P):
        m = len(b)
        v = nu.entries[b.start]
        s = int(m * v)
        lo = math.floor(v)
        k = s - m * lo
        out.extend([lo + 1] * k + [lo] * (m - k))
    return Coweight.of(out)


def minimal_dominant_above(nu: Iterable[Rational], P: Optional[Sequence[int]] = None) -> Coweight:
    """[ν̃]: ν ≤ μ 인 지배 정수 μ 중 최소 원소"""
    return dominant_sort(nu_tilde(nu, P))[0]


def decomposable_wrt(mu: Iterable[Rational], nu: Iterable[Rational], P: Optional[Sequence[int]] = None) -> bool:
    """블록 경계 k = m_1+…+m_j 에서 μ, ν 부분합이 일치하는가"""
    mu, nu = Coweight.of(mu), Coweight.of(nu)
    if not dominance_leq(nu, mu):
        raise InvalidInputError(f"{nu} is not below {mu}")
    P = newton_blocks(nu)[0] if P is None else check_partition(P, nu.n)
    pm, pn = mu.prefix_sums(), nu.prefix_sums()
    acc = 0
    for m in P:
        acc += m
        if pm[acc - 1] != pn[acc - 1]:
            return False
    return True


# ── 정수점 열거 ──────────────────────────────────────────

def dominant_below(mu: Iterable[Rational]) -> list[Coweight]:
    """λ ≤ μ 인 지배 정수 λ 전체 (μ 정수)"""
    mu = Coweight.of(mu)
    _require_dominant(mu)
    target = mu.ints()
    n = len(target)
    prefix = list(Coweight.of(target).prefix_sums())
    out: list[Coweight] = []

    def rec(i: int, prev: int, acc: int, chosen: list[int]) -> None:
        if i == n:
            if acc == prefix[-1]:
                out.append(Coweight.of(chosen))
            return
        upper = min(prev, int(prefix[i]) - acc)
        lower = target[-1]
        for v in range(upper, lower - 1, -1):
            # 남은 성분은 모두 v 이하
            if acc + v * (n - i) < prefix[-1]:
                break
            chosen.append(v)
            rec(i + 1, v, acc + v, chosen)
            chosen.pop()

    rec(0, target[0], 0, [])
    return out


def integral_points_conv(mu: Iterable[Rational]) -> list[Coweight]:
    """P_μ: Conv(Wμ)의 정수점 전체 (사전식 내림차순)"""
    out = set()
    for lam in dominant_below(mu):
        out.update(permutations(lam.entries))
    return [Coweight(x) for x in sorted(out, reverse=True)]


# ── GSp ──────────────────────────────────────────

def gsp_defect(x: Iterable[Rational]) -> Optional[Fraction]:
    """x_i + x_{2n+1-i} 가 상수이면 그 값, 아니면 None"""
    x = Coweight.of(x)
    if x.n % 2:
        return None
    sums = {x.entries[i] + x.entries[x.n - 1 - i] for i in range(x.n // 2)}
    return sums.pop() if len(sums) == 1 else None


def is_gsp_coweight(x: Iterable[Rational]) -> bool:
    return gsp_defect(x) is not None


# ── 다각형 ──────────────────────────────────────────

def polygon_vertices(x: Iterable[Rational]) -> list[tuple[int, Fraction]]:
    """
    기울기를 오름차순으로 이은 볼록 다각형의 꼭짓점 (0,0) … (n, Σx)
    """
    x = Coweight.of(x)
    slopes = sorted(x.entries)
    points = [(0, Fraction(0))]
    acc = Fraction(0)
    for i, s in enumerate(slopes):
        acc += s
        if i + 1 == len(slopes) or slopes[i + 1] != s:
            points.append((i + 1, acc))
    return points
