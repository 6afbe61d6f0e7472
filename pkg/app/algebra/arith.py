"""
유한체 탑과 Laurent 다항식: 등표수 모델의 L, O_L, t, σ, val

동작 원리:
    1. FiniteField(p, d): galois.GF(p^d)를 Conway 다항식으로 생성하고
       원시원소 α의 지수/로그/Zech 표를 한 번에 벡터 연산으로 만든다.
       원소는 galois 정수 표현(α의 다항식 계수를 p진법으로 읽은 값)으로 다룬다.
    2. FieldTower(p, e, m): 작업체 F_{q^m} (q = p^e)와 Frobenius σ: x ↦ x^q.
       Conway 다항식끼리 호환되므로 m | m' 매장은 로그를 (Q'-1)/(Q-1)배 하면 된다.
    3. LaurentPoly: 지수 → 계수 정수의 정렬된 튜플. 정밀도 표시는
       series_invert에서만 생기고 연산 시 보수적으로 전파된다.

주의사항:
    - 같은 유한체 위의 원소라면 탑(σ의 밑 차수)이 달라도 연산할 수 있다.
      결과는 왼쪽 피연산자의 탑을 따른다 (rebase 참고).

@since 2026-10-16
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator, Optional

import galois
import numpy as np

from app.utils.errors import InvalidInputError, PrecisionError


class FiniteField:
    """
    F_{p^d}의 정수 표현 산술

    사용 예시:
        F4 = finite_field(2, 2)
        g = F4.generator          # α
        F4.mul(g, g)              # α^2 = α + 1 → 3
    """

    def __init__(self, p: int, degree: int):
        if p < 2 or any(p % k == 0 for k in range(2, int(math.isqrt(p)) + 1)):
            raise InvalidInputError(f"p={p} is not prime")
        if degree < 1:
            raise InvalidInputError(f"field degree must be positive, got {degree}")
        self.p = p
        self.degree = degree
        self.order = p ** degree
        conway = galois.conway_poly(p, degree)
        if degree == 1:
            self.gf = galois.GF(p)
            alpha = (-int(conway.coeffs[-1])) % p
        else:
            self.gf = galois.GF(p ** degree, irreducible_poly=conway)
            alpha = p  # 다항식 x
        self.generator = alpha

        unit_count = self.order - 1
        base = self.gf(np.full(unit_count, alpha, dtype=np.int64))
        powers = np.power(base, np.arange(unit_count, dtype=np.int64))
        self._exp: list[int] = [int(v) for v in powers.view(np.ndarray)]
        self._log: list[int] = [-1] * self.order
        for k, v in enumerate(self._exp):
            self._log[v] = k
        shifted = (powers + self.gf(1)).view(np.ndarray)
        # zech[k] = log(1 + α^k), 1 + α^k = 0 이면 -1
        self._zech: list[int] = [self._log[int(v)] if int(v) else -1 for v in shifted]
        self._minus_one = 0 if p == 2 else unit_count // 2

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.degree})"

    def __reduce__(self):
        return (finite_field, (self.p, self.degree))

    # ── 스칼라 연산 ──────────────────────────────────────────

    def add(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        if self.p == 2:
            return a ^ b
        unit_count = self.order - 1
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % unit_count]
        if z < 0:
            return 0
        return self._exp[(la + z) % unit_count]

    def neg(self, a: int) -> int:
        if not a or self.p == 2:
            return a
        return self._exp[(self._log[a] + self._minus_one) % (self.order - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if not a:
            raise InvalidInputError("division by zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def power(self, a: int, k: int) -> int:
        if not a:
            if k <= 0:
                raise InvalidInputError("0 has no non-positive powers")
            return 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def frobenius(self, a: int, j: int) -> int:
        """a ↦ a^{p^j}"""
        if not a:
            return 0
        j %= self.degree
        return self._exp[(self._log[a] * pow(self.p, j, self.order - 1)) % (self.order - 1)]

    def log(self, a: int) -> int:
        if not a:
            raise InvalidInputError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.order - 1)]

    def embed_into(self, other: "FiniteField", a: int) -> int:
        """Conway 호환 매장 F_{p^d} → F_{p^{d'}} (d | d')"""
        if other.p != self.p or other.degree % self.degree:
            raise InvalidInputError(f"cannot embed {self} into {other}")
        if not a or other is self:
            return a
        ratio = (other.order - 1) // (self.order - 1)
        return other._exp[self._log[a] * ratio]

    def elements(self) -> Iterator[int]:
        """0, α^0, α^1, … 순서"""
        yield 0
        yield from self._exp

    def digits(self, a: int) -> list[int]:
        """F_p 좌표 (α^0 계수부터)"""
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, coords: Iterable[int]) -> int:
        coords = list(coords)
        if len(coords) != self.degree:
            raise InvalidInputError(f"expected {self.degree} coordinates over F_{self.p}")
        value = 0
        for c in reversed(coords):
            if not 0 <= int(c) < self.p:
                raise InvalidInputError(f"coordinate {c} outside F_{self.p}")
            value = value * self.p + int(c)
        return value


@lru_cache(maxsize=None)
def finite_field(p: int, degree: int) -> FiniteField:
    return FiniteField(p, degree)


class FieldTower:
    """
    작업체 F_{q^m}과 q-Frobenius σ

    q = p^e 가 O_F의 잉여체 역할을 하고, σ는 작업체에서 위수 m을 가진다.
    """

    def __init__(self, p: int, e: int, m: int):
        if e < 1 or m < 1:
            raise InvalidInputError(f"tower degrees must be positive (e={e}, m={m})")
        self.p = p
        self.e = e
        self.m = m
        self.q = p ** e
        self.field = finite_field(p, e * m)

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, e={self.e}, m={self.m})"

    def __reduce__(self):
        return (field_tower, (self.p, self.e, self.m))

    @property
    def size(self) -> int:
        return self.field.order

    def frobenius(self, a: int, k: int) -> int:
        """σ^k, 음수 k 허용"""
        return self.field.frobenius(a, self.e * (k % self.m))

    def frobenius_exponent(self, k: int) -> int:
        """σ^k = x ↦ x^E 의 E (galois 배열에 직접 적용할 때 사용)"""
        return self.q ** (k % self.m)

    def extend(self, k: int) -> "FieldTower":
        return field_tower(self.p, self.e, self.m * k)

    def rebase(self, e: int) -> "FieldTower":
        """같은 유한체를 σ' = x ↦ x^{p^e} 로 다시 읽는다"""
        total = self.e * self.m
        if total % e:
            raise InvalidInputError(f"cannot rebase {self} to base degree {e}")
        return field_tower(self.p, e, total // e)

    def same_field(self, other: "FieldTower") -> bool:
        return self.field is other.field

    def embed_value(self, a: int, target: "FieldTower") -> int:
        return self.field.embed_into(target.field, a)


def field_tower(p: int, e: int = 1, m: int = 1) -> FieldTower:
    """(p, e, m) 마다 하나의 탑 객체 (탑 비교는 is 로 한다)"""
    return _field_tower(int(p), int(e), int(m))


@lru_cache(maxsize=None)
def _field_tower(p: int, e: int, m: int) -> FieldTower:
    return FieldTower(p, e, m)


def common_tower(*towers: FieldTower) -> FieldTower:
    """m들의 최소공배수 위의 탑 (e, p가 같아야 함)"""
    first = towers[0]
    m = 1
    for t in towers:
        if t.p != first.p or t.e != first.e:
            raise InvalidInputError(f"incompatible towers {first} and {t}")
        m = m * t.m // math.gcd(m, t.m)
    return field_tower(first.p, first.e, m)


class FieldElem:
    """작업체 원소 (galois 정수 표현 + 탑 참조)"""

    __slots__ = ("tower", "value")

    def __init__(self, tower: FieldTower, value: int):
        if not 0 <= value < tower.size:
            raise InvalidInputError(f"{value} is not an element of {tower.field}")
        self.tower = tower
        self.value = int(value)

    @classmethod
    def from_coordinates(cls, tower: FieldTower, coords: Iterable[int]) -> "FieldElem":
        return cls(tower, tower.field.from_digits(coords))

    def coordinates(self) -> list[int]:
        return self.tower.field.digits(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if not self.tower.same_field(other.tower):
                raise InvalidInputError(f"mixed fields {self.tower.field} and {other.tower.field}")
            return other.value
        if isinstance(other, int):
            return int_to_field(self.tower.field, other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElem(self.tower, self.tower.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElem(self.tower, self.tower.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElem(self.tower, self.tower.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElem(self.tower, self.tower.field.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.tower, self.tower.field.neg(self.value))

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElem(self.tower, self.tower.field.mul(self.value, self.tower.field.inv(b)))

    def __pow__(self, k: int):
        return FieldElem(self.tower, self.tower.field.power(self.value, k))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.tower, self.tower.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.tower.same_field(other.tower) and self.value == other.value
        if isinstance(other, int):
            return self.value == int_to_field(self.tower.field, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.tower.field.p, self.tower.field.degree, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElem({self.value} in {self.tower.field})"


def int_to_field(field: FiniteField, k: int) -> int:
    """정수 k의 F_p 상 이미지 (소체 원소)"""
    # 소체 원소 r 은 정수 표현에서도 r (상수 다항식)
    return k % field.p


# ── Laurent 다항식 ──────────────────────────────────────────

Terms = tuple[tuple[int, int], ...]


class LaurentPoly:
    """
    F_{q^m}((t))의 유한 지지 원소

    terms: (지수, 계수 정수) 오름차순, 0 계수 없음.
    precision: None이면 정확, 정수 N이면 t^N 이상 항은 미확정.

    사용 예시:
        T = field_tower(2, 1, 2)
        f = LaurentPoly.monomial(T, 1, 2) + LaurentPoly.monomial(T, 2)   # α·t + t^2
        f.frobenius(1)                                                     # α^2·t + t^2
    """

    __slots__ = ("tower", "terms", "precision", "_hash")

    def __init__(self, tower: FieldTower, terms: Iterable[tuple[int, int]] = (), precision: Optional[int] = None):
        self.tower = tower
        acc: dict[int, int] = {}
        field = tower.field
        for e, c in terms:
            if c:
                acc[e] = field.add(acc.get(e, 0), c)
        if precision is not None:
            acc = {e: c for e, c in acc.items() if e < precision}
        self.terms: Terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self.precision = precision
        self._hash = None

    @classmethod
    def _raw(cls, tower: FieldTower, terms: Terms, precision: Optional[int] = None) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.tower = tower
        obj.terms = terms
        obj.precision = precision
        obj._hash = None
        return obj

    # ── 생성자 ──

    @classmethod
    def zero(cls, tower: FieldTower) -> "LaurentPoly":
        return cls._raw(tower, ())

    @classmethod
    def one(cls, tower: FieldTower) -> "LaurentPoly":
        return cls._raw(tower, ((0, 1),))

    @classmethod
    def monomial(cls, tower: FieldTower, exponent: int, coeff: int = 1) -> "LaurentPoly":
        if not coeff:
            return cls.zero(tower)
        return cls._raw(tower, ((exponent, coeff),))

    @classmethod
    def t(cls, tower: FieldTower, exponent: int = 1) -> "LaurentPoly":
        return cls.monomial(tower, exponent, 1)

    @classmethod
    def constant(cls, tower: FieldTower, value) -> "LaurentPoly":
        if isinstance(value, FieldElem):
            value = value.value
        return cls.monomial(tower, 0, int(value))

    # ── 기본 성질 ──

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> float | int:
        """최소 지수, 0이면 +∞"""
        return self.terms[0][0] if self.terms else math.inf

    def degree(self) -> float | int:
        return self.terms[-1][0] if self.terms else -math.inf

    def is_monomial(self) -> bool:
        return len(self.terms) == 1 and self.precision is None

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def constant_term(self) -> int:
        return self.coefficient(0)

    def leading(self) -> tuple[int, int]:
        """(val, 최저차 계수)"""
        if not self.terms:
            raise InvalidInputError("zero has no leading term")
        return self.terms[0]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms and self.tower.same_field(other.tower)
        if isinstance(other, int):
            return self == LaurentPoly.constant(self.tower, int_to_field(self.tower.field, other))
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            coeff = "" if c == 1 and e else str(c)
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{coeff}t")
            else:
                parts.append(f"{coeff}t^{e}")
        text = " + ".join(parts)
        return text if self.precision is None else f"{text} + O(t^{self.precision})"

    # ── 환 연산 ──

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if not self.tower.same_field(other.tower):
                raise InvalidInputError(f"mixed fields {self.tower.field} and {other.tower.field}")
            return other
        if isinstance(other, FieldElem):
            return LaurentPoly.constant(self.tower, other.value)
        if isinstance(other, int):
            return LaurentPoly.constant(self.tower, int_to_field(self.tower.field, other))
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    @staticmethod
    def _min_precision(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not other.terms and other.precision is None:
            return self
        if not self.terms and self.precision is None:
            return LaurentPoly._raw(self.tower, other.terms, other.precision)
        return LaurentPoly(self.tower, self.terms + other.terms, self._min_precision(self.precision, other.precision))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        neg = self.tower.field.neg
        return LaurentPoly._raw(self.tower, tuple((e, neg(c)) for e, c in self.terms), self.precision)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not self.terms and self.precision is None or not other.terms and other.precision is None:
            return LaurentPoly.zero(self.tower)
        field = self.tower.field
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = field.add(acc.get(e, 0), field.mul(c1, c2))
        precision = None
        if self.precision is not None:
            precision = self.precision + (other.valuation() if other.terms else 0)
        if other.precision is not None:
            p2 = other.precision + (self.valuation() if self.terms else 0)
            precision = p2 if precision is None else min(precision, p2)
        if precision is not None:
            precision = int(precision)
        return LaurentPoly(self.tower, acc.items(), precision)

    __rmul__ = __mul__

    def scale(self, value: int) -> "LaurentPoly":
        """상수배 (정수 표현 계수)"""
        if not value:
            return LaurentPoly.zero(self.tower)
        mul = self.tower.field.mul
        return LaurentPoly._raw(self.tower, tuple((e, mul(c, value)) for e, c in self.terms), self.precision)

    def shift(self, k: int) -> "LaurentPoly":
        """t^k 곱"""
        if not k:
            return self
        precision = None if self.precision is None else self.precision + k
        return LaurentPoly._raw(self.tower, tuple((e + k, c) for e, c in self.terms), precision)

    def truncate(self, bound: int) -> "LaurentPoly":
        """t^bound 이상 항 버림 (정확한 결과로 취급)"""
        if not self.terms or self.terms[-1][0] < bound:
            return LaurentPoly._raw(self.tower, self.terms)
        return LaurentPoly._raw(self.tower, tuple((e, c) for e, c in self.terms if e < bound))

    def split(self, bound: int) -> tuple["LaurentPoly", "LaurentPoly"]:
        """(지수 < bound 부분, 지수 ≥ bound 부분)"""
        low = tuple((e, c) for e, c in self.terms if e < bound)
        high = tuple((e, c) for e, c in self.terms if e >= bound)
        return LaurentPoly._raw(self.tower, low), LaurentPoly._raw(self.tower, high)

    def divide_monomial(self, other: "LaurentPoly") -> "LaurentPoly":
        """단항식으로 정확히 나눔"""
        if not other.is_monomial():
            raise InvalidInputError(f"{other!r} is not an exact monomial")
        e, c = other.terms[0]
        return self.scale(self.tower.field.inv(c)).shift(-e)

    def frobenius(self, k: int) -> "LaurentPoly":
        """계수별 σ^k, t 고정"""
        if not k % self.tower.m or not self.terms:
            return self
        frob = self.tower.frobenius
        return LaurentPoly._raw(self.tower, tuple((e, frob(c, k)) for e, c in self.terms), self.precision)

    def embed(self, target: FieldTower) -> "LaurentPoly":
        if target is self.tower:
            return self
        emb = self.tower.field.embed_into
        return LaurentPoly._raw(
            target, tuple((e, emb(target.field, c)) for e, c in self.terms), self.precision
        )

    def rebase(self, target: FieldTower) -> "LaurentPoly":
        if not self.tower.same_field(target):
            raise InvalidInputError(f"cannot rebase {self.tower} onto {target}")
        return LaurentPoly._raw(target, self.terms, self.precision)


def frobenius_apply(x, k: int):
    """σ^k를 FieldElem 또는 LaurentPoly에 적용"""
    if isinstance(x, FieldElem):
        return FieldElem(x.tower, x.tower.frobenius(x.value, k))
    if isinstance(x, LaurentPoly):
        return x.frobenius(k)
    raise TypeError(f"frobenius_apply expects FieldElem or LaurentPoly, got {type(x).__name__}")


def valuation(f: LaurentPoly) -> float | int:
    return f.valuation()


def series_invert(f: LaurentPoly, N: int) -> LaurentPoly:
    """
    f = t^v·u 의 역원을 f·g − 1 의 값매김이 N 이상이 되도록 계산한다.

    f가 단항식이면 정확한 역원을 반환한다. 그 외에는 precision = N − v 로 표시한다.
    """
    if f.is_zero():
        raise InvalidInputError("division by zero")
    tower = f.tower
    field = tower.field
    v, u0 = f.leading()
    if f.is_monomial():
        return LaurentPoly.monomial(tower, -v, field.inv(u0))
    if f.precision is not None and f.precision - v < N:
        raise PrecisionError(required=N + v, available=f.precision)
    unit = {e - v: c for e, c in f.terms}
    inv0 = field.inv(u0)
    coeffs = [inv0]
    for k in range(1, max(N, 1)):
        acc = 0
        for j in range(1, k + 1):
            cj = unit.get(j)
            if cj:
                acc = field.add(acc, field.mul(cj, coeffs[k - j]))
        coeffs.append(field.neg(field.mul(acc, inv0)))
    terms = [(k - v, c) for k, c in enumerate(coeffs[:max(N, 0)]) if c]
    return LaurentPoly(tower, terms, precision=N - v)
