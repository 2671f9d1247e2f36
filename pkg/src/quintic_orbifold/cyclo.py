"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) modulo the
N-th cyclotomic polynomial, as an integer numerator vector over a single
positive denominator.  Operands living at different conductors are embedded
into the field of the lcm conductor before combining.  Results that turn out
to be rational are stored at conductor 1, so rationals have one
representation no matter where they came from.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Union

from .errors import ConductorError, SchemaError

MAX_CONDUCTOR = 10**6

Rational = Union[int, Fraction]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


def _mobius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _exact_divide(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            quot[i - dq] = c
            for j, dj in enumerate(den):
                num[i - dq + j] -= c * dj
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _exact_divide(num, cyclotomic_polynomial(d))
    return tuple(num)


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row i holds z^(phi+i) reduced modulo Phi_n, for phi <= phi+i < n."""
    poly = cyclotomic_polynomial(n)
    phi = len(poly) - 1
    rows = []
    cur = [-c for c in poly[:phi]]
    for _ in range(phi, n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [a + top * b for a, b in zip(cur, rows[0])]
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan(n: int) -> tuple[int, ...]:
    # trace of z^k over Q, k < phi(n)
    out = []
    for k in range(_phi(n)):
        g = math.gcd(k, n)
        out.append(_mobius(n // g) * _phi(n) // _phi(n // g))
    return tuple(out)


def _reduce(vec: list[int], n: int) -> list[int]:
    """Reduce an integer coefficient vector (any length) modulo Phi_n."""
    phi = _phi(n)
    if len(vec) > n:
        folded = [0] * n
        for i, c in enumerate(vec):
            if c:
                folded[i % n] += c
        vec = folded
    out = list(vec[:phi]) + [0] * max(0, phi - len(vec))
    if len(vec) > phi:
        table = _reduction_table(n)
        for i in range(phi, len(vec)):
            c = vec[i]
            if c:
                row = table[i - phi]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
    return out


def _check_conductor(n: int) -> int:
    if n > MAX_CONDUCTOR:
        raise ConductorError(f"conductor {n} exceeds the cap {MAX_CONDUCTOR}")
    return n


class CycNumber:
    """An element of Q(zeta_N) in the reduced power basis.

    ``CycNumber([a0, a1, ...], N)`` is a0 + a1*z + ... with z = exp(2*pi*i/N);
    the coefficient list may be of any length and is reduced on construction.
    """

    __slots__ = ("conductor", "_num", "_den")

    def __init__(self, coeffs: Iterable[Rational] = (), conductor: int = 1):
        n = int(conductor)
        if n < 1:
            raise ValueError("conductor must be positive")
        _check_conductor(n)
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        nums = [c.numerator * (den // c.denominator) for c in fr]
        if n % 4 == 2:
            # zeta_2m = -zeta_m^((m+1)/2) for odd m; store at the canonical conductor
            m = n // 2
            folded = [0] * m
            for k, c in enumerate(nums):
                folded[(k * (m + 1) // 2) % m] += -c if k % 2 else c
            n, nums = m, folded
        self._set(n, _reduce(nums, n), den, demote=False)

    @classmethod
    def _raw(cls, n: int, nums: list[int], den: int, demote: bool = True) -> "CycNumber":
        obj = cls.__new__(cls)
        obj._set(n, nums, den, demote)
        return obj

    def _set(self, n: int, nums: list[int], den: int, demote: bool) -> None:
        if den < 0:
            den, nums = -den, [-c for c in nums]
        g = math.gcd(den, *nums)
        if g > 1:
            den //= g
            nums = [c // g for c in nums]
        if demote and n > 1 and not any(nums[1:]):
            n, nums = 1, nums[:1]
        self.conductor = n
        self._num = tuple(nums)
        self._den = den

    # -- views ---------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self) -> bool:
        return any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def key(self) -> tuple:
        """Hashable identity; exact for values sharing a conductor (rationals always)."""
        if self.is_rational():
            return (1, self._num[:1], self._den)
        return (self.conductor, self._num, self._den)

    def coeffs_at(self, m: int) -> tuple[tuple[int, ...], int]:
        return tuple(_vec_at(self, m)), self._den

    # -- arithmetic ------------------------------------------------------------

    def __neg__(self) -> "CycNumber":
        return CycNumber._raw(self.conductor, [-c for c in self._num], self._den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._num or not any(other._num):
            return self
        if not any(self._num):
            return other
        m = _common(self, other)
        a, b = _vec_at(self, m), _vec_at(other, m)
        da, db = self._den, other._den
        if da == db:
            return CycNumber._raw(m, [x + y for x, y in zip(a, b)], da)
        return CycNumber._raw(m, [x * db + y * da for x, y in zip(a, b)], da * db)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not any(self._num) or not any(other._num):
            return ZERO
        if other.is_rational():
            c = other._num[0]
            return CycNumber._raw(self.conductor, [x * c for x in self._num], self._den * other._den)
        if self.is_rational():
            c = self._num[0]
            return CycNumber._raw(other.conductor, [x * c for x in other._num], self._den * other._den)
        m = _common(self, other)
        a, b = _vec_at(self, m), _vec_at(other, m)
        prod = [0] * (2 * len(a) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycNumber._raw(m, _reduce(prod, m), self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if not any(self._num):
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNumber._raw(1, [self._den], self._num[0])
        return _inverse_cached(self.conductor, self._num, self._den)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == other.conductor:
            return self._num == other._num and self._den == other._den
        if self.is_rational() and other.is_rational():
            return self._num[0] == other._num[0] and self._den == other._den
        m = _common(self, other)
        return self._den == other._den and _vec_at(self, m) == _vec_at(other, m)

    def __hash__(self) -> int:
        # the normalized trace is unchanged by embeddings, so equal values hash equal
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        r = _ramanujan(self.conductor)
        tr = sum(c * t for c, t in zip(self._num, r))
        return hash(Fraction(tr, self._den * _phi(self.conductor)))

    def __str__(self) -> str:
        return format_coeff(self)

    def __repr__(self) -> str:
        return f"CycNumber('{format_coeff(self)}', N={self.conductor})"


def _coerce(x) -> CycNumber:
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Fraction)):
        fr = Fraction(x)
        return CycNumber._raw(1, [fr.numerator], fr.denominator)
    return NotImplemented


def _common(a: CycNumber, b: CycNumber) -> int:
    if a.conductor == b.conductor:
        return a.conductor
    return _check_conductor(math.lcm(a.conductor, b.conductor))


def _vec_at(x: CycNumber, m: int) -> list[int]:
    n = x.conductor
    if n == m:
        return list(x._num)
    if x.is_rational():
        return [x._num[0]] + [0] * (_phi(m) - 1)
    if m % n:
        raise ConductorError(f"cannot embed conductor {n} into {m}")
    f = m // n
    vec = [0] * m
    for k, c in enumerate(x._num):
        if c:
            vec[k * f] += c
    return _reduce(vec, m)


@lru_cache(maxsize=4096)
def _inverse_cached(n: int, num: tuple[int, ...], den: int) -> CycNumber:
    x = CycNumber._raw(n, list(num), den, demote=False)
    log = rou_log(x) if den == 1 else None
    if log is not None:
        return root_of_unity(log.order, -log.exponent)
    # solve (sum_j c_j z^j) * x = 1 over Q via the multiplication matrix
    phi = _phi(n)
    cols = []
    for j in range(phi):
        shifted = [0] * j + list(num)
        cols.append(_reduce(shifted, n))
    aug = [[Fraction(cols[j][i]) for j in range(phi)] + [Fraction(1 if i == 0 else 0)] for i in range(phi)]
    for c in range(phi):
        p = next(r for r in range(c, phi) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for r in range(phi):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    sol = [aug[i][phi] for i in range(phi)]
    # multiplying by den restores the scaling removed above
    return CycNumber(sol, n) * den


ZERO = CycNumber._raw(1, [0], 1)
ONE = CycNumber._raw(1, [1], 1)


def rational(value: Rational) -> CycNumber:
    return _coerce(value)


def canonical_conductor(n: int) -> int:
    """Smallest conductor of the field Q(zeta_n)."""
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def root_of_unity(n: int, k: int = 1) -> CycNumber:
    """exp(2*pi*i*k/n), stored at its minimal conductor."""
    if n < 1:
        raise ValueError("n must be positive")
    k %= n
    g = math.gcd(k, n)
    n, k = n // g, k // g
    if n == 1:
        return ONE
    if n == 2:
        return -ONE
    if n % 4 == 2:
        m = n // 2
        base = root_of_unity(m, (k * (m + 1) // 2) % m)
        return -base if k % 2 else base
    _check_conductor(n)
    vec = [0] * (k + 1)
    vec[k] = 1
    return CycNumber._raw(n, _reduce(vec, n), 1)


def zeta(n: int) -> CycNumber:
    return root_of_unity(n, 1)


def embed(x: CycNumber, m: int) -> CycNumber:
    """The same field element, represented at conductor m (a multiple of x's conductor)."""
    if m < 1 or m % x.conductor:
        raise ConductorError(f"conductor {x.conductor} does not divide {m}")
    _check_conductor(m)
    return CycNumber._raw(m, _vec_at(x, m), x._den, demote=False)


class RouLog(NamedTuple):
    order: int
    exponent: int
    alpha: Fraction


@lru_cache(maxsize=None)
def _rou_table(n: int) -> dict:
    m = math.lcm(2, n)
    table = {}
    for j in range(m):
        table[root_of_unity(m, j).coeffs_at(n)] = j
    return table


def rou_log(x: CycNumber) -> Optional[RouLog]:
    """Exact discrete log of a root of unity, or None if x is not one.

    The roots of unity of Q(zeta_N) are exactly the lcm(2, N)-th roots, so a
    table lookup at x's own conductor decides membership.
    """
    if x._den != 1:
        return None
    n = x.conductor
    j = _rou_table(n).get(x.coeffs_at(n))
    if j is None:
        return None
    m = math.lcm(2, n)
    g = math.gcd(j, m)
    return RouLog(m // g, j // g, Fraction(j, m))


# -- text grammar -------------------------------------------------------------

_TERM = re.compile(
    r"(?P<sign>[+-])?(?:(?P<p>\d+)(?:/(?P<q>\d+))?(?P<zc>\*z(?:\^(?P<k1>\d+))?)?"
    r"|(?P<z>z)(?:\^(?P<k2>\d+))?)"
)


def parse_coeff(text: str, conductor: int) -> CycNumber:
    """Parse a signed sum of terms ``p/q`` or ``p/q*z^k`` with z = zeta_conductor."""
    if re.search(r"\w\s+\w", str(text)):
        raise SchemaError(f"malformed coefficient {text!r}: missing operator")
    s = re.sub(r"\s+", "", str(text))
    if not s:
        raise SchemaError("empty coefficient string")
    pos, first = 0, True
    vec = [Fraction(0)] * conductor
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not first and m.group("sign") is None):
            raise SchemaError(f"malformed coefficient {text!r} near position {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("z"):
            coef = Fraction(1)
            k = int(m.group("k2")) if m.group("k2") is not None else 1
        else:
            q = int(m.group("q")) if m.group("q") else 1
            if q == 0:
                raise SchemaError(f"zero denominator in {text!r}")
            coef = Fraction(int(m.group("p")), q)
            if m.group("zc"):
                k = int(m.group("k1")) if m.group("k1") is not None else 1
            else:
                k = 0
        if k >= conductor:
            raise SchemaError(f"power z^{k} in {text!r} does not fit conductor {conductor}")
        vec[k] += sign * coef
        pos = m.end()
    x = CycNumber(vec, conductor)
    return CycNumber._raw(x.conductor, list(x._num), x._den)


def format_coeff(x: CycNumber, conductor: Optional[int] = None) -> str:
    """Serialize in ascending powers of z = zeta_conductor (default: x's own conductor)."""
    n = x.conductor if conductor is None else conductor
    nums, den = x.coeffs_at(n)
    parts = []
    for k, c in enumerate(nums):
        if not c:
            continue
        fr = Fraction(c, den)
        if k == 0:
            body = str(abs(fr))
        else:
            zk = "z" if k == 1 else f"z^{k}"
            body = zk if abs(fr) == 1 else f"{abs(fr)}*{zk}"
        parts.append(("-" if fr < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
