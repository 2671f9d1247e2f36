"""Sparse homogeneous quintic forms in five variables over Q(zeta_N)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .cyclo import ONE, ZERO, CycNumber, format_coeff, parse_coeff, rational
from .errors import SchemaError
from .linalg import Matrix, Vector, rank

Exponent = tuple

DEGREE = 5
NVARS = 5

Poly = dict  # Exponent -> CycNumber


def _as_cyc(x) -> CycNumber:
    return x if isinstance(x, CycNumber) else rational(x)


def _clean(terms: Mapping) -> dict:
    return {e: c for e, c in terms.items() if c}


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            prev = out.get(e)
            out[e] = c1 * c2 if prev is None else prev + c1 * c2
    return _clean(out)


def _compose(terms: Mapping, rows: Sequence[Sequence[CycNumber]], nvars: int) -> Poly:
    """Substitute x_j = sum_i rows[j][i] * t_i into the form."""
    unit = [tuple(1 if k == i else 0 for k in range(nvars)) for i in range(nvars)]
    linear = [{unit[i]: c for i, c in enumerate(row) if c} for row in rows]
    powers: dict = {}

    def power(j: int, e: int) -> Poly:
        if (j, e) not in powers:
            if e == 0:
                powers[(j, e)] = {(0,) * nvars: ONE}
            else:
                powers[(j, e)] = _poly_mul(power(j, e - 1), linear[j])
        return powers[(j, e)]

    out: Poly = {}
    for exps, coef in terms.items():
        acc: Poly = {(0,) * nvars: coef}
        for j, e in enumerate(exps):
            if e:
                acc = _poly_mul(acc, power(j, e))
                if not acc:
                    break
        for e, c in acc.items():
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
    return _clean(out)


class QuinticForm:
    """A degree-5 form in x1..x5, stored as {exponent vector: nonzero coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping):
        clean = {}
        for exps, coef in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != NVARS or any(e < 0 for e in exps):
                raise SchemaError(f"bad monomial {list(exps)}: need {NVARS} non-negative exponents")
            if sum(exps) != DEGREE:
                raise SchemaError(f"monomial {list(exps)} has degree {sum(exps)}, not {DEGREE}")
            c = _as_cyc(coef)
            if exps in clean:
                c = clean[exps] + c
            clean[exps] = c
        self.terms = _clean(clean)

    @classmethod
    def fermat(cls) -> "QuinticForm":
        return cls({tuple(5 if k == i else 0 for k in range(NVARS)): 1 for i in range(NVARS)})

    @classmethod
    def from_records(cls, records: Sequence[Mapping], conductor: int) -> "QuinticForm":
        terms: dict = {}
        for rec in records:
            try:
                mono, coef = rec["monomial"], rec["coeff"]
            except (KeyError, TypeError):
                raise SchemaError(f"quintic term {rec!r} needs 'coeff' and 'monomial'") from None
            if not isinstance(mono, (list, tuple)):
                raise SchemaError(f"monomial {mono!r} must be a list of exponents")
            c = parse_coeff(coef, conductor)
            key = tuple(mono)
            terms[key] = terms[key] + c if key in terms else c
        return cls(terms)

    def to_records(self, conductor: Optional[int] = None) -> list[dict]:
        return [
            {"coeff": format_coeff(self.terms[e], conductor), "monomial": list(e)}
            for e in sorted(self.terms, reverse=True)
        ]

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def scaled(self, c: CycNumber) -> "QuinticForm":
        return QuinticForm({e: c * v for e, v in self.terms.items()})

    def conductor(self) -> int:
        return math.lcm(1, *(c.conductor for c in self.terms.values()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuinticForm):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self) -> int:
        return hash(frozenset((e, hash(c)) for e, c in self.terms.items()))

    def __repr__(self) -> str:
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})*{mono}")
        return "QuinticForm(" + (" + ".join(parts) or "0") + ")"


@dataclass(frozen=True)
class RestrictedForm:
    dim: int
    terms: dict
    basis: tuple

    def is_zero(self) -> bool:
        return not self.terms


def substitute(a: Matrix, form: QuinticForm) -> QuinticForm:
    """A(F) = F(sum_i a_1i x_i, ..., sum_i a_5i x_i)."""
    return QuinticForm(_compose(form.terms, a, NVARS))


def restrict(form: QuinticForm, basis: Sequence[Vector]) -> RestrictedForm:
    """F composed with t -> sum_i t_i * basis_i, as a form in len(basis) variables."""
    d = len(basis)
    if d == 0 or d > NVARS:
        raise ValueError("basis must contain 1 to 5 vectors")
    if rank(basis) != d:
        raise ValueError("restriction basis is linearly dependent")
    rows = [[basis[i][j] for i in range(d)] for j in range(NVARS)]
    return RestrictedForm(d, _compose(form.terms, rows, d), tuple(tuple(b) for b in basis))


def evaluate(form: QuinticForm, v: Vector) -> CycNumber:
    v = [_as_cyc(x) for x in v]
    acc = ZERO
    for exps, coef in form.terms.items():
        term = coef
        for x, e in zip(v, exps):
            if e:
                if not x:
                    term = ZERO
                    break
                term = term * x**e
        if term:
            acc = acc + term
    return acc


# -- univariate polynomials, coefficient lists with constant term first -------


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _derivative(p: list) -> list:
    return _trim([c * k for k, c in enumerate(p)][1:])


def _poly_rem(a: list, b: list) -> list:
    a = list(a)
    inv = b[-1].inverse()
    while len(a) >= len(b):
        f = a[-1] * inv
        shift = len(a) - len(b)
        if f:
            for i, c in enumerate(b):
                if c:
                    a[shift + i] = a[shift + i] - f * c
        a.pop()
        _trim(a)
    return a


def poly_gcd(a: list, b: list) -> list:
    """Monic gcd of two univariate polynomials over Q(zeta_N)."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b)
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def distinct_projective_roots(f: RestrictedForm) -> int:
    """Number of distinct zeros on P^1 of a nonzero binary quintic.

    Dehomogenize at t = 1: finite roots are counted as deg p - deg gcd(p, p');
    a drop of deg p below 5 means [1:0] is a root as well.
    """
    if f.dim != 2:
        raise ValueError("distinct_projective_roots needs a binary form")
    if f.is_zero():
        raise ValueError("the zero form vanishes everywhere")
    p = [ZERO] * (DEGREE + 1)
    for (a, _b), c in f.terms.items():
        p[a] = c
    p = _trim(p)
    deg = len(p) - 1
    finite = 0
    if deg > 0:
        finite = deg - (len(poly_gcd(p, _derivative(p))) - 1)
    return finite + (1 if deg < DEGREE else 0)
