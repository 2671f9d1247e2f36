"""Orbifold Hodge and Euler numbers of X/G from per-class fixed-locus data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cyclo import format_coeff
from .errors import ConsistencyError
from .fixloc import (
    POSITIVE_DIMENSIONAL,
    FixedLocus,
    FLift,
    StratumClassifier,
    f_lift,
    fixed_locus,
    fixed_points_of_h_in_stratum,
    pairwise_fixed_euler,
    preserves_eigenspaces,
    split_subspace,
)
from .linalg import subspace_key
from .pgroup import GroupTable, QuotientInfo, normal_closure, quotient_diagnostics
from .qform import QuinticForm


@dataclass(frozen=True)
class ClassReport:
    representative: int
    order: int
    size: int
    centralizer_order: int
    euler_fixed: int
    h11: int
    h22: int
    centralizer_euler_sum: int  # sum over h in C(g) of e(X^g ∩ X^h)
    strata: tuple
    trace: str = ""  # in powers of zeta_{trace_conductor}
    trace_conductor: int = 1
    max_multiplicity: int = 0

    @property
    def weighted_euler_sum(self) -> int:
        return self.size * self.centralizer_euler_sum

    def to_dict(self) -> dict:
        return {
            "representative": self.representative,
            "order": self.order,
            "size": self.size,
            "centralizer_order": self.centralizer_order,
            "euler_fixed": self.euler_fixed,
            "h11": self.h11,
            "h22": self.h22,
            "centralizer_euler_sum": self.centralizer_euler_sum,
            "trace": self.trace,
            "trace_conductor": self.trace_conductor,
            "max_multiplicity": self.max_multiplicity,
            "strata": [s.to_record() for s in self.strata],
        }


@dataclass(frozen=True)
class OrbifoldResult:
    group_order: int
    classes: tuple
    e_orbifold: int
    h11: int
    h21: int
    h22_check: Optional[int]
    pi1: QuotientInfo
    warnings: tuple = ()


def _exact_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ConsistencyError(f"{what} is not an integer: {x}")
    return int(x)


class OrbifoldAnalysis:
    """Lazily computed fixed-locus data for (X, G), cached per element and per pair."""

    def __init__(self, form: QuinticForm, table: GroupTable):
        self.form = form
        self.table = table
        self.classify = StratumClassifier(form)
        self._lifts: dict = {}
        self._loci: dict = {}
        self._pairs: dict = {}
        self._commute: dict = {}
        self._splits: dict = {}

    def lift(self, i: int) -> FLift:
        hit = self._lifts.get(i)
        if hit is None:
            g = self.table.elements[i]
            hit = self._lifts[i] = f_lift(g, self.form, element=i, proj_order=self.table.element_order(i))
        return hit

    def locus(self, i: int) -> FixedLocus:
        hit = self._loci.get(i)
        if hit is None:
            hit = self._loci[i] = fixed_locus(self.table.elements[i], self.form, self.lift(i), self.classify)
        return hit

    def commuting(self, g: int, h: int) -> bool:
        """Whether the F-liftings of g and h commute exactly (not just up to a scalar)."""
        key = (g, h) if g <= h else (h, g)
        hit = self._commute.get(key)
        if hit is None:
            hit = self._commute[key] = g == h or 0 in key or preserves_eigenspaces(self.lift(g), self.lift(h))
        return hit

    def split(self, basis, lift_h: FLift) -> list:
        key = (subspace_key(basis), lift_h.element)
        hit = self._splits.get(key)
        if hit is None:
            hit = self._splits[key] = split_subspace(basis, lift_h)
        return hit

    def pair_euler(self, g: int, h: int) -> int:
        key = (g, h) if g <= h else (h, g)
        hit = self._pairs.get(key)
        if hit is None:
            if g == h:
                hit = self.locus(g).euler
            elif h == 0 or g == 0:
                hit = self.locus(g or h).euler
            else:
                hit = pairwise_fixed_euler(
                    self.lift(g), self.lift(h), self.form, self.classify, self.split, self.commuting(g, h)
                )
            self._pairs[key] = hit
        return hit

    def _orbit_count(self, g: int, strata) -> int:
        """Burnside: average over C(g) of the number of listed components each element preserves."""
        cent = self.table.centralizer(g)
        lg = self.lift(g)
        total = 0
        for h in cent:
            if not self.commuting(g, h):
                continue
            lh = self.lift(h)
            for s in strata:
                total += fixed_points_of_h_in_stratum(lh, s, lg, self.form, self.split, True)
        return _exact_int(Fraction(total, len(cent)), "Burnside orbit average")

    def h11_class(self, g: int) -> int:
        if g == 0:
            return 1
        return self._orbit_count(g, [s for s in self.locus(g).strata if s.age == 1])

    def h22_class(self, g: int) -> int:
        if g == 0:
            return 1
        strata = [
            s
            for s in self.locus(g).strata
            if (s.age == 1 and s.kind in POSITIVE_DIMENSIONAL) or (s.age == 2 and s.kind not in POSITIVE_DIMENSIONAL)
        ]
        return self._orbit_count(g, strata)

    def centralizer_euler_sum(self, g: int) -> int:
        return sum(self.pair_euler(g, h) for h in self.table.centralizer(g))

    def class_report(self, pos: int, duality: bool = True) -> ClassReport:
        members = self.table.classes[pos]
        g = members[0]
        lift = self.lift(g)
        return ClassReport(
            representative=g,
            order=self.table.element_order(g),
            size=len(members),
            centralizer_order=len(self.table.centralizer(g)),
            euler_fixed=self.locus(g).euler,
            h11=self.h11_class(g),
            h22=self.h22_class(g) if duality else 0,
            centralizer_euler_sum=self.centralizer_euler_sum(g),
            strata=self.locus(g).strata,
            trace=format_coeff(lift.trace),
            trace_conductor=lift.trace.conductor,
            max_multiplicity=lift.max_multiplicity,
        )

    def class_reports(self, duality: bool = True) -> list[ClassReport]:
        return [self.class_report(k, duality) for k in range(len(self.table.classes))]

    def euler_orbifold(self, reports=None) -> int:
        reports = reports if reports is not None else self.class_reports(duality=False)
        total = sum(r.weighted_euler_sum for r in reports)
        return _exact_int(Fraction(total, self.table.order), "orbifold Euler number")

    def euler_orbifold_direct(self) -> int:
        """Sum over all commuting pairs, without using conjugacy classes."""
        t = self.table
        total = 0
        for g in range(t.order):
            for h in range(t.order):
                if t.mult[g][h] == t.mult[h][g]:
                    total += self.pair_euler(g, h)
        return _exact_int(Fraction(total, t.order), "orbifold Euler number")

    def has_fixed_points(self, g: int) -> bool:
        return not self.locus(g).is_empty()

    def pi1(self) -> QuotientInfo:
        # fixed-point-freeness is a class function, so test one representative per class
        with_fixed = [x for c in self.table.classes if self.has_fixed_points(c[0]) for x in c]
        return quotient_diagnostics(normal_closure(with_fixed, self.table), self.table)

    def run(self, duality_check: bool = True) -> OrbifoldResult:
        reports = self.class_reports(duality_check)
        e = self.euler_orbifold(reports)
        h11 = h11_orbifold(reports)
        h21 = h21_from_euler(h11, e)
        h22 = None
        if duality_check:
            h22 = h22_duality_check(reports)
            if h22 != h11:
                raise ConsistencyError(f"h22 = {h22} differs from h11 = {h11}; input violates a precondition")
        return OrbifoldResult(self.table.order, tuple(reports), e, h11, h21, h22, self.pi1())


def h11_orbifold(reports) -> int:
    return sum(r.h11 for r in reports)


def h22_duality_check(reports) -> int:
    return sum(r.h22 for r in reports)


def h21_from_euler(h11: int, e: int) -> int:
    if e % 2:
        raise ConsistencyError(f"odd orbifold Euler number {e}")
    h21 = h11 - e // 2
    if h21 < 0:
        raise ConsistencyError(f"negative h21 = {h21} from h11 = {h11}, e = {e}")
    return h21
