"""Fixed loci of Gorenstein automorphisms of a quintic threefold.

A point [v] of P^4 is fixed by g exactly when v is an eigenvector of a linear
lifting of g, so X^g is the union of X ∩ P(E) over the eigenspaces E.  Each
piece is classified by restricting F to E; no fixed point is ever written down
in coordinates.  Finite point sets are counted as squarefree degrees of binary
forms, which keeps everything inside the field of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .cyclo import ONE, ZERO, CycNumber, root_of_unity, rou_log
from .errors import ConsistencyError, NotAutomorphismError, NotGorensteinError, SmoothnessError
from .linalg import (
    Matrix,
    Vector,
    det,
    identity,
    is_scalar,
    matmul,
    matpow,
    matvec,
    nullspace,
    rref,
    scale,
    subspace_key,
    trace,
)
from .pgroup import ProjElement, commutation_scalar, element_order
from .qform import QuinticForm, distinct_projective_roots, evaluate, restrict, substitute


class Kind(str, Enum):
    EMPTY = "Empty"
    ISOLATED_POINT = "IsolatedPoint"
    FINITE_POINTS = "FinitePoints"
    LINE = "LineInX"
    CURVE = "PlaneQuinticCurve"
    SURFACE = "QuinticSurface"
    WHOLE = "WholeX"


# Euler numbers of smooth degree-5 hypersurfaces in P^1, P^2, P^3, P^4 are 5, -10, 55, -200.
EULER = {
    Kind.EMPTY: 0,
    Kind.ISOLATED_POINT: 1,
    Kind.LINE: 2,
    Kind.CURVE: -10,
    Kind.SURFACE: 55,
    Kind.WHOLE: -200,
}

POSITIVE_DIMENSIONAL = (Kind.LINE, Kind.CURVE, Kind.SURFACE, Kind.WHOLE)


class Classification(NamedTuple):
    kind: Kind
    euler: int
    components: int


class GorensteinCheck(NamedTuple):
    is_automorphism: bool
    is_gorenstein: bool
    scalar: Optional[CycNumber]  # A(F) = scalar * F when an automorphism


@dataclass(frozen=True)
class FLift:
    """A lifting A of a projective element with A(F) = F and det(A) = 1."""

    element: Optional[int]
    matrix: Matrix
    order: int
    eigenvalues: tuple  # ((lambda, multiplicity), ...)
    eigenspaces: tuple  # ((lambda, rref basis), ...)

    @property
    def trace(self) -> CycNumber:
        return trace(self.matrix)

    @property
    def max_multiplicity(self) -> int:
        return max(m for _, m in self.eigenvalues)

    def is_identity(self) -> bool:
        return len(self.eigenspaces) == 1 and self.eigenspaces[0][0] == ONE


@dataclass(frozen=True)
class Stratum:
    label: CycNumber
    basis: tuple
    dim: int
    kind: Kind
    euler: int
    components: int
    age: Optional[int]

    @property
    def label_alpha(self) -> Fraction:
        return rou_log(self.label).alpha

    def to_record(self) -> dict:
        from .cyclo import format_coeff

        return {
            "label": str(self.label_alpha),
            "dim": self.dim,
            "kind": self.kind.value,
            "components": self.components,
            "euler": self.euler,
            "age": self.age,
            "basis": [[format_coeff(x) for x in v] for v in self.basis],
        }


@dataclass(frozen=True)
class FixedLocus:
    strata: tuple
    euler: int

    def is_empty(self) -> bool:
        return not self.strata

    def kinds(self) -> list:
        return sorted((s.kind.value, s.components, s.age) for s in self.strata)


# -- automorphism tests and liftings ------------------------------------------


def gorenstein_check(g, form: QuinticForm) -> GorensteinCheck:
    """Decide whether [A] preserves X and whether it does so Gorensteinly: A(F) = det(A) F."""
    a = g.matrix if isinstance(g, ProjElement) else g
    image = substitute(a, form)
    if form.is_zero():
        return GorensteinCheck(image.is_zero(), image.is_zero(), ONE)
    e0 = next(iter(form.terms))
    if e0 not in image.terms:
        return GorensteinCheck(False, False, None)
    s = image.terms[e0] / form.terms[e0]
    if image != form.scaled(s):
        return GorensteinCheck(False, False, None)
    return GorensteinCheck(True, s == det(a), s)


def _integer_fifth_root(n: int) -> Optional[int]:
    r = round(abs(n) ** 0.2)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**5 == abs(n):
            return c if n >= 0 else -c
    return None


def _rational_fifth_root(q: Fraction) -> Optional[Fraction]:
    num, den = _integer_fifth_root(q.numerator), _integer_fifth_root(q.denominator)
    return None if num is None or den is None else Fraction(num, den)


def _fifth_root_scalar(d: CycNumber, conductor: int) -> CycNumber:
    """A scalar c with c^5 = 1/d.

    Roots of unity are preferred, taking one already in Q(zeta_conductor) when
    possible; a rational d falls back to its real fifth root.
    """
    log = rou_log(d)
    if log is None:
        r = _rational_fifth_root(d.rational_value()) if d.is_rational() else None
        if r is None:
            raise ConsistencyError(
                f"det {d} of the normalized lifting is neither a root of unity nor a rational fifth power"
            )
        return CycNumber([1 / r])
    target = (-log.alpha) % 1
    candidates = [(target + t) / 5 for t in range(5)]
    ambient = math.lcm(2, conductor)
    inside = [a for a in candidates if ambient % a.denominator == 0]
    alpha = min(inside) if inside else candidates[0]
    return root_of_unity(alpha.denominator, alpha.numerator)


def f_lift(g, form: QuinticForm, element: Optional[int] = None, proj_order: Optional[int] = None) -> FLift:
    """Rescale a lifting of g so that A(F) = F and det(A) = 1."""
    a = g.matrix if isinstance(g, ProjElement) else tuple(tuple(r) for r in g)
    check = gorenstein_check(a, form)
    if not check.is_automorphism:
        raise NotAutomorphismError("matrix does not preserve the quintic")
    if not check.is_gorenstein:
        raise NotGorensteinError("automorphism is not Gorenstein: A(F) != det(A) F")
    conductor = math.lcm(1, *(x.conductor for row in a for x in row))
    c = _fifth_root_scalar(det(a), conductor)
    if c != ONE:
        a = scale(c, a)
    if substitute(a, form) != form or det(a) != ONE:
        raise ConsistencyError("rescaled lifting fails A(F) = F, det(A) = 1")
    if proj_order is None:
        pg = g if isinstance(g, ProjElement) else None
        proj_order = element_order(pg) if pg is not None else _projective_order(a)
    s = is_scalar(matpow(a, proj_order))
    if s is None:
        raise ConsistencyError("projective order does not match the lifting")
    order = proj_order * rou_log(s).order
    spaces = eigen_decomposition(a, order)
    eigenvalues = tuple((lam, len(b)) for lam, b in spaces)
    return FLift(element, a, order, eigenvalues, spaces)


def _projective_order(a: Matrix, cap: int = 20_000) -> int:
    x, n = a, 1
    while is_scalar(x) is None:
        x = matmul(x, a)
        n += 1
        if n > cap:
            raise ConsistencyError("matrix has no finite projective order")
    return n


def _charpoly(a: Matrix) -> list:
    """Characteristic polynomial coefficients, constant term first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = tuple(tuple(ZERO for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        m = matmul(a, m) if k > 1 else m
        m = tuple(tuple(x + coeffs[n - k + 1] if i == j else x for j, x in enumerate(row)) for i, row in enumerate(m))
        am = matmul(a, m)
        coeffs[n - k] = -trace(am) / k
    return coeffs


def eigen_decomposition(a: Matrix, order: int) -> tuple:
    """Eigenspaces of a finite-order matrix, as ((lambda, rref basis), ...).

    Candidate eigenvalues are the order-th roots of unity; the ones that are
    roots of the characteristic polynomial get their kernel computed.
    """
    poly = _charpoly(a)
    n = len(a)
    out = []
    for k in range(order):
        lam = root_of_unity(order, k)
        val = ZERO
        for c in reversed(poly):
            val = val * lam + c
        if val:
            continue
        shifted = tuple(tuple(x - lam if i == j else x for j, x in enumerate(row)) for i, row in enumerate(a))
        out.append((lam, nullspace(shifted)))
    if sum(len(b) for _, b in out) != n:
        raise ConsistencyError("eigenspaces do not span: matrix is not of finite order")
    return tuple(out)


def eigenspaces_by_projectors(a: Matrix, order: int) -> tuple:
    """Same decomposition via P_lambda = (1/n) sum_k lambda^-k A^k applied to the standard basis."""
    n = len(a)
    powers = [identity(n)]
    for _ in range(1, order):
        powers.append(matmul(powers[-1], a))
    out = []
    for k in range(order):
        lam = root_of_unity(order, k)
        proj = [[ZERO] * n for _ in range(n)]
        for j, p in enumerate(powers):
            w = root_of_unity(order, -k * j)
            for r in range(n):
                for c in range(n):
                    if p[r][c]:
                        proj[r][c] = proj[r][c] + w * p[r][c]
        cols = [tuple(proj[r][c] / order for r in range(n)) for c in range(n)]
        basis = rref(cols)[0]
        if basis:
            out.append((lam, basis))
    if sum(len(b) for _, b in out) != n:
        raise ConsistencyError("projectors do not resolve the identity")
    return tuple(out)


def eigen_strata(lift: FLift) -> tuple:
    return lift.eigenspaces


# -- classification -----------------------------------------------------------


def classify_stratum(form: QuinticForm, basis: Sequence[Vector]) -> Classification:
    """Kind and Euler number of X ∩ P(span basis)."""
    d = len(basis)
    if d == 5:
        return Classification(Kind.WHOLE, EULER[Kind.WHOLE], 1)
    f = restrict(form, basis)
    if d == 1:
        return Classification(Kind.ISOLATED_POINT, 1, 1) if f.is_zero() else Classification(Kind.EMPTY, 0, 0)
    if d == 2:
        if f.is_zero():
            return Classification(Kind.LINE, EULER[Kind.LINE], 1)
        k = distinct_projective_roots(f)
        return Classification(Kind.FINITE_POINTS, k, k)
    if f.is_zero():
        raise SmoothnessError(
            f"F vanishes on a {d - 1}-plane; a smooth quintic threefold contains no planes"
        )
    kind = Kind.CURVE if d == 3 else Kind.SURFACE
    return Classification(kind, EULER[kind], 1)


class StratumClassifier:
    """classify_stratum with a cache keyed by the rref basis."""

    def __init__(self, form: QuinticForm):
        self.form = form
        self._cache: dict = {}

    def __call__(self, basis: Sequence[Vector]) -> Classification:
        key = subspace_key(basis)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = classify_stratum(self.form, basis)
        return hit


def age(lift: FLift, lam: CycNumber) -> int:
    """Sum of the normalized arguments of the three tangent eigenvalues at a fixed point.

    At a point on P(E_lambda) the tangent space of P^4 carries the ratios
    mu/lambda over the other eigendirections; since F is A-invariant the
    normal direction of X carries lambda^-5, which is removed.
    """
    spectrum = [mu for mu, m in lift.eigenvalues for _ in range(m)]
    spectrum.remove(next(mu for mu in spectrum if mu == lam))
    ratios = [mu / lam for mu in spectrum]
    normal = lam ** -5
    pos = next((i for i, r in enumerate(ratios) if r == normal), None)
    if pos is None:
        raise SmoothnessError("normal eigenvalue lambda^-5 missing at a fixed point; X cannot be smooth there")
    del ratios[pos]
    total = sum((rou_log(r).alpha for r in ratios), Fraction(0))
    if total.denominator != 1:
        raise ConsistencyError(f"non-integral age {total}")
    return int(total)


def fixed_locus(g, form: QuinticForm, lift: Optional[FLift] = None, classifier=None) -> FixedLocus:
    lift = lift if lift is not None else f_lift(g, form)
    classify = classifier or (lambda b: classify_stratum(form, b))
    identity_elem = lift.is_identity()
    strata = []
    for lam, basis in lift.eigenspaces:
        cl = classify(basis)
        if cl.kind == Kind.EMPTY:
            continue
        a = age(lift, lam)
        if not identity_elem:
            if a not in (1, 2):
                raise ConsistencyError(f"age {a} on a fixed component of a non-identity element")
            if cl.kind in POSITIVE_DIMENSIONAL and a != 1:
                raise SmoothnessError(f"{cl.kind.value} fixed with age {a}; expected 1")
        strata.append(Stratum(lam, basis, len(basis), cl.kind, cl.euler, cl.components, a))
    return FixedLocus(tuple(strata), sum(s.euler for s in strata))


# -- pairs of commuting elements ----------------------------------------------


def _pivots(basis: Sequence[Vector]) -> list[int]:
    return [next(i for i, x in enumerate(v) if x) for v in basis]


def split_subspace(basis: Sequence[Vector], lift_h: FLift) -> list:
    """Decompose an H-stable subspace (rref basis) into its H-eigenspaces.

    Returns [(mu, rref basis), ...].  Raises if H does not preserve the subspace.
    """
    h = lift_h.matrix
    piv = _pivots(basis)
    d = len(basis)
    images = [matvec(h, b) for b in basis]
    # rref rows have the identity in the pivot columns, so coordinates are read off there
    m = tuple(tuple(images[i][piv[j]] for i in range(d)) for j in range(d))
    for i, img in enumerate(images):
        recon = [ZERO] * len(img)
        for j, b in enumerate(basis):
            if m[j][i]:
                recon = [x + m[j][i] * y for x, y in zip(recon, b)]
        if any(x != y for x, y in zip(recon, img)):
            raise ValueError("subspace is not preserved by h")
    out = []
    for mu, mult in lift_h.eigenvalues:
        shifted = tuple(tuple(x - mu if i == j else x for j, x in enumerate(row)) for i, row in enumerate(m))
        coords = nullspace(shifted)
        if not coords:
            continue
        vecs = []
        for w in coords:
            v = [ZERO] * len(basis[0])
            for wj, b in zip(w, basis):
                if wj:
                    v = [x + wj * y for x, y in zip(v, b)]
            vecs.append(tuple(v))
        out.append((mu, rref(vecs)[0]))
    if sum(len(b) for _, b in out) != d:
        raise ConsistencyError("restricted lifting is not diagonalizable")
    return out


def preserves_eigenspaces(lift_g: FLift, lift_h: FLift) -> bool:
    """True iff H commutes with Ag on the nose (commutation scalar 1)."""
    return commutation_scalar(None, None, lift_g.matrix, lift_h.matrix) == ONE


def joint_strata(lift_g: FLift, lift_h: FLift, split=None, commuting: Optional[bool] = None) -> list:
    """Joint eigenspaces [(lambda, mu, basis)] of commuting liftings; [] when the scalar is not 1.

    If H Ag H^-1 = c Ag with c != 1 then no vector is an eigenvector of both,
    so the common fixed locus is empty.
    """
    if commuting is None:
        commuting = preserves_eigenspaces(lift_g, lift_h)
    if not commuting:
        return []
    split = split or split_subspace
    out = []
    for lam, basis in lift_g.eigenspaces:
        for mu, sub in split(basis, lift_h):
            out.append((lam, mu, sub))
    return out


def pairwise_fixed_euler(
    lift_g: FLift, lift_h: FLift, form: QuinticForm, classifier=None, split=None, commuting: Optional[bool] = None
) -> int:
    """e(X^g ∩ X^h) for projectively commuting g, h."""
    classify = classifier or (lambda b: classify_stratum(form, b))
    return sum(classify(b).euler for _, _, b in joint_strata(lift_g, lift_h, split, commuting))


def fixed_points_of_h_in_stratum(
    lift_h: FLift,
    stratum: Stratum,
    lift_g: FLift,
    form: QuinticForm,
    split=None,
    commuting: Optional[bool] = None,
) -> int:
    """Number of connected components of a stratum of g mapped to themselves by h in C(g)."""
    if stratum.kind == Kind.EMPTY:
        return 0
    if commuting is None:
        commuting = preserves_eigenspaces(lift_g, lift_h)
    if not commuting:
        return 0
    if stratum.kind != Kind.FINITE_POINTS:
        return 1
    count = 0
    for _, sub in (split or split_subspace)(stratum.basis, lift_h):
        if len(sub) == len(stratum.basis):
            count += stratum.components
        elif len(sub) == 1 and not evaluate(form, sub[0]):
            count += 1
    return count
