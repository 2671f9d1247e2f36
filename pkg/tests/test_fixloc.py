from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_path, d, fixture_path, z
from oracles import pairwise_euler_by_intersection
from quintic_orbifold.cyclo import ONE, ZERO, rational, root_of_unity
from quintic_orbifold.errors import (
    ConsistencyError,
    NotAutomorphismError,
    NotGorensteinError,
    SmoothnessError,
)
from quintic_orbifold.fixloc import (
    FLift,
    Kind,
    _fifth_root_scalar,
    age,
    classify_stratum,
    eigen_decomposition,
    eigenspaces_by_projectors,
    f_lift,
    fixed_locus,
    fixed_points_of_h_in_stratum,
    gorenstein_check,
    pairwise_fixed_euler,
    split_subspace,
)
from quintic_orbifold.linalg import det, identity, matmul, scale, subspace_key, trace
from quintic_orbifold.pgroup import perm_matrix
from quintic_orbifold.pipeline import parse_input
from quintic_orbifold.qform import QuinticForm, substitute

FERMAT = QuinticForm.fermat()
D20_FORM = parse_input(corpus_path("d20")).quintic
A1 = d(-1, 1, -1, 1, 1)
A2 = d(z(5), z(5), z(5, 4), z(5, 4), 1)


def e(*idx):
    return [tuple(ONE if j == i else ZERO for j in range(5)) for i in idx]


def single(name):
    inp = parse_input(fixture_path(name))
    return inp.quintic, inp.generators[0]


# -- Gorenstein test and liftings --------------------------------------------------


def test_fifth_root_on_one_coordinate_is_not_gorenstein():
    check = gorenstein_check(d(z(5), 1, 1, 1, 1), FERMAT)
    assert check.is_automorphism and not check.is_gorenstein
    with pytest.raises(NotGorensteinError):
        f_lift(d(z(5), 1, 1, 1, 1), FERMAT)


def test_non_automorphism():
    assert not gorenstein_check(d(2, 1, 1, 1, 1), FERMAT).is_automorphism
    with pytest.raises(NotAutomorphismError):
        f_lift(perm_matrix("(12)"), D20_FORM)


def test_five_cycle_is_gorenstein_on_fermat():
    check = gorenstein_check(perm_matrix("(12345)"), FERMAT)
    assert check.is_gorenstein and check.scalar == 1


@pytest.mark.parametrize("a", [A1, A2, perm_matrix("(13)(24)")])
def test_lift_preserves_form_with_unit_determinant(a):
    lift = f_lift(a, D20_FORM)
    assert substitute(lift.matrix, D20_FORM) == D20_FORM
    assert det(lift.matrix) == 1
    assert sum(m for _, m in lift.eigenvalues) == 5


def test_lift_traces():
    assert f_lift(A1, D20_FORM).trace == 1
    assert f_lift(A1, D20_FORM).max_multiplicity == 3
    assert f_lift(A2, D20_FORM).trace == 2 * z(5) + 2 * z(5, 4) + 1


roots = st.sampled_from([ONE, -ONE, root_of_unity(3), root_of_unity(4, 3), root_of_unity(5, 2), root_of_unity(15, 7)])


@given(roots, st.sampled_from([A1, A2, perm_matrix("(13)(24)")]))
def test_lift_unique_up_to_fifth_roots(c, a):
    base, other = f_lift(a, D20_FORM), f_lift(scale(c, a), D20_FORM)
    ratio = next(y / x for rx, ry in zip(base.matrix, other.matrix) for x, y in zip(rx, ry) if x)
    assert ratio**5 == 1
    assert other.matrix == scale(ratio, base.matrix)
    ages = lambda lift: sorted((s.kind.value, s.age) for s in fixed_locus(a, D20_FORM, lift).strata)
    assert ages(base) == ages(other)


def test_lift_with_rational_determinant():
    # 2 * (rotation by 60 degrees) on x1, x2 and 2 on x3..x5: projective order 6, det 32
    s3 = root_of_unity(12) + root_of_unity(12, 11)  # sqrt(3)
    a = ((ONE, -s3, ZERO, ZERO, ZERO), (s3, ONE, ZERO, ZERO, ZERO)) + tuple(scale(rational(2), e(2, 3, 4)))
    form = QuinticForm({(0, 0, 5, 0, 0): 1, (0, 0, 0, 5, 0): 1, (0, 0, 0, 0, 5): 1})
    assert det(a) == 32
    lift = f_lift(a, form)
    assert det(lift.matrix) == 1 and lift.order == 6


def test_fifth_root_scalar_needs_root_of_unity_or_fifth_power():
    assert _fifth_root_scalar(rational(-32), 1) == rational(Fraction(-1, 2))
    assert _fifth_root_scalar(root_of_unity(3), 3) ** 5 * root_of_unity(3) == 1
    with pytest.raises(ConsistencyError):
        _fifth_root_scalar(rational(4), 1)
    with pytest.raises(ConsistencyError):
        _fifth_root_scalar(1 + root_of_unity(5), 5)


# -- eigenspaces ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "form,a",
    [
        (D20_FORM, A1),
        (D20_FORM, A2),
        (D20_FORM, perm_matrix("(13)(24)")),
        (FERMAT, perm_matrix("(12345)")),
        (FERMAT, d(1, z(5), z(5, 2), z(5, 3), z(5, 4))),
        (FERMAT, matmul(perm_matrix("(12345)"), d(1, z(5), z(5, 4), z(5, 4), z(5)))),
    ],
)
def test_eigenspaces_match_projector_oracle(form, a):
    lift = f_lift(a, form)
    fast = {lam: subspace_key(b) for lam, b in eigen_decomposition(lift.matrix, lift.order)}
    slow = {lam: subspace_key(b) for lam, b in eigenspaces_by_projectors(lift.matrix, lift.order)}
    assert fast == slow


def test_five_cycle_has_all_fifth_roots():
    lift = f_lift(perm_matrix("(12345)"), FERMAT)
    assert sorted(str(lam) for lam, m in lift.eigenvalues) == sorted(str(z(5, k)) for k in range(5))
    assert all(m == 1 for _, m in lift.eigenvalues)


# -- classification ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "form,idx,kind,euler",
    [
        (FERMAT, (0,), Kind.EMPTY, 0),
        (FERMAT, (0, 1), Kind.FINITE_POINTS, 5),
        (FERMAT, (0, 1, 2), Kind.CURVE, -10),
        (FERMAT, (0, 1, 2, 3), Kind.SURFACE, 55),
        (FERMAT, (0, 1, 2, 3, 4), Kind.WHOLE, -200),
        (D20_FORM, (0,), Kind.ISOLATED_POINT, 1),
        (D20_FORM, (0, 2), Kind.LINE, 2),
        (D20_FORM, (0, 1), Kind.FINITE_POINTS, 5),
        (D20_FORM, (1, 3, 4), Kind.CURVE, -10),
    ],
)
def test_classify_examples(form, idx, kind, euler):
    cl = classify_stratum(form, e(*idx))
    assert (cl.kind, cl.euler) == (kind, euler)


def test_classify_rejects_plane_in_x():
    form = QuinticForm({(4, 0, 0, 1, 0): 1, (0, 0, 0, 5, 0): 1, (0, 0, 0, 0, 5): 1})
    with pytest.raises(SmoothnessError):
        classify_stratum(form, e(0, 1, 2))


def test_age_requires_normal_eigenvalue():
    fake = FLift(None, identity(), 5, ((ONE, 1), (z(5), 4)), ())
    with pytest.raises(SmoothnessError):
        age(fake, ONE)


def test_age_must_be_integral():
    fake = FLift(None, identity(), 10, ((ONE, 1), (-ONE, 3), (z(5), 1)), ())
    with pytest.raises(ConsistencyError):
        age(fake, ONE)


# -- fixed loci of single elements ---------------------------------------------------------


def test_d20_sign_change_locus():
    locus = fixed_locus(A1, D20_FORM)
    assert locus.euler == -8
    assert locus.kinds() == [("LineInX", 1, 1), ("PlaneQuinticCurve", 1, 1)]


def test_d20_diagonal_fifth_root_locus():
    locus = fixed_locus(A2, D20_FORM)
    assert locus.euler == 10
    assert locus.kinds() == [("FinitePoints", 5, 1), ("FinitePoints", 5, 2)]


def test_identity_locus():
    locus = fixed_locus(identity(), FERMAT)
    assert locus.euler == -200 and locus.kinds() == [("WholeX", 1, 0)]


def test_free_element_has_empty_locus():
    locus = fixed_locus(d(1, z(5), z(5, 2), z(5, 3), z(5, 4)), FERMAT)
    assert locus.is_empty() and locus.euler == 0


def test_order_three_points_have_both_ages():
    form, g = single("ord3_tr2")
    locus = fixed_locus(g, form)
    assert locus.euler == -8
    points = sorted(s.age for s in locus.strata if s.kind == Kind.ISOLATED_POINT)
    assert points == [1, 2]


def test_stratum_record():
    rec = fixed_locus(A1, D20_FORM).strata[0].to_record()
    assert set(rec) == {"label", "dim", "kind", "components", "euler", "age", "basis"}
    assert rec["dim"] == len(rec["basis"])


# -- pairs -----------------------------------------------------------------------------------


def _commuting_pairs(analysis, limit=None):
    t = analysis.table
    pairs = [(g, h) for g in range(1, t.order) for h in range(g + 1, t.order) if t.mult[g][h] == t.mult[h][g]]
    return pairs[:limit] if limit else pairs


def test_pairwise_euler_matches_intersection_oracle_d20(d20):
    for g, h in _commuting_pairs(d20):
        lg, lh = d20.lift(g), d20.lift(h)
        expected = pairwise_euler_by_intersection(lg, lh, d20.form)
        assert pairwise_fixed_euler(lg, lh, d20.form) == expected
        assert pairwise_fixed_euler(lh, lg, d20.form) == expected


def test_pairwise_euler_matches_intersection_oracle_heisenberg(heis):
    for g, h in _commuting_pairs(heis, limit=300):
        lg, lh = heis.lift(g), heis.lift(h)
        assert pairwise_fixed_euler(lg, lh, heis.form) == pairwise_euler_by_intersection(lg, lh, heis.form)


def test_split_rejects_unstable_subspace():
    lh = f_lift(perm_matrix("(12345)"), FERMAT)
    with pytest.raises(ValueError):
        split_subspace(e(0, 1), lh)


def test_split_of_stable_subspace():
    lh = f_lift(A1, D20_FORM)
    parts = split_subspace(e(0, 1), lh)
    assert sorted(len(b) for _, b in parts) == [1, 1]


def test_sign_change_fixes_one_point_of_age_one_stratum(d20):
    g, h = d20.table.index_of(A2), d20.table.index_of(A1)
    stratum = next(s for s in d20.locus(g).strata if s.age == 1)
    assert fixed_points_of_h_in_stratum(d20.lift(h), stratum, d20.lift(g), d20.form) == 1
    assert fixed_points_of_h_in_stratum(d20.lift(g), stratum, d20.lift(g), d20.form) == 5


def test_non_commuting_lift_fixes_nothing(heis):
    t = heis.table
    g = t.index_of(d(1, z(5), z(5, 2), z(5, 3), z(5, 4)))
    h = t.index_of(perm_matrix("(12345)"))
    assert t.mult[g][h] == t.mult[h][g] and not heis.commuting(g, h)
    assert pairwise_fixed_euler(heis.lift(g), heis.lift(h), heis.form) == 0


def test_trace_of_lift_matches_matrix():
    lift = f_lift(A2, D20_FORM)
    assert lift.trace == trace(lift.matrix)
    assert matmul(lift.matrix, identity()) == lift.matrix
