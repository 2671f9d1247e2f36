import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import d, z
from oracles import naive_class_sizes, naive_closure
from quintic_orbifold.cyclo import ONE, root_of_unity
from quintic_orbifold.errors import GroupCapExceeded
from quintic_orbifold.linalg import as_matrix, identity, matmul, scale
from quintic_orbifold.pgroup import (
    close,
    commutation_scalar,
    element_order,
    normal_closure,
    normalize,
    perm_matrix,
    quotient_diagnostics,
)

CYCLE5 = perm_matrix("(12345)")
D20_GENS = [d(-1, 1, -1, 1, 1), d(z(5), z(5), z(5, 4), z(5, 4), 1), perm_matrix("(13)(24)")]
HEIS_GENS = [d(1, z(5), z(5, 4), z(5, 4), z(5)), CYCLE5]


# -- normal form ----------------------------------------------------------------


def test_normalize_fifth_root_diagonal():
    g = normalize(d(z(5), z(5), z(5, 4), z(5, 4), 1))
    assert g == normalize(d(1, 1, z(5, 3), z(5, 3), z(5, 4)))
    assert g.matrix == d(1, 1, z(5, 3), z(5, 3), z(5, 4))


def test_normalize_sign_diagonal():
    assert normalize(d(-1, -1, 1, 1, 1)).matrix == d(1, 1, -1, -1, -1)


def test_normalize_rejects_singular():
    with pytest.raises(ValueError):
        normalize(d(1, 0, 1, 1, 1))


scalars = st.sampled_from([ONE, -ONE, root_of_unity(5, 2), root_of_unity(3), 2 + root_of_unity(4)])


@given(scalars, st.sampled_from(D20_GENS + HEIS_GENS))
def test_normalize_ignores_scalars_and_is_idempotent(c, a):
    g = normalize(a)
    assert normalize(scale(c, a)) == g
    assert normalize(g.matrix) == g


def test_perm_matrix_convention():
    m = perm_matrix("(123)")
    rows = [next(j for j, x in enumerate(r) if x) for r in m]
    assert rows == [1, 2, 0, 3, 4]
    assert perm_matrix("") == identity()
    for bad in ("(16)", "(11)", "(12)(23)", "12"):
        with pytest.raises(ValueError):
            perm_matrix(bad)


def test_element_orders():
    assert element_order(normalize(CYCLE5)) == 5
    assert element_order(normalize(d(-1, 1, -1, 1, 1))) == 2
    assert element_order(normalize(d(z(5), z(5), z(5), z(5), z(5)))) == 1


def test_infinite_order_rejected():
    with pytest.raises(GroupCapExceeded):
        close([d(2, 1, 1, 1, 1)], cap=100)


def test_group_cap():
    with pytest.raises(GroupCapExceeded):
        close(HEIS_GENS, cap=100)


# -- closure ----------------------------------------------------------------------


def test_d20_order_and_classes():
    t = close(D20_GENS)
    assert t.order == 20
    assert sorted(len(c) for c in t.classes) == sorted([1, 5, 1, 5, 2, 2, 2, 2])


def test_heisenberg_order_and_classes():
    t = close(HEIS_GENS)
    assert t.order == 125
    assert len(t.classes) == 29


def test_empty_generator_list():
    t = close([])
    assert t.order == 1 and t.classes == [(0,)]


@pytest.mark.parametrize("gens,n", [(D20_GENS, 20), (HEIS_GENS, 5)])
def test_closure_matches_naive_oracle(gens, n):
    t = close(gens)
    naive = naive_closure(gens, n)
    assert t.order == len(naive)
    assert sorted(len(c) for c in t.classes) == naive_class_sizes(naive, n)
    for m in naive.values():
        t.index_of(m)


def test_class_equation_and_centralizers():
    t = close(D20_GENS)
    assert sum(len(c) for c in t.classes) == t.order
    for c in t.classes:
        assert len(c) * len(t.centralizer(c[0])) == t.order


def test_multiplication_table_is_consistent():
    t = close(D20_GENS)
    for i in range(t.order):
        for j in range(t.order):
            prod = normalize(matmul(t.elements[i].matrix, t.elements[j].matrix))
            assert t.elements[t.mult[i][j]] == prod


fermat_gens = st.lists(
    st.sampled_from([d(1, z(5), z(5, 4), 1, 1), d(1, 1, z(5), z(5, 4), 1), CYCLE5]),
    min_size=1,
    max_size=3,
)


@given(fermat_gens, st.randoms(use_true_random=False))
def test_generator_order_does_not_matter(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    a, b = close(gens), close(shuffled)
    assert a.order == b.order
    assert sorted(map(len, a.classes)) == sorted(map(len, b.classes))
    assert {a.elements[i] for i in range(a.order)} == {b.elements[i] for i in range(b.order)}


def test_index_of_outside_group():
    t = close(D20_GENS)
    with pytest.raises(KeyError):
        t.index_of(CYCLE5)
    with pytest.raises(KeyError):
        t.index_of(d(z(7), 1, 1, 1, 1))


# -- commutators and quotients ---------------------------------------------------------


def test_commutation_scalar_with_five_cycle():
    g = normalize(d(1, z(5), z(5, 2), z(5, 3), z(5, 4)))
    h = normalize(CYCLE5)
    c = commutation_scalar(g, h)
    assert c in (z(5), z(5, 4))
    assert commutation_scalar(h, g) * c == 1


def test_commutation_scalar_for_commuting_diagonals():
    assert commutation_scalar(normalize(D20_GENS[0]), normalize(D20_GENS[1])) == 1


def test_commutation_scalar_rejects_noncommuting():
    with pytest.raises(ValueError):
        commutation_scalar(normalize(perm_matrix("(12)")), normalize(perm_matrix("(123)")))


def test_d20_abelianization():
    t = close(D20_GENS)
    q = quotient_diagnostics({0}, t)
    assert (q.order, q.is_cyclic, q.abelian_invariants) == (20, False, (2, 2))


def test_heisenberg_abelianization():
    t = close(HEIS_GENS)
    q = quotient_diagnostics({0}, t)
    assert (q.order, q.is_cyclic, q.abelian_invariants) == (125, False, (5, 5))


def test_quotient_by_normal_closure():
    t = close(D20_GENS)
    r = t.index_of(D20_GENS[1])
    n = normal_closure([r], t)
    assert len(n) == 5
    q = quotient_diagnostics(n, t)
    assert q.order == 4 and not q.is_cyclic
    assert quotient_diagnostics(range(t.order), t).is_trivial


def test_quotient_rejects_non_normal():
    t = close(D20_GENS)
    s = t.subgroup([t.index_of(D20_GENS[2])])
    with pytest.raises(ValueError):
        quotient_diagnostics(s, t)


def test_cyclic_quotient_description():
    t = close([as_matrix(d(1, z(5), z(5, 2), z(5, 3), z(5, 4)))])
    q = quotient_diagnostics({0}, t)
    assert q.is_cyclic and q.describe() == "C5"
