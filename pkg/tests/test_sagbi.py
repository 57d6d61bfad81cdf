import itertools

import pytest

from artifact import fixtures, sagbi
from artifact.quivers import validate_quiver
from artifact.sagbi import (SkewTableau, TooLarge, build_matrices,
                            encode_tableau, enumerate_semistandard,
                            initial_term, monomial_products, nonzero_minors,
                            tableau_monomial, term_key, variable_order,
                            verify_binomial_kernels, verify_path_bijection)


def quiver(name):
    return fixtures.get(name).quiver(), fixtures.get(name).branch1_leaf


def test_grassmannian_matrix_is_dense():
    q, _ = quiver("gr42")
    cm = build_matrices(q)
    a1 = cm.matrices[1]
    assert len(a1) == 2 and len(a1[0]) == 4
    for j in range(2):
        for k in range(4):
            assert a1[j][k] == (1, j + 1, k + 1)


def test_gr42_initial_terms_verbatim():
    # the six 2x2 diagonal products x_{1j} x_{2k}
    q, _ = quiver("gr42")
    cm = build_matrices(q)
    terms = {term for _, term in nonzero_minors(cm, 1)}
    assert terms == {
        tuple(sorted([(1, 1, 1), (1, 2, 2)])),
        tuple(sorted([(1, 1, 1), (1, 2, 3)])),
        tuple(sorted([(1, 1, 1), (1, 2, 4)])),
        tuple(sorted([(1, 1, 2), (1, 2, 3)])),
        tuple(sorted([(1, 1, 2), (1, 2, 4)])),
        tuple(sorted([(1, 1, 3), (1, 2, 4)])),
    }


def test_yshaped1_block_structure():
    q, hint = quiver("yshaped1")
    cm = build_matrices(q, branch1_leaf=hint)
    m1 = cm.m1
    assert len(m1) == 5 and len(m1[0]) == 6
    # three fresh rows of branch-1 leaf variables atop the shifted
    # vertex-1 block
    for j in range(3):
        assert all(v is not None and v[0] == 2 for v in m1[j])
    for j in (3, 4):
        assert m1[j][0] is None
        assert all(v is not None and v[0] == 1 for v in m1[j][1:])
    assert m1[3][1] == (1, 1, 1)
    m2 = cm.m2
    assert len(m2) == 7 and len(m2[0]) == 8
    assert cm.column_shift == 6 - 5  # tilde_s at leaf 2 minus tilde_s_1


def test_yshaped2_matrix_shapes():
    q, hint = quiver("yshaped2")
    cm = build_matrices(q, branch1_leaf=hint)
    assert (cm.rows(1), cm.cols(1)) == (3, 6)
    assert (cm.rows(2), cm.cols(2)) == (5, 6)
    assert (cm.rows(3), cm.cols(3)) == (4, 8)
    # A_3 has two leading zero columns in the recycled vertex-1 block
    a3 = cm.matrices[3]
    for j in range(cm.rows(3) - cm.rows(1), cm.rows(3)):
        assert a3[j][0] is None and a3[j][1] is None


def test_diagonal_is_initial_term():
    # oracle: expand each maximal minor fully and take the largest
    # monomial under the declared variable order
    q, _ = quiver("gr42")
    cm = build_matrices(q)
    rank = variable_order(cm)
    a1 = cm.matrices[1]
    for sigma in itertools.combinations(range(1, 5), 2):
        sub = [[a1[r][c - 1] for c in sigma] for r in range(2)]
        terms = sagbi._expand_minor(sub)
        best = min(terms, key=lambda t: term_key(t, rank))
        assert initial_term(cm, 1, sigma) == tuple(sorted(best))


def test_structural_zero_gives_none():
    q, hint = quiver("yshaped1")
    cm = build_matrices(q, branch1_leaf=hint)
    assert initial_term(cm, 2, (1, 2), rows=(4, 5)) is None


def test_large_minor_uses_specialization():
    # Gr(10,1): the single 9x10 matrix exceeds the exact-expansion bound
    q = validate_quiver([[0, 10], [0, 0]], [1, 1])
    cm = build_matrices(q)
    assert cm.rows(1) == 9
    minors = nonzero_minors(cm, 1)
    assert len(minors) == 10


def test_too_large_guard():
    q = validate_quiver([[0, 11], [0, 0]], [1, 1])
    with pytest.raises(TooLarge):
        build_matrices(q)


@pytest.mark.parametrize("name,counts", [
    ("gr42", {1: 6}),
    ("gr52", {1: 10}),
    ("fl5321", {1: 10, 2: 10, 3: 5}),
    ("yshaped1", {1: 10, 2: 6, 3: 21, 4: 8}),
    ("yshaped2", {1: 20, 2: 6, 3: 55, 4: 9}),
])
def test_path_bijection(name, counts):
    q, hint = quiver(name)
    rep = verify_path_bijection(q, branch1_leaf=hint)
    assert rep["ok"], rep
    got = {i: rep["vertices"][i]["minors"] for i in rep["vertices"]}
    assert got == counts
    for i in rep["vertices"]:
        assert rep["vertices"][i]["paths"] == counts[i]


@pytest.mark.parametrize("name,classes,paths", [
    ("gr42", 26, 6),
    ("gr52", 60, 10),
    ("yshaped1", 960, 45),
    ("yshaped2", 3010, 90),
])
def test_binomial_kernels_degree2(name, classes, paths):
    q, hint = quiver(name)
    rep = verify_binomial_kernels(q, 2, branch1_leaf=hint)
    assert rep["ok"], rep["mismatches"][:3]
    assert rep["classes"] == classes
    assert rep["monomials"] == classes
    assert rep["paths"] == paths


def test_binomial_kernels_gr21_no_relations():
    q = validate_quiver([[0, 2], [0, 0]], [1, 1])
    rep = verify_binomial_kernels(q, 3)
    assert rep["ok"]
    assert rep["classes"] == rep["monomials"] == 9


def test_binomial_kernel_degree_guard():
    q, _ = quiver("gr42")
    with pytest.raises(TooLarge):
        verify_binomial_kernels(q, 4)


@pytest.mark.parametrize("deg,count", [(0, 1), (1, 6), (2, 20), (3, 50)])
def test_gr42_semistandard_counts(deg, count):
    q, _ = quiver("gr42")
    n, tabs = enumerate_semistandard(q, deg)
    assert n == count
    assert len(monomial_products(q, deg)) == count
    for t in tabs:
        assert t.is_semistandard()


@pytest.mark.parametrize("deg,count", [
    ({1: 1}, 10), ({2: 1}, 6), ({3: 1}, 21), ({4: 1}, 8),
    ({2: 2}, 21), ({1: 1, 3: 1}, 175), ({1: 1, 2: 1, 4: 1}, 411),
])
def test_yshaped1_semistandard_counts(deg, count):
    q, hint = quiver("yshaped1")
    n, _ = enumerate_semistandard(q, deg, branch1_leaf=hint)
    assert n == count
    assert len(monomial_products(q, deg, branch1_leaf=hint)) == count


WORKED_MONOMIAL = tuple(sorted([
    (2, 1, 1), (2, 2, 2), (2, 3, 3),
    (1, 1, 1), (1, 1, 3), (1, 1, 3), (1, 2, 2), (1, 2, 4), (1, 2, 5),
    (3, 1, 3), (3, 2, 4), (3, 3, 5),
    (4, 1, 6), (4, 2, 7),
]))

WORKED_TABLEAU = SkewTableau(
    [(1,), (2,), (3,)],
    [(2, 4, 4), (3, 5, 6), (4,), (5,), (6,), (7,), (8,)],
    2)


def test_worked_example_roundtrip():
    q, hint = quiver("yshaped1")
    cm = build_matrices(q, branch1_leaf=hint)
    tab = encode_tableau(cm, WORKED_MONOMIAL)
    assert tab == WORKED_TABLEAU
    assert tab.is_semistandard()
    assert tableau_monomial(cm, tab) == WORKED_MONOMIAL
    # it is a product of initial terms at its multidegree and appears in
    # the enumeration
    prods = monomial_products(q, {1: 1, 2: 1, 4: 1}, branch1_leaf=hint)
    assert WORKED_MONOMIAL in prods
    _, tabs = enumerate_semistandard(q, {1: 1, 2: 1, 4: 1},
                                     branch1_leaf=hint)
    assert WORKED_TABLEAU in tabs


def test_encode_decode_identity_on_products():
    q, hint = quiver("yshaped1")
    cm = build_matrices(q, branch1_leaf=hint)
    prods = monomial_products(q, {1: 1, 2: 1}, branch1_leaf=hint)
    assert prods
    for mono in sorted(prods):
        tab = encode_tableau(cm, mono)
        assert tab.is_semistandard()
        assert tableau_monomial(cm, tab) == mono


def test_semistandard_rejects_bad_tableaux():
    assert not SkewTableau([(2, 1)], [], 0).is_semistandard()
    assert not SkewTableau([], [(1, 2), (1, 3)], 0).is_semistandard()
