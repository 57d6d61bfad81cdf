import pytest
from hypothesis import given, settings, strategies as st

from artifact.quivers import (BadDimensionVector, DegenerateStep,
                              MultipleSources, NotAcyclic, NotYShaped,
                              is_fano_certificate, quiver_from_json,
                              validate_quiver, vertex_stats,
                              y_shape_decompose)


def test_validate_rejects_bad_inputs():
    with pytest.raises(BadDimensionVector):
        validate_quiver([], [])
    with pytest.raises(BadDimensionVector):
        validate_quiver([[0, 1], [0, 0]], [2, 1])
    with pytest.raises(BadDimensionVector):
        validate_quiver([[0, 1], [0, 0]], [1])
    with pytest.raises(NotAcyclic):
        validate_quiver([[0, 1], [1, 0]], [1, 1])
    with pytest.raises(MultipleSources):
        validate_quiver([[0, 2, 0], [0, 0, 0], [0, 0, 0]], [1, 1, 1])
    # s_1 = 1 = r_1 is a degenerate step
    with pytest.raises(DegenerateStep):
        validate_quiver([[0, 1], [0, 0]], [1, 1])


def test_grassmannian_stats():
    q = validate_quiver([[0, 5], [0, 0]], [1, 2])
    stats = vertex_stats(q)
    assert stats.s == {1: 5}
    assert stats.s_prime == {1: 0}
    assert stats.tilde_s == {1: 5}
    assert stats.dim_contribution == {1: 6}
    assert is_fano_certificate(q)


def test_flag_stats():
    q = validate_quiver(
        [[0, 5, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
        [1, 3, 2, 1])
    stats = vertex_stats(q)
    assert stats.s == {1: 5, 2: 3, 3: 2}
    assert stats.s_prime == {1: 2, 2: 1, 3: 0}
    assert stats.tilde_s == {1: 5, 2: 5, 3: 5}
    assert sum(stats.dim_contribution.values()) == 6 + 2 + 1


def test_tilde_s_counts_weighted_paths():
    # tilde_s_i is the number of paths source -> i counted with arrow
    # multiplicities, computed here by direct path enumeration.
    adj = [[0, 2, 1, 0], [0, 0, 3, 1], [0, 0, 0, 1], [0, 0, 0, 0]]
    q = validate_quiver(adj, [1, 1, 1, 1])
    stats = vertex_stats(q)

    def paths(j):
        if j == 0:
            return 1
        return sum(adj[i][j] * paths(i) for i in range(j))

    for i in range(1, 4):
        assert stats.tilde_s[i] == paths(i)


def test_y_shape_decompose_chain():
    q = validate_quiver([[0, 5, 0], [0, 0, 1], [0, 0, 0]], [1, 3, 1])
    dec = y_shape_decompose(q)
    assert dec.single_branch
    assert dec.branch1 == (1, 2)
    assert dec.branch2 == (1,)


def test_y_shape_decompose_two_branches():
    adj = [[0, 5, 1, 2, 1],
           [0, 0, 1, 1, 0],
           [0, 0, 0, 0, 0],
           [0, 0, 0, 0, 1],
           [0, 0, 0, 0, 0]]
    q = validate_quiver(adj, [1, 3, 1, 2, 1])
    dec = y_shape_decompose(q, branch1_leaf=2)
    assert dec.branch1 == (1, 2)
    assert dec.branch2 == (1, 3, 4)
    assert dec.leaf1 == 2 and dec.leaf2 == 4
    assert dec.sprime1 == (2,)
    assert dec.sprime2 == (3, 4)
    # default picks the longer chain as branch 1
    dec2 = y_shape_decompose(q)
    assert dec2.branch1 == (1, 3, 4)


def test_not_y_shaped():
    # three branches out of vertex 1
    adj = [[0, 6, 1, 1, 1],
           [0, 0, 1, 1, 1],
           [0, 0, 0, 0, 0],
           [0, 0, 0, 0, 0],
           [0, 0, 0, 0, 0]]
    q = validate_quiver(adj, [1, 3, 1, 1, 1])
    with pytest.raises(NotYShaped):
        y_shape_decompose(q)


def test_quiver_from_json():
    q = quiver_from_json('{"adjacency": [[0, 4], [0, 0]], "dims": [1, 2]}')
    assert q.vertex_count == 2
    assert q.n(0, 1) == 4


@st.composite
def chain_quivers(draw):
    # chain quivers: single arrows along the chain, extra arrows from the
    # source allowed
    nv = draw(st.integers(min_value=2, max_value=4))
    adj = [[0] * nv for _ in range(nv)]
    dims = [1]
    adj[0][1] = draw(st.integers(min_value=2, max_value=5))
    dims.append(draw(st.integers(min_value=1, max_value=adj[0][1] - 1)))
    for j in range(2, nv):
        adj[j - 1][j] = 1
        adj[0][j] = draw(st.integers(min_value=0, max_value=2))
        s_j = dims[j - 1] + adj[0][j]
        if s_j < 2:
            adj[0][j] += 1
            s_j += 1
        dims.append(draw(st.integers(min_value=1, max_value=s_j - 1)))
    return adj, dims


@settings(max_examples=60, deadline=None)
@given(chain_quivers())
def test_chain_stats_consistency(data):
    adj, dims = data
    try:
        q = validate_quiver(adj, dims)
    except DegenerateStep:
        return
    stats = vertex_stats(q)
    nv = len(dims)
    for i in range(1, nv):
        assert stats.s[i] > dims[i]
        assert stats.tilde_s[i] >= stats.s[i]
        assert stats.dim_contribution[i] == dims[i] * (stats.s[i] - dims[i])
    dec = y_shape_decompose(q)
    assert dec.single_branch
    assert dec.branch1 == tuple(range(1, nv))
