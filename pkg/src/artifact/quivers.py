"""Acyclic single-source quivers with dimension vectors.

A quiver is stored as an upper triangular adjacency matrix of arrow
multiplicities n_ij (arrows i -> j, i < j) together with a dimension
vector r = (r_0, ..., r_rho) with r_0 = 1.  Vertex 0 is the unique
source.  Inputs are assumed graft-reduced, i.e. the ample cone is the
positive orthant; no grafting or dualizing is performed here.
"""

import json


class QuiverError(ValueError):
    pass


class NotAcyclic(QuiverError):
    pass


class MultipleSources(QuiverError):
    pass


class BadDimensionVector(QuiverError):
    pass


class Disconnected(QuiverError):
    pass


class DegenerateStep(QuiverError):
    pass


class NotYShaped(QuiverError):
    pass


class Quiver:
    """Validated immutable quiver.  Use validate_quiver to construct."""

    def __init__(self, adjacency, dims):
        self.adjacency = tuple(tuple(row) for row in adjacency)
        self.dims = tuple(dims)
        self.vertex_count = len(self.dims)

    @property
    def rho(self):
        return self.vertex_count - 1

    def n(self, i, j):
        return self.adjacency[i][j]

    def r(self, i):
        return self.dims[i]

    def arrows(self):
        """All arrows as (source, target) pairs, multiplicities expanded."""
        out = []
        for i in range(self.vertex_count):
            for j in range(self.vertex_count):
                out.extend([(i, j)] * self.adjacency[i][j])
        return out

    def out_degree(self, i):
        return sum(self.adjacency[i])

    def in_degree(self, j):
        return sum(row[j] for row in self.adjacency)

    def to_json(self):
        return json.dumps(
            {"adjacency": [list(row) for row in self.adjacency],
             "dims": list(self.dims)},
            separators=(",", ":"))

    def __eq__(self, other):
        return (isinstance(other, Quiver)
                and self.adjacency == other.adjacency
                and self.dims == other.dims)

    def __hash__(self):
        return hash((self.adjacency, self.dims))

    def __repr__(self):
        return "Quiver(adjacency=%r, dims=%r)" % (
            [list(r) for r in self.adjacency], list(self.dims))


class VertexStats:
    """Derived per-vertex statistics.

    s[i]       total rank flowing into vertex i
    s_prime[i] total rank flowing out of vertex i
    tilde_s[i] number of directed paths 0 -> i counted with multiplicity
    """

    def __init__(self, s, s_prime, tilde_s, dim_contribution):
        self.s = dict(s)
        self.s_prime = dict(s_prime)
        self.tilde_s = dict(tilde_s)
        self.dim_contribution = dict(dim_contribution)
        self.total_dim = sum(dim_contribution.values())


class YShapeDecomposition:
    """Branch decomposition of a Y-shaped quiver.

    branch1/branch2 are the vertex chains S_1, S_2, both starting with
    vertex 1; branch2 == [1] when the quiver is a single chain.
    """

    def __init__(self, branch1, branch2):
        self.branch1 = tuple(branch1)
        self.branch2 = tuple(branch2)
        self.sprime1 = self.branch1[1:]
        self.sprime2 = self.branch2[1:]
        self.leaf1 = self.branch1[-1]
        self.leaf2 = self.branch2[-1]
        self.single_branch = len(self.branch2) == 1

    def branch_of(self, i):
        """1 or 2; vertex 1 reports branch 2 (it carries the O_1 corner)."""
        if i == 1:
            return 2 if not self.single_branch else 1
        if i in self.branch1:
            return 1
        if i in self.branch2:
            return 2
        raise KeyError(i)


def validate_quiver(adjacency, dims):
    """Validate raw adjacency + dims and return a Quiver.

    Raises NotAcyclic, MultipleSources, BadDimensionVector, Disconnected
    or DegenerateStep.
    """
    nv = len(adjacency)
    if nv == 0:
        raise BadDimensionVector("empty quiver")
    if any(len(row) != nv for row in adjacency):
        raise BadDimensionVector("adjacency matrix is not square")
    if len(dims) != nv:
        raise BadDimensionVector("dims length does not match adjacency size")
    for i in range(nv):
        for j in range(nv):
            e = adjacency[i][j]
            if not isinstance(e, int) or e < 0:
                raise BadDimensionVector("multiplicities must be non-negative integers")
            if e > 0 and i >= j:
                raise NotAcyclic(
                    "arrow %d->%d violates topological order" % (i, j))
    if dims[0] != 1:
        raise BadDimensionVector("r_0 must be 1")
    for i, d in enumerate(dims):
        if not isinstance(d, int) or d <= 0:
            raise BadDimensionVector("r_%d must be a positive integer" % i)
    for j in range(1, nv):
        if all(adjacency[i][j] == 0 for i in range(j)):
            raise MultipleSources("vertex %d has no incoming arrow" % j)
    # Connectivity of the underlying graph.  Every non-source vertex has an
    # in-arrow from a smaller vertex, so this can only fail defensively.
    seen = {0}
    for j in range(1, nv):
        if any(adjacency[i][j] > 0 and i in seen for i in range(j)):
            seen.add(j)
    if len(seen) != nv:
        raise Disconnected("underlying graph is disconnected")
    q = Quiver(adjacency, dims)
    st = vertex_stats(q)
    for i in range(1, nv):
        if st.s[i] <= dims[i]:
            raise DegenerateStep(
                "vertex %d has s_%d = %d <= r_%d = %d" % (i, i, st.s[i], i, dims[i]))
    return q


def quiver_from_json(text):
    data = json.loads(text) if isinstance(text, str) else text
    return validate_quiver(data["adjacency"], data["dims"])


def vertex_stats(q):
    """Compute s_i, s'_i, tilde_s_i and the dimension contributions."""
    s = {}
    s_prime = {}
    tilde_s = {0: 1}
    dim_contribution = {}
    for i in range(1, q.vertex_count):
        s[i] = sum(q.n(j, i) * q.r(j) for j in range(i))
        s_prime[i] = sum(q.n(i, k) * q.r(k) for k in range(i + 1, q.vertex_count))
        tilde_s[i] = sum(q.n(j, i) * tilde_s[j] for j in range(i))
        dim_contribution[i] = q.r(i) * (s[i] - q.r(i))
    del tilde_s[0]
    return VertexStats(s, s_prime, tilde_s, dim_contribution)


def is_fano_certificate(q):
    """True iff s_i > s'_i for every vertex i >= 1 (sufficient certificate)."""
    st = vertex_stats(q)
    return all(st.s[i] > st.s_prime[i] for i in range(1, q.vertex_count))


def y_shape_decompose(q, branch1_leaf=None):
    """Branch decomposition of a Y-shaped quiver.

    The non-source vertices must form at most two chains branching at
    vertex 1, with single arrows between non-source vertices.  By default
    the longer chain becomes branch 1 (ties broken toward the chain whose
    first vertex is smaller); pass branch1_leaf to force the branch
    containing that leaf to be branch 1.
    """
    nv = q.vertex_count
    if nv < 2:
        raise NotYShaped("no non-source vertices")
    for i in range(1, nv):
        internal_out = sum(q.n(i, k) for k in range(i + 1, nv))
        limit = 2 if i == 1 else 1
        if internal_out > limit:
            raise NotYShaped("vertex %d has %d arrows out (max %d)" % (i, internal_out, limit))
        internal_in = sum(q.n(j, i) for j in range(1, i))
        if internal_in > 1:
            raise NotYShaped(
                "vertex %d has %d arrows in from non-source vertices" % (i, internal_in))

    def chain_from(c):
        chain = [c]
        while True:
            nxt = [k for k in range(chain[-1] + 1, nv) if q.n(chain[-1], k) > 0]
            if not nxt:
                return chain
            chain.append(nxt[0])

    children = [k for k in range(2, nv) if q.n(1, k) > 0]
    chains = [chain_from(c) for c in children]
    covered = {1}
    for ch in chains:
        covered.update(ch)
    if covered != set(range(1, nv)):
        raise NotYShaped("vertices %s are not on a branch through vertex 1"
                         % sorted(set(range(1, nv)) - covered))
    if len(chains) == 0:
        return YShapeDecomposition([1], [1])
    if len(chains) == 1:
        return YShapeDecomposition([1] + chains[0], [1])
    a, b = chains
    if branch1_leaf is not None:
        if branch1_leaf == a[-1]:
            pass
        elif branch1_leaf == b[-1]:
            a, b = b, a
        else:
            raise NotYShaped("branch1_leaf %d is not a leaf" % branch1_leaf)
    elif (len(b), a[0]) > (len(a), b[0]):
        a, b = b, a
    return YShapeDecomposition([1] + a, [1] + b)
