"""GIT data of the toric variety attached to a ladder quiver.

The torus character lattice has one basis vector per non-source marked
vertex; every arrow a contributes the weight column D_a = -e_{s(a)} +
e_{t(a)} and the stability vector is the column sum.  Meanders (path
systems with tree union) index the minimal anti-cones, and explicit
per-cone support functions certify that the divisors D_i are Cartier.
"""

import itertools

from . import exactlp
from .ladder import section_paths
from .quivers import vertex_stats


class GitError(ValueError):
    pass


class RankDeficient(GitError):
    pass


class AnticanonicalMismatch(GitError):
    pass


class NotCartier(GitError):
    pass


class TooLarge(GitError):
    pass


class ToricGitData:
    def __init__(self, lq, rank, weights, stability, arrow_ends, coord_of):
        self.ladder_quiver = lq
        self.rank = rank
        self.weights = tuple(tuple(w) for w in weights)
        self.stability = tuple(stability)
        self.arrow_ends = tuple(arrow_ends)   # (src point, tgt point) per arrow
        self.coord_of = dict(coord_of)        # marked point -> coordinate index

    def basis_vector(self, point):
        e = [0] * self.rank
        if point in self.coord_of:
            e[self.coord_of[point]] = 1
        return tuple(e)


def git_data(lq):
    """Weight columns and stability vector of the ladder quiver."""
    vertices = lq.vertices
    coord_of = {v: k - 1 for k, v in enumerate(vertices) if k > 0}
    rank = len(vertices) - 1
    weights = []
    ends = []
    for (a, b, _support) in lq.arrows:
        col = [0] * rank
        if b in coord_of:
            col[coord_of[b]] += 1
        if a in coord_of:
            col[coord_of[a]] -= 1
        weights.append(tuple(col))
        ends.append((a, b))
    if exactlp.rank_of(list(zip(*weights))) < rank:
        raise RankDeficient("weight matrix rank below %d" % rank)
    stability = tuple(sum(col[i] for col in weights) for i in range(rank))
    return ToricGitData(lq, rank, weights, stability, ends, coord_of)


def divisor_of_path(gd, arrows):
    """Class of a set/sequence of arrows (indices into gd.weights)."""
    v = [0] * gd.rank
    for a in arrows:
        col = gd.weights[a]
        for i in range(gd.rank):
            v[i] += col[i]
    return tuple(v)


def _arrow_indices(lq):
    return {arr: k for k, arr in enumerate(lq.arrows)}


def section_arrow_paths(gd, i):
    """Section paths of L_i as tuples of arrow indices."""
    lq = gd.ladder_quiver
    idx = _arrow_indices(lq)
    return [tuple(idx[a] for a in p) for p in section_paths(lq, i)]


def divisor_class(gd, i):
    """Canonical class D_i; also checks path linear equivalence."""
    paths = section_arrow_paths(gd, i)
    classes = {divisor_of_path(gd, p) for p in paths}
    if len(classes) != 1:
        raise GitError("paths to v_%d are not linearly equivalent" % i)
    return classes.pop()


def anticanonical(gd, q):
    """Return the stability vector w, verifying w = sum_i (s_i - s'_i) D_i."""
    st = vertex_stats(q)
    total = [0] * gd.rank
    for i in range(1, q.vertex_count):
        c = st.s[i] - st.s_prime[i]
        d = divisor_class(gd, i)
        for k in range(gd.rank):
            total[k] += c * d[k]
    if tuple(total) != gd.stability:
        raise AnticanonicalMismatch(
            "sum c_i D_i = %r but w = %r" % (tuple(total), gd.stability))
    return gd.stability


class Meander:
    def __init__(self, paths):
        self.paths = dict(paths)                      # vertex i -> arrow index tuple
        self.support = frozenset(a for p in paths.values() for a in p)

    def __eq__(self, other):
        return self.paths == other.paths

    def __hash__(self):
        return hash(tuple(sorted((i, p) for i, p in self.paths.items())))


def _support_is_tree(lq, arrow_idxs):
    edges = set()
    for k in arrow_idxs:
        for e in lq.arrows[k][2]:
            edges.add(e)
    nodes = set()
    adj = {}
    for ((x, y), horiz) in edges:
        a = (x, y)
        b = (x + 1, y) if horiz else (x, y + 1)
        nodes.update((a, b))
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if len(edges) != len(nodes) - 1:
        return False
    seen = set()
    stack = [next(iter(nodes))]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adj[v])
    return len(seen) == len(nodes)


def meanders(lq, q):
    """All path systems (p_i)_{i>=1} whose union of supports is a tree."""
    gd = git_data(lq)
    per_vertex = [section_arrow_paths(gd, i) for i in range(1, q.vertex_count)]
    out = []
    for combo in itertools.product(*per_vertex):
        paths = {i + 1: p for i, p in enumerate(combo)}
        idxs = {a for p in combo for a in p}
        if _support_is_tree(lq, idxs):
            out.append(Meander(paths))
    return out


def minimal_anticones_bruteforce(gd, max_rank=12, max_arrows=32):
    """Inclusion-minimal arrow subsets S with w in Cone(D_a : a in S).

    For small arrow counts this is a pruned subset search with exact cone
    membership tests; for larger inputs it enumerates supports of the
    basic feasible solutions of {lam >= 0 : sum lam_a D_a = w}, which
    coincide with the minimal anti-cones.  The weight matrix is a network
    matrix (each column is e_t - e_s), so the basic solutions are the
    conservative flows supported on spanning trees and the enumeration
    runs in exact integer arithmetic.  Both strategies are independent of
    the meander combinatorics.
    """
    m = len(gd.weights)
    if gd.rank > max_rank or m > max_arrows:
        raise TooLarge("rank %d / %d arrows exceeds guard" % (gd.rank, m))
    if m <= 14:
        return _anticones_subsets(gd)
    return _anticones_network(gd)


def _anticones_subsets(gd):
    m = len(gd.weights)
    externals = gd.ladder_quiver.diagram.externals
    incident = []
    for i, v in externals.items():
        incident.append({k for k, (a, b) in enumerate(gd.arrow_ends)
                         if a == v or b == v})
    w = gd.stability
    found = []
    for size in range(1, gd.rank + 1):
        for S in itertools.combinations(range(m), size):
            sset = set(S)
            if any(f < sset for f in found):
                continue
            if any(not (inc & sset) for inc in incident):
                continue
            if exactlp.cone_member([gd.weights[k] for k in S], w):
                found.append(frozenset(S))
    return sorted(found, key=sorted)


def _anticones_network(gd):
    """Vertex supports of {lam >= 0 : sum lam_a D_a = w} via flow forests.

    The weight matrix is the incidence matrix of the marked-vertex graph,
    so lam is a flow with divergence w at the non-source nodes.  A basic
    feasible solution has independent columns, hence its support is a
    forest using at most one arrow from each parallel class, and the flow
    on a forest is uniquely determined by conservation.  Minimal
    anti-cones are therefore the forests of the collapsed simple graph
    whose unique flow is strictly positive and balanced, expanded by the
    choice of representative arrow in each parallel class.  The forest
    search prunes as soon as all pairs incident to a node are decided and
    the node cannot balance with a positive flow.
    """
    lq = gd.ladder_quiver
    nnode = len(lq.vertices)
    ends = [(lq.vertex_index[s], lq.vertex_index[t]) for (s, t) in gd.arrow_ends]
    div = [0] * nnode
    for k, v in enumerate(lq.vertices):
        if k:
            div[k] = gd.stability[gd.coord_of[v]]
    div[0] = -sum(gd.stability)

    parallel = {}
    for a, e in enumerate(ends):
        parallel.setdefault(e, []).append(a)
    pair_list = sorted(parallel, key=lambda e: (max(e), min(e)))
    npairs = len(pair_list)
    last_pair = [-1] * nnode
    for i, (s, t) in enumerate(pair_list):
        last_pair[s] = max(last_pair[s], i)
        last_pair[t] = max(last_pair[t], i)
    has_new_decided = [False] * npairs
    for v in range(nnode):
        if last_pair[v] >= 0:
            has_new_decided[last_pair[v]] = True

    def partial_ok(chosen, upto):
        """Strip decided nodes (all incident pairs <= upto): a decided
        leaf determines its edge flow, which must be positive; a decided
        isolated node must be balanced.  With upto past the end this is
        the full forest-flow positivity check."""
        need = list(div)
        alive = [[] for _ in range(nnode)]
        for i in chosen:
            s, t = pair_list[i]
            alive[s].append(i)
            alive[t].append(i)
        resolved = set()
        decided = {v for v in range(nnode) if last_pair[v] <= upto}
        progress = True
        while progress:
            progress = False
            for v in sorted(decided):
                live = [i for i in alive[v] if i not in resolved]
                if not live:
                    if need[v] != 0:
                        return False
                    decided.discard(v)
                elif len(live) == 1:
                    i = live[0]
                    s, t = pair_list[i]
                    f = need[v] if t == v else -need[v]
                    if f <= 0:
                        return False
                    resolved.add(i)
                    u = s if t == v else t
                    need[u] -= f if t == u else -f
                    need[v] = 0
                    decided.discard(v)
                    progress = True
        return True

    supports = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i, parent, chosen):
        if i == npairs:
            if chosen and partial_ok(chosen, npairs):
                for combo in itertools.product(
                        *[parallel[pair_list[j]] for j in chosen]):
                    supports.append(frozenset(combo))
            return
        if not has_new_decided[i] or partial_ok(chosen, i):
            rec(i + 1, parent, chosen)
        s, t = pair_list[i]
        rs, rt = find(parent, s), find(parent, t)
        if rs != rt:
            nc = chosen + [i]
            if not has_new_decided[i] or partial_ok(nc, i):
                np = list(parent)
                np[rs] = rt
                rec(i + 1, np, nc)

    rec(0, list(range(nnode)), [])
    return sorted(supports, key=sorted)


def cartier_certificate(gd, meander_list, i, pi_arrows=None):
    """Explicit support function values delta_sigma per meander.

    delta is 0 on arrows in both or neither of (P_i, Pi_i), -1 on arrows
    only in Pi_i, +1 on arrows only in P_i, where P_i is the meander's
    path to v_i and Pi_i the chosen representing path.  Conservation of
    delta as a flow at every non-source marked vertex is verified.
    """
    if pi_arrows is None:
        pi_arrows = sorted(section_arrow_paths(gd, i))[0]
    pi_set = set(pi_arrows)
    certs = []
    for mm in meander_list:
        p_set = set(mm.paths[i])
        delta = {}
        for a in range(len(gd.weights)):
            inp = a in p_set
            inpi = a in pi_set
            delta[a] = 0 if inp == inpi else (1 if inp else -1)
        src = gd.ladder_quiver.diagram.source
        for v in gd.coord_of:
            if v == src:
                continue
            flow = 0
            for a, (s, t) in enumerate(gd.arrow_ends):
                if t == v:
                    flow += delta[a]
                if s == v:
                    flow -= delta[a]
            if flow != 0:
                raise NotCartier(
                    "conservation fails at %r for D_%d on meander %r"
                    % (v, i, sorted(mm.support)))
        certs.append(delta)
    return certs


def gorenstein_check(gd, q):
    """True iff every D_i is Cartier on every maximal cone and the
    anticanonical identity holds."""
    anticanonical(gd, q)
    ms = meanders(gd.ladder_quiver, q)
    for i in range(1, q.vertex_count):
        cartier_certificate(gd, ms, i)
    return True
