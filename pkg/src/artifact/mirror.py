"""Mirror problems: bundle columns, convex partitions, the substitution
method, and the formal toric complete-intersection period oracle.

A mirror problem is GIT weight data (columns D_1..D_m, stability w)
together with bundle columns L_1..L_k.  A convex partition turns the sum
of all coordinates into a Laurent polynomial after eliminating the basis
variables and normalizing each bundle block; the hypergeometric series
attached to the same data is an independent check on the result.
"""

import itertools
from fractions import Fraction
from math import comb, factorial

from . import exactlp, toricgit
from .laurent import LaurentPolynomial, PeriodSequence
from .ladder import section_paths
from .quivers import vertex_stats


class MirrorError(ValueError):
    pass


class NotFound(MirrorError):
    pass


class NotLaurent(MirrorError):
    pass


class WrongDimension(MirrorError):
    pass


class NonFanoData(MirrorError):
    pass


class NoSplitAvailable(MirrorError):
    pass


class AmpleRemainderViolated(MirrorError):
    pass


class MirrorProblem:
    """Weight columns, stability vector and bundle columns."""

    def __init__(self, weights, stability, bundles, labels=None):
        self.weights = [tuple(c) for c in weights]
        self.stability = tuple(stability)
        self.bundles = [tuple(c) for c in bundles]
        self.rank = len(self.stability)
        self.labels = labels
        for L in self.bundles:
            if not exactlp.cone_member(self.weights, L):
                raise MirrorError(
                    "bundle column %r outside the span of the weights" % (L,))

    @property
    def m(self):
        return len(self.weights)

    @property
    def k(self):
        return len(self.bundles)

    def dimension(self):
        return self.m - self.rank - self.k


def _region_path_exists(ld, a, b):
    """Is there a monotone lattice path a -> b inside the diagram?"""
    if a == b:
        return True
    if b[0] < a[0] or b[1] < a[1]:
        return False
    seen = set()
    stack = [a]
    while stack:
        p = stack.pop()
        if p == b:
            return True
        if p in seen:
            continue
        seen.add(p)
        x, y = p
        if x < b[0] and ld.has_edge((x, y), True):
            stack.append((x + 1, y))
        if y < b[1] and ld.has_edge((x, y), False):
            stack.append((x, y + 1))
    return False


def split_chains(ld, i, r_i):
    """Chains start = m_0 < m_1 < ... < m_{r_i} = end of marked vertices,
    consecutive members joined by monotone paths in the diagram."""
    start, end = ld.section_endpoints(i)
    marked = sorted(ld.marked)
    out = []

    def rec(chain):
        if len(chain) == r_i:
            if _region_path_exists(ld, chain[-1], end):
                out.append(chain + [end])
            return
        for p in marked:
            if p <= chain[-1] or p == end:
                continue
            if (p[0] >= chain[-1][0] and p[1] >= chain[-1][1]
                    and p[0] <= end[0] and p[1] <= end[1]
                    and _region_path_exists(ld, chain[-1], p)):
                rec(chain + [p])

    rec([start])
    return out


def _chain_pieces(gd, chain):
    pieces = []
    for a, b in zip(chain, chain[1:]):
        ea = gd.basis_vector(a)
        eb = gd.basis_vector(b)
        pieces.append(tuple(x - y for x, y in zip(eb, ea)))
    return pieces


def bundle_to_divisors(q, ld, lq, spec):
    """Turn a bundle specification into one column per line-bundle factor.

    spec is a list of summands: {"type": "det", "powers": {i: a_i}} for a
    line bundle, or {"type": "split", "vertex": i, "paths": [...],
    "wedge": j, "powers": {...}} for a tautological split (optionally
    wedged, optionally twisted by a line bundle).  The ample-remainder
    bound (total det-degree at vertex i at most s_i - s'_i - 1) is
    enforced.
    """
    gd = toricgit.git_data(lq)
    st = vertex_stats(q)
    det_class = {i: toricgit.divisor_class(gd, i)
                 for i in range(1, q.vertex_count)}
    columns = []
    for summand in spec:
        kind = summand["type"]
        twist = [0] * gd.rank
        for i_s, a in summand.get("powers", {}).items():
            i = int(i_s)
            if a < 0:
                raise MirrorError("negative det power at vertex %d" % i)
            for t in range(gd.rank):
                twist[t] += a * det_class[i][t]
        if kind == "det":
            columns.append(tuple(twist))
        elif kind == "split":
            i = summand["vertex"]
            r_i = q.r(i)
            if "paths" in summand and summand["paths"]:
                chain = [tuple(p) for p in summand["paths"]]
                start, end = ld.section_endpoints(i)
                if (chain[0] != start or chain[-1] != end
                        or len(chain) != r_i + 1
                        or any(p not in ld.marked for p in chain)
                        or any(not (a < b and _region_path_exists(ld, a, b))
                               for a, b in zip(chain, chain[1:]))):
                    raise NoSplitAvailable(
                        "invalid split chain for vertex %d" % i)
            else:
                chains = split_chains(ld, i, r_i)
                if not chains:
                    raise NoSplitAvailable(
                        "no split of length %d at vertex %d" % (r_i, i))
                chain = min(chains)
            pieces = _chain_pieces(gd, chain)
            wedge = summand.get("wedge")
            if wedge is None:
                groups = [[p] for p in pieces]
            else:
                groups = [list(sub) for sub in
                          itertools.combinations(pieces, wedge)]
            for group in groups:
                col = list(twist)
                for p in group:
                    for t in range(gd.rank):
                        col[t] += p[t]
                columns.append(tuple(col))
        else:
            raise MirrorError("unknown summand type %r" % kind)

    # ample remainder: total class in det coordinates dominated by c_i - 1
    total = [0] * gd.rank
    for col in columns:
        for t in range(gd.rank):
            total[t] += col[t]
    dets = [list(det_class[i]) for i in range(1, q.vertex_count)]
    gamma = exactlp.solve_exact(dets, total)
    if gamma is None:
        raise MirrorError("total bundle class is not a det combination")
    for idx, g in enumerate(gamma):
        i = idx + 1
        c_i = st.s[i] - st.s_prime[i]
        if g.denominator != 1 or g < 0 or g > c_i - 1:
            raise AmpleRemainderViolated(
                "det(%d)-degree %s exceeds %d" % (i, g, c_i - 1))
    return columns


def mirror_problem(q, ld, lq, spec):
    gd = toricgit.git_data(lq)
    columns = bundle_to_divisors(q, ld, lq, spec)
    seed = []
    for i in range(1, q.vertex_count):
        for a in sorted(toricgit.section_arrow_paths(gd, i))[0]:
            if a not in seed:
                seed.append(a)
    return MirrorProblem(gd.weights, gd.stability, columns,
                         labels={"seed": tuple(seed)})


def product_problem(problems):
    """Direct sum of GIT data; bundle columns are supplied separately."""
    rank = sum(p.rank for p in problems)
    weights = []
    offset = 0
    stability = []
    for p in problems:
        for col in p.weights:
            full = [0] * rank
            full[offset:offset + p.rank] = list(col)
            weights.append(tuple(full))
        stability.extend(p.stability)
        offset += p.rank
    return weights, tuple(stability)


class ConvexPartition:
    """B = B0 | B1 basis split, blocks S_0..S_k, distinguished j_i."""

    def __init__(self, b0, b1, blocks, distinguished):
        self.b0 = tuple(sorted(b0))
        self.b1 = tuple(sorted(b1))
        self.blocks = [tuple(sorted(s)) for s in blocks]   # S_0..S_k
        self.distinguished = dict(distinguished)           # i -> j_i

    @property
    def basis(self):
        return tuple(sorted(self.b0 + self.b1))


def check_convex_partition(mp, cp):
    """Replay the definition; raises MirrorError on any violation."""
    m, r, k = mp.m, mp.rank, mp.k
    basis = cp.basis
    if len(basis) != r or len(set(cp.b0) & set(cp.b1)):
        raise MirrorError("B is not a disjoint basis split of size r")
    if abs(exactlp.det_int([list(mp.weights[j]) for j in basis])) != 1:
        raise MirrorError("basis columns are not a lattice basis")
    covered = set(cp.b0)
    for s in cp.blocks:
        if covered & set(s):
            raise MirrorError("partition blocks overlap")
        covered |= set(s)
    if covered != set(range(m)):
        raise MirrorError("partition does not cover the columns")
    if len(cp.blocks) != k + 1:
        raise MirrorError("expected %d blocks, got %d" % (k + 1, len(cp.blocks)))
    for i in range(1, k + 1):
        s = cp.blocks[i]
        total = [0] * r
        for j in s:
            for t in range(r):
                total[t] += mp.weights[j][t]
        if tuple(total) != mp.bundles[i - 1]:
            raise MirrorError("block %d does not sum to L_%d" % (i, i))
        if not exactlp.cone_member([mp.weights[j] for j in cp.b0],
                                   mp.bundles[i - 1]):
            raise MirrorError("L_%d outside the cone of B0" % i)
        j_i = cp.distinguished[i]
        if j_i not in s:
            raise MirrorError("distinguished element of S_%d missing" % i)
        if set(s) - set(cp.b1) and j_i in cp.b1:
            raise MirrorError("distinguished element of S_%d lies in B1" % i)
    return True


def _subsets_summing_to(cols, target, max_size=None):
    """All index subsets with column sum equal to target (sorted)."""
    m = len(cols)
    r = len(target)
    out = []
    limit = max_size if max_size is not None else m

    def rec(start, chosen, acc):
        if acc == tuple(target):
            out.append(frozenset(chosen))
        if start == m or len(chosen) >= limit:
            return
        for j in range(start, m):
            rec(j + 1, chosen + [j],
                tuple(a + b for a, b in zip(acc, cols[j])))

    rec(0, [], (0,) * r)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _unimodular_extensions(cols, b0, pool, r):
    """Yield sorted B1 tuples with {cols[j] : j in B0+B1} a lattice basis."""
    need = r - len(b0)
    base = [list(cols[j]) for j in b0]
    if need == 0:
        if abs(exactlp.det_int(base)) == 1:
            yield ()
        return
    for extra in itertools.combinations(pool, need):
        mat = base + [list(cols[j]) for j in extra]
        if abs(exactlp.det_int(mat)) == 1:
            yield tuple(extra)


def _b0_candidates(cols, r, seed):
    """Independent column subsets, largest first; subsets of the seed
    arrows (the arrows of the representing section paths) are tried
    before generic ones, each group in lexicographic order."""
    m = len(cols)
    seed = [j for j in seed if j < m]
    seen = set()
    for pool in (seed, list(range(m))):
        for size in range(min(r, len(pool)), 0, -1):
            for b0 in itertools.combinations(sorted(pool), size):
                if b0 in seen:
                    continue
                seen.add(b0)
                if exactlp.rank_of(list(zip(*[cols[j] for j in b0]))) == size:
                    yield b0
    yield ()


def find_convex_partition(mp):
    """Backtracking search for a convex partition; NotFound only after
    exhaustive search fails.  Deterministic: B0 candidates largest first
    with section-path arrows preferred, blocks smallest first."""
    m, r, k = mp.m, mp.rank, mp.k
    cols = mp.weights
    seed = ()
    if isinstance(mp.labels, dict):
        seed = mp.labels.get("seed", ())
    all_cands = [_subsets_summing_to(cols, L) for L in mp.bundles]
    if any(not c for c in all_cands):
        raise NotFound("some bundle column has no summing subset")

    for b0 in _b0_candidates(cols, r, seed):
        b0set = set(b0)
        if any(not exactlp.cone_member([cols[j] for j in b0], L)
               for L in mp.bundles):
            continue
        cands = [[s for s in ci if not (s & b0set)] for ci in all_cands]
        if any(not c for c in cands):
            continue

        def disjoint(idx, used, chosen):
            if idx == k:
                yield list(chosen)
                return
            for s in cands[idx]:
                if not (s & used):
                    chosen.append(s)
                    yield from disjoint(idx + 1, used | s, chosen)
                    chosen.pop()

        pool = sorted(set(range(m)) - b0set)
        for combo in disjoint(0, frozenset(), []):
            for b1 in _unimodular_extensions(cols, list(b0), pool, r):
                used = set(b0) | set().union(*combo) if combo else set(b0)
                blocks = [sorted(set(range(m)) - used)] + \
                         [sorted(s) for s in combo]
                distinguished = {}
                ok = True
                for i in range(1, k + 1):
                    s = set(blocks[i])
                    free = sorted(s - set(b1))
                    if free:
                        distinguished[i] = free[0]
                    elif s <= set(b1):
                        distinguished[i] = min(s)
                    else:
                        ok = False
                        break
                if not ok:
                    continue
                cp = ConvexPartition(b0, b1, blocks, distinguished)
                check_convex_partition(mp, cp)
                return cp
    raise NotFound("no convex partition exists for these bundles")


def przyjalkowski(mp, cp):
    """Eliminate basis variables and normalize each bundle block; returns
    the superpotential as a Laurent polynomial in dim(X) variables."""
    import sympy as sp

    check_convex_partition(mp, cp)
    m, r, k = mp.m, mp.rank, mp.k
    cols = mp.weights
    basis = list(cp.basis)
    basis_cols = [list(cols[j]) for j in basis]
    b1 = set(cp.b1)
    block_of = {}
    for i in range(1, k + 1):
        for j in cp.blocks[i]:
            block_of[j] = i

    # un-eliminated symbols
    free = {}
    for j in cp.blocks[0]:
        if j not in b1:
            free[j] = sp.Symbol("u%d" % j, positive=True)
    yvars = {}
    for i in range(1, k + 1):
        for j in cp.blocks[i]:
            if j == cp.distinguished[i]:
                yvars[j] = sp.Integer(1)
            elif j in b1:
                yvars[j] = sp.Symbol("e%d" % j, positive=True)  # eliminated
            else:
                yvars[j] = sp.Symbol("y%d" % j, positive=True)

    T = {i: sum(yvars[j] for j in cp.blocks[i]) for i in range(1, k + 1)}

    def x_expr(j):
        """x_j for j not in the basis."""
        if j in block_of:
            return yvars[j] / T[block_of[j]]
        return free[j] if j not in b1 else None

    # x_b for b in the basis via the monomial relations
    coord = {}
    for j in range(m):
        if j in basis:
            continue
        sol = exactlp.solve_exact(basis_cols, list(cols[j]))
        coord[j] = [int(x) for x in sol]

    def basis_x(b):
        pos = basis.index(b)
        expr = sp.Integer(1)
        for j in range(m):
            if j in basis:
                continue
            e = coord[j][pos]
            if e:
                xe = x_expr(j)
                if xe is None:
                    # j in S_0 and B1: impossible (B1 subset of basis)
                    raise MirrorError("inconsistent partition")
                expr *= xe ** (-e)
        return expr

    # eliminate: for b in B1, x_b (block form) equals the monomial relation
    unknowns = [yvars[b] for b in sorted(b1) if b in block_of
                and yvars[b] != 1]
    equations = []
    for b in sorted(b1):
        rel = basis_x(b)
        if b in block_of:
            if yvars[b] == 1:
                equations.append(sp.Eq(1 / T[block_of[b]], rel))
            else:
                equations.append(sp.Eq(yvars[b] / T[block_of[b]], rel))
        else:
            # b in S_0: x_b is simply given by the relation
            pass
    sol = {}
    if unknowns:
        solved = sp.solve(equations, unknowns, dict=True)
        if not solved:
            raise NotLaurent("cannot eliminate the B1 block variables")
        sol = solved[0]
    elif equations:
        for eq in equations:
            if sp.simplify(eq.lhs - eq.rhs) != 0:
                raise NotLaurent("inconsistent B1 relations")

    W = sp.Integer(0)
    for j in range(m):
        if j in basis:
            W += basis_x(j)
        else:
            W += x_expr(j)
    W = sp.cancel(sp.together(W.subs(sol)))

    num, den = sp.fraction(W)
    num = sp.expand(num)
    symbols = sorted(W.free_symbols, key=lambda s: s.name)
    n = len(symbols)
    if n != mp.dimension():
        raise WrongDimension(
            "output in %d variables, expected %d" % (n, mp.dimension()))
    den_poly = sp.Poly(den, *symbols) if symbols else None
    if den_poly is not None and len(den_poly.terms()) != 1:
        raise NotLaurent("denominator %s is not a monomial" % den)
    if symbols:
        (dexp, dcoef), = den_poly.terms()
    else:
        dexp, dcoef = (), den
    terms = {}
    num_poly = sp.Poly(num, *symbols) if symbols else None
    items = num_poly.terms() if symbols else [((), num)]
    for exp, c in items:
        c = sp.Rational(c) / sp.Rational(dcoef)
        if c.q != 1:
            raise NotLaurent("non-integral coefficient %s" % c)
        e = tuple(int(a) - int(b) for a, b in zip(exp, dexp)) if symbols else ()
        terms[e] = terms.get(e, 0) + int(c)
    # Each block sums to 1 and eliminated coordinates can collapse to
    # constants; the mirror is normalized with zero constant term (the
    # discarded constant corresponds to the exponential factor relating
    # the raw hypergeometric series to the period, cf. toric_ci_period).
    terms.pop((0,) * n, None)
    return LaurentPolynomial(n, terms)


def _network_order(cols, r):
    """Topological coordinate order when every column is e_t or e_t - e_s;
    None when the columns are not such a network or contain a cycle."""
    edges = set()
    for c in cols:
        pos = [i for i in range(r) if c[i] > 0]
        neg = [i for i in range(r) if c[i] < 0]
        if len(pos) != 1 or c[pos[0]] != 1 or len(neg) > 1:
            return None
        if neg:
            if c[neg[0]] != -1:
                return None
            edges.add((neg[0], pos[0]))
    indeg = [0] * r
    for (s, t) in edges:
        indeg[t] += 1
    order = []
    ready = sorted(v for v in range(r) if indeg[v] == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for (s, t) in sorted(edges):
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        ready.sort()
    return order if len(order) == r else None


def toric_ci_period(mp, N):
    """Formal regularized hypergeometric period of the CI data.

    Sums d(beta)! * prod (L_i . beta)! / prod (D_a . beta)! over lattice
    classes beta with all D_a . beta >= 0, all L_i . beta >= 0 and
    d(beta) = (w - sum L_i) . beta <= N.
    """
    r = mp.rank
    cols = mp.weights
    d_vec = [mp.stability[t] - sum(L[t] for L in mp.bundles)
             for t in range(r)]

    # Fano guard: d must be strictly positive on the nonzero cone part
    A = [[-c[t] for t in range(r)] for c in cols]
    b = [0] * len(cols)
    A.append([-sum(c[t] for c in cols) for t in range(r)])
    b.append(-1)
    A.append(list(d_vec))
    b.append(0)
    if exactlp.lp_feasible(A, b):
        raise NonFanoData("degree functional vanishes on the cone")

    cone_rows = [[-c[t] for t in range(r)] for c in cols]
    cone_rhs = [0] * len(cols)

    def coord_range(fixed, t):
        """Exact bounds of beta_t given the fixed prefix."""
        rows = [row[:] for row in cone_rows] + [list(d_vec)]
        rhs = list(cone_rhs) + [N]
        for s, v in enumerate(fixed):
            e = [0] * r
            e[s] = 1
            rows.append(e)
            rhs.append(v)
            rows.append([-x for x in e])
            rhs.append(-v)
        c = [0] * r
        c[t] = 1
        st, hi = exactlp.lp_max(c, rows, rhs)
        if st != exactlp.OPTIMAL:
            if st == exactlp.INFEASIBLE:
                return None
            raise NonFanoData("unbounded coordinate in beta enumeration")
        c[t] = -1
        st, lo = exactlp.lp_max(c, rows, rhs)
        if st != exactlp.OPTIMAL:
            raise NonFanoData("unbounded coordinate in beta enumeration")
        lo = -lo
        import math
        return (math.ceil(lo), math.floor(hi))

    coeffs = [0] * (N + 1)

    def leaf(beta):
        dv = [sum(c[t] * beta[t] for t in range(r)) for c in cols]
        if any(v < 0 for v in dv):
            return
        lv = [sum(L[t] * beta[t] for t in range(r)) for L in mp.bundles]
        if any(v < 0 for v in lv):
            return
        d = sum(d_vec[t] * beta[t] for t in range(r))
        if d < 0 or d > N:
            return
        term = Fraction(factorial(d))
        for v in lv:
            term *= factorial(v)
        for v in dv:
            term /= factorial(v)
        coeffs[d] += term

    def rec(fixed):
        if len(fixed) == r:
            leaf(list(fixed))
            return
        rng = coord_range(fixed, len(fixed))
        if rng is None:
            return
        for v in range(rng[0], rng[1] + 1):
            rec(fixed + (v,))

    order = _network_order(cols, r)
    if order is not None:
        # Columns are arcs e_t - e_s: the cone is the order cone
        # beta_s <= beta_t, 0 <= beta_t at arcs from the implicit source,
        # so enumerate in topological order within global LP bounds.
        below = [[] for _ in range(r)]
        from_source = [False] * r
        for c in cols:
            t = next(i for i in range(r) if c[i] > 0)
            s = next((i for i in range(r) if c[i] < 0), None)
            if s is None:
                from_source[t] = True
            elif s not in below[t]:
                below[t].append(s)
        bounds = []
        for t in range(r):
            rng = coord_range((), t)
            if rng is None:
                rng = (0, -1)
            bounds.append(rng)
        pos_of = {v: p for p, v in enumerate(order)}

        def walk(pos, beta):
            if pos == r:
                leaf([beta[pos_of[t]] for t in range(r)])
                return
            v = order[pos]
            lo = bounds[v][0]
            if from_source[v]:
                lo = max(lo, 0)
            for s in below[v]:
                lo = max(lo, beta[pos_of[s]])
            for val in range(lo, bounds[v][1] + 1):
                walk(pos + 1, beta + [val])

        walk(0, [])
    else:
        rec(())
    raw = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator != 1:
            raise MirrorError("non-integral period coefficient %s" % c)
        raw.append(int(c))
    # Normalize away the exponential factor: the raw series equals the
    # period of a potential shifted by the constant c = raw[1], so the
    # period itself is the inverse binomial shift (its linear term is 0).
    c = raw[1] if N >= 1 else 0
    out = []
    for d in range(N + 1):
        out.append(sum(comb(d, t) * (-c) ** t * raw[d - t]
                       for t in range(d + 1)))
    return PeriodSequence(out)
