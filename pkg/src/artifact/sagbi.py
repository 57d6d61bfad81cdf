"""Symbolic coordinate matrices and initial-term checks.

Each vertex i of a two-branch quiver carries a matrix A_i whose maximal
minors span the sections of det(S_i^*).  The matrices nest: A_i contains
the predecessor matrix on its branch as a block, fresh variables fill the
remaining rows.  Initial terms of nonzero minors (diagonal monomials
under the branch-compatible variable order) biject with the edge-label
monomials of monotone paths in the ladder diagram, and products of
initial terms are counted by semi-standard skew tableaux.

Variables are tuples (i, j, k) naming x^(i)_{jk}; structural zeros are
None.
"""

import itertools
import random
from math import comb

from .ladder import build_ladder, build_ladder_quiver, edge_labels, section_paths
from .quivers import QuiverError, vertex_stats, y_shape_decompose


class SagbiError(QuiverError):
    pass


class TooLarge(SagbiError):
    pass


_MAX_STEP = 10          # largest allowed tilde_s_i
_MAX_EXPAND = 8         # largest minor expanded symbolically
_PRIME = (1 << 31) - 1  # field size for probabilistic nonvanishing


class CoordinateMatrices:
    """Per-vertex symbolic matrices plus the two assembled branch
    matrices m1 and m2 (which coincide with the leaf matrices)."""

    def __init__(self, q, dec, st, matrices):
        self.quiver = q
        self.decomposition = dec
        self.stats = st
        self.matrices = {i: tuple(tuple(row) for row in m)
                         for i, m in matrices.items()}
        self.m1 = self.matrices[dec.leaf1]
        self.m2 = self.matrices[dec.leaf2]
        # m2 columns are renumbered so that the shared block keeps the
        # column labels it has in m1.
        self.column_shift = st.tilde_s[dec.leaf1] - st.tilde_s[1]
        self._pos1 = _positions(self.m1)
        self._pos2 = _positions(self.m2)

    def matrix(self, i):
        return self.matrices[i]

    def rows(self, i):
        return len(self.matrices[i])

    def cols(self, i):
        return len(self.matrices[i][0])


def _positions(matrix):
    pos = {}
    for r, row in enumerate(matrix):
        for c, v in enumerate(row):
            if v is not None and v not in pos:
                pos[v] = (r + 1, c + 1)
    return pos


def build_matrices(q, branch1_leaf=None):
    """Assemble the nested coordinate matrices of a two-branch quiver."""
    dec = y_shape_decompose(q, branch1_leaf=branch1_leaf)
    st = vertex_stats(q)
    if max(st.tilde_s.values()) > _MAX_STEP:
        raise TooLarge("tilde_s exceeds %d" % _MAX_STEP)

    mats = {}
    r1 = st.tilde_s[1] - q.r(1)
    mats[1] = [[(1, j + 1, k + 1) for k in range(st.tilde_s[1])]
               for j in range(r1)]

    for branch, chain in ((1, dec.branch1), (2, dec.branch2)):
        for prev, i in zip(chain, chain[1:]):
            sub = mats[prev]
            n0 = q.n(0, i)
            nrows = st.tilde_s[i] - q.r(i)
            ncols = st.tilde_s[i]
            new = st.s[i] - q.r(i)
            grid = [[None] * ncols for _ in range(nrows)]
            if branch == 1:
                # fresh rows on top, source columns first
                for j in range(new):
                    for k in range(ncols):
                        grid[j][k] = (i, j + 1, k + 1)
                for rr, row in enumerate(sub):
                    for cc, v in enumerate(row):
                        grid[new + rr][n0 + cc] = v
            else:
                # recycled block on top, fresh rows at the bottom
                for rr, row in enumerate(sub):
                    for cc, v in enumerate(row):
                        grid[rr][cc] = v
                for j in range(new):
                    for k in range(ncols):
                        grid[nrows - new + j][k] = (i, j + 1, k + 1)
            mats[i] = grid

    return CoordinateMatrices(q, dec, st, mats)


def variable_order(cm):
    """Rank every variable; rank 0 is the highest priority.

    Priorities follow the row order of the two assembled matrices:
    branch-1 blocks from the leaf inward, then the vertex-1 block, then
    branch-2 blocks outward to the leaf; inside a block, row-major.
    This is the order under which the diagonal of a nonzero minor is its
    largest term.
    """
    q, st, dec = cm.quiver, cm.stats, cm.decomposition
    rank = {}

    def block(i):
        new = st.s[i] - q.r(i)
        for j in range(1, new + 1):
            for k in range(1, st.tilde_s[i] + 1):
                rank[(i, j, k)] = len(rank)

    for i in reversed(dec.branch1[1:]):
        block(i)
    block(1)
    for i in dec.branch2[1:]:
        block(i)
    return rank


def term_key(term, rank):
    """Sort key under the monomial order: smaller key = larger monomial."""
    return tuple(sorted(rank[v] for v in term))


def _expand_minor(sub):
    """All expansion terms (as variable tuples) of a square symbolic
    matrix whose entries are variables or None.  Signs are irrelevant:
    entries are distinct variables, so no two terms can cancel."""
    k = len(sub)
    terms = []

    def rec(r, used, acc):
        if r == k:
            terms.append(tuple(acc))
            return
        row = sub[r]
        for c in range(k):
            if used & (1 << c) or row[c] is None:
                continue
            acc.append(row[c])
            rec(r + 1, used | (1 << c), acc)
            acc.pop()

    rec(0, 0, [])
    return terms


def _minor_nonzero(sub):
    """Is the determinant of the symbolic matrix not identically zero?

    Up to 8x8 the full expansion decides it exactly; beyond that the
    entries are specialized to random elements of a large prime field
    (three retries), which is probabilistic.
    """
    k = len(sub)
    if k == 0:
        return True
    if k <= _MAX_EXPAND:
        found = [False]

        def rec(r, used):
            if found[0]:
                return
            if r == k:
                found[0] = True
                return
            row = sub[r]
            for c in range(k):
                if not (used & (1 << c)) and row[c] is not None:
                    rec(r + 1, used | (1 << c))

        rec(0, 0)
        return found[0]
    rng = random.Random(0xda7a)
    for _ in range(3):
        vals = {}
        num = []
        for row in sub:
            num.append([0 if v is None else
                        vals.setdefault(v, rng.randrange(1, _PRIME))
                        for v in row])
        if _det_mod(num, _PRIME) != 0:
            return True
    return False


def _det_mod(mat, p):
    n = len(mat)
    mat = [row[:] for row in mat]
    det = 1
    for j in range(n):
        piv = next((i for i in range(j, n) if mat[i][j] % p), None)
        if piv is None:
            return 0
        if piv != j:
            mat[j], mat[piv] = mat[piv], mat[j]
            det = -det
        det = det * mat[j][j] % p
        inv = pow(mat[j][j], p - 2, p)
        for i in range(j + 1, n):
            f = mat[i][j] * inv % p
            if f:
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[j])]
    return det % p


def initial_term(cm, i, sigma, rows=None):
    """Initial term (diagonal monomial) of the minor of A_i on columns
    sigma, or None if the minor is identically zero.

    sigma is a 1-based column set; rows defaults to the top |sigma| rows,
    which for |sigma| = row count is the maximal minor.  The returned
    monomial is a sorted variable tuple.
    """
    matrix = cm.matrices[i]
    sigma = sorted(sigma)
    if rows is None:
        rows = list(range(1, len(sigma) + 1))
    else:
        rows = sorted(rows)
    if len(rows) != len(sigma):
        raise SagbiError("need as many rows as columns")
    diag = []
    for t, (r, c) in enumerate(zip(rows, sigma)):
        v = matrix[r - 1][c - 1]
        if v is None:
            return None
        diag.append(v)
    sub = [[matrix[r - 1][c - 1] for c in sigma] for r in rows]
    if not _minor_nonzero(sub):
        return None
    return tuple(sorted(diag))


def nonzero_minors(cm, i):
    """(sigma, initial term) for every nonzero maximal minor of A_i."""
    nrows = cm.rows(i)
    ncols = cm.cols(i)
    out = []
    for sigma in itertools.combinations(range(1, ncols + 1), nrows):
        term = initial_term(cm, i, sigma)
        if term is not None:
            out.append((sigma, term))
    return out


def _path_label_monomials(q, branch1_leaf=None):
    """Per-vertex sets of edge-label monomials of the section paths."""
    ld = build_ladder(q, branch1_leaf=branch1_leaf)
    lq = build_ladder_quiver(ld)
    labeling = edge_labels(q, ld)
    out = {}
    for i in range(1, q.vertex_count):
        monos = []
        for path in section_paths(lq, i):
            edges = [e for arrow in path for e in arrow[2]]
            monos.append(labeling.path_monomial(edges))
        out[i] = monos
    return out, lq, labeling


def verify_path_bijection(q, branch1_leaf=None):
    """Compare nonzero-minor initial terms of each A_i with the edge
    label monomials of the paths carrying the sections of L_i."""
    cm = build_matrices(q, branch1_leaf=branch1_leaf)
    paths, _, _ = _path_label_monomials(q, branch1_leaf=branch1_leaf)
    report = {"ok": True, "vertices": {}}
    for i in range(1, q.vertex_count):
        minors = nonzero_minors(cm, i)
        minor_set = {term for _, term in minors}
        path_list = paths[i]
        path_set = set(path_list)
        entry = {
            "minors": len(minors),
            "paths": len(path_list),
            "distinct_minor_terms": len(minor_set),
            "distinct_path_terms": len(path_set),
            "match": minor_set == path_set and
            len(minor_set) == len(minors) == len(path_list),
            "mismatches": sorted(minor_set ^ path_set),
        }
        report["vertices"][i] = entry
        if not entry["match"]:
            report["ok"] = False
    return report


def verify_binomial_kernels(q, d, branch1_leaf=None):
    """Group degree <= d path products by arrow support and check the
    grouping agrees with equality of edge-label monomials.

    Two products of sections map to the same Cox monomial exactly when
    their arrow multisets agree; the degeneration claim is that the
    edge-label (initial term) products then agree as well, and differ
    across distinct arrow multisets.
    """
    if d > 3:
        raise TooLarge("degree bound is 3")
    paths, lq, labeling = _path_label_monomials(q, branch1_leaf=branch1_leaf)
    arrow_index = {a: k for k, a in enumerate(lq.arrows)}
    items = []
    for i in range(1, q.vertex_count):
        for path in section_paths(lq, i):
            support = tuple(sorted(arrow_index[a] for a in path))
            edges = [e for arrow in path for e in arrow[2]]
            items.append((support, labeling.path_monomial(edges)))

    by_support = {}
    mismatches = []
    for size in range(1, d + 1):
        for combo in itertools.combinations_with_replacement(items, size):
            support = tuple(sorted(a for s, _ in combo for a in s))
            mono = tuple(sorted(v for _, m in combo for v in m))
            seen = by_support.setdefault(support, mono)
            if seen != mono:
                mismatches.append((support, seen, mono))
    by_mono = {}
    for support, mono in by_support.items():
        other = by_mono.setdefault(mono, support)
        if other != support:
            mismatches.append((mono, other, support))
    return {
        "ok": not mismatches,
        "paths": len(items),
        "classes": len(by_support),
        "monomials": len(by_mono),
        "mismatches": mismatches,
    }


class SkewTableau:
    """Skew tableau encoding of a product of initial terms.

    upper rows hold the column labels taken in the branch-1 rows above
    the shared block; lower rows hold the (shifted) column labels of the
    branch-2 matrix.  indent is the offset of the upper rows.
    """

    def __init__(self, upper, lower, indent):
        self.upper = tuple(tuple(r) for r in upper)
        self.lower = tuple(tuple(r) for r in lower)
        self.indent = indent

    def __eq__(self, other):
        return (self.upper, self.lower, self.indent) == \
            (other.upper, other.lower, other.indent)

    def __hash__(self):
        return hash((self.upper, self.lower, self.indent))

    def __repr__(self):
        return "SkewTableau(%r, %r, %r)" % (self.upper, self.lower,
                                            self.indent)

    def is_semistandard(self):
        """The three defining conditions: upper lengths weakly increase
        and upper columns strictly increase; the junction columns
        strictly increase; lower lengths weakly decrease and lower
        columns strictly increase.  Rows must be weakly increasing."""
        for row in self.upper + self.lower:
            if any(a > b for a, b in zip(row, row[1:])):
                return False
        for a, b in zip(self.upper, self.upper[1:]):
            if len(a) > len(b):
                return False
            if any(x >= y for x, y in zip(a, b)):
                return False
        if self.upper and self.lower:
            last = self.upper[-1]
            first = self.lower[0]
            if len(first) != len(last) + self.indent:
                return False
            for qq, x in enumerate(last):
                if x >= first[qq + self.indent]:
                    return False
        for a, b in zip(self.lower, self.lower[1:]):
            if len(a) < len(b):
                return False
            if any(x >= y for x, y in zip(a, b)):
                return False
        return True


def encode_tableau(cm, monomial):
    """Arrange a multiset of variables into its skew tableau.

    Branch-1 variables above the shared block are placed by their
    position in m1; everything else by its position in m2 with the
    column labels shifted to agree on the shared block.  Rows are
    sorted; the result need not be semi-standard.
    """
    st, dec = cm.stats, cm.decomposition
    a1 = len(cm.m1)
    b = st.tilde_s[1] - cm.quiver.r(1)
    a2 = len(cm.m2)
    upper = [[] for _ in range(a1 - b)]
    lower = [[] for _ in range(a2)]
    for v in monomial:
        if v[0] in dec.sprime1:
            r, c = cm._pos1[v]
            upper[r - 1].append(c)
        else:
            r, c = cm._pos2[v]
            lower[r - 1].append(c + cm.column_shift)
    for row in upper + lower:
        row.sort()
    k1 = len(lower[0]) if lower else 0
    ltop = len(upper[-1]) if upper else 0
    return SkewTableau(upper, lower, k1 - ltop)


def tableau_monomial(cm, tab):
    """Inverse of encode_tableau: read the variables back off the two
    matrices."""
    out = []
    for r, row in enumerate(tab.upper):
        for c in row:
            out.append(cm.m1[r][c - 1])
    for r, row in enumerate(tab.lower):
        for c in row:
            out.append(cm.m2[r][c - 1 - cm.column_shift])
    if any(v is None for v in out):
        raise SagbiError("tableau entry names a structural zero")
    return tuple(sorted(out))


def _normalize_multidegree(q, multidegree):
    if isinstance(multidegree, int):
        multidegree = {1: multidegree}
    deg = {i: 0 for i in range(1, q.vertex_count)}
    for i, d in multidegree.items():
        if i not in deg or d < 0:
            raise SagbiError("bad multidegree entry %r: %r" % (i, d))
        deg[i] = d
    return deg


def _row_domains(cm):
    """Sorted usable column labels per tableau row."""
    st = cm.stats
    b = st.tilde_s[1] - cm.quiver.r(1)
    a1 = len(cm.m1)
    upper = [sorted(c + 1 for c, v in enumerate(cm.m1[p]) if v is not None)
             for p in range(a1 - b)]
    lower = [sorted(c + 1 + cm.column_shift
                    for c, v in enumerate(row) if v is not None)
             for row in cm.m2]
    return upper, lower


def tableau_row_lengths(cm, deg):
    """(upper lengths, lower lengths) forced by a multidegree."""
    q, st, dec = cm.quiver, cm.stats, cm.decomposition
    size = {i: st.tilde_s[i] - q.r(i) for i in range(1, q.vertex_count)}
    b = size[1]
    a1 = size[dec.leaf1]
    a2 = size[dec.leaf2]
    s1p = set(dec.sprime1)
    upper = [sum(deg[i] for i in s1p if size[i] >= a1 - p + 1)
             for p in range(1, a1 - b + 1)]
    d1 = sum(deg[i] for i in s1p)
    lower = [sum(deg[i] for i in deg if i not in s1p and size[i] >= p)
             + (d1 if p <= b else 0)
             for p in range(1, a2 + 1)]
    return upper, lower


def enumerate_semistandard(q, multidegree, branch1_leaf=None):
    """All semi-standard tableaux at a multidegree.

    Returns (count, tableaux).  By the basis property the count equals
    the number of distinct monomials among products of initial terms
    with multidegree[i] factors from A_i.
    """
    cm = build_matrices(q, branch1_leaf=branch1_leaf)
    deg = _normalize_multidegree(q, multidegree)
    ulen, llen = tableau_row_lengths(cm, deg)
    udom, ldom = _row_domains(cm)
    for dom, length in zip(udom + ldom, ulen + llen):
        if comb(len(dom) + length - 1, length) > 200000:
            raise TooLarge("tableau row search space too large")
    indent = (llen[0] if llen else 0) - (ulen[-1] if ulen else 0)

    def rows_for(domain, length, prev, offset):
        """Weakly increasing rows of the given length, strictly above
        prev at positions shifted by offset."""
        for row in itertools.combinations_with_replacement(domain, length):
            if prev is not None and any(
                    prev[t + offset] >= x
                    for t, x in enumerate(row) if 0 <= t + offset < len(prev)):
                continue
            yield row

    results = []

    def walk_lower(p, acc_upper, acc_lower):
        if p == len(llen):
            tab = SkewTableau(acc_upper, acc_lower, indent)
            if tab.is_semistandard():
                results.append(tab)
            return
        prev = acc_lower[-1] if acc_lower else (
            acc_upper[-1] if acc_upper else None)
        offset = -indent if (not acc_lower and acc_upper) else 0
        for row in rows_for(ldom[p], llen[p], prev, offset):
            walk_lower(p + 1, acc_upper, acc_lower + [row])

    def walk_upper(p, acc):
        if p == len(ulen):
            walk_lower(0, acc, [])
            return
        prev = acc[-1] if acc else None
        for row in rows_for(udom[p], ulen[p], prev, 0):
            walk_upper(p + 1, acc + [row])

    walk_upper(0, [])
    return len(results), results


def monomial_products(q, multidegree, branch1_leaf=None):
    """Distinct products of initial terms at a multidegree: the brute
    force oracle for enumerate_semistandard."""
    cm = build_matrices(q, branch1_leaf=branch1_leaf)
    deg = _normalize_multidegree(q, multidegree)
    factor_sets = []
    for i, d in deg.items():
        if d == 0:
            continue
        terms = [t for _, t in nonzero_minors(cm, i)]
        factor_sets.append(list(
            itertools.combinations_with_replacement(terms, d)))
    products = {()}
    for fs in factor_sets:
        products = {tuple(sorted(p + sum(f, ())))
                    for p in products for f in fs}
    return products
