"""Ladder diagrams and ladder quivers.

The ladder diagram of a chain of Grassmannian steps is a union of
truncated grids of unit boxes; a two-branch quiver glues a second
diagram rotated by 180 degrees about the corner of the vertex-1 block.
The ladder quiver has the marked lattice points as vertices and the
monotone marked-point-avoiding lattice paths as arrows.
"""

from .quivers import (NotYShaped, QuiverError, vertex_stats,
                      is_fano_certificate, y_shape_decompose)


class NotFano(QuiverError):
    pass


class LadderDiagram:
    """Boxes + marked vertices of the ladder construction.

    boxes: frozenset of lower-left corners of unit boxes.
    marked: dict point -> role string ('source', 'external', 'interior',
            'reflex'); externals: dict quiver vertex -> point.
    """

    def __init__(self, q, decomposition, boxes, marked, externals):
        self.quiver = q
        self.decomposition = decomposition
        self.boxes = frozenset(boxes)
        self.marked = dict(marked)
        self.externals = dict(externals)
        self.source = (0, 0)
        self.o1 = externals[1]

    def has_edge(self, p, horizontal):
        """Is the unit grid edge starting at p part of the diagram?"""
        x, y = p
        if horizontal:
            return (x, y) in self.boxes or (x, y - 1) in self.boxes
        return (x, y) in self.boxes or (x - 1, y) in self.boxes

    def section_endpoints(self, i):
        """(start, end) marked vertices whose monotone paths carry the
        sections of L_i: source->v_i on branch 1, v_i->O_1 on branch 2."""
        if i == 1 or self.decomposition.branch_of(i) == 1:
            return self.source, self.externals[i]
        return self.externals[i], self.o1


class LadderQuiver:
    """Marked vertices + monotone path arrows of a ladder diagram."""

    def __init__(self, diagram, vertices, arrows):
        self.diagram = diagram
        self.vertices = tuple(vertices)          # ordered marked points
        self.arrows = tuple(arrows)              # (src, dst, support) tuples
        self.vertex_index = {v: k for k, v in enumerate(self.vertices)}

    def arrows_from(self, v):
        return [a for a in self.arrows if a[0] == v]

    def arrows_into(self, v):
        return [a for a in self.arrows if a[1] == v]


def _grassmannian_boxes(width, height):
    return {(x, y) for x in range(width) for y in range(height)}


def _branch_boxes(q, st, chain):
    """Boxes of the single-branch (chain) ladder in upright coordinates.

    chain is the ordered list of quiver vertices 0 -> i1 -> i2 -> ...
    (source omitted).  Later blocks are truncated under earlier ones:
    boxes with x <= tilde_s_j - r_j - 1 must have y < r_j for every
    earlier chain vertex j.
    """
    boxes = set()
    earlier = []
    for i in chain:
        w = st.tilde_s[i] - q.r(i)
        h = q.r(i)
        blk = _grassmannian_boxes(w, h)
        for (jw, jh) in earlier:
            blk = {(x, y) for (x, y) in blk if x > jw - 1 or y < jh}
        boxes |= blk
        earlier.append((w, h))
    return boxes


def _rotate_point(p, pivot):
    return (pivot[0] - p[0], pivot[1] - p[1])


def _rotate_box(b, pivot):
    return (pivot[0] - b[0] - 1, pivot[1] - b[1] - 1)


def build_ladder(q, branch1_leaf=None):
    """Build the ladder diagram of a Fano Y-shaped quiver."""
    dec = y_shape_decompose(q, branch1_leaf=branch1_leaf)
    if not is_fano_certificate(q):
        raise NotFano("quiver fails the Fano certificate s_i > s'_i")
    st = vertex_stats(q)
    pivot = (st.tilde_s[1] - q.r(1), q.r(1))

    boxes1 = _branch_boxes(q, st, dec.branch1)
    boxes = set(boxes1)
    if not dec.single_branch:
        boxes2 = _branch_boxes(q, st, dec.branch2)
        boxes |= {_rotate_box(b, pivot) for b in boxes2}

    externals = {}
    for i in dec.branch1:
        externals[i] = (st.tilde_s[i] - q.r(i), q.r(i))
    for i in dec.branch2[1:]:
        externals[i] = _rotate_point((st.tilde_s[i] - q.r(i), q.r(i)), pivot)
    externals[1] = pivot

    marked = {}
    xs = [b[0] for b in boxes]
    ys = [b[1] for b in boxes]
    for x in range(min(xs), max(xs) + 2):
        for y in range(min(ys), max(ys) + 2):
            cnt = sum((x + dx, y + dy) in boxes
                      for dx in (-1, 0) for dy in (-1, 0))
            if cnt == 4:
                marked[(x, y)] = "interior"
            elif cnt == 3:
                marked[(x, y)] = "reflex"
    for i, p in externals.items():
        marked[p] = "external"
    marked[(0, 0)] = "source"

    ld = LadderDiagram(q, dec, boxes, marked, externals)
    if len(ld.boxes) != st.total_dim:
        raise NotFano(
            "box count %d differs from total dimension %d; input outside "
            "the supported construction" % (len(ld.boxes), st.total_dim))
    return ld


def _monotone_paths(ld, start, end, stop_at_marked):
    """Monotone (up/right) lattice paths start -> end inside the diagram.

    Paths are returned as tuples of lattice points.  When stop_at_marked
    is true, paths whose interior touches a marked vertex are discarded
    (these are the arrows of the ladder quiver).
    """
    out = []
    sx, sy = start
    ex, ey = end
    if ex < sx or ey < sy or start == end:
        return out

    def walk(path):
        p = path[-1]
        if p == end:
            out.append(tuple(path))
            return
        if stop_at_marked and p != start and p in ld.marked:
            return
        x, y = p
        if x < ex and ld.has_edge((x, y), True):
            walk(path + [(x + 1, y)])
        if y < ey and ld.has_edge((x, y), False):
            walk(path + [(x, y + 1)])

    walk([start])
    return out


def build_ladder_quiver(ld):
    """Enumerate arrows: monotone paths between marked vertices whose
    interior avoids marked vertices.  Asserts the toric dimension identity
    #arrows - (#vertices - 1) = total_dim."""
    points = sorted(ld.marked)
    arrows = []
    for a in points:
        for b in points:
            for path in _monotone_paths(ld, a, b, stop_at_marked=True):
                arrows.append((a, b, _path_edges(path)))
    arrows.sort()
    # Source first, then lexicographic.
    vertices = [ld.source] + [p for p in points if p != ld.source]
    lq = LadderQuiver(ld, vertices, arrows)
    total_dim = vertex_stats(ld.quiver).total_dim
    identity = len(arrows) - (len(vertices) - 1)
    if identity != total_dim:
        raise AssertionError(
            "dimension identity failed: %d arrows, %d vertices, total_dim %d"
            % (len(arrows), len(vertices), total_dim))
    return lq


def _path_edges(path):
    """Edges of a lattice path as ((x,y), horizontal?) pairs."""
    edges = []
    for p, n in zip(path, path[1:]):
        edges.append((p, n[0] > p[0]))
    return tuple(edges)


def paths_between(lq, a, b):
    """All directed arrow sequences from marked vertex a to marked vertex b."""
    by_src = {}
    for arr in lq.arrows:
        by_src.setdefault(arr[0], []).append(arr)
    out = []

    def walk(v, acc):
        if v == b and acc:
            out.append(tuple(acc))
            return
        for arr in by_src.get(v, []):
            if arr[1][0] <= b[0] and arr[1][1] <= b[1]:
                walk(arr[1], acc + [arr])

    walk(a, [])
    return out


def section_paths(lq, i):
    """Arrow paths carrying the sections of L_i."""
    start, end = lq.diagram.section_endpoints(i)
    return paths_between(lq, start, end)


class EdgeLabeling:
    """Labels x^(i)_{jk} on the horizontal grid edges of the diagram."""

    def __init__(self, labels):
        self.labels = dict(labels)  # ((x,y), True) -> (i, j, k)

    def label(self, edge):
        return self.labels.get(edge)

    def path_monomial(self, edges):
        """Multiset (sorted tuple) of labels of the horizontal edges."""
        out = []
        for e in edges:
            if e[1]:
                lab = self.labels.get(e)
                if lab is None:
                    raise KeyError("unlabeled horizontal edge %r" % (e,))
                out.append(lab)
        return tuple(sorted(out))


def edge_labels(q, ld):
    """Label every horizontal edge of the diagram.

    Branch-1 strips (vertex i owns x in [X_{i-1}, X_i)): the edge starting
    at (x, y) gets x^(i)_{j,k} with j = X_i - x and k = tilde_s_i - x - y.
    Branch-2 strips are labeled in unrotated coordinates with the mirror
    rule j = x - X_{i-1} + 1, k = x + 1 + y and mapped through the
    rotation.  The shared vertex-1 strip uses the branch-1 rule.
    """
    st = vertex_stats(q)
    dec = ld.decomposition
    labels = {}

    def strip_heights(i):
        return q.r(i)

    X = 0
    for i in dec.branch1:
        Xn = st.tilde_s[i] - q.r(i)
        for x in range(X, Xn):
            for y in range(strip_heights(i) + 1):
                j = Xn - x
                k = st.tilde_s[i] - x - y
                labels[((x, y), True)] = (i, j, k)
        X = Xn

    pivot = (st.tilde_s[1] - q.r(1), q.r(1))
    X = st.tilde_s[1] - q.r(1)
    for i in dec.branch2[1:]:
        Xn = st.tilde_s[i] - q.r(i)
        for x in range(X, Xn):
            for y in range(strip_heights(i) + 1):
                j = x - X + 1
                k = x + 1 + y
                # rotate edge [x, x+1] x {y} -> [px - x - 1, px - x] x {py - y}
                gx = pivot[0] - x - 1
                gy = pivot[1] - y
                labels[((gx, gy), True)] = (i, j, k)
        X = Xn

    # keep only edges present in the diagram
    labels = {e: v for e, v in labels.items() if ld.has_edge(e[0], True)}
    return EdgeLabeling(labels)


def render_ladder(ld, path, lq=None):
    """Render the diagram (and optionally its arrows) to an image file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for (x, y) in ld.boxes:
        ax.add_patch(plt.Rectangle((x, y), 1, 1, fill=False, edgecolor="black"))
    roles = {"source": "tab:red", "external": "tab:blue",
             "interior": "black", "reflex": "black"}
    for p, role in ld.marked.items():
        ax.plot([p[0]], [p[1]], "o", color=roles[role], markersize=6)
    for i, p in ld.externals.items():
        ax.annotate("v%d" % i, p, textcoords="offset points", xytext=(4, 4))
    if lq is not None:
        for (a, b, edges) in lq.arrows:
            xs = [a[0]] + [e[0][0] + (1 if e[1] else 0) for e in edges]
            ys = [a[1]] + [e[0][1] + (0 if e[1] else 1) for e in edges]
            ax.plot(xs, ys, "-", alpha=0.25, color="tab:green")
    ax.set_aspect("equal")
    ax.autoscale()
    ax.margins(0.1)
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
