"""Exact sparse Laurent polynomials.

Terms are stored as a mapping from integer exponent tuples to nonzero
coefficients (arbitrary-precision integers; rationals may appear in
intermediate results).  On top of the arithmetic the module provides
classical period sequences, Newton polytope statistics, GL(n, Z)
equivalences and one-step mutations.
"""

import itertools
import json
import re
from fractions import Fraction
from math import comb, gcd

from . import exactlp


class LaurentError(ValueError):
    pass


class VariableCountMismatch(LaurentError):
    pass


class NotUnimodular(LaurentError):
    pass


class NotDivisible(LaurentError):
    def __init__(self, power, msg=None):
        self.power = power
        super().__init__(msg or "coefficient of pivot power %d not divisible" % power)


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial in n_vars variables."""

    def __init__(self, n_vars, terms=None):
        self.n_vars = n_vars
        clean = {}
        for e, c in (terms or {}).items():
            if c != 0:
                if len(e) != n_vars:
                    raise VariableCountMismatch(
                        "exponent %r in %d variables" % (e, n_vars))
                clean[tuple(int(x) for x in e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n_vars):
        return cls(n_vars, {})

    @classmethod
    def constant(cls, n_vars, c):
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def variable(cls, n_vars, i, power=1):
        e = [0] * n_vars
        e[i] = power
        return cls(n_vars, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.n_vars, 0)

    def _check(self, other):
        if self.n_vars != other.n_vars:
            raise VariableCountMismatch(
                "%d vs %d variables" % (self.n_vars, other.n_vars))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(self.n_vars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.n_vars, out)

    def __neg__(self):
        return LaurentPolynomial(self.n_vars,
                                 {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(self.n_vars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial(
                self.n_vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) == 1:
                ((e, c),) = self.terms.items()
                if abs(c) != 1:
                    raise LaurentError("cannot invert coefficient %r" % (c,))
                return LaurentPolynomial(
                    self.n_vars,
                    {tuple(x * k for x in e): c if k % 2 else 1})
            raise LaurentError("negative power of a non-monomial")
        result = LaurentPolynomial.constant(self.n_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, LaurentPolynomial)
                and self.n_vars == other.n_vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def __repr__(self):
        return "LaurentPolynomial(%r)" % format_polynomial(self)

    def map_coefficients(self, fn):
        return LaurentPolynomial(self.n_vars,
                                 {e: fn(c) for e, c in self.terms.items()})

    def assert_integral(self):
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise LaurentError("non-integral coefficient %r" % (c,))
                c = c.numerator
            out[e] = c
        return LaurentPolynomial(self.n_vars, out)

    def to_json(self):
        items = sorted(self.terms.items())
        return json.dumps(
            {"n": self.n_vars,
             "terms": [{"e": list(e), "c": str(c)} for e, c in items]},
            separators=(",", ":"))


def from_json(text):
    data = json.loads(text) if isinstance(text, str) else text
    terms = {tuple(t["e"]): int(t["c"]) for t in data["terms"]}
    return LaurentPolynomial(data["n"], terms)


SHORT_NAMES = ("x", "y", "z", "w")


def var_names(n):
    if n <= 4:
        return list(SHORT_NAMES[:n])
    return ["x%d" % (i + 1) for i in range(n)]


_TOKEN = re.compile(r"\s*([A-Za-z]\w*|\d+|\^|\(|\)|/|\+|\-|\*)")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise LaurentError("cannot tokenize %r" % text[pos:])
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_polynomial(text, n_vars=None):
    """Parse the textual sum-of-terms format.

    Terms look like `2 x y/w`, `1/(x y z w)`, `x^2`, `-3`; implicit
    coefficient 1 and implicit exponent 1; whitespace-insensitive.
    """
    toks = _tokenize(text)
    if not toks:
        raise LaurentError("empty polynomial text")

    raw_terms = []  # (coef, {name: exp})
    i = 0

    def parse_term(i):
        coef = 1
        exps = {}
        seen_any = False
        if toks[i].isdigit():
            coef = int(toks[i])
            i += 1
            seen_any = True
        sign = 1
        while i < len(toks) and toks[i] not in ("+", "-"):
            t = toks[i]
            if t == "*":
                i += 1
                continue
            if t == "/":
                sign = -1
                i += 1
                continue
            if t == "(":
                i += 1
                while toks[i] != ")":
                    i = parse_factor(i, exps, sign)
                i += 1
                sign = 1
                continue
            i = parse_factor(i, exps, sign)
            sign = 1
            seen_any = True
        if not seen_any:
            raise LaurentError("empty term")
        return coef, exps, i

    def parse_factor(i, exps, sign):
        name = toks[i]
        if not name[0].isalpha():
            raise LaurentError("expected variable, got %r" % name)
        i += 1
        e = 1
        if i < len(toks) and toks[i] == "^":
            i += 1
            esign = 1
            if toks[i] == "-":
                esign = -1
                i += 1
            e = esign * int(toks[i])
            i += 1
        exps[name] = exps.get(name, 0) + sign * e
        return i

    sign = 1
    while i < len(toks):
        if toks[i] == "+":
            sign = 1
            i += 1
            continue
        if toks[i] == "-":
            sign = -1
            i += 1
            continue
        coef, exps, i = parse_term(i)
        raw_terms.append((sign * coef, exps))
        sign = 1

    names = set()
    for _, exps in raw_terms:
        names.update(exps)
    if n_vars is None:
        if names <= set(SHORT_NAMES):
            n_vars = max(SHORT_NAMES.index(n) for n in names) + 1 if names else 1
            order = var_names(n_vars)
        else:
            idx = []
            for n in names:
                m = re.fullmatch(r"x(\d+)", n)
                if not m:
                    raise LaurentError("unknown variable %r" % n)
                idx.append(int(m.group(1)))
            n_vars = max(idx)
            order = var_names(n_vars)
    else:
        order = var_names(n_vars)
        if not names <= set(order):
            raise VariableCountMismatch(
                "variables %s outside %s" % (sorted(names - set(order)), order))
    pos = {n: k for k, n in enumerate(order)}
    terms = {}
    for coef, exps in raw_terms:
        e = [0] * n_vars
        for n, k in exps.items():
            e[pos[n]] += k
        e = tuple(e)
        terms[e] = terms.get(e, 0) + coef
    return LaurentPolynomial(n_vars, terms)


def format_polynomial(f):
    """Canonical textual form; round-trips through parse_polynomial."""
    if not f.terms:
        return "0"
    names = var_names(f.n_vars)
    parts = []
    for e in sorted(f.terms, reverse=True):
        c = f.terms[e]
        num = []
        den = []
        for k, exp in enumerate(e):
            if exp > 0:
                num.append(names[k] if exp == 1 else "%s^%d" % (names[k], exp))
            elif exp < 0:
                den.append(names[k] if exp == -1 else "%s^%d" % (names[k], -exp))
        body = " ".join(num)
        coef = ""
        if abs(c) != 1 or not num:
            coef = str(abs(c))
        head = (coef + " " + body).strip()
        if den:
            if not num and not coef:
                head = "1"
            head += "/" + (den[0] if len(den) == 1 else "(" + " ".join(den) + ")")
        parts.append((c < 0, head))
    out = ""
    for neg, head in parts:
        if not out:
            out = ("-" if neg else "") + head
        else:
            out += (" - " if neg else " + ") + head
    return out


class PeriodSequence:
    """Constant terms of f^i for i = 0..N."""

    def __init__(self, coefficients):
        self.coefficients = tuple(coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, PeriodSequence):
            other = other.coefficients
        return self.coefficients == tuple(other)

    def __repr__(self):
        return "PeriodSequence(%r)" % (list(self.coefficients),)


def classical_period(f, N):
    """a_i = constant term of f^i for i = 0..N, by truncated products.

    After multiplying by the i-th factor, an exponent vector survives
    only if each coordinate can still be brought back to zero by the
    remaining N - i factors.
    """
    if N < 0:
        raise LaurentError("N must be >= 0")
    n = f.n_vars
    coeffs = [1]
    if N == 0:
        return PeriodSequence(coeffs)
    if f.is_zero():
        return PeriodSequence([1] + [0] * N)
    lo = [min(e[j] for e in f.terms) for j in range(n)]
    hi = [max(e[j] for e in f.terms) for j in range(n)]

    zero = (0,) * n
    g = {zero: 1}
    for i in range(1, N + 1):
        rem = N - i
        out = {}
        for e1, c1 in g.items():
            for e2, c2 in f.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        g = {e: c for e, c in out.items()
             if c != 0 and all(e[j] + rem * hi[j] >= 0 and e[j] + rem * lo[j] <= 0
                               for j in range(n))}
        coeffs.append(g.get(zero, 0))
    return PeriodSequence(coeffs)


def constant_term_of_power(f, k):
    """Constant term of the full product f^k (untruncated oracle path)."""
    return (f ** k).constant_term()


def _integer_kernel(rows, n):
    """Z-basis of {x in Z^n : rows . x = 0} (saturated by construction).

    Column-style Hermite reduction of the constraint matrix with a
    unimodular transform tracked on the identity.
    """
    A = [list(r) for r in rows]
    m = len(A)
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col(j):
        return [A[i][j] for i in range(m)]

    r = 0
    for i in range(m):
        # clear row i to a single pivot among columns >= r
        while True:
            nz = [j for j in range(r, n) if A[i][j] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda j: abs(A[i][j]))
            p, q = nz[0], nz[1]
            f = A[i][q] // A[i][p]
            for k in range(m):
                A[k][q] -= f * A[k][p]
            for k in range(n):
                U[k][q] -= f * U[k][p]
        nz = [j for j in range(r, n) if A[i][j] != 0]
        if nz:
            j = nz[0]
            if j != r:
                for k in range(m):
                    A[k][j], A[k][r] = A[k][r], A[k][j]
                for k in range(n):
                    U[k][j], U[k][r] = U[k][r], U[k][j]
            r += 1
    return [tuple(U[k][j] for k in range(n)) for j in range(r, n)]


class NewtonPolytope:
    """Exact Newton polytope data of a Laurent polynomial.

    vertices and lattice_points are tuples of exponent vectors in the
    ambient Z^n; dim is the affine dimension; normalized_volume is
    dim! times the euclidean volume in the affine lattice.
    """

    def __init__(self, n_vars, dim, vertices, lattice_points, facets,
                 is_fano, is_terminal, normalized_volume):
        self.n_vars = n_vars
        self.dim = dim
        self.vertices = tuple(vertices)
        self.lattice_points = tuple(lattice_points)
        self.facets = tuple(facets)          # (normal tuple, rhs) with a.x <= b
        self.is_fano = is_fano
        self.is_terminal = is_terminal
        self.normalized_volume = normalized_volume


def _is_vertex(p, others):
    """Is p outside the convex hull of the other points?"""
    if not others:
        return True
    m = len(others)
    n = len(p)
    A = []
    b = []
    for i in range(n):
        row = [q[i] for q in others]
        A.append(row)
        b.append(p[i])
        A.append([-x for x in row])
        b.append(-p[i])
    A.append([1] * m)
    b.append(1)
    A.append([-1] * m)
    b.append(-1)
    for j in range(m):
        row = [0] * m
        row[j] = -1
        A.append(row)
        b.append(0)
    return not exactlp.lp_feasible(A, b)


def _facets(vertices, d):
    """Facet inequalities of a full-dimensional polytope in Z^d."""
    if d == 0:
        return []
    facets = set()
    pts = vertices
    if d == 1:
        lo = min(p[0] for p in pts)
        hi = max(p[0] for p in pts)
        return [((-1,), -lo), ((1,), hi)]
    for sub in itertools.combinations(pts, d):
        # hyperplane through the d points, if affinely independent
        base = sub[0]
        rows = [[q[i] - base[i] for i in range(d)] for q in sub[1:]]
        normal = _integer_kernel(rows, d)
        if len(normal) != 1:
            continue
        a = normal[0]
        g = 0
        for x in a:
            g = gcd(g, x)
        a = tuple(x // g for x in a)
        b = sum(x * y for x, y in zip(a, base))
        vals = [sum(x * y for x, y in zip(a, p)) for p in pts]
        if all(v <= b for v in vals):
            facets.add((a, b))
        elif all(v >= b for v in vals):
            facets.add((tuple(-x for x in a), -b))
    return sorted(facets)


def _count_points(facets, vertices, d, k):
    """Number of lattice points in the k-th dilate."""
    if d == 0:
        return 1
    los = [min(p[i] for p in vertices) * k for i in range(d)]
    his = [max(p[i] for p in vertices) * k for i in range(d)]
    count = 0
    for p in itertools.product(*[range(lo, hi + 1)
                                 for lo, hi in zip(los, his)]):
        if all(sum(a * x for a, x in zip(f[0], p)) <= f[1] * k
               for f in facets):
            count += 1
    return count


def newton_polytope(f):
    if f.is_zero():
        raise LaurentError("Newton polytope of the zero polynomial")
    n = f.n_vars
    pts = sorted(f.terms)
    base = pts[0]
    diffs = [[p[i] - base[i] for i in range(n)] for p in pts]
    complement = _integer_kernel(diffs, n)
    basis = _integer_kernel(complement, n)   # saturated basis of the span
    d = len(basis)
    # coordinates of each point in the affine lattice
    reduced = []
    for p in pts:
        target = [p[i] - base[i] for i in range(n)]
        sol = exactlp.solve_exact([list(b) for b in basis], target) if d else []
        coords = []
        for x in sol:
            if x.denominator != 1:
                raise AssertionError("affine lattice basis is not saturated")
            coords.append(int(x))
        reduced.append(tuple(coords))
    red_set = sorted(set(reduced))
    vtx_red = [p for p in red_set
               if _is_vertex(p, [q for q in red_set if q != p])]
    facets = _facets(vtx_red, d)
    lat_red = []
    if d == 0:
        lat_red = [()]
    else:
        los = [min(p[i] for p in vtx_red) for i in range(d)]
        his = [max(p[i] for p in vtx_red) for i in range(d)]
        for p in itertools.product(*[range(lo, hi + 1)
                                     for lo, hi in zip(los, his)]):
            if all(sum(a * x for a, x in zip(fa[0], p)) <= fa[1]
                   for fa in facets):
                lat_red.append(p)

    def lift(c):
        return tuple(base[i] + sum(c[j] * basis[j][i] for j in range(d))
                     for i in range(n))

    vertices = sorted(lift(c) for c in vtx_red)
    lattice_points = sorted(lift(c) for c in lat_red)

    origin = (0,) * n
    is_fano = False
    if d == n and n > 0:
        zero_red = None
        if origin in lattice_points:
            zero_red = lat_red[lattice_points.index(origin)]
        if zero_red is not None:
            is_fano = all(
                sum(a * x for a, x in zip(fa[0], zero_red)) < fa[1]
                for fa in facets)
    is_terminal = set(lattice_points) <= set(vertices) | {origin}
    counts = [_count_points(facets, vtx_red, d, k) for k in range(d + 1)]
    nvol = sum((-1) ** (d - j) * comb(d, j) * counts[j] for j in range(d + 1))
    return NewtonPolytope(n, d, vertices, lattice_points, facets,
                          is_fano, is_terminal, nvol)


def _det(rows):
    return exactlp.det_int(rows)


def gl_equivalence(f, A):
    """Pullback of f under x_i -> prod_j x_j^(a_ij); exponents map by
    the transpose of A."""
    n = f.n_vars
    if len(A) != n or any(len(r) != n for r in A):
        raise VariableCountMismatch("matrix size does not match %d" % n)
    if abs(_det(A)) != 1:
        raise NotUnimodular("determinant %d" % _det(A))
    out = {}
    for e, c in f.terms.items():
        ne = tuple(sum(A[i][j] * e[i] for i in range(n)) for j in range(n))
        out[ne] = out.get(ne, 0) + c
    return LaurentPolynomial(n, out)


def _divide_exact(p, q):
    """Exact quotient p / q of Laurent polynomials, or None."""
    if q.is_zero():
        raise LaurentError("division by zero")
    if p.is_zero():
        return LaurentPolynomial.zero(p.n_vars)
    n = p.n_vars
    lo = tuple(min(e[j] for e in p.terms) - min(e[j] for e in q.terms)
               for j in range(n))
    hi = tuple(max(e[j] for e in p.terms) - max(e[j] for e in q.terms)
               for j in range(n))
    rem = dict(p.terms)
    quo = {}
    qlead = max(q.terms)
    qc = q.terms[qlead]
    while rem:
        lead = max(rem)
        t = tuple(a - b for a, b in zip(lead, qlead))
        if any(t[j] < lo[j] or t[j] > hi[j] for j in range(n)):
            return None
        c = Fraction(rem[lead], qc)
        if c.denominator == 1:
            c = c.numerator
        quo[t] = c
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(t, e2))
            nv = rem.get(e, 0) - c * c2
            if nv:
                rem[e] = nv
            else:
                rem.pop(e, None)
    return LaurentPolynomial(n, quo)


def mutate(f, h):
    """One-step mutation with pivot x_n: write f = sum_i C_i x_n^i and
    return sum_i h^i C_i x_n^i, requiring h^(-i) | C_i for i < 0."""
    n = f.n_vars
    if h.n_vars != n - 1:
        raise VariableCountMismatch(
            "factor must have %d variables, got %d" % (n - 1, h.n_vars))
    slices = {}
    for e, c in f.terms.items():
        i = e[-1]
        slices.setdefault(i, {})[e[:-1]] = c
    out = {}
    for i, terms in sorted(slices.items()):
        ci = LaurentPolynomial(n - 1, terms)
        if i < 0:
            g = _divide_exact(ci, h ** (-i))
            if g is None:
                raise NotDivisible(i)
            g = g.assert_integral()
        elif i > 0:
            g = ci * (h ** i)
        else:
            g = ci
        for e, c in g.terms.items():
            out[e + (i,)] = out.get(e + (i,), 0) + c
    return LaurentPolynomial(n, out).assert_integral()
