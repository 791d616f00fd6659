"""Exact graded linear algebra over the integers.

Laurent polynomials in q, graded free modules, homogeneous maps, bounded
chain complexes, Smith normal form, integral homology and Gaussian
elimination of complexes.
"""
import itertools
import threading
from math import gcd


class LaurentPoly:
    """Integer Laurent polynomial in q, stored as {exponent: coefficient}."""

    __slots__ = ("_c", "_h")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, v in items:
                if v:
                    c[int(e)] = c.get(int(e), 0) + v
        self._c = {e: v for e, v in c.items() if v}
        self._h = None

    @classmethod
    def monomial(cls, e, c=1):
        return cls({e: c})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError("cannot coerce %r to LaurentPoly" % (x,))

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._c.items()))
        return self._h

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        d = dict(self._c)
        for e, v in other._c.items():
            d[e] = d.get(e, 0) + v
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        other = LaurentPoly.coerce(other)
        d = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                d[e1 + e2] = d.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have inverses")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("only unit monomials have inverses")
            return LaurentPoly({-e * (-k): v ** (-k)})
        out = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, t):
        """Multiply by q^t."""
        return LaurentPoly({e + t: v for e, v in self._c.items()})

    def bar(self):
        """The involution q -> q^-1."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def __call__(self, q):
        return sum(v * q ** e for e, v in self._c.items())

    def degree(self):
        return max(self._c) if self._c else None

    def valuation(self):
        return min(self._c) if self._c else None

    def is_nonnegative(self):
        return all(v > 0 for v in self._c.values())

    def __repr__(self):
        return "LaurentPoly(%s)" % (self.items(),)

    def __str__(self):
        return self.format()

    def format(self, var="q", unicode=False):
        if not self._c:
            return "0"
        sup = str.maketrans("-0123456789", "⁻⁰¹²³⁴⁵⁶⁷⁸⁹")
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = var
            elif unicode:
                mono = var + str(e).translate(sup)
            else:
                mono = "%s^%d" % (var, e)
            a = abs(v)
            body = mono if (a == 1 and mono) else (str(a) + ("*" + mono if mono and not unicode else mono))
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += " %s %s" % (s, b)
        return out

    @classmethod
    def parse(cls, text, var="q"):
        """Parse the output of format() (ascii form)."""
        text = text.replace(" ", "").replace("−", "-")
        if text == "0":
            return cls()
        if text[0] not in "+-":
            text = "+" + text
        terms, cur = [], ""
        for ch in text:
            if ch in "+-" and cur and not cur.endswith("^"):
                terms.append(cur)
                cur = ch
            else:
                cur += ch
        terms.append(cur)
        d = {}
        for t in terms:
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
            if var in t:
                coef, _, rest = t.partition(var)
                coef = coef.rstrip("*")
                c = int(coef) if coef else 1
                e = int(rest[1:]) if rest.startswith("^") else 1
            else:
                c, e = int(t), 0
            d[e] = d.get(e, 0) + sign * c
        return cls(d)


Q = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly()


def qint(k):
    """Balanced quantum integer [k] = q^(k-1) + q^(k-3) + ... + q^(1-k)."""
    if k < 0:
        raise ValueError("qint needs k >= 0, got %d" % k)
    return LaurentPoly({k - 1 - 2 * t: 1 for t in range(k)})


def qfactorial(k):
    out = ONE
    for t in range(1, k + 1):
        out = out * qint(t)
    return out


def qfactorial_binom(n, k):
    """Quantum binomial [n]!/([k]![n-k]!)."""
    if not 0 <= k <= n:
        raise ValueError("qfactorial_binom needs 0 <= k <= n, got (%d, %d)" % (n, k))
    # q-Pascal rule keeps everything polynomial
    row = [ONE]
    for m in range(1, n + 1):
        new = [ONE] * (m + 1)
        for j in range(1, m):
            new[j] = row[j - 1].shift(-(m - j)) + row[j].shift(j)
        row = new
    return row[k]


# ---------------------------------------------------------------- modules

_ids = itertools.count(1)
_id_lock = threading.Lock()


def fresh_id():
    with _id_lock:
        return next(_ids)


class GradedModule:
    """Graded free Z-module given by a list of (generator id, q-degree)."""

    __slots__ = ("generators", "_deg", "labels")

    def __init__(self, degrees=(), ids=None, labels=None):
        degrees = list(degrees)
        if ids is None:
            ids = [fresh_id() for _ in degrees]
        self.generators = tuple(zip(ids, degrees))
        self._deg = dict(self.generators)
        self.labels = dict(labels) if labels else {}

    def __len__(self):
        return len(self.generators)

    def ids(self):
        return [g for g, _ in self.generators]

    def degree(self, g):
        return self._deg[g]

    def index(self):
        return {g: t for t, (g, _) in enumerate(self.generators)}

    def graded_dimension(self):
        return LaurentPoly([(d, 1) for _, d in self.generators])

    def shift(self, t):
        """Same generators with all degrees raised by t (fresh ids)."""
        return GradedModule([d + t for _, d in self.generators])

    def restrict(self, keep):
        keep = set(keep)
        gens = [(g, d) for g, d in self.generators if g in keep]
        return GradedModule([d for _, d in gens], [g for g, _ in gens],
                            {g: l for g, l in self.labels.items() if g in keep})

    def __repr__(self):
        return "GradedModule(%s)" % (self.graded_dimension(),)


class GradedMap:
    """Homogeneous map of graded free modules with sparse integer entries.

    entries maps (target id, source id) to a nonzero integer.
    """

    __slots__ = ("source", "target", "degree", "entries")

    def __init__(self, source, target, entries=None, degree=0, check=True):
        self.source, self.target, self.degree = source, target, degree
        self.entries = {k: v for k, v in (entries or {}).items() if v}
        if check:
            for (t, s), v in self.entries.items():
                if target.degree(t) != source.degree(s) + degree:
                    raise ValueError("entry (%r, %r) breaks homogeneity" % (t, s))

    @classmethod
    def from_dense(cls, source, target, rows, degree=0):
        ti, si = target.ids(), source.ids()
        ent = {}
        for a, row in enumerate(rows):
            for b, v in enumerate(row):
                if v:
                    ent[(ti[a], si[b])] = v
        return cls(source, target, ent, degree)

    def dense(self):
        ti, si = self.target.index(), self.source.index()
        out = [[0] * len(self.source) for _ in range(len(self.target))]
        for (t, s), v in self.entries.items():
            out[ti[t]][si[s]] = v
        return out

    def compose(self, other):
        """self after other."""
        by_mid = {}
        for (m, s), v in other.entries.items():
            by_mid.setdefault(m, []).append((s, v))
        ent = {}
        for (t, m), v in self.entries.items():
            for s, w in by_mid.get(m, ()):
                ent[(t, s)] = ent.get((t, s), 0) + v * w
        return GradedMap(other.source, self.target, ent, self.degree + other.degree, check=False)

    def is_zero(self):
        return not self.entries

    def block(self, q):
        """Dense block from source degree q to target degree q + degree."""
        src = [g for g, d in self.source.generators if d == q]
        tgt = [g for g, d in self.target.generators if d == q + self.degree]
        si = {g: t for t, g in enumerate(src)}
        ti = {g: t for t, g in enumerate(tgt)}
        out = [[0] * len(src) for _ in tgt]
        for (t, s), v in self.entries.items():
            if s in si and t in ti:
                out[ti[t]][si[s]] = v
        return out


class GradedComplex:
    """Bounded complex of graded free modules; d[h] goes from C[h] to C[h+1]."""

    def __init__(self, objects, differentials=None, check=True):
        self.objects = {h: M for h, M in objects.items() if len(M)}
        self.differentials = {}
        for h, f in (differentials or {}).items():
            if h in self.objects and h + 1 in self.objects and f.entries:
                self.differentials[h] = f
        if check:
            self.check()

    def degrees(self):
        return sorted(self.objects)

    def d(self, h):
        if h in self.differentials:
            return self.differentials[h]
        src = self.objects.get(h, GradedModule())
        tgt = self.objects.get(h + 1, GradedModule())
        return GradedMap(src, tgt, {}, 0, check=False)

    def check(self):
        for h, f in self.differentials.items():
            if f.source is not self.objects[h] or f.target is not self.objects[h + 1]:
                raise ValueError("differential %d has mismatched modules" % h)
            if f.degree != 0:
                raise ValueError("differential %d has q-degree %d" % (h, f.degree))
        for h in self.differentials:
            if h + 1 in self.differentials:
                if not self.differentials[h + 1].compose(self.differentials[h]).is_zero():
                    raise StructuralError("d o d != 0 at homological degree %d" % h)

    def euler_characteristic(self):
        out = ZERO
        for h, M in self.objects.items():
            p = M.graded_dimension()
            out = out + (p if h % 2 == 0 else -p)
        return out

    def shifted(self, dh=0, dq=0):
        objs, remap = {}, {}
        for h, M in self.objects.items():
            N = M.shift(dq)
            objs[h + dh] = N
            remap.update(zip(M.ids(), N.ids()))
        diffs = {}
        for h, f in self.differentials.items():
            ent = {(remap[t], remap[s]): v for (t, s), v in f.entries.items()}
            diffs[h + dh] = GradedMap(objs[h + dh], objs[h + dh + 1], ent, 0, check=False)
        return GradedComplex(objs, diffs, check=False)

    def size(self):
        return sum(len(M) for M in self.objects.values())

    def chain_dimensions(self):
        return {h: M.graded_dimension() for h, M in sorted(self.objects.items())}


class StructuralError(Exception):
    """An internal invariant (such as d o d = 0) has been violated."""


# ---------------------------------------------------------------- Smith form

def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(M, transforms=False):
    """Invariant factors of an integer matrix (positive, in divisibility order).

    With transforms=True also returns unimodular U, V with U*M*V = D.
    Pivoting picks the smallest nonzero absolute value in the active block.
    """
    A = [list(map(int, row)) for row in M]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)] if transforms else None
    V = [[int(i == j) for j in range(nc)] for i in range(nc)] if transforms else None

    def row_op(dst, src, c):  # row dst += c * row src
        if c:
            ra, rb = A[dst], A[src]
            for k in range(nc):
                if rb[k]:
                    ra[k] += c * rb[k]
            if U is not None:
                ua, ub = U[dst], U[src]
                for k in range(nr):
                    if ub[k]:
                        ua[k] += c * ub[k]

    def col_op(dst, src, c):  # col dst += c * col src
        if c:
            for row in A:
                if row[src]:
                    row[dst] += c * row[src]
            if V is not None:
                for row in V:
                    if row[src]:
                        row[dst] += c * row[src]

    factors = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            row = A[i]
            for j in range(t, nc):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            _swap_rows(A, i, t)
            if U is not None:
                _swap_rows(U, i, t)
        if j != t:
            _swap_cols(A, j, t)
            if V is not None:
                _swap_cols(V, j, t)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    row_op(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    col_op(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder is smaller than the pivot: move it into place
                best = None
                for i in range(t, nr):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, nc):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                if i != t:
                    _swap_rows(A, i, t)
                    if U is not None:
                        _swap_rows(U, i, t)
                if j != t:
                    _swap_cols(A, j, t)
                    if V is not None:
                        _swap_cols(V, j, t)
                continue
            # pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
        factors.append(A[t][t])
        t += 1
    if transforms:
        return factors, U, A, V
    return factors


def invariant_factors_sparse(rows, ncols=None):
    """Invariant factors of a sparse matrix given as {row: {col: value}}.

    Unit pivots are eliminated sparsely first; the remainder goes to the dense
    routine.
    """
    R = {r: dict(c) for r, c in rows.items() if c}
    cols = {}
    for r, row in R.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    units = 0
    while True:
        piv = None
        for r, row in R.items():
            for c, v in row.items():
                if v in (1, -1):
                    cand = (len(row) * len(cols[c]), r, c)
                    if piv is None or cand < piv:
                        piv = cand
            if piv and piv[0] <= 2:
                break
        if piv is None:
            break
        _, r, c = piv
        prow = R.pop(r)
        u = prow[c]
        for rr in list(cols[c]):
            if rr == r:
                continue
            row = R[rr]
            f = row[c] * u
            for cc, v in prow.items():
                nv = row.get(cc, 0) - f * v
                if nv:
                    if cc not in row:
                        cols[cc].add(rr)
                    row[cc] = nv
                else:
                    if cc in row:
                        del row[cc]
                        cols[cc].discard(rr)
            if not row:
                del R[rr]
        for cc in prow:
            cols[cc].discard(r)
        del cols[c]
        units += 1
    rest_rows = sorted(R)
    rest_cols = sorted({c for row in R.values() for c in row})
    ci = {c: t for t, c in enumerate(rest_cols)}
    dense = [[0] * len(rest_cols) for _ in rest_rows]
    for a, r in enumerate(rest_rows):
        for c, v in R[r].items():
            dense[a][ci[c]] = v
    return [1] * units + smith_normal_form(dense)


def brute_force_invariant_factors(M):
    """Determinantal-divisor oracle: d_k = gcd of k x k minors / gcd of (k-1) minors."""
    from itertools import combinations
    nr = len(M)
    nc = len(M[0]) if nr else 0

    def det(rows, cols):
        sub = [[M[r][c] for c in cols] for r in rows]
        n = len(sub)
        if n == 0:
            return 1
        # fraction-free Bareiss
        a = [row[:] for row in sub]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                sw = next((i for i in range(k + 1, n) if a[i][k]), None)
                if sw is None:
                    return 0
                a[k], a[sw] = a[sw], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    divisors = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in combinations(range(nr), k):
            for cols in combinations(range(nc), k):
                g = gcd(g, det(rows, cols))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def rank_mod_p(rows, nrows, ncols, p=(1 << 61) - 1):
    A = [[v % p for v in row] for row in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], p - 2, p)
        for i in range(r + 1, nrows):
            if A[i][c]:
                f = A[i][c] * inv % p
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
    return r


# ---------------------------------------------------------------- homology

class HomologyTable:
    """Map (i, j) -> (free rank, torsion tuple)."""

    def __init__(self, data=None):
        self.data = {}
        for k, (r, tors) in (data or {}).items():
            tors = tuple(sorted(int(t) for t in tors))
            if r or tors:
                self.data[(int(k[0]), int(k[1]))] = (int(r), tors)
        for k, (r, tors) in self.data.items():
            for a, b in zip(tors, tors[1:]):
                if b % a:
                    raise ValueError("torsion at %r breaks divisibility" % (k,))

    def __eq__(self, other):
        return isinstance(other, HomologyTable) and self.data == other.data

    def __repr__(self):
        return "HomologyTable(%r)" % (dict(sorted(self.data.items())),)

    def items(self):
        return sorted(self.data.items())

    def shifted(self, di, dj):
        return HomologyTable({(i + di, j + dj): v for (i, j), v in self.data.items()})

    def rationalized(self):
        return HomologyTable({k: (r, ()) for k, (r, _) in self.data.items()})

    def poincare(self):
        """{(i, j): free rank}."""
        return {k: r for k, (r, _) in self.data.items() if r}

    def torsion(self):
        return {k: t for k, (_, t) in self.data.items() if t}

    def euler_characteristic(self):
        return LaurentPoly([(j, r if i % 2 == 0 else -r) for (i, j), (r, _) in self.data.items()])

    def to_json(self):
        return [{"i": i, "j": j, "rank": r, "torsion": list(t)} for (i, j), (r, t) in self.items()]

    @classmethod
    def from_json(cls, rows):
        return cls({(r["i"], r["j"]): (r["rank"], r["torsion"]) for r in rows})


def homology(C, ring="Z"):
    """Homology of a graded complex, bidegree by bidegree."""
    if ring not in ("Z", "Q"):
        raise ValueError("ring must be 'Z' or 'Q'")
    C.check()
    qdegs = sorted({d for M in C.objects.values() for _, d in M.generators})
    data = {}
    hs = C.degrees()
    for q in qdegs:
        dims, facs = {}, {}
        for h in hs:
            dims[h] = sum(1 for _, d in C.objects[h].generators if d == q)
        for h in hs:
            f = C.differentials.get(h)
            if f is None:
                facs[h] = []
                continue
            srcset = {g for g, d in f.source.generators if d == q}
            rows = {}
            for (t, s), v in f.entries.items():
                if s in srcset:
                    rows.setdefault(t, {})[s] = v
            facs[h] = invariant_factors_sparse(rows)
        for h in hs:
            rk_out = len(facs.get(h, []))
            rk_in = len(facs.get(h - 1, []))
            free = dims[h] - rk_out - rk_in
            tors = [] if ring == "Q" else [x for x in facs.get(h - 1, []) if x > 1]
            if free < 0:
                raise StructuralError("negative rank; d o d is not zero")
            if free or tors:
                data[(h, q)] = (free, tors)
    return HomologyTable(data)


# ---------------------------------------------------------------- elimination

class _Work:
    """Mutable sparse form of a complex used during elimination."""

    def __init__(self, C):
        self.deg = {}
        self.hom = {}
        self.order = {}
        for h, M in C.objects.items():
            for t, (g, d) in enumerate(M.generators):
                self.deg[g] = d
                self.hom[g] = h
                self.order[g] = (h, t)
        self.labels = {}
        for M in C.objects.values():
            self.labels.update(M.labels)
        self.out = {g: {} for g in self.deg}   # source -> {target: v}
        self.inn = {g: {} for g in self.deg}   # target -> {source: v}
        for f in C.differentials.values():
            for (t, s), v in f.entries.items():
                self.out[s][t] = v
                self.inn[t][s] = v

    def cancel(self, a, b):
        """Cancel the unit entry d(b, a)."""
        u = self.out[a][b]
        if u not in (1, -1):
            raise ValueError("entry is %r, not a unit" % u)
        ins = [(x, v) for x, v in self.inn[b].items() if x != a]   # x -> b
        outs = [(y, v) for y, v in self.out[a].items() if y != b]  # a -> y
        for x, vx in ins:
            f = vx * u
            row = self.out[x]
            for y, vy in outs:
                nv = row.get(y, 0) - f * vy
                if nv:
                    row[y] = nv
                    self.inn[y][x] = nv
                else:
                    row.pop(y, None)
                    self.inn[y].pop(x, None)
        for g in (a, b):
            for y in self.out[g]:
                self.inn[y].pop(g, None)
            for x in self.inn[g]:
                self.out[x].pop(g, None)
            del self.out[g], self.inn[g], self.deg[g], self.hom[g]

    def complex(self):
        objs = {}
        byh = {}
        for g, h in self.hom.items():
            byh.setdefault(h, []).append(g)
        for h, gs in byh.items():
            gs.sort(key=lambda g: self.order[g])
            objs[h] = GradedModule([self.deg[g] for g in gs], gs,
                                   {g: self.labels[g] for g in gs if g in self.labels})
        diffs = {}
        for h in objs:
            if h + 1 not in objs:
                continue
            ent = {}
            for s in objs[h].ids():
                for t, v in self.out[s].items():
                    ent[(t, s)] = v
            diffs[h] = GradedMap(objs[h], objs[h + 1], ent, 0, check=False)
        return GradedComplex(objs, diffs, check=False)


def gaussian_eliminate(C, h, target, source):
    """Cancel the unit entry of d[h] at (target, source); returns a homotopy-equivalent complex."""
    f = C.differentials.get(h)
    v = f.entries.get((target, source), 0) if f else 0
    if v not in (1, -1):
        raise ValueError("entry (%r, %r) of d[%d] is %r, not +-1" % (target, source, h, v))
    W = _Work(C)
    W.cancel(source, target)
    return W.complex()


def find_unit(C):
    """Some (h, target, source) with a +-1 entry, or None."""
    for h in sorted(C.differentials):
        for (t, s), v in C.differentials[h].entries.items():
            if v in (1, -1):
                return h, t, s
    return None


def simplify_complex(C):
    """Cancel unit entries until none is left (greedy, sparsest pivot first)."""
    W = _Work(C)
    while True:
        best = None
        for s, row in W.out.items():
            for t, v in row.items():
                if v in (1, -1):
                    cost = (len(W.inn[t]) - 1) * (len(row) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, s, t)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        W.cancel(best[1], best[2])
    return W.complex()
