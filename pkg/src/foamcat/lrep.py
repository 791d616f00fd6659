"""A localized ladder 2-representation used to realize sl_n foam state spaces.

A 1-morphism is a word of thin ladder generators (kind, i) with 0-based column
index i, listed in the order they are applied.  Acting on the vacuum state of a
weight sequence, the word spans a free module over the fraction field with one
basis vector per path: the sequence of column color-subsets visited while
applying the generators.  Dots multiply by the moved color's variable, and
cups, caps and crossings act by explicit rational weights in those variables.

The variables are specialized to integers and all arithmetic is done modulo a
prime.  Degree-zero pairings of integral elements are integers and are lifted
symmetrically, so every matrix the homology layer sees is exact.

State spaces of closed webs are built by normal ordering: the first applied E
is pushed towards the vacuum, splitting off dotted cups at each same-color
EF exchange, and extracting a lattice summand through the Smith form when the
exchange goes the other way.
"""
import threading
import numpy as np
from scipy import sparse

from .algebra import smith_normal_form

PRIME = 1073741789
_HALF = 1 << 15


def lift(v, p=PRIME):
    """Symmetric integer lift of residues (scalar or array)."""
    v = np.asarray(v, dtype=np.int64) % p
    return np.where(v > p // 2, v - p, v)


def modmat(a, b, p=PRIME):
    """Exact product of dense residue matrices modulo p."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    lo = b % _HALF
    hi = b // _HALF
    r = (a @ hi) % p
    r = (r * _HALF) % p
    return (r + (a @ lo) % p) % p


def t_scalar(i, j):
    if j == i + 1:
        return 1
    if j == i - 1:
        return -1
    return 1


class Op:
    """A 2-morphism between path spaces: matrix (target x source) and its q-degree."""

    __slots__ = ("src", "tgt", "mat", "degree")

    def __init__(self, src, tgt, mat, degree):
        self.src, self.tgt, self.mat, self.degree = src, tgt, mat, degree

    def __matmul__(self, other):
        """self after other."""
        if other.tgt != self.src:
            raise ValueError("composing incompatible 2-morphisms")
        m = (self.mat @ other.mat).tocsr()
        m.data %= PRIME
        return Op(other.src, self.tgt, m, self.degree + other.degree)

    def scale(self, c):
        m = self.mat.copy()
        m.data = (m.data * (c % PRIME)) % PRIME
        return Op(self.src, self.tgt, m, self.degree)

    def __add__(self, other):
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ValueError("adding 2-morphisms with different boundaries")
        m = (self.mat + other.mat).tocsr()
        m.data %= PRIME
        return Op(self.src, self.tgt, m, self.degree)

    def __sub__(self, other):
        return self + other.scale(-1)

    def dense(self):
        return np.asarray(self.mat.todense(), dtype=np.int64) % PRIME

    def is_zero(self):
        m = self.mat.tocsr()
        m.data %= PRIME
        m.eliminate_zeros()
        return m.nnz == 0

    def __eq__(self, other):
        return (self.src, self.tgt) == (other.src, other.tgt) and (self - other).is_zero()


class Space:
    """Integral lattice in a path space: basis columns, dual cobasis rows, degrees."""

    __slots__ = ("word", "basis", "cobasis", "degrees", "moves")

    def __init__(self, word, basis, cobasis, degrees, moves=()):
        self.word = word
        self.basis = basis          # dim x r residues
        self.cobasis = cobasis      # r x dim residues, dual to basis
        self.degrees = list(degrees)
        self.moves = tuple(moves)

    @property
    def rank(self):
        return len(self.degrees)

    def graded_dimension(self):
        from .algebra import LaurentPoly
        d = {}
        for g in self.degrees:
            d[g] = d.get(g, 0) + 1
        return LaurentPoly(d)


class LocalRep:
    """The localized ladder representation for sl_n on m columns."""

    def __init__(self, n, m, xs=None):
        self.n, self.m = n, m
        self.x = [int(v) for v in (xs or [3, 7, 19, 41, 83][:n])]
        if len(set(v % PRIME for v in self.x)) != n:
            raise ValueError("specialized variables must be distinct")
        self._lock = threading.RLock()
        self._paths = {}
        self._ops = {}
        self._spaces = {}

    # ------------------------------------------------------------ combinatorics
    def colors(self, mask):
        return [r for r in range(self.n) if mask >> r & 1]

    def vacuum(self, seq):
        full = (1 << self.n) - 1
        if any(a not in (0, self.n) for a in seq):
            raise ValueError("vacuum needs entries 0 or n")
        return tuple(full if a else 0 for a in seq)

    def step(self, s, g):
        kind, i = g
        src, dst = (i, i + 1) if kind == "E" else (i + 1, i)
        avail = s[src] & ~s[dst]
        out = []
        for r in self.colors(avail):
            t = list(s)
            t[src] ^= 1 << r
            t[dst] |= 1 << r
            out.append((r, tuple(t)))
        return out

    def moved(self, s0, s1, g):
        kind, i = g
        src = i if kind == "E" else i + 1
        d = s0[src] & ~s1[src]
        return d.bit_length() - 1

    def weights(self, word, s0):
        a = [bin(c).count("1") for c in s0]
        out = [tuple(a)]
        for kind, i in word:
            if kind == "E":
                a[i] -= 1
                a[i + 1] += 1
            else:
                a[i] += 1
                a[i + 1] -= 1
            out.append(tuple(a))
        return out

    def paths(self, word, s0):
        """(list of paths, index dict) for a word applied to state s0."""
        key = (word, s0)
        with self._lock:
            hit = self._paths.get(key)
        if hit is not None:
            return hit
        res = []
        stack = [(s0,)]
        L = len(word)
        while stack:
            p = stack.pop()
            if len(p) == L + 1:
                res.append(p)
                continue
            for _, t in self.step(p[-1], word[len(p) - 1]):
                stack.append(p + (t,))
        res.sort()
        idx = {p: k for k, p in enumerate(res)}
        with self._lock:
            self._paths[key] = (res, idx)
        return res, idx

    def dim(self, word, s0):
        return len(self.paths(word, s0)[0])

    # ------------------------------------------------------------ scalars
    def inv(self, v):
        v %= PRIME
        if v == 0:
            raise ZeroDivisionError("degenerate specialization")
        return pow(v, PRIME - 2, PRIME)

    def rho_cw(self, s, i, r):
        A = s[i] & ~s[i + 1]
        B = s[i + 1] & ~s[i]
        x = self.x
        v = 1
        for a in self.colors(A):
            v = v * (x[r] - x[a]) % PRIME
        for b in self.colors(B):
            if b != r:
                v = v * self.inv(x[r] - x[b]) % PRIME
        return v

    def rho_ccw(self, s, i, r):
        A = s[i] & ~s[i + 1]
        B = s[i + 1] & ~s[i]
        x = self.x
        v = 1
        for b in self.colors(B):
            v = v * (x[r] - x[b]) % PRIME
        for a in self.colors(A):
            if a != r:
                v = v * self.inv(x[r] - x[a]) % PRIME
        return v

    def lam(self, a, i):
        return a[i + 1] - a[i]

    # ------------------------------------------------------------ generators
    def _build(self, src, tgt, s0, entries, degree):
        _, sidx = self.paths(src, s0)
        _, tidx = self.paths(tgt, s0)
        rows, cols, vals = [], [], []
        for tp, sp, v in entries:
            v %= PRIME
            if v:
                rows.append(tidx[tp])
                cols.append(sidx[sp])
                vals.append(v)
        m = sparse.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)),
                              shape=(len(tidx), len(sidx)), dtype=np.int64)
        m.data %= PRIME
        return Op((src, s0), (tgt, s0), m, degree)

    def _cached(self, key, fn):
        with self._lock:
            hit = self._ops.get(key)
        if hit is None:
            hit = fn()
            with self._lock:
                self._ops[key] = hit
        return hit

    def identity(self, word, s0):
        def mk():
            ps, _ = self.paths(word, s0)
            return self._build(word, word, s0, [(p, p, 1) for p in ps], 0)
        return self._cached(("id", word, s0), mk)

    def dot(self, word, s0, p):
        """Dot on the strand applied at position p."""
        def mk():
            ps, _ = self.paths(word, s0)
            ent = [(q, q, self.x[self.moved(q[p], q[p + 1], word[p])]) for q in ps]
            return self._build(word, word, s0, ent, 2)
        return self._cached(("dot", word, s0, p), mk)

    def cross(self, word, s0, p):
        """Crossing of the E strands applied at positions p and p+1."""
        def mk():
            g0, g1 = word[p], word[p + 1]
            if g0[0] != "E" or g1[0] != "E":
                raise ValueError("crossings are defined between E strands")
            nw = word[:p] + (g1, g0) + word[p + 2:]
            x = self.x
            ent = []
            for q in self.paths(word, s0)[0]:
                r = self.moved(q[p], q[p + 1], g0)
                s = self.moved(q[p + 1], q[p + 2], g1)
                outs = []
                if g0[1] == g1[1]:
                    d = self.inv(x[r] - x[s])
                    outs = [(r, s, -d), (s, r, d)]
                else:
                    i, j = g1[1], g0[1]
                    if abs(i - j) == 1 and i < j:
                        w = t_scalar(i, j) * x[s] + t_scalar(j, i) * x[r]
                    else:
                        w = 1
                    outs = [(s, r, w)]
                for c0, c1, w in outs:
                    st = q[p]
                    new = []
                    for g, c in ((nw[p], c0), (nw[p + 1], c1)):
                        nxt = None
                        for cc, t2 in self.step(st, g):
                            if cc == c:
                                nxt = t2
                        if nxt is None:
                            break
                        new.append(nxt)
                        st = nxt
                    if len(new) < 2:
                        continue
                    ent.append((q[:p + 1] + tuple(new) + q[p + 3:], q, w))
            if g0[1] == g1[1]:
                deg = -2
            elif abs(g0[1] - g1[1]) == 1:
                deg = 1
            else:
                deg = 0
            return self._build(word, nw, s0, ent, deg)
        return self._cached(("cross", word, s0, p), mk)

    def cup(self, word, s0, p, kind, i):
        """Insert a cup at path position p.

        kind 'EF' inserts (F_i, E_i) in applied order (clockwise), 'FE' inserts
        (E_i, F_i) (counterclockwise).
        """
        def mk():
            gins = (("F", i), ("E", i)) if kind == "EF" else (("E", i), ("F", i))
            nw = word[:p] + gins + word[p:]
            a = self.weights(word, s0)[p]
            L = self.lam(a, i)
            ent = []
            for q in self.paths(word, s0)[0]:
                s = q[p]
                for r, t1 in self.step(s, gins[0]):
                    w = self.rho_cw(s, i, r) if kind == "EF" else 1
                    ent.append((q[:p + 1] + (t1,) + q[p:], q, w))
            deg = 1 - L if kind == "EF" else 1 + L
            return self._build(word, nw, s0, ent, deg)
        return self._cached(("cup", word, s0, p, kind, i), mk)

    def cap(self, word, s0, p):
        """Cap off the adjacent opposite pair at positions p, p+1."""
        def mk():
            g0, g1 = word[p], word[p + 1]
            if g0[1] != g1[1] or g0[0] == g1[0]:
                raise ValueError("cap needs an adjacent E/F pair of one color")
            i = g0[1]
            kind = "EF" if g0[0] == "F" else "FE"
            nw = word[:p] + word[p + 2:]
            a = self.weights(word, s0)[p]
            L = self.lam(a, i)
            ent = []
            for q in self.paths(word, s0)[0]:
                if q[p + 2] != q[p]:
                    continue
                r = self.moved(q[p], q[p + 1], g0)
                w = 1 if kind == "EF" else self.rho_ccw(q[p], i, r)
                ent.append((q[:p + 1] + q[p + 3:], q, w))
            deg = 1 - L if kind == "EF" else 1 + L
            return self._build(word, nw, s0, ent, deg)
        return self._cached(("cap", word, s0, p), mk)

    def side_S1(self, word, s0, p):
        """(F_j at p, E_i at p+1) -> (E_i at p, F_j at p+1)."""
        j = word[p][1]
        a = self.cup(word, s0, p + 2, "FE", j)
        b = self.cross(a.tgt[0], s0, p + 1)
        c = self.cap(b.tgt[0], s0, p)
        return c @ b @ a

    def side_S2(self, word, s0, p):
        """(E_i at p, F_j at p+1) -> (F_j at p, E_i at p+1)."""
        j = word[p + 1][1]
        a = self.cup(word, s0, p, "EF", j)
        b = self.cross(a.tgt[0], s0, p + 1)
        c = self.cap(b.tgt[0], s0, p + 2)
        return c @ b @ a

    def dots(self, word, s0, p, k):
        op = self.identity(word, s0)
        d = self.dot(word, s0, p)
        for _ in range(k):
            op = d @ op
        return op

    # ------------------------------------------------------------ state spaces
    def space(self, word, s0, order="first"):
        """Integral state space of a closed word (basis, dual cobasis, degrees).

        order selects which adjacent (F, E) pair is exchanged at each step:
        'first' uses the first applied E, 'last' the last exchangeable pair.
        """
        word = tuple(word)
        key = (word, s0, order)
        with self._lock:
            hit = self._spaces.get(key)
        if hit is not None:
            return hit
        sp = self._reduce(word, s0, order)
        with self._lock:
            self._spaces[key] = sp
        return sp

    def _pick(self, word, order):
        cands = [t for t in range(1, len(word)) if word[t][0] == "E" and word[t - 1][0] == "F"]
        first_e = next((t for t, g in enumerate(word) if g[0] == "E"), None)
        if first_e is None or first_e == 0 or not cands:
            return None
        if order == "first":
            return first_e
        if order == "last":
            return cands[-1]
        raise ValueError("unknown reduction order %r" % order)

    def _reduce(self, word, s0, order):
        d = self.dim(word, s0)
        if not word:
            one = np.ones((1, 1), dtype=np.int64)
            return Space(word, one, one.copy(), [0])
        t = self._pick(word, order)
        if t is None or d == 0:
            return Space(word, np.zeros((d, 0), dtype=np.int64),
                         np.zeros((0, d), dtype=np.int64), [])
        p = t - 1
        fj, ei = word[p], word[p + 1]
        i, j = ei[1], fj[1]
        mu = self.weights(word, s0)[p]
        wp = word[:p] + (ei, fj) + word[p + 2:]
        sp1 = self.space(wp, s0, order)
        S2 = self.side_S2(wp, s0, p)
        S1 = self.side_S1(word, s0, p)
        if S1.degree or S2.degree:
            raise AssertionError("exchange maps must have degree zero")
        cols = [(S2.mat @ sp1.basis) % PRIME] if sp1.rank else []
        rows = [(sp1.cobasis @ S1.mat) % PRIME] if sp1.rank else []
        degs = list(sp1.degrees)
        if i == j:
            L = self.lam(mu, i)
            if L < 0:
                B = np.hstack(cols) if cols else np.zeros((d, 0), dtype=np.int64)
                C = np.vstack(rows) if rows else np.zeros((0, d), dtype=np.int64)
                B, C, degs = _extract(B, C, degs, degs)
                return Space(word, B, C, degs, (("extract", p, L),) + sp1.moves)
            wpp = word[:p] + word[p + 2:]
            sp2 = self.space(wpp, s0, order)
            cup = self.cup(wpp, s0, p, "EF", i)
            cap = self.cap(word, s0, p)
            for k in range(L):
                up = self.dots(word, s0, p + 1, k) @ cup
                down = cap @ self.dots(word, s0, p + 1, L - 1 - k)
                if sp2.rank:
                    cols.append((up.mat @ sp2.basis) % PRIME)
                    rows.append((sp2.cobasis @ down.mat) % PRIME)
                degs += [g + up.degree for g in sp2.degrees]
            moves = (("split", p, L),) + sp1.moves + sp2.moves
        else:
            moves = (("exch", p),) + sp1.moves
        B = np.hstack(cols) if cols else np.zeros((d, 0), dtype=np.int64)
        C = np.vstack(rows) if rows else np.zeros((0, d), dtype=np.int64)
        C = _normalize(B, C, degs)
        return Space(word, B, C, degs, moves)

    # ------------------------------------------------------------ matrices
    def matrix(self, op, src, tgt):
        """Integer matrix of a homogeneous 2-morphism in the bases of two spaces.

        Entries whose degrees do not balance are discarded: they carry positive
        powers of the dotted-sphere parameters, which the graded theory sets to 0.
        """
        if src.rank == 0 or tgt.rank == 0:
            return np.zeros((tgt.rank, src.rank), dtype=object)
        img = (op.mat @ src.basis) % PRIME
        M = lift(modmat(tgt.cobasis, img))
        out = np.zeros((tgt.rank, src.rank), dtype=object)
        for a, ga in enumerate(tgt.degrees):
            for b, gb in enumerate(src.degrees):
                if ga == gb + op.degree:
                    out[a, b] = int(M[a, b])
        return out

    def pair(self, cob_row, vec):
        return int(lift(modmat(cob_row.reshape(1, -1), vec.reshape(-1, 1)))[0, 0])


_SHARED = {}
_SHARED_LOCK = threading.Lock()


def shared(n, m):
    """Process-wide LocalRep for (n, m) with the default specialization."""
    with _SHARED_LOCK:
        if (n, m) not in _SHARED:
            _SHARED[(n, m)] = LocalRep(n, m)
        return _SHARED[(n, m)]


def _int_inverse(G):
    """Inverse of a unimodular integer matrix."""
    f, U, D, V = smith_normal_form(G, transforms=True)
    n = len(G)
    if len(f) != n or any(v != 1 for v in f):
        raise ArithmeticError("pairing block is not unimodular: %r" % (f,))
    # U G V = I  =>  G^{-1} = V U
    return [[sum(V[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _normalize(B, C, degs):
    """Replace the cobasis by the dual of B within each degree block."""
    C = C.copy()
    blocks = {}
    for k, g in enumerate(degs):
        blocks.setdefault(g, []).append(k)
    M = lift(modmat(C, B))
    for g, ks in blocks.items():
        # cobasis rows dual to degree g pair with basis of degree g
        G = [[int(M[a, b]) for b in ks] for a in ks]
        Gi = _int_inverse(G)
        Gi = np.array([[v % PRIME for v in row] for row in Gi], dtype=np.int64)
        C[ks, :] = modmat(Gi, C[ks, :])
    return C


def _extract(B, C, degs, cdegs):
    """Lattice summand spanned by B, cut out by the pairing with C (per degree)."""
    M = lift(modmat(C, B))
    newB, newC, newd = [], [], []
    for g in sorted(set(degs)):
        bs = [k for k, v in enumerate(degs) if v == g]
        cs = [k for k, v in enumerate(cdegs) if v == g]
        if not cs:
            continue
        G = [[int(M[a, b]) for b in bs] for a in cs]
        f, U, D, V = smith_normal_form(G, transforms=True)
        if any(v != 1 for v in f):
            raise ArithmeticError("summand is not split over the integers: %r" % (f,))
        rk = len(f)
        Vm = np.array([[v % PRIME for v in row] for row in V], dtype=np.int64)
        Um = np.array([[v % PRIME for v in row] for row in U], dtype=np.int64)
        nb = modmat(B[:, bs], Vm[:, :rk])
        nc = modmat(Um[:rk, :], C[cs, :])
        newB.append(nb)
        newC.append(nc)
        newd += [g] * rk
    d = B.shape[0]
    B2 = np.hstack(newB) if newB else np.zeros((d, 0), dtype=np.int64)
    C2 = np.vstack(newC) if newC else np.zeros((0, d), dtype=np.int64)
    return B2, C2, newd
