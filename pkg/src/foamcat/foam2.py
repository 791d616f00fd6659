"""Blanchet sl2 foams: closed evaluations, dot algebra, web state spaces and edge maps.

Coefficients are plain integers by default.  Passing sympy symbols as the
parameters keeps everything symbolic, which is how the relation suite runs.
"""
from dataclasses import dataclass
from itertools import product

import sympy

from .algebra import GradedMap, GradedModule


class FoamEvalError(ValueError):
    pass


@dataclass(frozen=True)
class FoamParams2:
    beta2: object = 0
    beta3: object = 0

    @classmethod
    def symbolic(cls):
        b2, b3 = sympy.symbols("beta2 beta3")
        return cls(b2, b3)

    def is_numeric(self):
        return all(isinstance(v, int) for v in (self.beta2, self.beta3))


def _norm(v):
    if isinstance(v, int):
        return v
    v = sympy.expand(v)
    return int(v) if v.is_Integer else v


class DotAlgebra:
    """The rank-2 Frobenius algebra on a 1-labeled circle.

    Elements are pairs (c1, cX).  X^2 = beta2 X + (beta3 + beta2^2), the counit
    reads off the X coefficient, and 1 has q-degree +1, X has q-degree -1.
    """

    degrees = (1, -1)

    def __init__(self, params=None):
        self.p = params or FoamParams2()
        self.c = _norm(self.p.beta3 + self.p.beta2 ** 2)

    one = (1, 0)
    X = (0, 1)

    def add(self, a, b):
        return (_norm(a[0] + b[0]), _norm(a[1] + b[1]))

    def scale(self, s, a):
        return (_norm(s * a[0]), _norm(s * a[1]))

    def mul(self, a, b):
        b2 = self.p.beta2
        xx = a[1] * b[1]
        return (_norm(a[0] * b[0] + self.c * xx), _norm(a[0] * b[1] + a[1] * b[0] + b2 * xx))

    def power(self, d):
        out = self.one
        for _ in range(d):
            out = self.mul(out, self.X)
        return out

    def counit(self, a):
        return a[1]

    def pairing(self):
        """Gram matrix of (a, b) -> counit(ab) on the basis (1, X)."""
        B = (self.one, self.X)
        return [[self.counit(self.mul(a, b)) for b in B] for a in B]

    def dual_basis(self):
        """Elements b* with counit(b_i b_j*) = delta_ij."""
        return ((-self.p.beta2, 1), (1, 0))

    def comult(self, a):
        """Delta(a) = sum a b_i (x) b_i*, as {(i, j): coefficient}."""
        out = {}
        for bi, bs in zip((self.one, self.X), self.dual_basis()):
            left = self.mul(a, bi)
            for i in (0, 1):
                for j in (0, 1):
                    v = _norm(left[i] * bs[j])
                    if v != 0:
                        out[(i, j)] = _norm(out.get((i, j), 0) + v)
        return {k: v for k, v in out.items() if v != 0}


# ---------------------------------------------------------------- closed foams

@dataclass(frozen=True)
class Sphere:
    dots: int = 0


@dataclass(frozen=True)
class TwoSphere:
    pass


@dataclass(frozen=True)
class Theta:
    """Two 1-labeled disks and a 2-labeled disk glued along a circle."""
    alpha: int = 0
    beta: int = 0


@dataclass(frozen=True)
class Blister:
    """A 1-labeled sphere carrying a 2-labeled blister; side picks the dotted half."""
    side: str = "left"
    dots: int = 0


@dataclass(frozen=True)
class SeamTube:
    """A theta foam whose 1-labeled disks are joined by a tube (torus-like closure)."""
    config: str = "plain"


def _theta_value(alpha, beta, p):
    # divided difference (x1^a x2^b - x2^a x1^b) / (x1 - x2) in e1 = beta2, e2 = -(beta3 + beta2^2)
    x1, x2 = sympy.symbols("x1 x2")
    num = sympy.expand(x1 ** alpha * x2 ** beta - x2 ** alpha * x1 ** beta)
    q = sympy.cancel(num / (x1 - x2))
    e1, e2 = sympy.symbols("e1 e2")
    sym = _symmetric_reduce(sympy.Poly(sympy.expand(q), x1, x2), e1, e2)
    val = sym.subs({e1: p.beta2, e2: -(p.beta3 + p.beta2 ** 2)})
    return _norm(val)


def _symmetric_reduce(P, e1, e2):
    """Express a symmetric polynomial in x1, x2 through e1 = x1 + x2 and e2 = x1 x2."""
    out = sympy.Integer(0)
    P = P.as_dict()
    P = {k: v for k, v in P.items() if v}
    while P:
        (a, b), c = max(P.items())
        # leading term c x1^a x2^b with a >= b
        out += c * e1 ** (a - b) * e2 ** b
        x1, x2 = sympy.symbols("x1 x2")
        sub = sympy.Poly(sympy.expand(c * (x1 + x2) ** (a - b) * (x1 * x2) ** b), x1, x2).as_dict()
        for k, v in sub.items():
            P[k] = P.get(k, 0) - v
        P = {k: v for k, v in P.items() if v}
    return out


def closed_eval2(f, params=None):
    """Evaluate a catalogued closed sl2 foam."""
    p = params or FoamParams2()
    A = DotAlgebra(p)
    if isinstance(f, Sphere):
        if f.dots < 0:
            raise FoamEvalError("negative dot count")
        return _norm(A.counit(A.power(f.dots)))
    if isinstance(f, TwoSphere):
        return -1
    if isinstance(f, Theta):
        if f.alpha < 0 or f.beta < 0:
            raise FoamEvalError("negative dot count")
        return _theta_value(f.alpha, f.beta, p)
    if isinstance(f, Blister):
        # the blister cuts the sphere into two 1-labeled disks: a theta foam
        if f.side not in ("left", "right"):
            raise FoamEvalError("blister side must be left or right")
        a, b = (f.dots, 0) if f.side == "left" else (0, f.dots)
        return _theta_value(a, b, p)
    if isinstance(f, SeamTube):
        if f.config != "plain":
            raise FoamEvalError("seam tube configuration %r is not catalogued" % f.config)
        return _norm(_tube_theta(p))
    raise FoamEvalError("uncatalogued closed foam %r" % (f,))


def _tube_theta(p):
    # neck-cut the tube: sum_i theta with b_i on one disk and b_i* on the other
    A = DotAlgebra(p)
    total = 0
    for bi, bs in zip((A.one, A.X), A.dual_basis()):
        for d, c in enumerate(bi):
            for e, c2 in enumerate(bs):
                if c != 0 and c2 != 0:
                    total += c * c2 * _theta_value(d, e, p)
    return total


def foam_degree2(chi, dots, boundary, t1=0, t2=0):
    """Degree of an sl2 foam: chi - 2 dots - boundary/2 + t2 - t1."""
    if boundary % 2:
        raise ValueError("boundary point count must be even")
    return chi - 2 * dots - boundary // 2 + t2 - t1


# ---------------------------------------------------------------- Phi_2 scalars

def phi2_scalar(gen, a_i=None, a_next=None):
    """(sign, is_zero) of the foam assigned to a generating 2-morphism.

    gen is one of cap_EF, cap_FE, cup_EF, cup_FE, dot, crossing_ii and
    crossing_ij (i != j).  a_i, a_next make the zero flag exact.
    """
    zero = False
    if a_i is not None and a_next is not None:
        zero = not (0 <= a_i <= 2 and 0 <= a_next <= 2)
    if gen == "cap_FE" or gen == "cup_EF" or gen == "dot":
        return 1, zero
    if gen == "cap_EF":
        return (-1) ** a_i, zero
    if gen == "cup_FE":
        return (-1) ** (a_i + 1), zero
    if gen in ("crossing_ii", "crossing_ij"):
        return 1, zero
    raise ValueError("unknown generator %r" % gen)


# ---------------------------------------------------------------- bubbles

def bubble_calculus(lam, dots, orientation="cw", params=None, fake=False):
    """Value of a dotted bubble in weight lam (sl2 image, lam = a_{i+1} - a_i).

    A clockwise bubble with d dots has degree 2(d - lam + 1), a counterclockwise
    one 2(d + lam + 1).  Negative degree gives 0 and degree zero gives 1.  In
    positive degree 2k the clockwise bubble is the complete symmetric function
    h_k of the dot algebra's roots and the counterclockwise family is the
    inverse series.  fake=True allows negative dot counts, whose values are
    fixed by the same series.
    """
    p = params or FoamParams2()
    k = (dots - lam + 1) if orientation == "cw" else (dots + lam + 1)
    if orientation not in ("cw", "ccw"):
        raise ValueError("orientation is cw or ccw")
    if dots < 0 and not fake:
        raise ValueError("real bubbles carry a nonnegative number of dots")
    if k < 0:
        return 0
    if k == 0:
        return 1
    h = _h_values(k, p)
    if orientation == "cw":
        return h[k]
    # the counterclockwise family is the inverse series: sum_{a+b=k} cw_a ccw_b = 0
    return _inverse_series(h, k)[k]


def _h_values(k, p):
    # cw bubbles of degree 2r are complete symmetric functions h_r(x1, x2) of the dot roots
    e1, e2 = p.beta2, -(p.beta3 + p.beta2 ** 2)
    h = [1, e1]
    for r in range(2, k + 1):
        h.append(_norm(e1 * h[r - 1] - e2 * h[r - 2]))
    return [_norm(v) for v in h[:k + 1]]


def _inverse_series(h, k):
    g = [1]
    for r in range(1, k + 1):
        g.append(_norm(-sum(h[a] * g[r - a] for a in range(1, r + 1))))
    return g


# ---------------------------------------------------------------- ladder webs

class _UF:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent[x] = x

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[a] = b


def trace_circles(domain, blocks):
    """1-labeled circles of a closed thin sl2 ladder web.

    blocks is a list of blocks of thin steps (kind, i) with i 0-based; the
    block boundaries are anchors.  Returns a list of frozensets of anchors
    (block boundary b, column), one per circle, sorted.
    """
    uf = _UF()
    nid = [0]

    def fresh():
        nid[0] += 1
        uf.add(nid[0])
        return nid[0]

    a = list(domain)
    if any(v not in (0, 2) for v in a):
        raise FoamEvalError("closed sl2 webs start at a sequence of 0s and 2s")
    cur = [None] * len(a)
    anchors = {}
    for b, block in enumerate(blocks):
        for col in range(len(a)):
            if a[col] == 1:
                s = fresh()
                uf.union(cur[col], s)
                cur[col] = s
                anchors[s] = (b, col)
        for kind, i in block:
            r = fresh()
            before = (a[i], a[i + 1])
            if kind == "E":
                a[i] -= 1
                a[i + 1] += 1
            else:
                a[i] += 1
                a[i + 1] -= 1
            for col, old in zip((i, i + 1), before):
                if not 0 <= a[col] <= 2:
                    raise FoamEvalError("web leaves the labels 0, 1, 2")
                if old == 1:
                    uf.union(cur[col], r)
                    cur[col] = None
                else:
                    cur[col] = r
    if any(v not in (0, 2) for v in a) or tuple(a) != tuple(domain):
        raise FoamEvalError("web is not closed")
    circles = {}
    for s in uf.parent:
        circles.setdefault(uf.find(s), set())
    for s, anc in anchors.items():
        circles[uf.find(s)].add(anc)
    out = [frozenset(v) for v in circles.values()]
    if any(not c for c in out):
        raise FoamEvalError("circle without anchor; insert finer block boundaries")
    return sorted(out, key=lambda c: sorted(c))


class StateSpace2:
    """Tensor power of the dot algebra over the circles of a closed web."""

    def __init__(self, circles, shift=0):
        self.circles = list(circles)
        self.shift = shift
        self.labels = list(product((0, 1), repeat=len(self.circles)))
        self.index = {lab: k for k, lab in enumerate(self.labels)}
        self.module = GradedModule([shift + sum(DotAlgebra.degrees[x] for x in lab)
                                    for lab in self.labels])

    @property
    def rank(self):
        return len(self.labels)

    def graded_dimension(self):
        return self.module.graded_dimension()


def state_space2(domain, blocks, shift=0):
    return StateSpace2(trace_circles(domain, blocks), shift)


def edge_map2(kind, src, tgt, sign=1, params=None, where=None):
    """TQFT map between state spaces.

    kind 'saddle' picks merge or split from the circle data; 'merge', 'split'
    insist on one of them; 'dot' multiplies the circle containing anchor
    `where` by X (src and tgt equal).
    """
    A = DotAlgebra(params)
    ent = {}
    if kind == "dot":
        k = next(t for t, c in enumerate(src.circles) if where in c)
        for lab in src.labels:
            el = A.mul((1 - lab[k], lab[k]), A.X)
            for x, v in enumerate(el):
                if v != 0:
                    nl = lab[:k] + (x,) + lab[k + 1:]
                    key = (tgt.module.ids()[tgt.index[nl]], src.module.ids()[src.index[lab]])
                    ent[key] = _norm(ent.get(key, 0) + sign * v)
        return GradedMap(src.module, tgt.module, ent, -2 + tgt.shift - src.shift, check=False)
    s_only = [c for c in src.circles if c not in tgt.circles]
    t_only = [c for c in tgt.circles if c not in src.circles]
    if len(s_only) == 2 and len(t_only) == 1:
        op = "merge"
    elif len(s_only) == 1 and len(t_only) == 2:
        op = "split"
    else:
        raise FoamEvalError("webs do not differ by a saddle")
    if kind not in ("saddle", op):
        raise FoamEvalError("expected %s, the surgery is a %s" % (kind, op))
    common = [c for c in src.circles if c in tgt.circles]
    sp = {c: k for k, c in enumerate(src.circles)}
    tp = {c: k for k, c in enumerate(tgt.circles)}
    sids, tids = src.module.ids(), tgt.module.ids()
    for lab in src.labels:
        base = {tp[c]: lab[sp[c]] for c in common}
        if op == "merge":
            a = (1 - lab[sp[s_only[0]]], lab[sp[s_only[0]]])
            b = (1 - lab[sp[s_only[1]]], lab[sp[s_only[1]]])
            outs = [({tp[t_only[0]]: x}, v) for x, v in enumerate(A.mul(a, b)) if v != 0]
        else:
            a = (1 - lab[sp[s_only[0]]], lab[sp[s_only[0]]])
            outs = []
            for (x, y), v in _comult_el(A, a).items():
                outs.append(({tp[t_only[0]]: x, tp[t_only[1]]: y}, v))
        for extra, v in outs:
            full = dict(base)
            full.update(extra)
            nl = tuple(full[k] for k in range(len(tgt.circles)))
            key = (tids[tgt.index[nl]], sids[src.index[lab]])
            ent[key] = _norm(ent.get(key, 0) + sign * v)
    ent = {k: v for k, v in ent.items() if v != 0}
    return GradedMap(src.module, tgt.module, ent, -1 + tgt.shift - src.shift, check=False)


def _comult_el(A, a):
    out = {}
    for x, c in enumerate(a):
        if c == 0:
            continue
        for k, v in A.comult(A.one if x == 0 else A.X).items():
            out[k] = _norm(out.get(k, 0) + c * v)
    return {k: v for k, v in out.items() if v != 0}
