"""sl3 foams: dotted spheres and thetas, state spaces of closed ladder webs, foam maps.

Closed webs are thin ladder words.  Their state spaces come from the ladder
2-representation in `lrep`: the reduction of a web is recorded as the list of
ladder moves used to normal-order its word (exchanges of commuting rungs,
which are the square moves, and splittings of an EF pair into FE plus dotted
cups, which remove digons and circles).  Foam maps act on those spaces through
the same representation; the sign table multiplies the images of cups and
caps.
"""
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
import sympy

from .algebra import GradedMap, GradedModule, LaurentPoly
from .lrep import lift, modmat, shared
from .skewhowe import LadderWord


@dataclass(frozen=True)
class FoamParams3:
    theta3: object = 0
    theta4: object = 0
    theta5: object = 0

    @classmethod
    def symbolic(cls):
        return cls(*sympy.symbols("theta3 theta4 theta5"))

    def elementary(self):
        """(e1, e2, e3) of the three dot roots."""
        t3, t4, t5 = self.theta3, self.theta4, self.theta5
        return (-t3, t4 + t3 ** 2, -(t5 + 2 * t3 * t4 + t3 ** 3))


def _norm(v):
    if isinstance(v, int):
        return v
    v = sympy.expand(v)
    return int(v) if v.is_Integer else v


class DotAlgebra3:
    """Dots on an sl3 facet: basis 1, X, X^2 of q-degrees 2, 0, -2.

    X^3 = e1 X^2 - e2 X + e3 with e1 = -theta3, e2 = theta4 + theta3^2 and
    e3 = -(theta5 + 2 theta3 theta4 + theta3^3); the counit sends X^2 to -1.
    """

    degrees = (2, 0, -2)

    def __init__(self, params=None):
        self.p = params or FoamParams3()
        self.e = tuple(_norm(v) for v in self.p.elementary())

    def mul(self, a, b):
        prod = [0] * 5
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        e1, e2, e3 = self.e
        for d in (4, 3):
            c = prod[d]
            if c:
                prod[d] = 0
                prod[d - 1] += c * e1
                prod[d - 2] -= c * e2
                prod[d - 3] += c * e3
        return tuple(_norm(v) for v in prod[:3])

    def power(self, d):
        out = (1, 0, 0)
        for _ in range(d):
            out = self.mul(out, (0, 1, 0))
        return out

    def counit(self, a):
        return _norm(-a[2])


def sphere_eval3(d, params=None):
    """The sphere with d dots."""
    if d < 0:
        raise ValueError("negative dot count")
    A = DotAlgebra3(params)
    return A.counit(A.power(d))


_x = sympy.symbols("x1 x2 x3")


def theta_eval3(alpha, beta, gamma, params=None):
    """The theta foam with alpha, beta, gamma dots on its three facets.

    The value is the antisymmetrization of x1^alpha x2^beta x3^gamma divided
    by the Vandermonde product, read through the elementary functions of the
    parameters.
    """
    if min(alpha, beta, gamma) < 0:
        raise ValueError("negative dot count")
    p = params or FoamParams3()
    x1, x2, x3 = _x
    num = 0
    for perm in permutations(range(3)):
        sgn = _perm_sign(perm)
        xs = [_x[k] for k in perm]
        num += sgn * xs[0] ** alpha * xs[1] ** beta * xs[2] ** gamma
    vdm = (x2 - x1) * (x3 - x1) * (x3 - x2)
    q = sympy.cancel(sympy.expand(num) / vdm)
    return _norm(_sym3(sympy.expand(q), p))


def _perm_sign(perm):
    s, p = 1, list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def _sym3(expr, p):
    from sympy.polys.polyfuncs import symmetrize
    sym, rem, pairs = symmetrize(expr, *_x, formal=True)
    if rem != 0:
        raise ArithmeticError("expression is not symmetric")
    sub = {s: e for (s, _), e in zip(pairs, p.elementary())}
    return sympy.sympify(sym).subs(sub)


def dot_migration(params=None, max_dots=3):
    """Check X_a + X_b + X_c + theta3 = 0 around a seam on every theta foam.

    Returns the list of (alpha, beta, gamma) triples where the relation, or
    its second elementary consequence, fails (empty when it holds).
    """
    p = params or FoamParams3()
    e1, e2, _ = p.elementary()
    bad = []
    for a in range(max_dots + 1):
        for b in range(max_dots + 1):
            for c in range(max_dots + 1):
                t = lambda i, j, k: theta_eval3(i, j, k, p)
                first = t(a + 1, b, c) + t(a, b + 1, c) + t(a, b, c + 1) + p.theta3 * t(a, b, c)
                second = (t(a + 1, b + 1, c) + t(a, b + 1, c + 1) + t(a + 1, b, c + 1)
                          - e2 * t(a, b, c))
                if _norm(first) != 0 or _norm(second) != 0:
                    bad.append((a, b, c))
    return bad


# ---------------------------------------------------------------- degrees

def foam_degree3(chi, boundary, vertices, t1=0, t2=0, dots=0):
    """q-degree of an sl3 foam: 2 chi - boundary + vertices/2 + t2 - t1.

    Each dot lowers chi by one.  vertices counts trivalent vertices of the
    boundary webs (bottom and top together).
    """
    if vertices % 2:
        raise ValueError("vertex count must be even")
    return 2 * (chi - dots) - boundary + vertices // 2 + t2 - t1


# (chi, boundary points, boundary-web vertices, dots) in our cell model
FOAM_CATALOGUE3 = {
    "sphere": (2, 0, 0, 0),
    "sphere2": (2, 0, 0, 2),
    "theta012": (3, 0, 0, 3),
    "cup": (1, 0, 0, 0),
    "cap": (1, 0, 0, 0),
    "dot": (1, 2, 0, 1),
    "identity_arc": (1, 2, 0, 0),
    "zip": (1, 4, 2, 0),
    "unzip": (1, 4, 2, 0),
}


def catalogue_degree(name):
    return foam_degree3(*FOAM_CATALOGUE3[name][:3], dots=FOAM_CATALOGUE3[name][3])


# ---------------------------------------------------------------- signs

_CCW_CELLS = [(3, 1), (2, 0), (4, 0), (1, -1), (3, -1), (5, -1), (2, -2), (4, -2), (3, -3)]
_CW_CELLS = [(3, -1), (2, 0), (4, 0), (1, 1), (3, 1), (5, 1), (2, 2), (4, 2), (3, 3)]
_ROWS = {
    ("cap", "ccw"): "-+-++-+++",
    ("cap", "cw"): "---+--+-+",
    ("cup", "ccw"): "++-+-----",
    ("cup", "cw"): "+++++-+--",
}
SIGN_TABLE = {}
for (_k, _o), _row in _ROWS.items():
    for _cell, _ch in zip(_CCW_CELLS if _o == "ccw" else _CW_CELLS, _row):
        SIGN_TABLE[(_k, _o) + _cell] = 1 if _ch == "+" else -1


def phi3_sign(kind, N_i, lam, orientation=None):
    """Sign of the sl3 image of a cap or cup.

    kind is 'cap' or 'cup' with orientation 'cw'/'ccw', or one of the
    combined names 'cap_cw', 'cup_ccw', ....
    """
    if orientation is None:
        kind, orientation = kind.split("_")
    key = (kind, orientation, N_i, lam)
    if key not in SIGN_TABLE:
        raise KeyError("no sign for %s %s at N=%d, lambda=%d" % (kind, orientation, N_i, lam))
    return SIGN_TABLE[key]


def forget_sign(chi3, n_u):
    """Sign by which deleting 3-labeled facets rescales an enhanced foam."""
    return -1 if (chi3 - n_u) % 2 else 1


# ---------------------------------------------------------------- state spaces

local_rep = shared


def thin_word(w):
    """Applied thin steps (kind, 0-based i) of a LadderWord or an applied tuple."""
    if isinstance(w, LadderWord):
        out = []
        for g in w.applied():
            if g.k != 1:
                raise NotImplementedError("state spaces need thin rungs")
            out.append((g.kind, g.i - 1))
        return tuple(out)
    return tuple(w)


@dataclass
class ReductionTree:
    domain: tuple
    word: tuple
    order: str
    moves: tuple
    space: object = field(repr=False, default=None)

    def graded_dimension(self):
        return LaurentPoly([(-g, 1) for g in self.space.degrees])


def web_faces(domain, word, n=3):
    """Bounded faces of the planar ladder web, by Euler's formula."""
    a = list(domain)
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    last = [None] * len(a)
    V = E = 0
    for kind, i in word:
        ends = []
        for col in (i, i + 1):
            V += 1
            parent[V] = V
            if 0 < a[col] < n:
                E += 1
                parent[find(last[col])] = find(V)
            last[col] = V
            ends.append(V)
        E += 1
        parent[find(ends[0])] = find(ends[1])
        d = -1 if kind == "E" else 1
        a[i] += d
        a[i + 1] -= d
    comps = len({find(x) for x in parent})
    return E - V + comps


def reduce_web(word, domain, n=3, order="first"):
    """Reduction tree of a closed thin ladder web starting at domain."""
    w = thin_word(word)
    lr = local_rep(n, len(domain))
    s0 = lr.vacuum(domain)
    sp = lr.space(w, s0, order)
    return ReductionTree(tuple(domain), w, order, sp.moves, sp)


@dataclass
class StateSpace3:
    tree: ReductionTree
    shift: int = 0
    module: GradedModule = None

    def __post_init__(self):
        self.module = GradedModule([self.shift - g for g in self.tree.space.degrees])

    @property
    def rank(self):
        return len(self.tree.space.degrees)

    def graded_dimension(self):
        return self.module.graded_dimension()


def state_space3(word, domain, n=3, order="first", shift=0):
    return StateSpace3(reduce_web(word, domain, n, order), shift)


TRANSPORT_KINDS = ("zip", "unzip", "cup", "cap", "dot", "cross", "square_iso")


def foam_op(kind, word, domain, pos, n=3, cup_kind="EF", color=None, signed=True):
    """The 2-morphism of a local foam on a thin word, as an lrep Op.

    pos is the path position.  cup/zip insert a pair at pos (zip is the cup at
    a (1,1) position); cap/unzip remove the pair at pos, pos+1; dot and cross
    act at pos; square_iso exchanges the pair at pos, pos+1.
    """
    w = thin_word(word)
    lr = local_rep(n, len(domain))
    s0 = lr.vacuum(domain)
    a = lr.weights(w, s0)[pos] if pos <= len(w) else None
    if kind in ("cup", "zip"):
        i = color if color is not None else w[pos][1]
        ck = "EF" if kind == "zip" else cup_kind
        op = lr.cup(w, s0, pos, ck, i)
        if signed:
            op = op.scale(_cupcap_sign("cup", ck, a, i, n))
        return op
    if kind in ("cap", "unzip"):
        op = lr.cap(w, s0, pos)
        if signed:
            ck = "EF" if w[pos][0] == "F" else "FE"
            op = op.scale(_cupcap_sign("cap", ck, a, w[pos][1], n))
        return op
    if kind == "dot":
        return lr.dot(w, s0, pos)
    if kind == "cross":
        return lr.cross(w, s0, pos)
    if kind == "square_iso":
        if w[pos][0] == "F" and w[pos + 1][0] == "E" and w[pos][1] != w[pos + 1][1]:
            return lr.side_S1(w, s0, pos)
        if w[pos][0] == "E" and w[pos + 1][0] == "F" and w[pos][1] != w[pos + 1][1]:
            return lr.side_S2(w, s0, pos)
        raise ValueError("square_iso needs rungs of different colors and kinds")
    if kind in ("digon_in", "digon_out"):
        raise NotImplementedError("thin ladders realize digon maps only through 'cross'")
    raise ValueError("unknown foam kind %r" % kind)


def _cupcap_sign(which, ck, a, i, n):
    if n != 3:
        return 1
    N_i = a[i] + a[i + 1]
    lam = a[i + 1] - a[i]
    orient = "cw" if ck == "EF" else "ccw"
    try:
        return phi3_sign(which, N_i, lam, orient)
    except KeyError:
        return 1


def transported_map(kind, src, tgt, pos, n=3, **kw):
    """GradedMap of a local foam between the state spaces of two closed webs."""
    op = foam_op(kind, src.tree.word, src.tree.domain, pos, n, **kw)
    if op.tgt[0] != tgt.tree.word:
        raise ValueError("target tree models a different web")
    lr = local_rep(n, len(src.tree.domain))
    M = lr.matrix(op, src.tree.space, tgt.tree.space)
    ent = {}
    si, ti = src.module.ids(), tgt.module.ids()
    for r in range(M.shape[0]):
        for c in range(M.shape[1]):
            v = int(M[r, c])
            if v:
                ent[(ti[r], si[c])] = v
    return GradedMap(src.module, tgt.module, ent, tgt.shift - src.shift - op.degree)


def change_of_basis(A, B):
    """Integer matrix P with b^B_i = sum_j b^A_j P[j, i] (degree preserving)."""
    sa, sb = A.tree.space, B.tree.space
    M = lift(modmat(sa.cobasis, sb.basis))
    P = np.zeros((sa.rank, sb.rank), dtype=object)
    for j, gj in enumerate(sa.degrees):
        for i, gi in enumerate(sb.degrees):
            if gj == gi:
                P[j, i] = int(M[j, i])
    return P


def tree_independent(kind, word, domain, pos, n=3, orders=("first", "last"), **kw):
    """Compare a foam map's matrices in the bases of two reduction orders.

    Returns (ok, detail). The change of basis must be unimodular and
    intertwine the two matrices exactly.
    """
    from .algebra import smith_normal_form
    op = foam_op(kind, word, domain, pos, n, **kw)
    tw = op.tgt[0]
    A, B = (state_space3(word, domain, n, o) for o in orders)
    A2, B2 = (state_space3(tw, domain, n, o) for o in orders)
    P, P2 = change_of_basis(A, B), change_of_basis(A2, B2)
    for Q in (P, P2):
        if Q.shape[0] != Q.shape[1]:
            return False, "ranks differ"
        f = smith_normal_form(Q.tolist()) if Q.size else []
        if len(f) != Q.shape[0] or any(v != 1 for v in f):
            return False, "change of basis not unimodular"
    MA = np.array(transported_map(kind, A, A2, pos, n, **kw).dense(), dtype=object).reshape(A2.rank, A.rank)
    MB = np.array(transported_map(kind, B, B2, pos, n, **kw).dense(), dtype=object).reshape(B2.rank, B.rank)
    lhs = MA.dot(P) if MA.size and P.size else np.zeros((A2.rank, B.rank), dtype=object)
    rhs = P2.dot(MB) if P2.size and MB.size else np.zeros((A2.rank, B.rank), dtype=object)
    ok = bool((lhs == rhs).all())
    return ok, "" if ok else "matrices differ"
