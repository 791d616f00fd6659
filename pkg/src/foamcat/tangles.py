"""Complexes of open sl2 webs: crossingless matchings with dotted cobordisms.

An object is a crossingless matching on the boundary points of a strip of m
strands (bottom points ('b', i), top points ('t', i)) together with a
q-shift.  A morphism A -> B is an element of the circle TQFT on the closed
curve A u B: a labelling of its circles by 1 or X, read as one dotted disk
per circle.  Vertical composition, stacking and closure all glue such disks
along segments; the glued surface evaluates through the dot algebra
(handles act as m(Delta(1)), extra boundary circles by iterated Delta).
Closed circles produced by stacking are delooped immediately.
"""
from dataclasses import dataclass
from itertools import product

from .algebra import GradedComplex, GradedMap, GradedModule, StructuralError
from .foam2 import DotAlgebra, FoamParams2


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, a):
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a, b):
        self.p[self.find(a)] = self.find(b)


def matching(pairs):
    return frozenset(frozenset(p) for p in pairs)


def _adj(*Ms):
    nb = {}
    for M in Ms:
        for arc in M:
            a, b = tuple(arc)
            nb.setdefault(a, []).append(b)
            nb.setdefault(b, []).append(a)
    return nb


def circles(A, B):
    """Circles of the closed curve A u B as sorted tuples of points, in canonical order."""
    nb = _adj(A, B)
    seen, out = set(), []
    for p in sorted(nb):
        if p in seen:
            continue
        comp, stack = [], [p]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            comp.append(x)
            stack.extend(nb[x])
        out.append(tuple(sorted(comp)))
    return out


def _circle_of(circs):
    idx = {}
    for k, c in enumerate(circs):
        for p in c:
            idx[p] = k
    return idx


def identity_web(m):
    return matching([(("b", i), ("t", i)) for i in range(m)])


def turnback(m, i):
    """The cup-cap web at strands i, i+1 (0-based), vertical elsewhere."""
    pairs = [(("b", i), ("b", i + 1)), (("t", i), ("t", i + 1))]
    pairs += [(("b", j), ("t", j)) for j in range(m) if j not in (i, i + 1)]
    return matching(pairs)


def web_name(M, m):
    if M == identity_web(m):
        return "id"
    for i in range(m - 1):
        if M == turnback(m, i):
            return "U%d" % (i + 1)
    return ".".join(sorted("%s%d%s%d" % (a[0], a[1], b[0], b[1])
                           for a, b in (sorted(arc) for arc in M)))


@dataclass(frozen=True)
class Obj:
    web: frozenset
    shift: int


class Cobordisms:
    """Dotted cobordism arithmetic for a fixed dot algebra."""

    def __init__(self, params=None):
        self.A = DotAlgebra(params or FoamParams2())
        self.handle = self._handle()
        self.basis = ((1, 0), (0, 1))
        self.dual = self.A.dual_basis()

    def _handle(self):
        out = (0, 0)
        for (x, y), c in self.A.comult(self.A.one).items():
            out = self.A.add(out, self.A.scale(c, self.A.mul(self.basis_el(x), self.basis_el(y))))
        return out

    def basis_el(self, x):
        return (1, 0) if x == 0 else (0, 1)

    def _distribute(self, e, r):
        """Delta^(r-1)(e) as {labels: coeff}; r = 0 gives the counit."""
        if r == 0:
            v = self.A.counit(e)
            return {(): v} if v != 0 else {}
        cur = {}
        for x in (0, 1):
            if e[x] != 0:
                cur[(x,)] = e[x]
        for _ in range(r - 1):
            nxt = {}
            for lab, c in cur.items():
                for (x, y), d in self.A.comult(self.basis_el(lab[-1])).items():
                    key = lab[:-1] + (x, y)
                    nxt[key] = nxt.get(key, 0) + c * d
            cur = {k: v for k, v in nxt.items() if v != 0}
        return cur

    def glue(self, disks, joins, caps, outputs):
        """Evaluate disks glued along segments.

        disks: dot-algebra elements; joins: (i, j) segment gluings; caps:
        (disk, element) boundary circles closed off by a disk carrying
        element; outputs: the disk touching each free boundary circle, in
        order.  Returns {output labels: coefficient}.
        """
        n = len(disks)
        uf = _UF(n)
        for a, b in joins:
            uf.union(a, b)
        comps = {}
        for d in range(n):
            comps.setdefault(uf.find(d), {"disks": 0, "joins": 0, "el": (1, 0), "caps": 0, "out": []})
        for d in range(n):
            c = comps[uf.find(d)]
            c["disks"] += 1
            c["el"] = self.A.mul(c["el"], disks[d])
        for a, b in joins:
            comps[uf.find(a)]["joins"] += 1
        for d, el in caps:
            c = comps[uf.find(d)]
            c["caps"] += 1
            c["el"] = self.A.mul(c["el"], el)
        for k, d in enumerate(outputs):
            comps[uf.find(d)]["out"].append(k)
        result = {(): 1}
        slots = [None] * len(outputs)
        for c in comps.values():
            r = c["caps"] + len(c["out"])
            chi = c["disks"] - c["joins"]
            twice_g = 2 - chi - r
            if twice_g < 0 or twice_g % 2:
                raise StructuralError("glued surface with Euler characteristic %d and %d boundary circles"
                                      % (chi, r))
            e = c["el"]
            for _ in range(twice_g // 2):
                e = self.A.mul(e, self.handle)
            part = self._distribute(e, len(c["out"]))
            new = {}
            for lab, v in result.items():
                for lab2, w in part.items():
                    new[lab + tuple(zip(c["out"], lab2))] = new.get(lab + tuple(zip(c["out"], lab2)), 0) + v * w
            result = {k: v for k, v in new.items() if v != 0}
        out = {}
        for lab, v in result.items():
            for k, x in lab:
                slots[k] = x
            key = tuple(slots)
            out[key] = out.get(key, 0) + v
        return {k: v for k, v in out.items() if v != 0}

    # ---------------------------------------------------------------- morphisms
    def identity(self, M):
        return {(0,) * len(circles(M, M)): 1}

    def degree(self, A, B, labels):
        return len(labels) - 2 * sum(labels) - _npoints(A) // 2

    def compose(self, A, B, C, g, f):
        """g o f for f: A -> B and g: B -> C."""
        cf, cg, co = circles(A, B), circles(B, C), circles(A, C)
        idx_f, idx_g = _circle_of(cf), _circle_of(cg)
        nf = len(cf)
        joins = []
        for arc in B:
            p = next(iter(arc))
            joins.append((idx_f[p], nf + idx_g[p]))
        outputs = [idx_f[c[0]] for c in co]
        out = {}
        for lf, a in f.items():
            for lg, b in g.items():
                disks = [self.basis_el(x) for x in lf] + [self.basis_el(x) for x in lg]
                for lab, v in self.glue(disks, joins, [], outputs).items():
                    out[lab] = out.get(lab, 0) + a * b * v
        return {k: v for k, v in out.items() if v != 0}

    def add(self, f, g, s=1):
        out = dict(f)
        for k, v in g.items():
            out[k] = out.get(k, 0) + s * v
        return {k: v for k, v in out.items() if v != 0}

    def scale(self, f, s):
        return {k: s * v for k, v in f.items() if s * v != 0}


def _npoints(M):
    return sum(len(a) for a in M)


def stack_webs(X, Y, m):
    """Y on top of X: (outer matching, closed middle circles, X and Y with middle points renamed)."""
    Xm = matching([tuple(("m", p[1]) if p[0] == "t" else p for p in arc) for arc in X])
    Ym = matching([tuple(("m", p[1]) if p[0] == "b" else p for p in arc) for arc in Y])
    other = {}
    for M in (Xm, Ym):
        for arc in M:
            a, b = tuple(arc)
            other[(a, M is Xm)] = b
            other[(b, M is Xm)] = a
    seen, arcs = set(), []
    outer = sorted(p for arc in Xm | Ym for p in arc if p[0] != "m")
    for p in outer:
        if p in seen:
            continue
        in_x = p[0] == "b"
        cur = other[(p, in_x)]
        seen.add(p)
        while cur[0] == "m":
            seen.add(cur)
            in_x = not in_x
            cur = other[(cur, in_x)]
        seen.add(cur)
        arcs.append((p, cur))
    closed = []
    for i in range(m):
        p = ("m", i)
        if p in seen:
            continue
        comp, cur, in_x = [], p, True
        while cur not in comp:
            comp.append(cur)
            seen.add(cur)
            cur = other[(cur, in_x)]
            in_x = not in_x
        closed.append(tuple(sorted(comp)))
    return matching(arcs), closed, Xm, Ym


class TangleComplex:
    """Bounded complex of shifted matchings on m strands with cobordism differentials."""

    def __init__(self, m, cob=None):
        self.m = m
        self.cob = cob or Cobordisms()
        self.objs = {}      # h -> list of Obj
        self.d = {}         # h -> {(t, s): morphism}

    @classmethod
    def identity(cls, m, cob=None):
        C = cls(m, cob)
        C.objs = {0: [Obj(identity_web(m), 0)]}
        return C

    @classmethod
    def crossing(cls, m, i, sign, cob=None):
        """Crossing complex of sigma_i^(+-1): [id -> U{1}] or [U{-1} -> id]."""
        C = cls(m, cob)
        I, U = identity_web(m), turnback(m, i)
        if sign > 0:
            C.objs = {0: [Obj(I, 0)], 1: [Obj(U, 1)]}
            C.d = {0: {(0, 0): C._saddle(I, U)}}
        else:
            C.objs = {-1: [Obj(U, -1)], 0: [Obj(I, 0)]}
            C.d = {-1: {(0, 0): C._saddle(U, I)}}
        return C

    def _saddle(self, A, B):
        return {(0,) * len(circles(A, B)): 1}

    def degrees(self):
        return sorted(h for h, v in self.objs.items() if v)

    def chain_groups(self):
        """{h: sorted [(web name, shift)]}."""
        return {h: sorted((web_name(o.web, self.m), o.shift) for o in self.objs[h])
                for h in self.degrees()}

    # ---------------------------------------------------------------- checks
    def check(self):
        for h, ent in self.d.items():
            nxt = self.d.get(h + 1, {})
            acc = {}
            for (t, s), f in ent.items():
                for (u, t2), g in nxt.items():
                    if t2 != t:
                        continue
                    A, B, C = self.objs[h][s].web, self.objs[h + 1][t].web, self.objs[h + 2][u].web
                    gf = self.cob.compose(A, B, C, g, f)
                    acc[(u, s)] = self.cob.add(acc.get((u, s), {}), gf)
            if any(v for v in acc.values()):
                raise StructuralError("d^2 != 0 at degree %d" % h)
            for (t, s), f in ent.items():
                src, tgt = self.objs[h][s], self.objs[h + 1][t]
                for lab in f:
                    if self.cob.degree(src.web, tgt.web, lab) + tgt.shift - src.shift != 0:
                        raise StructuralError("inhomogeneous differential at degree %d" % h)
        return True

    # ---------------------------------------------------------------- stacking
    def stack(self, other):
        """self with other stacked on top (tensor product of complexes)."""
        cob, m = self.cob, self.m
        R = TangleComplex(m, cob)
        cache = {}

        def expand(x, y):
            key = (x.web, y.web)
            if key not in cache:
                cache[key] = stack_webs(x.web, y.web, m)
            M, closed, _, _ = cache[key]
            out = []
            for lab in product((0, 1), repeat=len(closed)):
                s = x.shift + y.shift + sum(1 if v == 0 else -1 for v in lab)
                out.append((Obj(M, s), lab))
            return out

        index = {}
        for hx, xs in self.objs.items():
            for hy, ys in other.objs.items():
                h = hx + hy
                for a, x in enumerate(xs):
                    for b, y in enumerate(ys):
                        for o, lab in expand(x, y):
                            R.objs.setdefault(h, []).append(o)
                            index.setdefault((hx, a, hy, b), []).append((len(R.objs[h]) - 1, lab))

        def put(h, t, s, f):
            if f:
                R.d.setdefault(h, {})
                R.d[h][(t, s)] = cob.add(R.d[h].get((t, s), {}), f)

        for hx, ent in self.d.items():
            for (t, s), f in ent.items():
                x, x2 = self.objs[hx][s], self.objs[hx + 1][t]
                for hy, ys in other.objs.items():
                    for b, y in enumerate(ys):
                        g = cob.identity(y.web)
                        self._stacked_entries(x, x2, f, y, y, g, index[(hx, s, hy, b)],
                                              index[(hx + 1, t, hy, b)], hx + hy, put, 1)
        for hy, ent in other.d.items():
            for (t, s), g in ent.items():
                y, y2 = other.objs[hy][s], other.objs[hy + 1][t]
                for hx, xs in self.objs.items():
                    for a, x in enumerate(xs):
                        f = cob.identity(x.web)
                        self._stacked_entries(x, x, f, y, y2, g, index[(hx, a, hy, s)],
                                              index[(hx, a, hy + 1, t)], hx + hy, put,
                                              (-1) ** hx)
        return R

    def _stacked_entries(self, x, x2, f, y, y2, g, srcs, tgts, h, put, sign):
        cob, m = self.cob, self.m
        Ms, cs, Xs, Ys = stack_webs(x.web, y.web, m)
        Mt, ct, Xt, Yt = stack_webs(x2.web, y2.web, m)
        cf = circles(Xs, Xt)
        cg = circles(Ys, Yt)
        idx_f, idx_g = _circle_of(cf), _circle_of(cg)
        nf = len(cf)
        joins = [(idx_f[("m", i)], nf + idx_g[("m", i)]) for i in range(m)]
        outer = circles(Ms, Mt)

        def owner(p):
            return idx_f[p] if p in idx_f else nf + idx_g[p]
        outputs = [owner(c[0]) for c in outer]
        src_caps = [owner(c[0]) for c in cs]
        tgt_caps = [owner(c[0]) for c in ct]
        for si, slab in srcs:
            for ti, tlab in tgts:
                caps = [(d, cob.basis_el(v)) for d, v in zip(src_caps, slab)]
                caps += [(d, cob.dual[v]) for d, v in zip(tgt_caps, tlab)]
                acc = {}
                for lf, a in f.items():
                    for lg, b in g.items():
                        disks = [cob.basis_el(v) for v in lf] + [cob.basis_el(v) for v in lg]
                        for lab, v in cob.glue(disks, joins, caps, outputs).items():
                            acc[lab] = acc.get(lab, 0) + sign * a * b * v
                put(h, ti, si, {k: v for k, v in acc.items() if v != 0})

    # ---------------------------------------------------------------- simplification
    def _iso(self, h, t, s, f):
        a, b = self.objs[h][s], self.objs[h + 1][t]
        if a != b:
            return None
        idl = (0,) * len(circles(a.web, a.web))
        if set(f) == {idl} and f[idl] in (1, -1):
            return f[idl]
        return None

    def simplify(self):
        """Cancel isomorphism entries by Gaussian elimination until none remain."""
        while True:
            found = None
            for h in sorted(self.d):
                for (t, s), f in self.d[h].items():
                    c = self._iso(h, t, s, f)
                    if c is not None:
                        found = (h, t, s, c)
                        break
                if found:
                    break
            if not found:
                return self
            self._eliminate(*found)

    def _eliminate(self, h, t0, s0, c):
        cob = self.cob
        ent = self.d[h]
        b2 = self.objs[h + 1][t0]
        deltas = [(s, f) for (t, s), f in ent.items() if t == t0 and s != s0]
        gammas = [(t, g) for (t, s), g in ent.items() if s == s0 and t != t0]
        for s, dlt in deltas:
            A = self.objs[h][s].web
            for t, gam in gammas:
                C = self.objs[h + 1][t].web
                corr = cob.scale(cob.compose(A, b2.web, C, gam, dlt), c)
                new = cob.add(ent.get((t, s), {}), corr, -1)
                if new:
                    ent[(t, s)] = new
                else:
                    ent.pop((t, s), None)
        self._remove(h, s0)
        self._remove(h + 1, t0)

    def _remove(self, h, k):
        self.objs[h].pop(k)

        def re(i):
            return i - 1 if i > k else i
        if h in self.d:
            self.d[h] = {(t, re(s)): f for (t, s), f in self.d[h].items() if s != k}
        if h - 1 in self.d:
            self.d[h - 1] = {(re(t), s): f for (t, s), f in self.d[h - 1].items() if t != k}
        if not self.objs[h]:
            del self.objs[h]

    # ---------------------------------------------------------------- closure
    def closure(self):
        """Trace closure (top points joined to bottom points) as a graded complex over Z."""
        cob, m = self.cob, self.m
        gens = {}
        for h in self.degrees():
            for k, o in enumerate(self.objs[h]):
                cl = _trace_circles(o.web, m)
                for lab in product((0, 1), repeat=len(cl)):
                    gens.setdefault(h, []).append((k, lab, o.shift + sum(1 if v == 0 else -1 for v in lab)))
        mods = {h: GradedModule([g[2] for g in gl]) for h, gl in gens.items()}
        maps = {}
        for h, ent in self.d.items():
            if h not in gens or h + 1 not in gens:
                continue
            entries = {}
            for (t, s), f in ent.items():
                A, B = self.objs[h][s].web, self.objs[h + 1][t].web
                cf = circles(A, B)
                idx = _circle_of(cf)
                joins = [(idx[("b", i)], idx[("t", i)]) for i in range(m)]
                cs, ct = _trace_circles(A, m), _trace_circles(B, m)
                sc = [idx[c[0]] for c in cs]
                tc = [idx[c[0]] for c in ct]
                for a, (k1, sl, _) in enumerate(gens[h]):
                    if k1 != s:
                        continue
                    for b, (k2, tl, _) in enumerate(gens[h + 1]):
                        if k2 != t:
                            continue
                        caps = [(d, cob.basis_el(v)) for d, v in zip(sc, sl)]
                        caps += [(d, cob.dual[v]) for d, v in zip(tc, tl)]
                        tot = 0
                        for lab, c in f.items():
                            val = cob.glue([cob.basis_el(v) for v in lab], joins, caps, [])
                            tot += c * val.get((), 0)
                        if tot:
                            ti, si = mods[h + 1].ids()[b], mods[h].ids()[a]
                            entries[(ti, si)] = entries.get((ti, si), 0) + tot
            maps[h] = GradedMap(mods[h], mods[h + 1], entries, 0, check=False)
        return GradedComplex(mods, maps, check=True)


def _trace_circles(M, m):
    ident = matching([(("b", i), ("t", i)) for i in range(m)])
    return circles(M, ident)


def braid_complex(m, gens, cob=None, simplify=True, guard=None):
    """Complex of a braid word (list of signed 1-based generators) scanned bottom to top."""
    C = TangleComplex.identity(m, cob)
    for g in gens:
        C = C.stack(TangleComplex.crossing(m, abs(g) - 1, 1 if g > 0 else -1, C.cob))
        if simplify:
            C.simplify()
        if guard is not None:
            guard(C)
    return C


def cap_top(C):
    """Stack the turnback web at strands 1, 2 on top of every object."""
    T = TangleComplex(C.m, C.cob)
    T.objs = {0: [Obj(turnback(C.m, 0), 0)]}
    return C.stack(T)
