"""Link homology from compiled ladder words.

Every crossing slice is a two-term crossing complex [id -> EF{1}] (positive)
or [EF{-1} -> id] (negative) at a position of labels (1,1) or (2,2), so a
compiled link gives a cube of resolutions whose vertices are closed thin
ladder words.  For n = 2 a vertex is realized by the dot-algebra TQFT on its
1-labeled circles, for n = 3 by the lattice state space of the ladder
2-representation; in both cases a generator's q-degree is the vertex shift
minus its foam degree.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebra import (GradedComplex, GradedMap, GradedModule, StructuralError, homology,
                      simplify_complex)
from .foam2 import edge_map2, state_space2
from .lrep import shared
from .skewhowe import Convention, GenSlice, compile_tangle
from .tangles import Cobordisms, braid_complex, cap_top

log = logging.getLogger("foamcat.homology")

local_rep = shared


class ResourceError(RuntimeError):
    """A configured size guard was exceeded."""


@dataclass
class Vertex:
    bits: tuple
    h: int
    shift: int
    blocks: list          # per slice: list of thin steps (kind, 0-based i)
    positions: list       # per crossing: path position of its insertion point
    space: object = None
    module: GradedModule = None


@dataclass
class WebComplex:
    conv: Convention
    compiled: object
    vertices: dict
    edges: dict = field(default_factory=dict)   # (bits, c) -> GradedMap
    complex: GradedComplex = None

    def chain_dimensions(self):
        return self.complex.chain_dimensions()


def _thin(gen):
    if gen.k != 1 or gen.shift:
        raise NotImplementedError("homology needs thin ladder rungs, got %s; give sl3 links "
                                  "as braids" % (gen,))
    return (gen.kind, gen.i - 1)


def _vertex(comp, bits):
    blocks, positions = [], []
    h = shift = 0
    pos = 0
    c = 0
    for s in comp.slices:
        if isinstance(s, GenSlice):
            blocks.append([_thin(s.gen)])
            pos += 1
            continue
        if s.labels not in ((1, 1), (2, 2)):
            raise NotImplementedError("crossing labels %r need thick rungs; give sl3 links as "
                                      "braids" % (s.labels,))
        b = bits[c]
        inserted = (b == 1) if s.sign > 0 else (b == 0)
        if s.sign > 0:
            h += b
            shift += b
        else:
            h += b - 1
            shift += b - 1
        positions.append(pos)
        if inserted:
            blocks.append([("F", s.i - 1), ("E", s.i - 1)])
            pos += 2
        else:
            blocks.append([])
        c += 1
    return Vertex(tuple(bits), h, shift, blocks, positions)


def _word(v):
    return tuple(g for b in v.blocks for g in b)


def cube_size(comp):
    return 2 ** len(comp.crossings())


def assemble(t_or_comp, conv_or_n, params=None, jobs=1, max_crossings=12, check=True,
             backend=None):
    """Cube of resolutions of a compiled link as a WebComplex.

    backend is 'tqft' (circle TQFT, n = 2 only) or 'engine' (ladder
    2-representation); the default is 'tqft' for n = 2 and 'engine' for n = 3.
    """
    n = conv_or_n.n if isinstance(conv_or_n, Convention) else conv_or_n
    comp = t_or_comp if hasattr(t_or_comp, "slices") else compile_tangle(t_or_comp, n)
    conv = comp.conv
    crs = comp.crossings()
    k = len(crs)
    if k > max_crossings:
        raise ResourceError("%d crossings exceed the cube limit %d" % (k, max_crossings))
    verts = {}
    for code in range(2 ** k):
        bits = tuple((code >> (k - 1 - c)) & 1 for c in range(k))
        verts[bits] = _vertex(comp, bits)
    backend = backend or ("tqft" if n == 2 else "engine")
    if backend not in ("tqft", "engine") or (backend == "tqft" and n != 2):
        raise ValueError("unknown backend %r for n=%d" % (backend, n))
    if backend == "tqft":
        for v in verts.values():
            v.space = state_space2(comp.domain, v.blocks, v.shift)
            v.module = v.space.module
    else:
        lr = local_rep(n, conv.m)
        s0 = lr.vacuum(comp.domain)

        def realize(v):
            sp = lr.space(_word(v), s0)
            v.space = sp
            v.module = GradedModule([v.shift - g for g in sp.degrees])
        _run(realize, list(verts.values()), jobs)
    wc = WebComplex(conv, comp, verts)
    tasks = [(bits, c) for bits in verts for c in range(k) if bits[c] == 0]

    def edge(task):
        bits, c = task
        tb = bits[:c] + (1,) + bits[c + 1:]
        src, tgt = verts[bits], verts[tb]
        sign = (-1) ** sum(bits[:c])
        if backend == "tqft":
            f = edge_map2("saddle", src.space, tgt.space, sign, params)
        else:
            f = _edge3(comp, crs[c], src, tgt, c, sign, lr, s0)
        if f.degree != 0:
            raise StructuralError("edge map of q-degree %d" % f.degree)
        wc.edges[task] = f
    _run(edge, tasks, jobs)
    if check:
        check_squares(wc)
    wc.complex = _total(wc)
    return wc


def _edge3(comp, cr, src, tgt, c, sign, lr, s0):
    w = _word(src)
    p = src.positions[c]
    i = cr.i - 1
    if cr.sign > 0:
        op = lr.cup(w, s0, p, "EF", i)
    else:
        op = lr.cap(w, s0, p)
    if op.tgt[0] != _word(tgt):
        raise StructuralError("edge map lands in the wrong web")
    M = lr.matrix(op, src.space, tgt.space)
    si, ti = src.module.ids(), tgt.module.ids()
    ent = {}
    rows, cols = M.shape
    for a in range(rows):
        for b in range(cols):
            v = int(M[a, b])
            if v:
                ent[(ti[a], si[b])] = sign * v
    f = GradedMap(src.module, tgt.module, ent, 0, check=False)
    for (t, s), v in ent.items():
        if tgt.module.degree(t) != src.module.degree(s):
            raise StructuralError("inhomogeneous edge entry")
    return f


def _run(fn, items, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            list(ex.map(fn, items))
    else:
        for it in items:
            fn(it)


def check_squares(wc):
    """Every face of the cube anticommutes; raises StructuralError otherwise."""
    k = len(wc.compiled.crossings())
    for bits in wc.vertices:
        zeros = [c for c in range(k) if bits[c] == 0]
        for x in range(len(zeros)):
            for y in range(x + 1, len(zeros)):
                a, b = zeros[x], zeros[y]
                ba = bits[:a] + (1,) + bits[a + 1:]
                bb = bits[:b] + (1,) + bits[b + 1:]
                p1 = wc.edges[(ba, b)].compose(wc.edges[(bits, a)])
                p2 = wc.edges[(bb, a)].compose(wc.edges[(bits, b)])
                tot = dict(p1.entries)
                for key, v in p2.entries.items():
                    tot[key] = tot.get(key, 0) + v
                if any(v != 0 for v in tot.values()):
                    raise StructuralError("square at %r in directions %d, %d does not anticommute"
                                          % (bits, a, b))


def _total(wc):
    byh = {}
    for bits, v in sorted(wc.vertices.items()):
        byh.setdefault(v.h, []).append(v)
    objs = {}
    for h, vs in byh.items():
        degs, ids = [], []
        for v in vs:
            degs += [d for _, d in v.module.generators]
            ids += v.module.ids()
        objs[h] = GradedModule(degs, ids)
    diffs = {}
    for (bits, c), f in wc.edges.items():
        h = wc.vertices[bits].h
        diffs.setdefault(h, {}).update(f.entries)
    maps = {h: GradedMap(objs[h], objs[h + 1], ent, 0, check=False)
            for h, ent in diffs.items() if h + 1 in objs}
    return GradedComplex(objs, maps, check=True)


def simplify(wc_or_complex):
    """Homotopy-equivalent complex with every unit differential entry cancelled."""
    C = wc_or_complex.complex if isinstance(wc_or_complex, WebComplex) else wc_or_complex
    return simplify_complex(C)


def framing_shift(comp, n):
    """(di, dj) taking framed to unframed homology."""
    fr = getattr(comp, "framing", None)
    if fr is not None:
        return fr
    return (0, (1 if n == 2 else 2) * comp.writhe)


def link_homology(t, conv_or_n, ring="Z", framed=False, params=None, jobs=1,
                  simplified=True, max_crossings=12, backend=None):
    """Integral (or rational) homology table of a link."""
    n = conv_or_n.n if isinstance(conv_or_n, Convention) else conv_or_n
    comp = t if hasattr(t, "slices") else compile_tangle(t, n)
    if hasattr(t, "closed") and not t.closed:
        raise ValueError("link homology needs a closed diagram")
    wc = assemble(comp, n, params, jobs, max_crossings, backend=backend)
    C = simplify(wc) if simplified else wc.complex
    log.info("chain groups %s -> %s", wc.complex.size(), C.size())
    H = homology(C, ring)
    if framed:
        return H
    di, dj = framing_shift(comp, n)
    return H.shifted(di, dj)


def euler_check(t, conv_or_n, jobs=1):
    """(Euler characteristic of homology, link polynomial, equal?) with matching framing."""
    from .qrep import link_poly
    n = conv_or_n.n if isinstance(conv_or_n, Convention) else conv_or_n
    chi = link_homology(t, n, "Z", jobs=jobs).euler_characteristic()
    p = link_poly(t, n)
    return chi, p, chi == p


# ---------------------------------------------------------------- projectors

LONGEST_WORD = {2: [1], 3: [1, 2, 1]}


@dataclass
class ProjectorTruncation:
    m: int
    k: int
    complex: object

    @property
    def chain_groups(self):
        return self.complex.chain_groups()

    def degrees(self):
        return self.complex.degrees()

    def identity_degrees(self):
        return sorted(h for h, gs in self.chain_groups.items() if any(w == "id" for w, _ in gs))

    def agrees_with(self, other, upto):
        a, b = self.chain_groups, other.chain_groups
        return all(a.get(h, []) == b.get(h, []) for h in range(0, upto + 1))

    def turnback(self):
        """Chain groups after stacking the turnback web on top and simplifying."""
        T = cap_top(self.complex)
        T.simplify()
        return T.chain_groups()

    def report(self, next_k=None):
        out = {"m": self.m, "k": self.k, "stable_range": 2 * self.k - 2,
               "chain_groups": self.chain_groups,
               "identity_only_in_degree_0": self.identity_degrees() == [0],
               "nonnegative_support": all(h >= 0 for h in self.degrees())}
        tb = self.turnback()
        out["turnback_acyclic_through"] = min(tb) - 1 if tb else None
        out["turnback_acyclic"] = not tb or min(tb) > 2 * self.k - 2
        if next_k is not None:
            out["stabilizes"] = self.agrees_with(next_k, 2 * self.k - 2)
        return out


def projector_truncation(m, k, conv=None, max_k=6, params=None, max_objects=4000):
    """Simplified complex of T_w^(2k) on m all-ones strands, scanned crossing by crossing."""
    if m not in LONGEST_WORD:
        raise ValueError("projector truncations are available for m = 2, 3")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > max_k:
        raise ResourceError("k=%d exceeds the projector cap %d" % (k, max_k))
    if conv is not None and conv.n != 2:
        raise NotImplementedError("projector truncations are built in the sl2 theory")

    def guard(C):
        size = sum(len(v) for v in C.objs.values())
        if size > max_objects:
            raise ResourceError("%d objects exceed the projector limit %d" % (size, max_objects))
    C = braid_complex(m, LONGEST_WORD[m] * (2 * k), Cobordisms(params), guard=guard)
    C.check()
    return ProjectorTruncation(m, k, C)
