"""PD codes to ladder slices by a planar frontier sweep.

A crossing [a, b, c, d] lists its edges counterclockwise with a the incoming
under strand.  The sweep keeps the frontier (edges cut by a horizontal line,
left to right) and places crossings on top of it one at a time, rotated so
that two counterclockwise-adjacent slots face down.  Edges that are needed
below a crossing but not yet present are created by a cup on the spot;
adjacent copies of one edge are closed by a cap.  Respecting every rotation
keeps the planar map, so any completed sweep draws the input diagram.

The ladder uses reservoirs of 0s (left) and n's (right): a cup pulls one of
each next to its position, caps push them back.  A strand oriented upward is
labeled 1, downward n-1.
"""
import logging

from .skewhowe import (CrossSlice, Compiled, Convention, GenSlice, LadderGen, ParseError,
                       _check_compiled, crossing_signs, pd_edge_orientation)

log = logging.getLogger("foamcat.pdsweep")


class SweepError(ValueError):
    """No planar sweep exists (the PD code is not planar)."""


def _slots(x, r):
    """(SW, SE, NW, NE) slot indices of a crossing placed with rotation r."""
    return (r + 3) % 4, r % 4, (r + 2) % 4, (r + 1) % 4


def plan_sweep(pd, limit=200000):
    """Morse events [('cup', p, edge) | ('cross', p, ci, r) | ('cap', p, edge)] for a PD code."""
    nx = len(pd)
    ends = {}
    for ci, x in enumerate(pd):
        for s, e in enumerate(x):
            ends.setdefault(e, []).append((ci, s))
    budget = [limit]
    seen = set()

    def cuppable(e, front, done):
        return e not in front and not any(ci in done for ci, _ in ends[e])

    def caps(front, events):
        front = list(front)
        changed = True
        while changed:
            changed = False
            for p in range(len(front) - 1):
                if front[p] == front[p + 1]:
                    events.append(("cap", p, front[p]))
                    del front[p:p + 2]
                    changed = True
                    break
        return tuple(front)

    def options(front, done):
        out = []
        for ci in range(nx):
            if ci in done:
                continue
            x = pd[ci]
            for r in range(4):
                sw, se, nw, ne = _slots(x, r)
                u, v = x[sw], x[se]
                cands = []
                for p in range(len(front) - 1):
                    if front[p] == u and front[p + 1] == v:
                        cands.append((2, p, []))
                if u != v:
                    for p in range(len(front)):
                        if front[p] == u and cuppable(v, front, done):
                            cands.append((1, p, [("cup", p + 1, v)]))
                        if front[p] == v and cuppable(u, front, done):
                            cands.append((1, p, [("cup", p, u)]))
                if not front:
                    if u == v and cuppable(u, front, done):
                        for p in range(len(front) + 1):
                            cands.append((0, p, [("cup", p, u)]))
                    elif cuppable(u, front, done) and cuppable(v, front, done):
                        for p in range(len(front) + 1):
                            cands.append((0, p + 1, [("cup", p, u), ("cup", p + 2, v)]))
                for used, p, pre in cands:
                    out.append((used, ci, r, p, pre))
        out.sort(key=lambda o: (-o[0], o[3]))
        return out

    def apply(front, ev):
        f = list(front)
        kind = ev[0]
        if kind == "cup":
            _, p, e = ev
            f[p:p] = [e, e]
        return f

    def rec(front, done, events):
        budget[0] -= 1
        if budget[0] < 0:
            raise SweepError("sweep search exceeded its budget")
        if len(done) == nx:
            return events if not front else None
        key = (front, frozenset(done))
        if key in seen:
            return None
        seen.add(key)
        for used, ci, r, p, pre in options(front, done):
            f = list(front)
            evs = list(events)
            for ev in pre:
                f = apply(f, ev)
                evs.append(ev)
            x = pd[ci]
            sw, se, nw, ne = _slots(x, r)
            if (f[p], f[p + 1]) != (x[sw], x[se]):
                continue
            f[p:p + 2] = [x[nw], x[ne]]
            evs.append(("cross", p, ci, r))
            f2 = caps(f, evs)
            if any(f2.count(e) > 2 for e in f2):
                continue
            res = rec(f2, done | {ci}, evs)
            if res is not None:
                return res
        return None

    res = rec((), frozenset(), [])
    if res is None:
        raise SweepError("PD code admits no planar sweep")
    return res


def pd_components(pd):
    """Number of link components: strands continue a -> c and b <-> d."""
    parent = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b, c, d in pd:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    return len({find(e) for x in pd for e in x})


def _thin_or_thick(kind, c, k):
    return GenSlice(LadderGen(kind, c + 1, k))


def compile_pd(t, n):
    """Compile a PD TangleInput into ladder slices on the (0^K, n^K) domain."""
    pd = t.pd
    if not pd:
        raise ParseError("empty PD code")
    events = plan_sweep(pd)
    signs = crossing_signs(t)
    dirn = pd_edge_orientation(pd)["dirn"]
    # label of each frontier entry: 1 if its strand runs upward
    width = cur = 0
    for ev in events:
        cur += 2 if ev[0] == "cup" else (-2 if ev[0] == "cap" else 0)
        width = max(width, cur)
    K = width // 2
    conv = Convention(n, 2 * K, n * K)
    dom = (0,) * K + (n,) * K
    seq = list(dom)
    z = K                      # zeros in the left reservoir
    front = []                 # entries: [edge, label]
    slices = []
    di = dj = 0
    up, down = 1, n - 1

    def swap(c):
        a, b = seq[c], seq[c + 1]
        if a > b:
            slices.append(_thin_or_thick("E", c, a - b))
        elif b > a:
            slices.append(_thin_or_thick("F", c, b - a))
        seq[c], seq[c + 1] = b, a

    def label_at(ci, slot, going_up):
        inc = dirn[(ci, slot)] > 0
        return up if inc == going_up else down

    def cup_labels(k, p):
        # the next crossing consumes one arm; its orientation fixes both labels
        nxt = next(ev for ev in events[k + 1:] if ev[0] == "cross")
        _, P, ci, r = nxt
        sw, se, _, _ = _slots(pd[ci], r)
        arm_slot = {P: sw, P + 1: se}
        for q in (p, p + 1):
            if q in arm_slot:
                lab = label_at(ci, arm_slot[q], True)
                return (lab, n - lab) if q == p else (n - lab, lab)
        raise SweepError("cup not consumed by the following crossing")

    ncross = 0
    for k, ev in enumerate(events):
        kind = ev[0]
        if kind == "cup":
            _, p, e = ev
            a, b = cup_labels(k, p)
            # a 0 moves right past p strands, an n moves left past the rest
            c0 = z - 1
            for j in range(p):
                swap(c0 + j)
            c1 = z + len(front)
            for j in range(len(front) - p):
                swap(c1 - 1 - j)
            c = z - 1 + p
            slices.append(_thin_or_thick("F", c, a))
            seq[c], seq[c + 1] = a, b
            front[p:p] = [[e, a], [e, b]]
            z -= 1
        elif kind == "cross":
            _, p, ci, r = ev
            x = pd[ci]
            sw, se, nw, ne = _slots(x, r)
            c = z + p
            labels = (seq[c], seq[c + 1])
            g = 1 if r % 2 == 0 else -1
            slices.append(CrossSlice(c + 1, g, labels))
            seq[c], seq[c + 1] = seq[c + 1], seq[c]
            if (label_at(ci, nw, False), label_at(ci, ne, False)) != (seq[c], seq[c + 1]):
                raise SweepError("inconsistent strand orientation at crossing %d" % ci)
            front[p:p + 2] = [[x[nw], seq[c]], [x[ne], seq[c + 1]]]
            eps = signs[ci]
            if g == eps:
                dj += (1 if n == 2 else 2) * eps
            elif n == 2:
                di, dj = di + eps, dj + 2 * eps
            else:
                a, b = MIXED3[eps]
                di, dj = di + a, dj + b
            ncross += 1
        else:
            _, p, e = ev
            c = z + p
            a, b = seq[c], seq[c + 1]
            if a + b != n:
                raise SweepError("cap joins strands of labels %d and %d" % (a, b))
            slices.append(_thin_or_thick("E", c, a))
            seq[c], seq[c + 1] = 0, n
            del front[p:p + 2]
            for j in range(p):
                swap(c - 1 - j)
            c1 = c + 1
            for j in range(len(front) - p):
                swap(c1 + j)
            z += 1
    comp = Compiled(conv, dom, slices, sum(signs), pd_components(pd))
    comp.framing = (di, dj)
    comp.events = events
    _check_compiled(comp, strict=False)
    return comp


# framed -> unframed shift of an sl3 crossing between oppositely oriented
# strands, by its sign; fixed by the one-crossing unknot diagrams
MIXED3 = {1: (1, 3), -1: (1, -3)}
