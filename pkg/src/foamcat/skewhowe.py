"""Weight sequences, ladder words, Rickard complexes and the tangle compiler.

Conventions used throughout the package:

* Columns and colors are 1-based in the public API (E_i acts on columns i
  and i+1).  Internally the engines use 0-based column indices.
* A LadderWord lists its generators in written order (leftmost first); the
  domain is the object on the right, so gens[-1] is applied first.
* A compiled tangle is a list of slices in the order they are applied.
"""
import json
import re
from dataclasses import dataclass, field
from typing import Optional, Tuple


class ParseError(ValueError):
    """Malformed PD code or braid word."""


@dataclass(frozen=True)
class Convention:
    n: int
    m: int
    N: int

    def __post_init__(self):
        if self.n not in (2, 3):
            raise ValueError("n must be 2 or 3")
        if self.m < 1:
            raise ValueError("m must be positive")

    @staticmethod
    def t(i, j):
        """Scalars t_ij of the KLR algebra (colors as integers)."""
        if j == i + 1:
            return 1
        if j == i - 1:
            return -1
        return 1


ZERO = None  # the zero object


def is_valid(seq, n):
    return seq is not None and all(0 <= a <= n for a in seq)


def slm_weight(seq):
    """lambda_i = a_{i+1} - a_i."""
    return tuple(seq[i + 1] - seq[i] for i in range(len(seq) - 1))


def weight_to_seq(lam, conv):
    """The sequence with the given sl_m weight, total conv.N and entries in [0, n], or ZERO."""
    lam = tuple(lam)
    m = len(lam) + 1
    if m != conv.m:
        raise ValueError("weight has %d entries, expected %d" % (len(lam), conv.m - 1))
    partial = [0]
    for l in lam:
        partial.append(partial[-1] + l)
    tot = conv.N - sum(partial)
    if tot % m:
        return ZERO
    a1 = tot // m
    seq = tuple(a1 + p for p in partial)
    return seq if is_valid(seq, conv.n) else ZERO


@dataclass(frozen=True)
class LadderGen:
    kind: str        # 'E' or 'F'
    i: int           # 1-based color
    k: int = 1       # thickness
    shift: int = 0

    def __post_init__(self):
        if self.kind not in ("E", "F"):
            raise ValueError("generator kind must be E or F")
        if self.i < 1 or self.k < 1:
            raise ValueError("bad generator %r" % (self,))

    def __str__(self):
        s = "%s%d" % (self.kind, self.i)
        if self.k > 1:
            s += "^(%d)" % self.k
        if self.shift:
            s += "{%d}" % self.shift
        return s


def E(i, k=1):
    return LadderGen("E", i, k)


def F(i, k=1):
    return LadderGen("F", i, k)


def apply_gen(seq, g, conv):
    """Boundary after applying g (E_i^(k): a_i - k, a_{i+1} + k)."""
    if seq is None:
        return ZERO
    if not 1 <= g.i < len(seq):
        raise ValueError("generator %s out of range for %r" % (g, seq))
    a = list(seq)
    i = g.i - 1
    d = g.k if g.kind == "E" else -g.k
    a[i] -= d
    a[i + 1] += d
    seq = tuple(a)
    return seq if is_valid(seq, conv.n) else ZERO


@dataclass(frozen=True)
class LadderWord:
    domain: Optional[tuple]
    gens: Tuple[LadderGen, ...] = ()
    shift: int = 0

    def applied(self):
        """Generators in the order they act."""
        return list(reversed(self.gens))

    def boundaries(self, conv):
        out = [self.domain]
        for g in self.applied():
            out.append(apply_gen(out[-1], g, conv))
        return out

    def codomain(self, conv):
        return self.boundaries(conv)[-1]

    def is_zero(self, conv):
        return any(b is None for b in self.boundaries(conv))

    def __str__(self):
        body = " ".join(str(g) for g in self.gens) or "1"
        s = "%s 1_%s" % (body, self.domain)
        if self.shift:
            s += " {%d}" % self.shift
        return s


@dataclass
class FormalComplex:
    """terms[h] = list of (LadderWord, shift); arrows = (h, src, tgt, label)."""
    terms: dict
    arrows: list = field(default_factory=list)

    def degrees(self):
        return sorted(self.terms)

    def length(self):
        return len(self.terms)


def _word(domain, applied, conv):
    w = LadderWord(domain, tuple(reversed(applied)))
    return None if w.is_zero(conv) else w


def rickard(i, seq, sign, conv):
    """Rickard complex of T_i^{+-1} at the object seq (T_i starts at seq)."""
    seq = tuple(seq)
    lam = seq[i] - seq[i - 1]
    terms = {}
    for s in range(conv.n + 2):
        if sign > 0:
            if lam <= 0:
                applied = [LadderGen("F", i, s)] if s else []
                applied += [LadderGen("E", i, -lam + s)] if -lam + s else []
            else:
                applied = [LadderGen("E", i, s)] if s else []
                applied += [LadderGen("F", i, lam + s)] if lam + s else []
            h, sh = s, s
        else:
            if lam >= 0:
                applied = [LadderGen("F", i, lam + s)] if lam + s else []
                applied += [LadderGen("E", i, s)] if s else []
            else:
                applied = [LadderGen("E", i, -lam + s)] if -lam + s else []
                applied += [LadderGen("F", i, s)] if s else []
            h, sh = -s, -s
        if any(g.k > conv.n for g in applied):
            continue
        w = _word(seq, applied, conv)
        if w is not None:
            terms[h] = [(w, sh)]
    arrows = []
    hs = sorted(terms)
    for a, b in zip(hs, hs[1:]):
        if b == a + 1:
            arrows.append((a, 0, 0, "d%d" % (abs(b) if sign > 0 else abs(a))))
    return FormalComplex(terms, arrows)


def canonical_sequence(seq, n):
    """(canonical reordering, braiding word) moving 0s to the front and n's to the back.

    The braiding word is a LadderWord of trivial braidings (single-term
    Rickard complexes) realizing the reorder by insertion sort.
    """
    cur = list(seq)
    applied = []
    conv = Convention(n, len(seq), sum(seq))

    def swap(p):
        # swap columns p, p+1 (0-based) with the single-term braiding T_{p+1}
        cx = rickard(p + 1, tuple(cur), +1, conv)
        (w, _), = cx.terms[0]
        applied.extend(w.applied())
        cur[p], cur[p + 1] = cur[p + 1], cur[p]

    changed = True
    while changed:
        changed = False
        for p in range(len(cur) - 1):
            x, y = cur[p], cur[p + 1]
            if (y == 0 and x != 0) or (x == n and y != n):
                swap(p)
                changed = True
    return tuple(cur), LadderWord(tuple(seq), tuple(reversed(applied)))


def reduced_sequence(seq, n):
    return tuple(a for a in seq if 0 < a < n)


# ---------------------------------------------------------------- tangles

@dataclass
class TangleInput:
    pd: Optional[list] = None
    signs: Optional[list] = None
    braid: Optional[list] = None
    strands: Optional[int] = None
    closed: bool = True

    @property
    def is_braid(self):
        return self.braid is not None


def parse_braid(text, strands=None, closed=True):
    """Parse 's1 s1 s-2 ...' (also accepts 'braid:' prefix and signed integers)."""
    t = text.strip()
    if t.lower().startswith("braid:"):
        t = t[6:]
    toks = [x for x in re.split(r"[\s,]+", t) if x]
    gens = []
    for tok in toks:
        m = re.fullmatch(r"(?:s|sigma)?(-?\d+)(\^-1|'|\^-?1)?", tok, re.IGNORECASE)
        if not m or int(m.group(1)) == 0:
            raise ParseError("bad braid token %r" % tok)
        v = int(m.group(1))
        if m.group(2) in ("^-1", "'"):
            v = -v
        gens.append(v)
    need = max([abs(g) for g in gens], default=0) + 1
    if strands is None:
        strands = max(need, 1)
    if need > strands:
        raise ParseError("braid index %d out of range for %d strands" % (need - 1, strands))
    return TangleInput(braid=gens, strands=strands, closed=closed)


def parse_pd(data):
    """Parse {"pd": [[a,b,c,d], ...], "orientations": [...]} (dict or JSON text)."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError("invalid JSON: %s" % exc) from None
    if isinstance(data, list):
        data = {"pd": data}
    if not isinstance(data, dict) or "pd" not in data:
        raise ParseError("PD input needs a 'pd' key")
    pd = data["pd"]
    if not isinstance(pd, list):
        raise ParseError("'pd' must be a list")
    out = []
    for x in pd:
        if not (isinstance(x, (list, tuple)) and len(x) == 4 and all(isinstance(v, int) for v in x)):
            raise ParseError("crossing %r is not a 4-tuple of integers" % (x,))
        out.append(tuple(x))
    counts = {}
    for x in out:
        for v in x:
            counts[v] = counts.get(v, 0) + 1
    bad = [v for v, c in counts.items() if c != 2]
    if bad:
        raise ParseError("edges %r do not appear exactly twice" % sorted(bad))
    signs = data.get("orientations")
    if signs is not None:
        if len(signs) != len(out) or any(s not in (1, -1) for s in signs):
            raise ParseError("'orientations' must list a sign +1/-1 per crossing")
        signs = list(signs)
    return TangleInput(pd=out, signs=signs)


def parse_input(text):
    """Inline braid ('braid: s1 s1'), named example or PD JSON text."""
    t = text.strip()
    if t.lower().startswith("braid:") or re.fullmatch(r"(s-?\d+\s*)+", t):
        return parse_braid(t)
    if t.lower() in EXAMPLES:
        return example(t.lower())
    return parse_pd(t)


def pd_edge_orientation(pd):
    """Orient every edge: returns {'over_in': [...]} naming the incoming over slot ('b' or 'd')."""
    n = len(pd)
    # edge -> list of (crossing, slot)
    ends = {}
    for ci, x in enumerate(pd):
        for s, e in enumerate(x):
            ends.setdefault(e, []).append((ci, s))
    # direction of each (crossing, slot): +1 incoming, -1 outgoing
    dirn = {}
    for ci in range(n):
        dirn[(ci, 0)] = +1
        dirn[(ci, 2)] = -1
    changed = True
    while changed:
        changed = False
        for e, lst in ends.items():
            if len(lst) != 2:
                continue
            (c1, s1), (c2, s2) = lst
            for (p, q) in (((c1, s1), (c2, s2)), ((c2, s2), (c1, s1))):
                if p in dirn and q not in dirn:
                    dirn[q] = -dirn[p]
                    changed = True
        for ci in range(n):
            for s, o in ((1, 3), (3, 1)):
                if (ci, s) in dirn and (ci, o) not in dirn:
                    dirn[(ci, o)] = -dirn[(ci, s)]
                    changed = True
    over_in = []
    for ci, (a, b, c, d) in enumerate(pd):
        if (ci, 1) not in dirn:
            # orientation undetermined by under strands: use edge labels
            dirn[(ci, 1)] = +1 if (d - b == 1 or b - d > 1) else -1
            dirn[(ci, 3)] = -dirn[(ci, 1)]
        over_in.append("b" if dirn[(ci, 1)] > 0 else "d")
    return {"over_in": over_in, "dirn": dirn}


def writhe(t):
    if t.is_braid:
        return sum(1 if g > 0 else -1 for g in t.braid)
    return sum(crossing_signs(t))


def crossing_signs(t):
    if t.is_braid:
        return [1 if g > 0 else -1 for g in t.braid]
    if t.signs is not None:
        return list(t.signs)
    info = pd_edge_orientation(t.pd)
    # under strand a -> c (upward); over from d (left) to b (right) is positive
    return [+1 if o == "d" else -1 for o in info["over_in"]]


# ---------------------------------------------------------------- slices

@dataclass(frozen=True)
class GenSlice:
    gen: LadderGen


@dataclass(frozen=True)
class CrossSlice:
    i: int            # 1-based column of the lower strand
    sign: int         # +1 positive (T_i), -1 negative (T_i^-1)
    labels: tuple     # labels of the strands at columns i, i+1 before the crossing


@dataclass
class Compiled:
    conv: Convention
    domain: tuple
    slices: list
    writhe: int
    components: int = 1
    framing: Optional[tuple] = None     # (di, dj) framed -> unframed; None means the writhe rule

    def boundaries(self):
        out = [self.domain]
        for s in self.slices:
            cur = out[-1]
            if isinstance(s, GenSlice):
                out.append(apply_gen(cur, s.gen, self.conv))
            else:
                a = list(cur)
                a[s.i - 1], a[s.i] = a[s.i], a[s.i - 1]
                out.append(tuple(a))
        return out

    def crossings(self):
        return [s for s in self.slices if isinstance(s, CrossSlice)]

    def word_string(self):
        parts = []
        for s in reversed(self.slices):
            if isinstance(s, GenSlice):
                parts.append(str(s.gen))
            else:
                parts.append("T%d%s" % (s.i, "" if s.sign > 0 else "^-1"))
        return " ".join(parts) + " 1_%s" % (self.domain,)


def compile_braid(t, n):
    """Closed braid on k strands as nested cups, the braid on columns 1..k, nested caps."""
    k = t.strands
    m, N = 2 * k, n * k
    conv = Convention(n, m, N)
    dom = tuple([0] * k + [n] * k)
    sl = []
    for p in range(1, k + 1):
        sl.append(GenSlice(F(k)))
        for c in range(k - 1, p - 1, -1):
            sl.append(GenSlice(F(c)))          # (0,1) -> (1,0)
        for c in range(k + 1, 2 * k - p + 1):
            sl.append(GenSlice(F(c)))          # (n-1,n) -> (n,n-1)
    for g in t.braid:
        sl.append(CrossSlice(abs(g), 1 if g > 0 else -1, (1, 1)))
    for p in range(k, 0, -1):
        for c in range(2 * k - p, k, -1):
            sl.append(GenSlice(E(c)))          # (n,n-1) -> (n-1,n)
        for c in range(p, k):
            sl.append(GenSlice(E(c)))          # (1,0) -> (0,1)
        sl.append(GenSlice(E(k)))
    comp = Compiled(conv, dom, sl, writhe(t), braid_components(t))
    _check_compiled(comp)
    return comp


def braid_components(t):
    perm = list(range(t.strands))
    for g in t.braid:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, comps = set(), 0
    for s in range(t.strands):
        if s in seen:
            continue
        comps += 1
        while s not in seen:
            seen.add(s)
            s = perm[s]
    return comps


def _check_compiled(comp, strict=True):
    bs = comp.boundaries()
    if any(b is None for b in bs):
        raise ValueError("compiled word hits the zero object")
    if bs[-1] != comp.domain:
        raise ValueError("compiled word is not closed")
    for s, b in zip(comp.slices, bs):
        if strict and isinstance(s, CrossSlice) and (b[s.i - 1], b[s.i]) != (1, 1):
            raise ValueError("crossing slice at a non left-oriented position")


def compile_tangle(t, conv_or_n):
    n = conv_or_n.n if isinstance(conv_or_n, Convention) else conv_or_n
    if t.is_braid:
        if not t.closed:
            raise ValueError("open braids are handled by the projector code")
        return compile_braid(t, n)
    from .pdsweep import compile_pd
    return compile_pd(t, n)


# ---------------------------------------------------------------- examples

EXAMPLES = {
    "unknot": "braid: ",
    "hopf+": "braid: s1 s1",
    "hopf-": "braid: s-1 s-1",
    "trefoil+": "braid: s1 s1 s1",
    "trefoil-": "braid: s-1 s-1 s-1",
    "figure8": "braid: s1 s-2 s1 s-2",
}


def example(name):
    name = name.lower()
    if name == "unknot":
        return TangleInput(braid=[], strands=1)
    if name == "figure8":
        return parse_braid(EXAMPLES[name], strands=3)
    return parse_braid(EXAMPLES[name])
