"""Random closed ladder words for property tests."""


def random_closed_word(rng, n, a0, length):
    m = len(a0)
    for _ in range(10000):
        a, w = list(a0), []
        for _ in range(length):
            opts = []
            for i in range(m - 1):
                if a[i] > 0 and a[i + 1] < n:
                    opts.append(("E", i))
                if a[i + 1] > 0 and a[i] < n:
                    opts.append(("F", i))
            g = rng.choice(opts)
            w.append(g)
            d = -1 if g[0] == "E" else 1
            a[g[1]] += d
            a[g[1] + 1] -= d
        if a == list(a0):
            return tuple(w)
    return None


def random_foam3_webs(seed, count, max_faces=4):
    """(a0, word, maps) triples: closed sl3 webs with few faces and a dot or cap to transport."""
    import random
    from foamcat.foam3 import web_faces
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = rng.choice([2, 3, 4])
        k = rng.randint(1, m - 1)
        a0 = (0,) * k + (3,) * (m - k)
        w = random_closed_word(rng, 3, a0, rng.choice([2, 4, 6, 8]))
        if w is None or web_faces(a0, w) > max_faces:
            continue
        caps = [p for p in range(len(w) - 1) if w[p][1] == w[p + 1][1] and w[p][0] != w[p + 1][0]]
        maps = [("dot", rng.randrange(len(w)))]
        if caps:
            maps.append(("cap", rng.choice(caps)))
        out.append((a0, w, maps))
    return out
