import random

import pytest

from foamcat.lrep import LocalRep, shared, t_scalar
from foamcat.qrep import closed_web_eval
from foamcat.skewhowe import Convention, LadderGen, LadderWord

from webgen import random_closed_word


def webs(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([2, 3])
        m = rng.choice([2, 3, 4])
        k = rng.randint(1, m - 1)
        a0 = tuple([0] * k + [n] * (m - k))
        w = random_closed_word(rng, n, a0, rng.choice([2, 4, 6]))
        if w is not None:
            out.append((n, a0, w))
    return out


@pytest.mark.parametrize("n,a0,w", webs(1, 40))
def test_state_space_dimension_is_the_web_value(n, a0, w):
    R = shared(n, len(a0))
    s0 = R.vacuum(a0)
    g = R.space(w, s0).graded_dimension()
    conv = Convention(n, len(a0), sum(a0))
    lw = LadderWord(a0, tuple(LadderGen(kd, i + 1) for kd, i in reversed(w)), 0)
    assert g == closed_web_eval(lw, conv)
    assert R.space(w, s0, "last").graded_dimension() == g


def test_klr_scalars():
    assert t_scalar(0, 1) == 1
    assert t_scalar(1, 0) == -1
    assert t_scalar(0, 2) == 1


def test_specializations_must_be_distinct():
    with pytest.raises(ValueError):
        LocalRep(2, 2, xs=[5, 5])


def test_shared_instances_are_cached():
    assert shared(3, 2) is shared(3, 2)


def test_dot_then_cap_degrees():
    R = shared(2, 2)
    s0 = R.vacuum((0, 2))
    w = (("F", 0), ("E", 0))
    d = R.dot(w, s0, 0)
    cap = R.cap(w, s0, 0)
    assert d.degree == 2
    assert (cap @ d).degree == cap.degree + 2
