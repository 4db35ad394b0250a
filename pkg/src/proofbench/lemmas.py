"""Schematic lemmas used by the pigeonhole construction and the simulations."""
from __future__ import annotations

from .builder import lemma_def, taut_lemma
from .formula import FALSE, TRUE, And, Not, Or, imp

taut_lemma("nb", 2, lambda b, c: imp(Not(And(b, c)), imp(b, Not(c))))
taut_lemma("tri", 2, lambda b, c: Or(Not(b), Or(And(b, Not(c)), And(b, c))))


@lemma_def(3)
def _dist_l(b, x, y, z):
    """(x and (y or z)) -> ((x and y) or (x and z))"""
    xy, xz = And(x, y), And(x, z)
    w = Or(xy, xz)
    to_y = b.hs(b.ax("A5", x, y), b.mp(b.lemma("bcomb", xy, w, y), b.ax("A6", xy, xz)))
    to_z = b.hs(b.ax("A5", x, z), b.mp(b.lemma("bcomb", xz, w, z), b.ax("A7", xy, xz)))
    cases = b.weaken(b.ax("A8", y, z, w), x)
    return b.imp_import(b.hmp(b.hmp(cases, to_y), to_z))


@lemma_def(3)
def _dist_r(b, x, y, z):
    """((x or y) and z) -> ((x and z) or (y and z))"""
    xz, yz = And(x, z), And(y, z)
    w = Or(xz, yz)
    from_x = b.hs(b.ax("A5", x, z), b.mp(b.lemma("bcomb", xz, w, z), b.ax("A6", xz, yz)))
    from_y = b.hs(b.ax("A5", y, z), b.mp(b.lemma("bcomb", yz, w, z), b.ax("A7", xz, yz)))
    return b.imp_import(b.case(from_x, from_y))


def _injections(b, ts):
    """Proofs of t_k -> (t1 or (t2 or (t3 or t4)))."""
    t1, t2, t3, t4 = ts
    v2 = Or(t3, t4)
    v1 = Or(t2, v2)
    top = b.ax("A7", t1, v1)
    mid = b.ax("A7", t2, v2)
    return (b.ax("A6", t1, v1), b.hs(b.ax("A6", t2, v2), top),
            b.chain(b.ax("A6", t3, t4), mid, top), b.chain(b.ax("A7", t3, t4), mid, top))


def _pair_leaf(b, a, x, c, y, targets):
    """((a or x) and (c or y)) -> t1 or (t2 or (t3 or t4)).

    The four products a&c, a&y, x&c, x&y must contain the conjuncts of
    t1..t4 respectively.
    """
    inj = _injections(b, targets)
    prods = (And(a, c), And(a, y), And(x, c), And(x, y))
    into = [i if p is t else b.hs(b.conj_embed(p, t), i) for p, t, i in zip(prods, targets, inj)]
    from_a = b.hs(b.lemma("dist_l", a, c, y), b.case(into[0], into[1]))
    from_x = b.hs(b.lemma("dist_l", x, c, y), b.case(into[2], into[3]))
    return b.hs(b.lemma("dist_r", a, x, Or(c, y)), b.case(from_a, from_x))


@lemma_def(5)
def _eta_leaf(b, a, bb, c, d, m):
    """hole term over q unfolds to four hole terms over p"""
    return _pair_leaf(b, a, And(bb, m), c, And(d, m),
                      (And(a, c), And(a, m), And(c, m), And(bb, d)))


@lemma_def(5)
def _phi_leaf(b, a, bb, c, m1, m2):
    """functionality term over q unfolds to four functionality terms over p"""
    return _pair_leaf(b, a, And(bb, m1), c, And(bb, m2),
                      (And(a, c), And(a, bb), And(c, bb), And(m1, m2)))


def _med4(b, own, other, left):
    pp, aa, bb, cc = (Or(x, y) if left else Or(y, x) for x, y in zip(own, other))
    rest2 = Or(bb, cc)
    rest1 = Or(aa, rest2)

    def inj(x, y):
        return b.ax("A6", x, y) if left else b.ax("A7", y, x)

    p1, a1, b1, c1 = own
    p2, a2, b2, c2 = other
    tp = b.hs(inj(p1, p2), b.ax("A6", pp, rest1))
    ta = b.chain(inj(a1, a2), b.ax("A6", aa, rest2), b.ax("A7", pp, rest1))
    tb = b.chain(inj(b1, b2), b.ax("A6", bb, cc), b.ax("A7", aa, rest2), b.ax("A7", pp, rest1))
    tc = b.chain(inj(c1, c2), b.ax("A7", bb, cc), b.ax("A7", aa, rest2), b.ax("A7", pp, rest1))
    return b.case(tp, b.case(ta, b.case(tb, tc)))


@lemma_def(8)
def _med4_l(b, p1, a1, b1, c1, p2, a2, b2, c2):
    """(P1 or (A1 or (B1 or C1))) -> merged four-way disjunction"""
    return _med4(b, (p1, a1, b1, c1), (p2, a2, b2, c2), True)


@lemma_def(8)
def _med4_r(b, p1, a1, b1, c1, p2, a2, b2, c2):
    """(P2 or (A2 or (B2 or C2))) -> merged four-way disjunction"""
    return _med4(b, (p2, a2, b2, c2), (p1, a1, b1, c1), False)


@lemma_def(2)
def _demorgan_or(b, x, y):
    """not (x or y) -> (not x and not y)"""
    return b.hand(b.contrapose(b.ax("A6", x, y)), b.contrapose(b.ax("A7", x, y)))


@lemma_def(2)
def _demorgan_and(b, x, y):
    """not (x and y) -> (not x or not y)"""
    s = b.hs(b.lemma("demorgan_or", Not(x), Not(y)), b.and_mono(b.ax("A10", x), b.ax("A10", y)))
    return b.hs(b.contrapose(s), b.ax("A10", Or(Not(x), Not(y))))


@lemma_def(1)
def _false_of_neg_true(b, x):
    """not 1 -> 0 (x unused)"""
    nt = Not(TRUE)
    return b.hmp(b.lemma("efq", TRUE, FALSE), b.weaken(b.ax("A11"), nt))


@lemma_def(3)
def _res_imp(b, x, a, c):
    """(x -> c) -> ((x or a) -> (a or c))"""
    h, ac = imp(x, c), Or(a, c)
    s1 = b.mp(b.lemma("bcomb", c, ac, x), b.ax("A7", a, c))
    s3 = b.hs(s1, b.ax("A8", x, a, ac))
    return b.hmp(s3, b.weaken(b.ax("A6", a, c), h))


@lemma_def(2)
def _res_neg(b, x, a):
    """(x or a) -> (not x -> a)"""
    return b.or_mono(b.lemma("dni", x), b.refl(a))


@lemma_def(1)
def _res_0(b, x):
    """x -> (not x -> 0)"""
    nx = Not(x)
    contra = b.hs(b.conj_embed(And(x, nx), And(nx, x)), b.imp_import(b.lemma("efq", x, FALSE)))
    return b.export(contra)
