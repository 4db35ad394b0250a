"""Programmatic construction of Hilbert-style proofs.

Lines are keyed by their (interned) formula, so proving the same formula
twice costs nothing. Schematic lemmas are proved once over meta-atoms and
replayed under substitution; since F and EF have no substitution rule, the
replay re-emits every line of the template.
"""
from __future__ import annotations

from .formula import (
    FALSE, TRUE, And, Formula, Not, Or, Var, apply_substitution, atom_list,
    iff, imp, split_imp, value3,
)
from .proofs import HilbertLine, HilbertProof, scheme_instance


class NotATautology(ValueError):
    pass


class ProofBuilder:
    def __init__(self, variant: str = "EF"):
        self.variant = variant
        self.lines: list = []
        self.ids: dict = {}
        self.base = 0

    # -- raw lines -------------------------------------------------------------

    def has(self, f: Formula) -> bool:
        return id(f) in self.ids

    def line_id(self, f: Formula) -> int:
        return self.ids[id(f)]

    def _emit(self, f, kind, a=None, b=None):
        if id(f) not in self.ids:
            lid = self.base + len(self.lines) + 1
            self.lines.append(HilbertLine(lid, f, kind, a, b))
            self.ids[id(f)] = lid
        return f

    def ax(self, scheme: str, *args) -> Formula:
        return self._emit(scheme_instance(scheme, args), "AX", scheme, tuple(args))

    def mp(self, major: Formula, minor: Formula) -> Formula:
        parts = split_imp(major)
        if parts is None or parts[0] is not minor:
            raise ValueError("modus ponens premises do not fit")
        ids = self.ids
        if id(major) not in ids or id(minor) not in ids:
            raise ValueError("modus ponens on an unproved premise")
        return self._emit(parts[1], "MP", ids[id(major)], ids[id(minor)])

    def ext(self, q: str, d: Formula) -> Formula:
        return self._emit(iff(Var(q), d), "EXT", q)

    def sub(self, src: Formula, pairs) -> Formula:
        pairs = tuple(pairs)
        f = apply_substitution(src, dict(pairs))
        return self._emit(f, "SUB", self.ids[id(src)], pairs)

    def proof(self, variant: str = None) -> HilbertProof:
        return HilbertProof(variant or self.variant, list(self.lines))

    # -- derived rules ---------------------------------------------------------

    def refl(self, a: Formula) -> Formula:
        """a -> a in five lines."""
        aa = imp(a, a)
        if id(aa) in self.ids:
            return aa
        s1 = self.ax("A1", a, aa)
        s2 = self.ax("A2", a, aa, a)
        s3 = self.mp(s2, s1)
        s4 = self.ax("A1", a, a)
        return self.mp(s3, s4)

    def weaken(self, x: Formula, a: Formula) -> Formula:
        """From x, a -> x."""
        target = imp(a, x)
        if id(target) in self.ids:
            return target
        return self.mp(self.ax("A1", x, a), x)

    def hmp(self, hxy: Formula, hx: Formula) -> Formula:
        """From h -> (x -> y) and h -> x, h -> y."""
        h, xy = split_imp(hxy)
        x, y = split_imp(xy)
        target = imp(h, y)
        if id(target) in self.ids:
            return target
        return self.mp(self.mp(self.ax("A2", h, x, y), hxy), hx)

    def hs(self, ab: Formula, bc: Formula) -> Formula:
        """From a -> b and b -> c, a -> c."""
        a, b = split_imp(ab)
        b2, c = split_imp(bc)
        if b2 is not b:
            raise ValueError("hypothetical syllogism premises do not chain")
        if a is b:
            return bc
        if b is c:
            return ab
        target = imp(a, c)
        if id(target) in self.ids:
            return target
        return self.hmp(self.weaken(bc, a), ab)

    def chain(self, *steps: Formula) -> Formula:
        out = steps[0]
        for s in steps[1:]:
            out = self.hs(out, s)
        return out

    def case(self, ac: Formula, bc: Formula) -> Formula:
        """From a -> c and b -> c, (a or b) -> c."""
        a, c = split_imp(ac)
        b, c2 = split_imp(bc)
        if c2 is not c:
            raise ValueError("case split targets differ")
        target = imp(Or(a, b), c)
        if id(target) in self.ids:
            return target
        return self.mp(self.mp(self.ax("A8", a, b, c), ac), bc)

    def hand(self, hx: Formula, hy: Formula) -> Formula:
        """From h -> x and h -> y, h -> (x and y)."""
        h, x = split_imp(hx)
        _, y = split_imp(hy)
        target = imp(h, And(x, y))
        if id(target) in self.ids:
            return target
        w = self.weaken(self.ax("A5", x, y), h)
        return self.hmp(self.hmp(w, hx), hy)

    def and_mono(self, ac: Formula, bd: Formula) -> Formula:
        """From a -> c and b -> d, (a and b) -> (c and d)."""
        a, c = split_imp(ac)
        b, d = split_imp(bd)
        target = imp(And(a, b), And(c, d))
        if id(target) in self.ids:
            return target
        left = self.hs(self.ax("A3", a, b), ac)
        right = self.hs(self.ax("A4", a, b), bd)
        return self.hand(left, right)

    def or_mono(self, ac: Formula, bd: Formula) -> Formula:
        """From a -> c and b -> d, (a or b) -> (c or d)."""
        a, c = split_imp(ac)
        b, d = split_imp(bd)
        target = imp(Or(a, b), Or(c, d))
        if id(target) in self.ids:
            return target
        return self.case(self.hs(ac, self.ax("A6", c, d)), self.hs(bd, self.ax("A7", c, d)))

    def or_comm(self, a: Formula, b: Formula) -> Formula:
        """(a or b) -> (b or a)."""
        return self.case(self.ax("A7", b, a), self.ax("A6", b, a))

    def contrapose(self, ab: Formula) -> Formula:
        """From a -> b, (not b) -> (not a)."""
        a, b = split_imp(ab)
        target = imp(Not(b), Not(a))
        if id(target) in self.ids:
            return target
        s = self.mp(self.ax("A9", a, b), ab)
        return self.hs(self.ax("A1", Not(b), a), s)

    def export(self, xyz: Formula) -> Formula:
        """From (x and y) -> z, x -> (y -> z)."""
        xy, z = split_imp(xyz)
        x, y = xy.left, xy.right
        target = imp(x, imp(y, z))
        if id(target) in self.ids:
            return target
        pair = self.ax("A5", x, y)
        w = self.weaken(xyz, x)
        bl = self.lemma("bcomb", xy, z, y)
        return self.hmp(self.hs(w, bl), pair)

    def ext_fwd(self, q: str, d: Formula) -> Formula:
        """q -> d from the extension line for q."""
        e = iff(Var(q), d)
        return self.mp(self.ax("A3", imp(Var(q), d), imp(d, Var(q))), e)

    def ext_bwd(self, q: str, d: Formula) -> Formula:
        """d -> q from the extension line for q."""
        e = iff(Var(q), d)
        return self.mp(self.ax("A4", imp(Var(q), d), imp(d, Var(q))), e)

    # -- schematic lemmas ------------------------------------------------------

    def lemma(self, name: str, *args: Formula) -> Formula:
        return self.replay(template(name), args)

    def replay(self, tpl, args) -> Formula:
        subst = dict(zip(tpl.metas, args))
        memo: dict = {}
        ids = self.ids
        lines = self.lines
        for f, kind, a, b in tpl.lines:
            g = apply_substitution(f, subst, memo)
            if id(g) in ids:
                continue
            lid = self.base + len(lines) + 1
            if kind == "AX":
                lines.append(HilbertLine(lid, g, "AX", a, tuple(apply_substitution(x, subst, memo) for x in b)))
            else:
                ma = ids[id(apply_substitution(a, subst, memo))]
                mb = ids[id(apply_substitution(b, subst, memo))]
                lines.append(HilbertLine(lid, g, "MP", ma, mb))
            ids[id(g)] = lid
        return apply_substitution(tpl.conclusion, subst, memo)

    # -- generic prover for small tautologies ----------------------------------

    def taut(self, f: Formula) -> Formula:
        """Prove a tautology by case splitting on atoms (exponential; keep it small)."""
        if id(f) in self.ids:
            return f
        top = self._dpll(f, TRUE, {}, atom_list(f))
        return self.mp(top, self.ax("A11"))

    def _dpll(self, f, h, partial, order):
        v = value3(f, partial)
        if v == 1:
            return self._kalmar(f, h, partial, {})
        if v == 0:
            raise NotATautology(str(f))
        x = next(a for a in order if a not in partial)
        xv = Var(x)
        branches = []
        for lit, val in ((xv, 1), (Not(xv), 0)):
            partial[x] = val
            sub = self._dpll(f, And(lit, h), partial, order)
            del partial[x]
            branches.append(self.export(sub))
        joined = self.case(branches[0], branches[1])
        return self.mp(joined, self.lemma("em", xv))

    def _project(self, h, lit):
        """h -> lit where h is lit_k and (... and (lit_1 and 1))."""
        if h.left is lit:
            return self.ax("A3", h.left, h.right)
        return self.hs(self.ax("A4", h.left, h.right), self._project(h.right, lit))

    def _kalmar(self, g, h, partial, vals):
        """h -> g when g is true under partial, h -> (not g) when false."""
        memo = vals
        v = value3(g, partial, memo)
        op = g.op
        if op == "var":
            return self._project(h, g if v == 1 else Not(g))
        if op == "const":
            if v == 1:
                return self.weaken(self.ax("A11"), h)
            return self.weaken(self.lemma("not0"), h)
        if op == "not":
            inner = self._kalmar(g.left, h, partial, memo)
            if v == 1:
                return inner
            return self.hs(inner, self.lemma("dni", g.left))
        a, b = g.left, g.right
        va = value3(a, partial, memo)
        if op == "and":
            if v == 1:
                return self.hand(self._kalmar(a, h, partial, memo), self._kalmar(b, h, partial, memo))
            if va == 0:
                return self.hs(self._kalmar(a, h, partial, memo), self.lemma("nand_l", a, b))
            return self.hs(self._kalmar(b, h, partial, memo), self.lemma("nand_r", a, b))
        if v == 1:
            if va == 1:
                return self.hs(self._kalmar(a, h, partial, memo), self.ax("A6", a, b))
            return self.hs(self._kalmar(b, h, partial, memo), self.ax("A7", a, b))
        nor = self.weaken(self.lemma("nor", a, b), h)
        return self.hmp(self.hmp(nor, self._kalmar(a, h, partial, memo)), self._kalmar(b, h, partial, memo))


# -- templates -------------------------------------------------------------------

class Template:
    __slots__ = ("metas", "lines", "conclusion")

    def __init__(self, metas, lines, conclusion):
        self.metas = metas
        self.lines = lines
        self.conclusion = conclusion

    def __len__(self):
        return len(self.lines)


_TEMPLATES: dict = {}
LEMMAS: dict = {}
META = "ABCDEFGHIJKLMN"


def lemma_def(arity: int):
    def register(fn):
        LEMMAS[fn.__name__.lstrip("_")] = (arity, fn)
        return fn
    return register


def template(name: str) -> Template:
    tpl = _TEMPLATES.get(name)
    if tpl is None:
        arity, fn = LEMMAS[name]
        metas = [Var(m) for m in META[:arity]]
        scratch = ProofBuilder()
        concl = fn(scratch, *metas)
        lines = _record(scratch)
        tpl = Template(tuple(META[:arity]), lines, concl)
        _TEMPLATES[name] = tpl
    return tpl


def taut_lemma(name: str, arity: int, statement):
    """Register a lemma proved by the generic prover from a statement builder."""
    def fn(b, *metas):
        return b.taut(statement(*metas))
    LEMMAS[name] = (arity, fn)


@lemma_def(3)
def _bcomb(b, w, z, y):
    """(w -> z) -> ((y -> w) -> (y -> z))"""
    return b.hs(b.ax("A1", imp(w, z), y), b.ax("A2", y, w, z))


@lemma_def(1)
def _em(b, x):
    """x or not x"""
    e = Or(x, Not(x))
    c1 = b.contrapose(b.ax("A6", x, Not(x)))
    c2 = b.hs(b.contrapose(b.ax("A7", x, Not(x))), b.ax("A10", x))
    nne = b.mp(b.mp(b.ax("A9", Not(e), x), c2), c1)
    return b.mp(b.ax("A10", e), nne)


@lemma_def(1)
def _dni(b, a):
    """a -> not not a"""
    na = Not(a)
    s1 = b.ax("A1", a, na)
    s2 = b.weaken(b.refl(na), a)
    s3 = b.weaken(b.ax("A9", na, a), a)
    return b.hmp(b.hmp(s3, s1), s2)


@lemma_def(0)
def _not0(b):
    s = b.ax("A9", FALSE, TRUE)
    return b.mp(b.mp(s, b.ax("A12", TRUE)), b.ax("A12", Not(TRUE)))


@lemma_def(2)
def _nand_l(b, x, y):
    """not x -> not (x and y)"""
    xy = And(x, y)
    s = b.mp(b.ax("A9", xy, x), b.ax("A3", x, y))
    return b.hs(b.ax("A1", Not(x), xy), s)


@lemma_def(2)
def _nand_r(b, x, y):
    """not y -> not (x and y)"""
    xy = And(x, y)
    s = b.mp(b.ax("A9", xy, y), b.ax("A4", x, y))
    return b.hs(b.ax("A1", Not(y), xy), s)


@lemma_def(2)
def _efq(b, x, y):
    """not x -> (x -> y)"""
    nx = Not(x)
    h = And(nx, x)
    hn = b.ax("A3", nx, x)
    hp = b.ax("A4", nx, x)
    t1 = b.hs(hp, b.ax("A1", x, Not(y)))
    t2 = b.hs(hn, b.ax("A1", nx, Not(y)))
    nny = b.hmp(b.hmp(b.weaken(b.ax("A9", Not(y), x), h), t1), t2)
    return b.export(b.hs(nny, b.ax("A10", y)))


@lemma_def(2)
def _nor(b, x, y):
    """not x -> (not y -> not (x or y))"""
    nx, ny = Not(x), Not(y)
    h = And(nx, ny)
    xy = Or(x, y)
    h_nx = b.ax("A3", nx, ny)
    h_ny = b.ax("A4", nx, ny)
    t1 = b.hs(h_nx, b.ax("A1", nx, xy))
    t2 = b.weaken(b.refl(x), h)
    t3 = b.hs(h_ny, b.lemma("efq", y, x))
    t4 = b.hmp(b.hmp(b.weaken(b.ax("A8", x, y, x), h), t2), t3)
    t5 = b.hmp(b.hmp(b.weaken(b.ax("A9", xy, x), h), t4), t1)
    return b.export(t5)


# -- embeddings between disjunction / conjunction trees ---------------------------

def _or_index(y: Formula):
    """Paths of the nodes in y's tree of disjunctions (first occurrence wins)."""
    paths, nodes = {}, {}
    stack = [(y, "")]
    while stack:
        f, p = stack.pop()
        if id(f) not in paths:
            paths[id(f)] = p
        nodes[p] = f
        if f.op == "or":
            stack.append((f.right, p + "1"))
            stack.append((f.left, p + "0"))
    return paths, nodes


def _common(p1: str, p2: str) -> str:
    k = 0
    while k < len(p1) and k < len(p2) and p1[k] == p2[k]:
        k += 1
    return p1[:k]


def _or_index_method(self, y):
    return _or_index(y)


def _lift(self, f, x, src, dst, nodes):
    """Extend a proof of x -> Y[src] (None when x is Y[src]) to x -> Y[dst]."""
    for k in range(len(src), len(dst), -1):
        child, parent = src[:k], src[:k - 1]
        l, r = nodes[parent + "0"], nodes[parent + "1"]
        step = self.ax("A6", l, r) if child[-1] == "0" else self.ax("A7", l, r)
        f = step if f is None else self.hs(f, step)
    return f


def _embed(self, x: Formula, y: Formula, index=None, unfold=None) -> Formula:
    """x -> y, where every disjunct-leaf of x is a disjunct-leaf of y.

    Works bottom-up over x: each subtree is sent to the least subtree of y
    holding all its leaves; aligned children use monotonicity, the rest are
    weakened and merged by case analysis. ``unfold`` maps id(atom) to
    (definition, proof of atom -> definition) for abbreviating atoms.
    """
    paths, nodes = index if index is not None else _or_index(y)

    def own(f, a, p):
        return f if f is not None else self.refl(a)

    def go(v):
        p = paths.get(id(v))
        if p is not None:
            return p, None
        if unfold and id(v) in unfold:
            d, fwd = unfold[id(v)]
            pd, fd = go(d)
            return pd, fwd if fd is None else self.hs(fwd, fd)
        if v.op != "or":
            raise ValueError(f"leaf {v!r} does not occur in the target")
        p1, f1 = go(v.left)
        p2, f2 = go(v.right)
        lca = _common(p1, p2)
        if p1 == lca and p2 == lca:
            return lca, self.case(own(f1, v.left, lca), own(f2, v.right, lca))
        if p1 != lca and p2 != lca:
            l0, l1 = lca + "0", lca + "1"
            if p1.startswith(l0):
                g1 = _lift(self, f1, v.left, p1, l0, nodes)
                g2 = _lift(self, f2, v.right, p2, l1, nodes)
                return lca, self.or_mono(own(g1, v.left, l0), own(g2, v.right, l1))
            g1 = _lift(self, f1, v.left, p1, l1, nodes)
            g2 = _lift(self, f2, v.right, p2, l0, nodes)
            om = self.or_mono(own(g1, v.left, l1), own(g2, v.right, l0))
            return lca, self.hs(om, self.or_comm(nodes[l1], nodes[l0]))
        g1 = _lift(self, f1, v.left, p1, lca, nodes)
        g2 = _lift(self, f2, v.right, p2, lca, nodes)
        return lca, self.case(own(g1, v.left, lca), own(g2, v.right, lca))

    p, f = go(x)
    f = _lift(self, f, x, p, "", nodes)
    return f if f is not None else self.refl(x)


def _projections(self, h: Formula) -> dict:
    """Proofs of h -> g for every conjunct-subtree g of h (None for h itself)."""
    proj = {id(h): None}
    stack = [h]
    while stack:
        f = stack.pop()
        if f.op != "and":
            continue
        base = proj[id(f)]
        for kid, sch in ((f.left, "A3"), (f.right, "A4")):
            if id(kid) in proj:
                continue
            step = self.ax(sch, f.left, f.right)
            proj[id(kid)] = step if base is None else self.hs(base, step)
            stack.append(kid)
    return proj


def _conj_build(self, h: Formula, z: Formula, leaf=None, proj=None) -> Formula:
    """h -> z, assembling z's conjunction tree from proofs of h -> leaf.

    Subtrees of z that are conjunct-subtrees of h come from projections;
    other leaves are handed to ``leaf``.
    """
    proj = self.projections(h) if proj is None else proj

    def go(g):
        if id(g) in proj:
            f = proj[id(g)]
            return f if f is not None else self.refl(h)
        if g.op != "and":
            if leaf is None:
                raise ValueError(f"conjunct {g!r} does not occur in the source")
            return leaf(g)
        return self.hand(go(g.left), go(g.right))

    return go(z)


def _conj_embed(self, x: Formula, z: Formula) -> Formula:
    """x -> z, where every conjunct-leaf of z is a conjunct-leaf of x."""
    return self.conj_build(x, z)


def _imp_import(self, f: Formula) -> Formula:
    """From x -> (y -> z), (x and y) -> z."""
    x, yz = split_imp(f)
    y, z = split_imp(yz)
    return self.hmp(self.hs(self.ax("A3", x, y), f), self.ax("A4", x, y))


ProofBuilder.projections = _projections
ProofBuilder.conj_build = _conj_build
ProofBuilder.imp_import = _imp_import
ProofBuilder.or_index = _or_index_method
ProofBuilder.embed = _embed
ProofBuilder.conj_embed = _conj_embed


def _taut_cached(self, f: Formula) -> Formula:
    """taut, with the proof shared across formulas that differ only in atom names."""
    if id(f) in self.ids:
        return f
    names = atom_list(f)
    if len(names) > len(META):
        return self.taut(f)
    metas = tuple(META[:len(names)])
    g = apply_substitution(f, {n: Var(m) for n, m in zip(names, metas)})
    key = ("taut", id(g))
    tpl = _TEMPLATES.get(key)
    if tpl is None:
        scratch = ProofBuilder()
        scratch.taut(g)
        tpl = Template(metas, _record(scratch), g)
        _TEMPLATES[key] = tpl
    return self.replay(tpl, [Var(n) for n in names])


def _record(scratch: ProofBuilder):
    lines = []
    for ln in scratch.lines:
        if ln.kind == "AX":
            lines.append((ln.formula, "AX", ln.a, ln.b))
        else:
            lines.append((ln.formula, "MP", scratch.lines[ln.a - 1].formula,
                          scratch.lines[ln.b - 1].formula))
    return tuple(lines)


ProofBuilder.taut_cached = _taut_cached
