"""Polynomial-size Extended Frege proofs of the pigeonhole tautologies.

From an injective map of m pigeons into m-1 holes the extension atoms
q_ij := p_ij or (p_i,m-1 and p_m,j) define an injective map of m-1 pigeons
into m-2 holes. The proof shows PHP at level m-1 (over the q atoms) implies
PHP at level m, unrolled down to the two-atom base case.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import lemmas  # noqa: F401  (registers the lemma templates)
from .builder import ProofBuilder
from .cnf import critbit_tree, negated_clause_formula
from .formula import And, Formula, Not, Or, Var, apply_substitution, imp
from .generators import ETA, PHI, PI, DNF, ParamError, gen_php, php_clauses, p_atom
from .proofs import HilbertProof


@dataclass
class PhpProofArtifacts:
    n: int
    proof: HilbertProof
    extension_atoms: list
    steps: int
    symbols: int
    functionality: bool = False

    def stats_line(self) -> str:
        return (f"n={self.n} steps={self.steps} symbols={self.symbols} "
                f"ext_atoms={len(self.extension_atoms)}")


def level_atom(n: int, m: int, i: int, j: int) -> str:
    """Atom for 'pigeon i sits in hole j' at level m of the induction from n."""
    return p_atom(i, j) if m == n else f"e_q{m}_{i}_{j}"


def _unkey(key: int, width: int = 8):
    mask = (1 << width) - 1
    return key >> 3 * width, (key >> 2 * width) & mask, (key >> width) & mask, key & mask


class _Level:
    """PHP at one level: the DNF formula, its tree of terms, and term lookup by key."""

    def __init__(self, n, m, functionality):
        self.m = m
        self.name = lambda i, j: level_atom(n, m, i, j)
        pairs = php_clauses(m, m - 1, functionality)
        index = {k: t for t, (k, _) in enumerate(pairs)}
        base = gen_php(m, m - 1, functionality, DNF)
        subst = {p_atom(i, j): Var(self.name(i, j)) for i in range(1, m + 1) for j in range(1, m)}
        memo: dict = {}
        self.formula = apply_substitution(base, subst, memo) if m != n else base
        self.tree = critbit_tree(index)
        self.term = {}
        for k, (_, clause) in zip(index, pairs):
            t = negated_clause_formula(clause)
            self.term[k] = apply_substitution(t, subst, memo) if m != n else t

    def p(self, i, j) -> Formula:
        return Var(self.name(i, j))


def _components(key, up: _Level, w=8):
    """The four level-m terms a level-(m-1) term (by key) is sent to."""
    m = up.m
    kind, a, b, c = _unkey(key, w)
    from .generators import php_key
    if kind == PI:
        i = a
        e = up.term[php_key(ETA, m - 1, m, i, w)]
        return (up.term[php_key(PI, i, width=w)], up.term[php_key(PI, m, width=w)], e, e)
    if kind == ETA:
        j, i2, i1 = a, b, c
        return (up.term[php_key(ETA, j, i2, i1, w)], up.term[php_key(ETA, j, m, i1, w)],
                up.term[php_key(ETA, j, m, i2, w)], up.term[php_key(ETA, m - 1, i2, i1, w)])
    i, j2, j1 = a, b, c
    return (up.term[php_key(PHI, i, j2, j1, w)], up.term[php_key(PHI, i, m - 1, j1, w)],
            up.term[php_key(PHI, i, m - 1, j2, w)], up.term[php_key(PHI, m, j2, j1, w)])


def _disj4(c):
    return Or(c[0], Or(c[1], Or(c[2], c[3])))


class _Step:
    """Proof of PHP(level m-1 over q) -> PHP(level m over p)."""

    def __init__(self, b: ProofBuilder, low: _Level, up: _Level):
        self.b, self.low, self.up = b, low, up
        self.m = up.m
        self.count = 0
        self.unfold = {}
        self.ext_atoms = []

    def q_def(self, i, j):
        up = self.up
        return Or(up.p(i, j), And(up.p(i, self.m - 1), up.p(self.m, j)))

    def q_fwd(self, i, j):
        return self.b.ext_fwd(self.low.name(i, j), self.q_def(i, j))

    def leaf(self, key):
        """X -> P or (A or (B or C)) for one low term X; returns (X, comps)."""
        b, m = self.b, self.m
        kind, a1, a2, a3 = _unkey(key)
        comps = _components(key, self.up)
        x = self.low.term[key]
        up = self.up
        if kind == ETA:
            j, i2, i1 = a1, a2, a3
            both = b.and_mono(self.q_fwd(i1, j), self.q_fwd(i2, j))
            lem = b.lemma("eta_leaf", up.p(i1, j), up.p(i1, m - 1), up.p(i2, j), up.p(i2, m - 1), up.p(m, j))
            b.hs(both, lem)
        elif kind == PHI:
            i, j2, j1 = a1, a2, a3
            both = b.and_mono(self.q_fwd(i, j1), self.q_fwd(i, j2))
            lem = b.lemma("phi_leaf", up.p(i, j1), up.p(i, m - 1), up.p(i, j2), up.p(m, j1), up.p(m, j2))
            b.hs(both, lem)
        else:
            self.pi_leaf(a1, x, comps)
        return x, comps

    def pi_leaf(self, i, x, comps):
        """Case split on b = p_i,m-1 and c = p_m,m-1: not b gives pi_i,
        b and not c gives pi_m, b and c is the hole term e."""
        b, m, up, low = self.b, self.m, self.up, self.low
        bb, cc = up.p(i, m - 1), up.p(m, m - 1)
        e = comps[2]
        nq = {}
        for j in range(1, m - 1):
            d = self.q_def(i, j)
            back = b.ext_bwd(low.name(i, j), d)
            nq[j] = (b.contrapose(b.hs(b.ax("A6", d.left, d.right), back)),
                     b.contrapose(b.hs(b.ax("A7", d.left, d.right), back)))
        hole = {id(Not(up.p(i, j))): j for j in range(1, m - 1)}
        h1 = And(x, Not(bb))
        proj1 = b.projections(h1)
        f1 = b.conj_build(h1, comps[0], lambda g: b.hs(proj1[id(Not(low.p(i, hole[id(g)])))], nq[hole[id(g)]][0]), proj1)
        h2 = And(x, And(bb, Not(cc)))
        proj2 = b.projections(h2)
        col = {id(Not(up.p(m, j))): j for j in range(1, m - 1)}

        def via_b(g):
            j = col[id(g)]
            nbc = b.hs(proj2[id(Not(low.p(i, j)))], nq[j][1])
            w = b.weaken(b.lemma("nb", bb, up.p(m, j)), h2)
            return b.hmp(b.hmp(w, nbc), proj2[id(bb)])

        f2 = b.conj_build(h2, comps[1], via_b, proj2)
        f3 = b.hs(b.ax("A4", x, And(bb, cc)), b.ax("A6", e, e))
        tri = b.lemma("tri", bb, cc)
        xt = b.hand(b.refl(x), b.weaken(tri, x))
        d1 = b.lemma("dist_l", x, Not(bb), tri.right)
        d2 = b.lemma("dist_l", x, And(bb, Not(cc)), And(bb, cc))
        b.chain(xt, d1, b.or_mono(f1, b.hs(d2, b.or_mono(f2, f3))))

    def node(self, tree):
        """X_v -> P_v or (A_v or (B_v or C_v)); returns (X_v, comps_v).

        A component larger than ABBREV symbols is replaced by a fresh
        extension atom standing for the disjunction of its two halves, so
        the merge at each node works on small formulas.
        """
        b = self.b
        if not isinstance(tree, tuple):
            return self.leaf(tree)
        xl, rl = self.node(tree[0])
        xr, rr = self.node(tree[1])
        reps, inj_l, inj_r = [], [], []
        for u, v in zip(rl, rr):
            d = Or(u, v)
            if d.size > ABBREV:
                w = self.fresh()
                b.ext(w, d)
                rep = Var(w)
                back = b.ext_bwd(w, d)
                inj_l.append(b.hs(b.ax("A6", u, v), back))
                inj_r.append(b.hs(b.ax("A7", u, v), back))
                self.unfold[id(rep)] = (d, b.ext_fwd(w, d))
            else:
                rep = d
                inj_l.append(b.ax("A6", u, v))
                inj_r.append(b.ax("A7", u, v))
            reps.append(rep)
        left = b.hs(imp(xl, _disj4(rl)), _mono4(b, inj_l))
        right = b.hs(imp(xr, _disj4(rr)), _mono4(b, inj_r))
        b.case(left, right)
        return Or(xl, xr), tuple(reps)

    def fresh(self) -> str:
        self.count += 1
        name = f"e_w{self.m}_{self.count}"
        self.ext_atoms.append(name)
        return name

    def run(self) -> Formula:
        b = self.b
        x, comps = self.node(self.low.tree)
        y = self.up.formula
        index = b.or_index(y)
        parts = [b.embed(c, y, index, self.unfold) for c in comps]
        tail = b.case(parts[2], parts[3])
        tail = b.case(parts[1], tail)
        tail = b.case(parts[0], tail)
        return b.hs(imp(x, _disj4(comps)), tail)


ABBREV = 24


def _mono4(b, injs):
    return b.or_mono(injs[0], b.or_mono(injs[1], b.or_mono(injs[2], injs[3])))


def build_ef_proof_php(n: int, functionality: bool = False) -> PhpProofArtifacts:
    """EF proof whose conclusion is gen_php(n, n-1, functionality, DNF)."""
    if not isinstance(n, int) or n < 2:
        raise ParamError(f"need n >= 2, got {n!r}")
    b = ProofBuilder("EF")
    levels = {m: _Level(n, m, functionality) for m in range(2, n + 1)}
    ext_atoms = []
    for m in range(n, 2, -1):
        up, low = levels[m], levels[m - 1]
        for i in range(1, m):
            for j in range(1, m - 1):
                q = low.name(i, j)
                b.ext(q, Or(up.p(i, j), And(up.p(i, m - 1), up.p(m, j))))
                ext_atoms.append(q)
    cur = b.taut(levels[2].formula)
    for m in range(3, n + 1):
        step = _Step(b, levels[m - 1], levels[m])
        cur = b.mp(step.run(), cur)
        ext_atoms += step.ext_atoms
    proof = b.proof()
    return PhpProofArtifacts(n, proof, ext_atoms, proof.steps(), proof.symbols(), functionality)
