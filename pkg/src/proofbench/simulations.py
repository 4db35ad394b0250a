"""Effective simulations between the proof systems.

Each translation maps an accepted source proof to an accepted target proof
of the same conclusion, in time polynomial in the source size.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import lemmas  # noqa: F401  (registers the lemma templates)
from .builder import ProofBuilder
from .checkers import check_proof, proof_conclusion
from .clausify import definitional_cnf, definitional_literals, is_definitional
from .cnf import CnfFormula, Literal, clause_formula, negated_clause_formula
from .formula import FALSE, TRUE, And, Formula, Not, Or, Var, atoms, iff, imp, iter_nodes, split_iff
from .proofs import SCHEME_PATTERNS, HilbertProof, ResolutionProof
from .resbuild import ResBuilder

PAIRS = (("F", "EF"), ("ER", "EF"), ("EF", "ER"), ("EF", "SF"))


class UnsupportedPairError(ValueError):
    pass


class SourceInvalidError(ValueError):
    pass


class EmptyCorpusError(ValueError):
    pass


def _size(proof) -> int:
    return proof.symbols()


@dataclass
class TranslationResult:
    proof: object
    source_symbols: int
    target_symbols: int
    conclusion: Formula
    cnf: Optional[CnfFormula] = None

    def stats_line(self) -> str:
        return f"source_symbols={self.source_symbols} target_symbols={self.target_symbols}"


def translate(source: str, target: str, proof, cnf: CnfFormula = None) -> TranslationResult:
    """Translate an accepted ``source`` proof into a ``target`` proof.

    Refutational sources need their CNF; refutational targets come back
    with the CNF they refute in ``cnf``.
    """
    if (source, target) not in PAIRS:
        raise UnsupportedPairError(f"no simulation {source} -> {target}")
    if source == "ER":
        if not isinstance(proof, ResolutionProof) or proof.system not in ("ER", "RES"):
            raise SourceInvalidError("expected a resolution-family proof")
        if cnf is None:
            raise SourceInvalidError("a refutation needs its CNF")
    elif not isinstance(proof, HilbertProof) or proof.variant != source:
        raise SourceInvalidError(f"expected an {source} proof")
    report = check_proof(proof, cnf)
    if not report.accepted:
        raise SourceInvalidError(f"source proof rejected: {report}")
    goal = proof_conclusion(proof, cnf)
    out_cnf = None
    if source == "F":
        out = HilbertProof("EF", list(proof.lines))
    elif source == "ER":
        out = _er_to_ef(proof, cnf, goal)
    elif target == "ER":
        out, out_cnf = _ef_to_er(proof)
    else:
        out = _ef_to_sf(proof)
    return TranslationResult(out, _size(proof), _size(out), goal, out_cnf)


# -- EF -> SF -------------------------------------------------------------------------

def _ef_to_sf(proof: HilbertProof) -> HilbertProof:
    """Carry the extension axioms as a hypothesis, then discharge them by substitution.

    With E_k the k-th extension axiom and H_k = E_k and H_(k-1), every line
    that depends on an extension axiom is re-proved as H -> line. Peeling
    H_k -> A into E_k -> (H_(k-1) -> A) and substituting the definition for
    the extension atom turns E_k into an instance of D <-> D, which is then
    cut away.
    """
    lines = proof.lines
    exts = [(ln.a, split_iff(ln.formula)[1]) for ln in lines if ln.kind == "EXT"]
    b = ProofBuilder("SF")
    if not exts:
        for ln in lines:
            _copy_line(b, ln, lines)
        return b.proof()
    hyps = [iff(Var(q), d) for q, d in exts]
    chain = [hyps[0]]
    for e in hyps[1:]:
        chain.append(And(e, chain[-1]))
    h = chain[-1]
    # h -> H_k for every suffix, then h -> E_k
    to_suffix = {len(chain) - 1: None}
    for k in range(len(chain) - 1, 0, -1):
        step = b.ax("A4", hyps[k], chain[k - 1])
        prev = to_suffix[k]
        to_suffix[k - 1] = step if prev is None else b.hs(prev, step)
    proj = {}
    for k, e in enumerate(hyps):
        if k == 0:
            proj[id(e)] = to_suffix[0] if to_suffix[0] is not None else b.refl(h)
        else:
            step = b.ax("A3", e, chain[k - 1])
            base = to_suffix[k]
            proj[id(e)] = step if base is None else b.hs(base, step)
    by_id = {ln.id: ln.formula for ln in lines}
    lifted = {}     # id(formula) -> proof of h -> formula
    for ln in lines:
        f = ln.formula
        if ln.kind == "EXT":
            lifted[id(f)] = proj[id(f)]
        elif ln.kind == "MP":
            major, minor = by_id[ln.a], by_id[ln.b]
            lm, ln_ = lifted.get(id(major)), lifted.get(id(minor))
            if lm is None and ln_ is None:
                b.mp(major, minor)
                continue
            if id(f) in lifted:
                continue
            lm = lm if lm is not None else b.weaken(major, h)
            ln_ = ln_ if ln_ is not None else b.weaken(minor, h)
            lifted[id(f)] = b.hmp(lm, ln_)
        else:
            _copy_line(b, ln, lines)
    final = lines[-1].formula
    if id(final) not in lifted:
        return b.proof()
    cur = lifted[id(final)]
    for k in range(len(hyps) - 1, -1, -1):
        q, d = exts[k]
        if k > 0:
            cur = b.export(cur)          # E_k -> (H_(k-1) -> A)
        inst = b.sub(cur, ((q, d),))
        same = b.refl(d)
        dd = b.mp(b.mp(b.ax("A5", same, same), same), same)
        cur = b.mp(inst, dd)
    return b.proof()


def _copy_line(b: ProofBuilder, ln, lines):
    if ln.kind == "AX":
        b.ax(ln.a, *ln.b)
    elif ln.kind == "MP":
        b.mp(lines_formula(lines, ln.a), lines_formula(lines, ln.b))
    else:
        raise ValueError(f"cannot copy a {ln.kind} line")


def lines_formula(lines, lid):
    for ln in lines:
        if ln.id == lid:
            return ln.formula
    raise KeyError(lid)


# -- ER -> EF ---------------------------------------------------------------------------

class _ErToEf:
    """Refutation of C becomes: h <-> not K, h -> clause for each line, h -> 0, K."""

    def __init__(self, proof: ResolutionProof, cnf: CnfFormula, goal: Formula):
        self.proof, self.cnf, self.goal = proof, cnf, goal
        self.b = ProofBuilder("EF")
        taken = set(cnf.atoms)
        for ln in proof.lines:
            if ln.kind == "EXTEND":
                taken.add(ln.a)
        self.h = Var(_fresh("e_h", taken))
        self.input_proof = {}
        self.definitional = cnf.origin is not None and is_definitional(cnf)
        self.ext_defs = {}      # EXTEND line id -> (atom, definition formula)

    # clause formulas under the hypothesis h
    def under_h(self, f: Formula) -> Formula:
        return imp(self.h, f)

    def run(self) -> HilbertProof:
        b, h, goal = self.b, self.h, self.goal
        b.ext(h.name, Not(goal))
        self.h_fwd = b.ext_fwd(h.name, Not(goal))
        if self.definitional:
            self.setup_definitional()
        else:
            self.neg_goal = {id(Not(goal)): self.h_fwd}
        for ln in self.proof.lines:
            if ln.kind == "EXTEND":
                d = Or(ln.b.formula(), ln.c.formula())
                b.ext(ln.a, d)
                self.ext_defs[ln.id] = (ln.a, d, ln.b, ln.c)
        proved = {}
        for ln in self.proof.lines:
            if ln.kind == "EXTEND":
                continue
            cl = clause_formula(ln.clause)
            if ln.kind == "INPUT":
                got, src = self.input_clause(ln.a - 1)
                proved[ln.id] = self.rearrange(got, src, cl)
            elif ln.kind == "DEF":
                q, d, l1, l2 = self.ext_defs[ln.a]
                proved[ln.id] = b.weaken(self.def_clause(q, d, l1, l2, ln.clause), h)
            else:
                proved[ln.id] = self.resolve(ln, proved)
        empty = proved[self.proof.lines[-1].id]
        not0 = b.weaken(b.lemma("not0"), h)
        nh = b.mp(b.mp(b.ax("A9", h, FALSE), empty), not0)
        nng = b.mp(b.contrapose(b.ext_bwd(h.name, Not(goal))), nh)
        b.mp(b.ax("A10", goal), nng)
        return b.proof()

    def rearrange(self, got: Formula, src, cl_target: Formula) -> Formula:
        """From h -> clause(src) to h -> clause(target), a permutation of it."""
        src_f = clause_formula(src)
        if src_f is cl_target:
            return got
        return self.b.hs(got, self.b.embed(src_f, cl_target))

    # -- input clauses
    def input_clause(self, idx: int):
        clause = self.cnf.clauses[idx]
        if self.definitional:
            return self.def_input(idx), clause
        b = self.b
        nt = self.down(idx)
        return b.hs(nt, self.dm_clause(clause)), clause

    def down(self, idx: int) -> Formula:
        """h -> not t_idx, walking the disjunction tree of K from the root."""
        path = self.path_to(idx)
        b = self.b
        cur = Not(self.goal)
        f = self.neg_goal[id(cur)]
        node = self.goal
        for side in path:
            l, r = node.left, node.right
            kid = l if side == 0 else r
            key = id(Not(kid))
            if key not in self.neg_goal:
                inj = b.ax("A6" if side == 0 else "A7", l, r)
                self.neg_goal[key] = b.hs(f, b.contrapose(inj))
            f = self.neg_goal[key]
            node = kid
        return f

    def path_to(self, idx: int):
        if not hasattr(self, "_paths"):
            from .cnf import position_tree
            layout = self.cnf.layout if self.cnf.layout is not None else position_tree(len(self.cnf.clauses))
            self._paths = {}
            stack = [(layout, ())]
            while stack:
                t, p = stack.pop()
                if isinstance(t, tuple):
                    stack.append((t[0], p + (0,)))
                    stack.append((t[1], p + (1,)))
                else:
                    self._paths[t] = p
        return self._paths[idx]

    def dm_clause(self, clause) -> Formula:
        """not (conjunction of complements) -> disjunction of the literals."""
        t = negated_clause_formula(clause)
        c = clause_formula(clause)
        return self._dm(t, c)

    def _dm(self, t: Formula, c: Formula) -> Formula:
        b = self.b
        if t.op == "and":
            first = b.lemma("demorgan_and", t.left, t.right)
            return b.hs(first, b.or_mono(self._dm(t.left, c.left), self._dm(t.right, c.right)))
        if t.op == "const":          # empty clause: not 1 -> 0
            return b.lemma("false_of_neg_true", t)
        if t.op == "not":            # positive literal x: not not x -> x
            return b.ax("A10", c)
        return b.refl(Not(t))        # negative literal: not x -> not x

    # -- definitional CNFs: extension atoms for the defining atoms
    def setup_definitional(self):
        b, goal = self.b, self.goal
        lits, defs, true_atom = definitional_literals(goal)
        self.lits = lits
        self.true_atom = true_atom
        self.node_def = {}
        self.def_list = []
        if true_atom:
            b.ext(true_atom, _TRUE_DEF)
            self.t_proof = b.mp(b.ext_bwd(true_atom, _TRUE_DEF), b.ax("A11"))
        for node, d, cls in defs:
            la, lb = lits[id(node.left)], lits[id(node.right)]
            if node.op == "or":
                l1, l2 = la, lb
            else:
                l1, l2 = -la, -lb
            dd = Or(l1.formula(), l2.formula())
            b.ext(d, dd)
            self.node_def[id(node)] = (d, dd, l1, l2)
            self.def_list.append((d, dd, l1, l2))
        self.bridge_up = {}
        self.bridge_down = {}
        self.bridge(goal)
        root = lits[id(goal)]
        to_lit = self.bridge_up[id(goal)]      # lit(goal) -> goal
        neg = self.b.contrapose(to_lit) if to_lit is not None else self.b.refl(Not(goal))
        f = b.hs(self.h_fwd, neg)              # h -> not lit(goal)
        if not root.positive:
            f = b.hs(f, b.ax("A10", Var(root.atom)))
        self.root_unit = f

    def def_input(self, idx: int) -> Formula:
        b, h = self.b, self.h
        clauses = self.cnf.clauses
        if idx == len(clauses) - 1:
            return self.root_unit
        off = 1 if self.true_atom else 0
        if off and idx == 0:
            return b.weaken(self.t_proof, h)
        d, dd, l1, l2 = self.def_list[(idx - off) // 3]
        return b.weaken(self.def_clause(d, dd, l1, l2, clauses[idx]), h)

    def def_clause(self, q, d, l1, l2, clause) -> Formula:
        """One of the three clauses of q <-> (l1 or l2) from the extension axiom."""
        b = self.b
        p = Literal(q)
        cl = clause_formula(clause)
        if l1 != l2 and l1 != -l2:
            if tuple(clause) == (-p, l1, l2):
                return b.ext_fwd(q, d)
            for inj, lit in (("A6", l1), ("A7", l2)):
                if tuple(clause) == (p, -lit):
                    back = b.hs(b.ax(inj, d.left, d.right), b.ext_bwd(q, d))   # lit -> q
                    lf = lit.formula()
                    nl = (-lit).formula()
                    to_c = b.refl(Not(lf)) if lit.positive else b.ax("A10", nl)
                    first = b.hs(to_c, b.ax("A7", Var(q), nl))
                    return b.mp(b.case(first, b.ax("A6", Var(q), nl)), back)
        e = iff(Var(q), d)
        return b.mp(b.taut_cached(imp(e, cl)), e)

    def bridge(self, g: Formula):
        """lit(g) -> g and g -> lit(g) (None when they coincide)."""
        b = self.b
        for node in iter_nodes(g):
            key = id(node)
            if key in self.bridge_up:
                continue
            op = node.op
            if op == "var":
                up = down = None
            elif op == "const":
                t = Var(self.true_atom)
                if node.name == "1":
                    up = b.weaken(b.ax("A11"), t)
                    down = b.ext_bwd(self.true_atom, _TRUE_DEF)
                else:
                    up = b.hmp(b.lemma("efq", t, FALSE), b.weaken(self.t_proof, Not(t)))
                    down = b.ax("A12", Not(t))
            elif op == "not":
                kid = node.left
                klit = self.lits[id(kid)]
                ku = self._own(self.bridge_up[id(kid)], klit.formula())
                kd = self._own(self.bridge_down[id(kid)], kid)
                if klit.positive:                  # lit = not x, x <-> kid
                    up, down = b.contrapose(kd), b.contrapose(ku)
                else:                              # lit = x, not x <-> kid
                    x = Var(klit.atom)
                    up = b.hs(b.lemma("dni", x), b.contrapose(kd))
                    down = b.hs(b.contrapose(ku), b.ax("A10", x))
            else:
                d, dd, l1, l2 = self.node_def[key]
                if op == "or":
                    lu = self._lit_to(l1, node.left, False)
                    ru = self._lit_to(l2, node.right, False)
                    ld = self._lit_to(l1, node.left, True)
                    rd = self._lit_to(l2, node.right, True)
                    up = b.hs(b.ext_fwd(d, dd), b.or_mono(lu, ru))
                    down = b.hs(b.or_mono(ld, rd), b.ext_bwd(d, dd))
                else:
                    # lit = not d, d <-> (c1 or c2), c_i the complement of the child's literal
                    nd = b.contrapose(b.ext_bwd(d, dd))              # not d -> not dd
                    split = b.lemma("demorgan_or", l1.formula(), l2.formula())
                    cu = b.and_mono(self._negc_to(l1, node.left), self._negc_to(l2, node.right))
                    up = b.chain(nd, split, cu)
                    cd = b.and_mono(self._to_negc(l1, node.left), self._to_negc(l2, node.right))
                    nor = b.imp_import(b.lemma("nor", l1.formula(), l2.formula()))
                    down = b.chain(cd, nor, b.contrapose(b.ext_fwd(d, dd)))
            self.bridge_up[key] = up
            self.bridge_down[key] = down

    def _own(self, f, a):
        return f if f is not None else self.b.refl(a)

    def _lit_to(self, lit: Literal, kid: Formula, down: bool) -> Formula:
        """lit.formula() -> kid (or the reverse when down), where lit = lit(kid)."""
        table = self.bridge_down if down else self.bridge_up
        f = table[id(kid)]
        return self._own(f, kid if down else lit.formula())

    def _negc_to(self, c: Literal, kid: Formula) -> Formula:
        """not c -> kid, where c is the complement of lit(kid)."""
        b = self.b
        klit = -c
        up = self._own(self.bridge_up[id(kid)], klit.formula())
        if klit.positive:                # c = not x: not not x -> x -> kid
            return b.hs(b.ax("A10", Var(klit.atom)), up)
        return up                        # c = x: not x is lit(kid)

    def _to_negc(self, c: Literal, kid: Formula) -> Formula:
        """kid -> not c."""
        b = self.b
        klit = -c
        down = self._own(self.bridge_down[id(kid)], kid)
        if klit.positive:
            return b.hs(down, b.lemma("dni", Var(klit.atom)))
        return down

    # -- resolution steps
    def resolve(self, ln, proved) -> Formula:
        b = self.b
        l1, l2 = self.proof.lines[ln.a - 1], self.proof.lines[ln.b - 1]
        assert l1.id == ln.a and l2.id == ln.b
        c1, c2 = l1.clause, l2.clause
        p1, p2 = proved[l1.id], proved[l2.id]
        x = next(l for l in c1 if -l in c2)
        if not x.positive:
            c1, c2, p1, p2, x = c2, c1, p2, p1, -x
        xf = x.formula()
        rest1 = tuple(l for l in c1 if l != x)
        rest2 = tuple(l for l in c2 if l != -x)
        a = clause_formula(rest1) if rest1 else None
        c = clause_formula(rest2) if rest2 else None
        cf1, cf2 = clause_formula(c1), clause_formula(c2)
        left = xf if a is None else Or(xf, a)
        right = Not(xf) if c is None else imp(xf, c)
        g1 = p1 if cf1 is left else b.hs(p1, b.embed(cf1, left))
        g2 = p2 if cf2 is right else b.hs(p2, b.embed(cf2, right))
        if a is None and c is None:
            out = b.hmp(b.hs(g1, b.lemma("res_0", xf)), g2)
        elif a is None:
            out = b.hmp(g2, g1)
        elif c is None:
            out = b.hmp(b.hs(g1, b.lemma("res_neg", xf, a)), g2)
        else:
            out = b.hmp(b.hs(g2, b.lemma("res_imp", xf, a, c)), g1)
        got = split_imp_right(out)
        target = clause_formula(ln.clause)
        if got is target:
            return out
        return b.hs(out, b.embed(got, target))


_TRUE_DEF = TRUE


def split_imp_right(f: Formula) -> Formula:
    from .formula import split_imp
    return split_imp(f)[1]


def _fresh(stem: str, taken) -> str:
    name, k = stem, 0
    while name in taken:
        k += 1
        name = f"{stem}{k}"
    return name


def _er_to_ef(proof: ResolutionProof, cnf: CnfFormula, goal: Formula) -> HilbertProof:
    return _ErToEf(proof, cnf, goal).run()


# -- EF -> ER ---------------------------------------------------------------------------

class _EfToEr:
    """Refute the definitional clauses of (not A) line by line.

    Every formula node gets a literal: nodes of A use the CNF's atoms, other
    binary nodes get extension atoms keyed by the pair of child literals.
    Extension atoms of the source stand for their definitions, and atoms
    foreign to A are read as true. Each line's literal is then derived as
    a unit clause.
    """

    def __init__(self, proof: HilbertProof):
        self.proof = proof
        self.goal = proof.conclusion
        self.cnf = definitional_cnf(self.goal)
        lits, defs, true_atom = definitional_literals(self.goal)
        self.lit = dict(lits)
        self.r = ResBuilder("ER")
        self.taken = set(self.cnf.atoms)
        for ln in proof.lines:
            self.taken |= atoms(ln.formula)
        self.count = 0
        base = 1 if true_atom else 0
        self.pairs = {}     # (l1, l2) -> atom defined as l1 or l2
        self.defs_of = {}   # atom -> clause line ids, or CNF indexes before first use
        for k, (node, d, cls) in enumerate(defs):
            la, lb = lits[id(node.left)], lits[id(node.right)]
            key = (la, lb) if node.op == "or" else (-la, -lb)
            self.pairs.setdefault(key, d)
            self.defs_of[d] = ("input", [base + 3 * k + j for j in range(3)])
        self.true_lit = Literal(true_atom) if true_atom else None
        self.true_unit = None
        self.goal_atoms = atoms(self.goal)
        self.ext_lit = {}
        self.unit = {}      # literal -> line id of the unit clause

    def fresh(self) -> str:
        while True:
            self.count += 1
            name = f"e_x{self.count}"
            if name not in self.taken:
                self.taken.add(name)
                return name

    def truth(self) -> Literal:
        if self.true_lit is None:
            y = self.cnf.atoms[0]
            t = self.fresh()
            ids = self.r.extend(t, Literal(y), Literal(y, False))
            self.true_lit = Literal(t)
            self.true_unit = self.r.resolve(ids[1], ids[2])
        if self.true_unit is None:
            self.true_unit = self.r.input(1, self.cnf.clauses[0])
        return self.true_lit

    def def_clauses(self, atom: str) -> list:
        kind, ref = self.defs_of[atom]
        if kind == "input":
            ref = [self.r.input(i + 1, self.cnf.clauses[i]) for i in ref]
            self.defs_of[atom] = ("lines", ref)
        return ref

    def pair(self, l1: Literal, l2: Literal) -> Literal:
        key = (l1, l2)
        if key not in self.pairs:
            q = self.fresh()
            self.pairs[key] = q
            self.defs_of[q] = ("lines", self.r.extend(q, l1, l2))
        return Literal(self.pairs[key])

    def literal(self, f: Formula) -> Literal:
        lit = self.lit
        if id(f) in lit:
            return lit[id(f)]
        for node in iter_nodes(f):
            k = id(node)
            if k in lit:
                continue
            op = node.op
            if op == "var":
                v = self.ext_lit.get(node.name)
                lit[k] = v if v is not None else self.truth()
            elif op == "const":
                t = self.truth()
                lit[k] = t if node.name == "1" else -t
            elif op == "not":
                lit[k] = -lit[id(node.left)]
            elif op == "or":
                lit[k] = self.pair(lit[id(node.left)], lit[id(node.right)])
            else:
                lit[k] = -self.pair(-lit[id(node.left)], -lit[id(node.right)])
        return lit[id(f)]

    def skeleton(self, f: Formula, pattern: Formula) -> list:
        """Clause ids defining the connectives of f that sit inside the pattern.

        The walk follows the pattern, so an argument that happens to equal a
        larger piece of the instance is still expanded where the pattern
        has a connective.
        """
        out, seen, stack = [], set(), [(pattern, f)]
        while stack:
            pat, node = stack.pop()
            if pat.op == "var" or id(pat) in seen:
                continue
            seen.add(id(pat))
            op = pat.op
            if op == "const":
                self.truth()
                out.append(self.true_unit)
            elif op == "not":
                stack.append((pat.left, node.left))
            else:
                out.extend(self.def_clauses(self.literal(node).atom))
                stack.append((pat.left, node.left))
                stack.append((pat.right, node.right))
        return out

    def run(self) -> ResolutionProof:
        r = self.r
        units = self.unit
        by_id = {}
        for ln in self.proof.lines:
            f = ln.formula
            by_id[ln.id] = f
            if ln.kind == "EXT":
                q, d = ln.a, split_iff(f)[1]
                self.ext_lit[q] = self.literal(d)
                pattern = _EXT_PATTERN
            elif ln.kind == "AX":
                pattern = SCHEME_PATTERNS[ln.a]
            else:
                pattern = None
            lf = self.literal(f)
            if lf in units:
                continue
            if lf == self.true_lit and self.true_unit is not None:
                units[lf] = self.true_unit
                continue
            if pattern is not None:
                units[lf] = r.derive(self.skeleton(f, pattern), [lf])
            else:
                major = by_id[ln.a]
                minor = by_id[ln.b]
                lx = self.literal(minor)
                z = self.literal(major)
                ids = self.def_clauses(z.atom)
                cur = r.resolve(ids[0], units[z])
                if lf in r.clauses[cur] and len(r.clauses[cur]) > 1:
                    cur = r.resolve(cur, units[lx])
                units[lf] = cur
        root = self.lit[id(self.goal)]
        last = r.input(len(self.cnf.clauses), self.cnf.clauses[-1])
        r.resolve(units[root], last)
        return r.proof()


_EXT_PATTERN = iff(Var("P"), Var("Q"))


def _ef_to_er(proof: HilbertProof):
    t = _EfToEr(proof)
    return t.run(), t.cnf


# -- slopes ------------------------------------------------------------------------------

@dataclass
class SimulationReport:
    pair: tuple
    sizes: list = field(default_factory=list)     # (source_symbols, target_symbols)
    slope: float = float("nan")

    def lines(self):
        src, dst = self.pair
        out = [f"{src}->{dst} source_symbols={a} target_symbols={b}" for a, b in self.sizes]
        out.append(f"{src}->{dst} slope={self.slope:.3f}")
        return out


def fit_slope(xs, ys) -> float:
    """Least-squares slope of log y against log x."""
    lx, ly = np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float))
    if len(lx) < 2 or np.ptp(lx) == 0:
        return float("nan")
    return float(np.polyfit(lx, ly, 1)[0])


def simulation_report(pair, corpus) -> SimulationReport:
    """Translate each corpus entry (a proof, or (proof, cnf)) and fit the size slope."""
    items = list(corpus)
    if not items:
        raise EmptyCorpusError("no proofs to translate")
    src, dst = pair
    rep = SimulationReport((src, dst))
    for item in items:
        proof, cnf = item if isinstance(item, tuple) else (item, None)
        res = translate(src, dst, proof, cnf)
        rep.sizes.append((res.source_symbols, res.target_symbols))
    rep.slope = fit_slope([a for a, _ in rep.sizes], [b for _, b in rep.sizes])
    return rep
