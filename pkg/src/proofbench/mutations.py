"""Single-line mutations that break a proof's justification."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .formula import Not, Var, atoms, iff, split_iff
from .proofs import HilbertProof, ResolutionProof


@dataclass
class Mutant:
    operator: str
    line: int
    proof: object


def _replace(proof, pos, new_line):
    lines = list(proof.lines)
    lines[pos] = new_line
    if isinstance(proof, HilbertProof):
        return HilbertProof(proof.variant, lines)
    return ResolutionProof(proof.system, lines, proof.cnf_path)


def _resolvent(c1, c2):
    clash = [l for l in c1 if -l in c2]
    if len(clash) != 1:
        return None
    x = clash[0]
    return (c1 - {x}) | (c2 - {-x})


# -- resolution family -----------------------------------------------------------------

def _res_mutants(proof: ResolutionProof, cnf, pos: int, rng: random.Random):
    ln = proof.lines[pos]
    lines = proof.lines
    if ln.kind == "EXTEND":
        taken = sorted(cnf.atoms) if cnf is not None else []
        if taken:
            yield "ext_rename", ln.copy(a=rng.choice(taken))
        return
    clause = ln.clause
    if clause:
        k = rng.randrange(len(clause))
        flipped = list(clause)
        flipped[k] = -flipped[k]
        if len(set(flipped)) == len(flipped) and not _still_def(lines, ln, flipped):
            yield "flip_literal", ln.copy(clause=tuple(flipped))
    elif pos == len(lines) - 1 and cnf is not None and cnf.atoms:
        from .cnf import Literal
        yield "nonempty_final", ln.copy(clause=(Literal(cnf.atoms[0]),))
    if ln.kind == "RESOLVE":
        clauses = {l.id: frozenset(l.clause) for l in lines[:pos] if l.clause is not None}
        c1, c2 = clauses[ln.a], clauses[ln.b]
        pivot = next(l.atom for l in c1 if -l in c2)
        others = sorted({l.atom for l in c1 | c2} - {pivot})
        if others:
            yield "wrong_pivot", ln.copy(c=rng.choice(others))
        ids = [i for i, c in clauses.items() if i not in (ln.a, ln.b)]
        rng.shuffle(ids)
        for other in ids[:8]:
            if _resolvent(c1, clauses[other]) != frozenset(clause):
                yield "swap_premise", ln.copy(b=other)
                break


def _still_def(lines, ln, flipped) -> bool:
    """A flipped DEF clause can land on a sibling definition clause."""
    if ln.kind != "DEF":
        return False
    ext = next((l for l in lines if l.id == ln.a), None)
    if ext is None:
        return False
    from .cnf import Literal
    p = Literal(ext.a)
    defs = [frozenset((-p, ext.b, ext.c)), frozenset((p, -ext.b)), frozenset((p, -ext.c))]
    return frozenset(flipped) in defs


# -- Hilbert family -----------------------------------------------------------------------

def _hilbert_mutants(proof: HilbertProof, pos: int, rng: random.Random, final_atoms):
    ln = proof.lines[pos]
    f = ln.formula
    yield "negate_formula", ln.copy(formula=Not(f))
    if ln.kind == "AX" and ln.b:
        k = rng.randrange(len(ln.b))
        args = list(ln.b)
        args[k] = Not(args[k])
        yield "alter_axiom_arg", ln.copy(b=tuple(args))
    elif ln.kind == "MP":
        if ln.a != ln.b:
            yield "swap_premises", ln.copy(a=ln.b, b=ln.a)
    elif ln.kind == "EXT":
        d = split_iff(f)[1]
        taken = sorted(atoms(d) | final_atoms)
        if taken:
            q = rng.choice(taken)
            yield "ext_rename", ln.copy(a=q, formula=iff(Var(q), d))
    elif ln.kind == "SUB":
        src = next(l.formula for l in proof.lines if l.id == ln.a)
        present = atoms(src)
        pairs = [(k, Not(v)) if k in present else (k, v) for k, v in ln.b]
        if any(k in present for k, _ in ln.b):
            yield "alter_substitution", ln.copy(b=tuple(pairs))


def mutants(proof, cnf=None, per_proof: int = 40, seed: int = 0) -> Iterator[Mutant]:
    """Up to ``per_proof`` mutants, each changing exactly one line."""
    rng = random.Random(seed)
    n = len(proof.lines)
    positions = list(range(n))
    rng.shuffle(positions)
    must = [n - 1] + [p for p, ln in enumerate(proof.lines) if ln.kind in ("EXT", "EXTEND", "SUB")][:4]
    chosen = list(dict.fromkeys(must + positions))[:per_proof]
    if isinstance(proof, HilbertProof):
        final_atoms = atoms(proof.lines[-1].formula)
        for pos in chosen:
            for op, new in _hilbert_mutants(proof, pos, rng, final_atoms):
                yield Mutant(op, proof.lines[pos].id, _replace(proof, pos, new))
    else:
        for pos in chosen:
            for op, new in _res_mutants(proof, cnf, pos, rng):
                yield Mutant(op, proof.lines[pos].id, _replace(proof, pos, new))
