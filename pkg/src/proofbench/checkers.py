"""Polynomial-time checkers for the resolution and Hilbert-style calculi."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .clausify import is_definitional
from .cnf import CnfFormula, dnf_negation
from .formula import ATOM_RE, TRUE, Formula, apply_substitution, atoms, split_iff, split_imp
from .proofs import (
    SCHEMES, HilbertProof, ResolutionProof, read_proof, scheme_instance,
)

ACCEPT = "ACCEPT"
REJECT = "REJECT"
EMPTY_CLAUSE = "EMPTY_CLAUSE"

BAD_PIVOT = "BAD_PIVOT"
UNKNOWN_ID = "UNKNOWN_ID"
NOT_EMPTY_FINAL = "NOT_EMPTY_FINAL"
REUSE_IN_TREE = "REUSE_IN_TREE"
EXTEND_FORBIDDEN = "EXTEND_FORBIDDEN"
EXT_NOT_FRESH = "EXT_NOT_FRESH"
BAD_AXIOM_INSTANCE = "BAD_AXIOM_INSTANCE"
BAD_MP = "BAD_MP"
EXT_IN_CONCLUSION = "EXT_IN_CONCLUSION"
SUB_FORBIDDEN = "SUB_FORBIDDEN"
EXT_FORBIDDEN = "EXT_FORBIDDEN"
UNKNOWN_SCHEME = "UNKNOWN_SCHEME"


@dataclass
class CheckReport:
    verdict: str
    conclusion: Union[Formula, str, None] = None
    steps: int = 0
    symbols: int = 0
    line: Optional[int] = None
    reason: Optional[str] = None

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPT

    def __str__(self):
        if self.accepted:
            return f"ACCEPT steps={self.steps} symbols={self.symbols}"
        return f"REJECT line={self.line} reason={self.reason}"


def _reject(line, reason, steps=0, symbols=0):
    return CheckReport(REJECT, None, steps, symbols, line, reason)


# -- resolution family ----------------------------------------------------------

def _check_res(cnf: CnfFormula, proof: ResolutionProof, tree_like: bool, allow_ext: bool):
    steps, symbols = proof.steps(), proof.symbols()
    if not proof.lines:
        return _reject(0, NOT_EMPTY_FINAL, steps, symbols)
    known = {}      # id -> frozenset of literals, or ("EXT", triple of clause sets)
    used_atoms = set(cnf.atoms)
    refs = set()
    prev = None
    inputs = [frozenset(c) for c in cnf.clauses]
    for ln in proof.lines:
        lid = ln.id
        if not isinstance(lid, int) or (prev is not None and lid <= prev):
            return _reject(lid, UNKNOWN_ID, steps, symbols)
        prev = lid
        kind = ln.kind
        if kind == "EXTEND":
            if not allow_ext:
                return _reject(lid, EXTEND_FORBIDDEN, steps, symbols)
            q, l1, l2 = ln.a, ln.b, ln.c
            if (not isinstance(q, str) or not ATOM_RE.match(q) or q in used_atoms
                    or q == l1.atom or q == l2.atom):
                return _reject(lid, EXT_NOT_FRESH, steps, symbols)
            used_atoms.update((q, l1.atom, l2.atom))
            pos = type(l1)(q)
            defs = (frozenset((-pos, l1, l2)), frozenset((pos, -l1)), frozenset((pos, -l2)))
            known[lid] = ("EXT", defs)
            continue
        clause = frozenset(ln.clause)
        if len(clause) != len(ln.clause):
            return _reject(lid, BAD_PIVOT, steps, symbols)
        if kind == "INPUT":
            idx = ln.a
            if not isinstance(idx, int) or not 1 <= idx <= len(inputs):
                return _reject(lid, UNKNOWN_ID, steps, symbols)
            if clause != inputs[idx - 1]:
                return _reject(lid, BAD_PIVOT, steps, symbols)
        elif kind == "DEF":
            ext = known.get(ln.a)
            if not isinstance(ext, tuple):
                return _reject(lid, UNKNOWN_ID, steps, symbols)
            if clause not in ext[1]:
                return _reject(lid, BAD_PIVOT, steps, symbols)
        elif kind == "RESOLVE":
            c1, c2 = known.get(ln.a), known.get(ln.b)
            if not isinstance(c1, frozenset) or not isinstance(c2, frozenset):
                return _reject(lid, UNKNOWN_ID, steps, symbols)
            if tree_like:
                if ln.a in refs or ln.b in refs or ln.a == ln.b:
                    return _reject(lid, REUSE_IN_TREE, steps, symbols)
                refs.add(ln.a)
                refs.add(ln.b)
            clash = [l for l in c1 if -l in c2]
            if len(clash) != 1 or (ln.c is not None and clash[0].atom != ln.c):
                return _reject(lid, BAD_PIVOT, steps, symbols)
            x = clash[0]
            if clause != (c1 - {x}) | (c2 - {-x}):
                return _reject(lid, BAD_PIVOT, steps, symbols)
        else:
            return _reject(lid, UNKNOWN_ID, steps, symbols)
        used_atoms.update(l.atom for l in clause)
        known[lid] = clause
    last = proof.lines[-1]
    if last.kind == "EXTEND" or last.clause:
        return _reject(last.id, NOT_EMPTY_FINAL, steps, symbols)
    return CheckReport(ACCEPT, EMPTY_CLAUSE, steps, symbols)


def check_resolution(cnf: CnfFormula, proof: ResolutionProof, tree_like: bool = False) -> CheckReport:
    """Check a (tree-like, if asked) resolution refutation of cnf."""
    return _check_res(cnf, proof, tree_like, allow_ext=False)


def check_extended_resolution(cnf: CnfFormula, proof: ResolutionProof) -> CheckReport:
    """Resolution plus fresh definitions q <-> (l1 or l2)."""
    return _check_res(cnf, proof, False, allow_ext=True)


def refutation_conclusion(cnf: CnfFormula) -> Formula:
    """The formula a refutation of cnf proves.

    Normally the DNF negation of cnf. When cnf is exactly the definitional
    clausification of (not A) for its recorded origin A, the conclusion is A.
    """
    if cnf.origin is not None and is_definitional(cnf):
        return cnf.origin
    return dnf_negation(cnf)


# -- Hilbert family -------------------------------------------------------------

class _AtomTracker:
    """Atoms of all formulas registered so far, updated incrementally."""

    def __init__(self):
        self.seen = set()
        self.atoms = set()

    def add(self, f: Formula):
        seen, stack = self.seen, [f]
        while stack:
            node = stack.pop()
            k = id(node)
            if k in seen:
                continue
            seen.add(k)
            if node.op == "var":
                self.atoms.add(node.name)
            elif node.left is not None:
                stack.append(node.left)
                if node.right is not None:
                    stack.append(node.right)


def check_frege_family(proof: HilbertProof) -> CheckReport:
    """Check every line of an F, EF or SF proof; the conclusion is the last formula."""
    lines = proof.lines
    variant = proof.variant
    steps = len(lines)
    symbols = sum(ln.formula.size for ln in lines)
    if not lines:
        return _reject(0, BAD_AXIOM_INSTANCE, 0, 0)
    final = lines[-1].formula
    final_atoms = None
    tracker = None
    done = 0
    by_id = {}
    prev = None
    for pos, ln in enumerate(lines):
        lid, f, kind = ln.id, ln.formula, ln.kind
        if not isinstance(lid, int) or (prev is not None and lid <= prev):
            return _reject(lid, BAD_MP, steps, symbols)
        prev = lid
        if kind == "AX":
            entry = SCHEMES.get(ln.a)
            if entry is None:
                return _reject(lid, UNKNOWN_SCHEME, steps, symbols)
            args = ln.b
            if not isinstance(args, tuple) or len(args) != len(entry[0]):
                return _reject(lid, BAD_AXIOM_INSTANCE, steps, symbols)
            if scheme_instance(ln.a, args) is not f:
                return _reject(lid, BAD_AXIOM_INSTANCE, steps, symbols)
        elif kind == "MP":
            major, minor = by_id.get(ln.a), by_id.get(ln.b)
            if major is None or minor is None:
                return _reject(lid, BAD_MP, steps, symbols)
            parts = split_imp(major)
            if parts is None or parts[0] is not minor or parts[1] is not f:
                return _reject(lid, BAD_MP, steps, symbols)
        elif kind == "EXT":
            if variant != "EF":
                return _reject(lid, EXT_FORBIDDEN, steps, symbols)
            q = ln.a
            parts = split_iff(f)
            if parts is None or parts[0].op != "var" or parts[0].name != q:
                return _reject(lid, BAD_AXIOM_INSTANCE, steps, symbols)
            if final_atoms is None:
                final_atoms = atoms(final)
                tracker = _AtomTracker()
            if q in final_atoms:
                return _reject(lid, EXT_IN_CONCLUSION, steps, symbols)
            while done < pos:
                tracker.add(lines[done].formula)
                done += 1
            if q in tracker.atoms or q in atoms(parts[1]):
                return _reject(lid, EXT_NOT_FRESH, steps, symbols)
        elif kind == "SUB":
            if variant != "SF":
                return _reject(lid, SUB_FORBIDDEN, steps, symbols)
            src = by_id.get(ln.a)
            pairs = ln.b
            if src is None or not isinstance(pairs, tuple):
                return _reject(lid, BAD_AXIOM_INSTANCE, steps, symbols)
            subst = {}
            for k, v in pairs:
                if not isinstance(k, str) or not ATOM_RE.match(k) or k in subst:
                    return _reject(lid, BAD_AXIOM_INSTANCE, steps, symbols)
                subst[k] = v
            if apply_substitution(src, subst) is not f:
                return _reject(lid, BAD_AXIOM_INSTANCE, steps, symbols)
        else:
            return _reject(lid, UNKNOWN_SCHEME, steps, symbols)
        by_id[lid] = f
    return CheckReport(ACCEPT, final, steps, symbols)


# -- dispatch and the total-function adapter --------------------------------------

def check_proof(proof, cnf: CnfFormula = None, tree_like: bool = False) -> CheckReport:
    """Check a parsed proof with the checker for its declared system."""
    if isinstance(proof, HilbertProof):
        return check_frege_family(proof)
    if cnf is None:
        return _reject(0, UNKNOWN_ID)
    if proof.system == "ER":
        rep = check_extended_resolution(cnf, proof)
    else:
        rep = check_resolution(cnf, proof, tree_like)
    return rep


def proof_conclusion(proof, cnf: CnfFormula = None) -> Formula:
    """Conclusion under the shared convention (refutations prove the CNF's negation)."""
    if isinstance(proof, HilbertProof):
        return proof.conclusion
    return refutation_conclusion(cnf)


def as_function(system: str, w, base_dir: str = None) -> Formula:
    """Map any byte string to a tautology: the checked conclusion, or the constant 1."""
    try:
        if isinstance(w, (bytes, bytearray)):
            w = bytes(w).decode("utf-8")
        proof, cnf = read_proof(w, base_dir)
        declared = getattr(proof, "variant", None) or proof.system
        if declared != system:
            return TRUE
        rep = check_proof(proof, cnf)
        if not rep.accepted:
            return TRUE
        return proof_conclusion(proof, cnf)
    except Exception:
        return TRUE
