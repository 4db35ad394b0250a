"""Definitional clausification of a negated formula."""
from __future__ import annotations

from .cnf import CnfFormula, Literal
from .formula import Formula, atom_list, atoms, iter_nodes

TRUE_ATOM = "e_t"


def _prefix(used):
    stem = "e_d"
    while any(a.startswith(stem) for a in used):
        stem += "d"
    return stem


def definitional_literals(a: Formula):
    """Map id(node) -> Literal for every node of a, plus the defining clauses.

    Returns (lits, defs, true_atom) where defs is a list of
    (node, atom, clauses) in children-first order.
    """
    used = atoms(a)
    stem = _prefix(used)
    true_atom = TRUE_ATOM if TRUE_ATOM not in used else stem + "_t"
    lits, defs = {}, []
    need_true = False
    for node in iter_nodes(a):
        op = node.op
        if op == "var":
            lits[id(node)] = Literal(node.name)
        elif op == "const":
            need_true = True
            lits[id(node)] = Literal(true_atom, node.name == "1")
        elif op == "not":
            lits[id(node)] = -lits[id(node.left)]
        else:
            la, lb = lits[id(node.left)], lits[id(node.right)]
            d = Literal(f"{stem}{len(defs) + 1}")
            if op == "or":
                cls = [(-d, la, lb), (d, -la), (d, -lb)]
                lits[id(node)] = d
            else:
                cls = [(-d, -la, -lb), (d, la), (d, lb)]
                lits[id(node)] = -d
            defs.append((node, d.atom, cls))
    return lits, defs, (true_atom if need_true else None)


def definitional_cnf(a: Formula) -> CnfFormula:
    """Clauses of (not a) with one fresh atom per binary connective.

    An or-node g gets d <-> (la or lb); an and-node is written as the
    negation of d <-> (not la or not lb). The CNF is satisfiable iff a is
    not a tautology, and records a as its origin.
    """
    lits, defs, true_atom = definitional_literals(a)
    clauses, names = [], list(atom_list(a))
    if true_atom:
        names.append(true_atom)
        clauses.append((Literal(true_atom),))
    for _, d, cls in defs:
        names.append(d)
        clauses.extend(cls)
    clauses.append((-lits[id(a)],))
    return CnfFormula(clauses, names, origin=a)


def is_definitional(cnf: CnfFormula) -> bool:
    if cnf.origin is None:
        return False
    ref = definitional_cnf(cnf.origin)
    return ref.clauses == cnf.clauses and ref.atoms == cnf.atoms
