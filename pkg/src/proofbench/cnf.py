"""Clauses, CNF formulas, DIMACS interchange and the DNF-negation layout."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .formula import (
    ATOM_RE, FALSE, TRUE, And, Formula, Not, Or, ParseError, Var, parse_formula,
    render_formula,
)


class Literal(NamedTuple):
    atom: str
    positive: bool = True

    def __neg__(self):
        return Literal(self.atom, not self.positive)

    def __str__(self):
        return self.atom if self.positive else "-" + self.atom

    @classmethod
    def parse(cls, text: str) -> "Literal":
        if text.startswith("-"):
            return cls(text[1:], False)
        return cls(text, True)

    def formula(self) -> Formula:
        v = Var(self.atom)
        return v if self.positive else Not(v)

    def complement_formula(self) -> Formula:
        v = Var(self.atom)
        return Not(v) if self.positive else v


def make_clause(lits) -> tuple:
    """Canonical clause: duplicates dropped, first-occurrence order kept."""
    out, seen = [], set()
    for lit in lits:
        if not isinstance(lit, Literal):
            lit = Literal(*lit) if isinstance(lit, tuple) else Literal.parse(lit)
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


@dataclass
class CnfFormula:
    """A list of clauses over a declared (ordered) atom list.

    ``layout`` optionally fixes the tree shape used for the DNF negation
    (nested tuples of clause indices); ``origin`` records the formula A when
    the clauses are the definitional clausification of (not A).
    """

    clauses: list
    atoms: list = field(default_factory=list)
    layout: Optional[tuple] = None
    origin: Optional[Formula] = None

    def __post_init__(self):
        self.clauses = [make_clause(c) for c in self.clauses]
        declared = list(dict.fromkeys(self.atoms))
        known = set(declared)
        for c in self.clauses:
            for lit in c:
                if lit.atom not in known:
                    known.add(lit.atom)
                    declared.append(lit.atom)
        self.atoms = declared

    def __len__(self):
        return len(self.clauses)

    def atom_set(self):
        return set(self.atoms)


# -- balanced layouts -------------------------------------------------------

def critbit_tree(keys):
    """Crit-bit trie over distinct non-negative integer keys, as nested pairs.

    Leaves are the keys themselves; the trie over a subset of keys is the
    trie over the full set with leaves deleted and unary nodes collapsed.
    """
    keys = sorted(keys)
    if not keys:
        raise ValueError("empty key set")

    def build(lo, hi):
        if hi - lo == 1:
            return keys[lo]
        bit = (keys[lo] ^ keys[hi - 1]).bit_length() - 1
        mid = lo
        while mid < hi and not (keys[mid] >> bit) & 1:
            mid += 1
        return (build(lo, mid), build(mid, hi))

    return build(0, len(keys))


def position_tree(k: int):
    """Crit-bit trie over positions 1..k, with leaves relabelled 0..k-1."""
    return map_tree(critbit_tree(range(1, k + 1)), lambda x: x - 1)


def map_tree(tree, fn):
    if isinstance(tree, tuple):
        return (map_tree(tree[0], fn), map_tree(tree[1], fn))
    return fn(tree)


def tree_leaves(tree):
    out, stack = [], [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, tuple):
            stack.append(t[1])
            stack.append(t[0])
        else:
            out.append(t)
    return out


def fold_tree(tree, leaf, join):
    if isinstance(tree, tuple):
        return join(fold_tree(tree[0], leaf, join), fold_tree(tree[1], leaf, join))
    return leaf(tree)


def join_items(items, join, empty):
    """Combine a list along the position tree; empty list gives ``empty``."""
    if not items:
        return empty
    return fold_tree(position_tree(len(items)), lambda i: items[i], join)


def clause_formula(clause) -> Formula:
    """Disjunction of the clause's literals (0 for the empty clause)."""
    return join_items([lit.formula() for lit in clause], Or, FALSE)


def negated_clause_formula(clause) -> Formula:
    """Conjunction of complemented literals (1 for the empty clause)."""
    return join_items([lit.complement_formula() for lit in clause], And, TRUE)


def dnf_negation(cnf: CnfFormula) -> Formula:
    """The DNF formula (not C): disjunction of the negated clauses."""
    if not cnf.clauses:
        return FALSE
    terms = [negated_clause_formula(c) for c in cnf.clauses]
    layout = cnf.layout if cnf.layout is not None else position_tree(len(terms))
    return fold_tree(layout, lambda i: terms[i], Or)


def cnf_formula(cnf: CnfFormula) -> Formula:
    """The CNF as a formula (conjunction of clause disjunctions)."""
    return join_items([clause_formula(c) for c in cnf.clauses], And, TRUE)


# -- DIMACS -----------------------------------------------------------------

def _render_layout(tree):
    if isinstance(tree, tuple):
        return "(" + _render_layout(tree[0]) + " " + _render_layout(tree[1]) + ")"
    return str(tree)


def _parse_layout(text):
    stack, cur, out = [], None, None
    for tok in text.replace("(", " ( ").replace(")", " ) ").split():
        if tok == "(":
            stack.append([])
        elif tok == ")":
            items = stack.pop()
            if len(items) != 2:
                raise ParseError("layout nodes are pairs", 0)
            node = tuple(items)
            if stack:
                stack[-1].append(node)
            else:
                out = node
        else:
            cur = int(tok)
            if stack:
                stack[-1].append(cur)
            else:
                out = cur
    return out


def write_dimacs(cnf: CnfFormula) -> str:
    index = {a: i + 1 for i, a in enumerate(cnf.atoms)}
    lines = ["c atoms: " + " ".join(cnf.atoms)]
    if cnf.layout is not None:
        lines.append("c layout: " + _render_layout(cnf.layout))
    if cnf.origin is not None:
        lines.append("c origin: " + render_formula(cnf.origin))
    lines.append(f"p cnf {len(cnf.atoms)} {len(cnf.clauses)}")
    for c in cnf.clauses:
        nums = [str(index[l.atom] if l.positive else -index[l.atom]) for l in c]
        lines.append(" ".join(nums + ["0"]))
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS; atom names come from the ``c atoms:`` sidecar when present."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    names = None
    layout = origin = None
    header = None
    clauses, cur = [], []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.strip()
        here = offset
        offset += len(raw.encode("utf-8"))
        if not line:
            continue
        if line.startswith("c"):
            body = line[1:].strip()
            if body.startswith("atoms:"):
                names = body[len("atoms:"):].split()
                for n in names:
                    if not ATOM_RE.match(n):
                        raise ParseError(f"bad atom name {n!r}", here)
            elif body.startswith("layout:"):
                layout = _parse_layout(body[len("layout:"):])
            elif body.startswith("origin:"):
                origin = parse_formula(body[len("origin:"):].strip(), allow_reserved=True)
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("bad problem line", here)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("bad problem line", here) from None
            continue
        if header is None:
            raise ParseError("clause before problem line", here)
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", here) from None
            if v == 0:
                clauses.append(cur)
                cur = []
            else:
                if abs(v) > header[0]:
                    raise ParseError(f"variable {abs(v)} out of range", here)
                cur.append(v)
    if header is None:
        raise ParseError("missing problem line", offset)
    if cur:
        raise ParseError("unterminated clause", offset)
    if len(clauses) != header[1]:
        raise ParseError(f"expected {header[1]} clauses, found {len(clauses)}", offset)
    nvars = header[0]
    if names is None:
        names = [f"v{i}" for i in range(1, nvars + 1)]
    if len(names) != nvars:
        raise ParseError("atom sidecar does not match variable count", 0)
    lits = [[Literal(names[abs(v) - 1], v > 0) for v in c] for c in clauses]
    if layout is not None and sorted(tree_leaves(layout)) != list(range(len(lits))):
        raise ParseError("layout does not cover the clauses", 0)
    return CnfFormula(lits, names, layout=layout, origin=origin)
