"""Refutation search: DPLL-derived refutations and exact minimal resolution length."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .cnf import CnfFormula
from .proofs import ResolutionProof
from .resbuild import ResBuilder, Unrefuted

BUDGET_EXCEEDED = "BUDGET_EXCEEDED"
FOUND = "FOUND"
SATISFIABLE = "SATISFIABLE"


class BudgetError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_lines: int = 40
    max_seconds: float = 60.0

    def __post_init__(self):
        if self.max_lines <= 0 or self.max_seconds <= 0:
            raise BudgetError("budget limits must be positive")


@dataclass
class SearchResult:
    status: str
    steps: Optional[int] = None     # exact minimum when FOUND
    lower: int = 0                  # every refutation needs at least this many steps
    nodes: int = 0

    def __str__(self):
        if self.status == FOUND:
            return f"min_resolution_steps={self.steps}"
        if self.status == SATISFIABLE:
            return "SATISFIABLE"
        return f"{BUDGET_EXCEEDED} lower_bound={self.lower}"


def dpll_refutation(cnf: CnfFormula, cnf_path: str = None) -> ResolutionProof:
    """A dag-like resolution refutation read off a DPLL search tree.

    Raises Unrefuted when the CNF is satisfiable.
    """
    r = ResBuilder("RES")
    ids = [r.input(k + 1, c) for k, c in enumerate(cnf.clauses)]
    used = r.derive(ids, [])
    return _prune(r, used, cnf_path)


def _prune(r: ResBuilder, root: int, cnf_path) -> ResolutionProof:
    """Keep only the lines the final clause depends on, renumbered."""
    keep, stack = set(), [root]
    while stack:
        lid = stack.pop()
        if lid in keep:
            continue
        keep.add(lid)
        ln = r.lines[lid - 1]
        if ln.kind == "RESOLVE":
            stack += [ln.a, ln.b]
    new_id, out = {}, []
    for ln in r.lines:
        if ln.id not in keep:
            continue
        new_id[ln.id] = len(out) + 1
        if ln.kind == "RESOLVE":
            out.append(ln.copy(id=new_id[ln.id], a=new_id[ln.a], b=new_id[ln.b]))
        else:
            out.append(ln.copy(id=new_id[ln.id]))
    return ResolutionProof(r.system, out, cnf_path)


# -- exact minimum ----------------------------------------------------------------------

def _encode(cnf: CnfFormula):
    """Clauses as ints: bit 2v for the atom v, bit 2v+1 for its negation."""
    index = {a: k for k, a in enumerate(sorted({l.atom for c in cnf.clauses for l in c}))}
    out = []
    for c in cnf.clauses:
        m = 0
        for l in c:
            m |= 1 << (2 * index[l.atom] + (0 if l.positive else 1))
        out.append(m)
    return out, len(index)


def _unsat(clauses) -> bool:
    r = ResBuilder("RES")
    ids = [r.input(k + 1, c) for k, c in enumerate(clauses)]
    try:
        r.derive(ids, [])
    except Unrefuted:
        return False
    return True


def necessary_clauses(cnf: CnfFormula) -> list:
    """Indexes of clauses whose removal leaves a satisfiable set.

    Every refutation uses each of them as an input.
    """
    cl = cnf.clauses
    return [k for k in range(len(cl)) if not _unsat(cl[:k] + cl[k + 1:])]


class _Search:
    def __init__(self, clauses, n_atoms, budget: SearchBudget, necessary=()):
        self.inputs = list(dict.fromkeys(clauses))
        need = {clauses[k] for k in necessary}
        self.need_mask = sum(1 << k for k, c in enumerate(self.inputs) if c in need)
        even = int("01" * max(n_atoms, 1), 2)
        self.even, self.odd = even, even << 1
        self.deadline = time.monotonic() + budget.max_seconds
        self.nodes = 0
        self.failed = set()

    def run(self, depth: int) -> bool:
        return self.go(list(self.inputs), len(self.inputs), 0, depth, (-1, -1))

    def go(self, pool, n_in, used, left, last):
        """Depth-first over canonical step sequences of length ``left``.

        ``used`` marks (by pool position) the clauses some step has used.
        The finished proof is connected: every derived clause and every
        necessary input ends up below the empty clause, and a step joins at
        most two pieces, which bounds ``left``.
        """
        self.nodes += 1
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise TimeoutError
        n_unused = len(pool) - n_in - (used >> n_in).bit_count()
        missing = (self.need_mask & ~used).bit_count()
        if n_unused + missing > left + 1:
            return False
        if min(c.bit_count() for c in pool) > left:
            return False
        key = (tuple(pool[n_in:]), last, left)
        if key in self.failed:
            return False
        even, odd = self.even, self.odd
        n = len(pool)
        latest = n - 1 if n > n_in else -1
        for j in range(n):
            cj = pool[j]
            swapped = ((cj & even) << 1) | ((cj & odd) >> 1)
            for i in range(j):
                # consecutive independent steps come in increasing pair order
                if latest != j and latest != i and (i, j) <= last:
                    continue
                ci = pool[i]
                clash = ci & swapped
                if not clash or clash & (clash - 1):
                    continue
                both = clash | ((clash & even) << 1) | ((clash & odd) >> 1)
                r = (ci | cj) & ~both
                if not r:
                    return True
                if left == 1:
                    continue
                if any(c & r == c for c in pool):
                    continue
                if self.go(pool + [r], n_in, used | (1 << i) | (1 << j), left - 1, (i, j)):
                    return True
        self.failed.add(key)
        return False


def min_resolution_steps(cnf: CnfFormula, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """Fewest RESOLVE steps in any dag-like refutation, by iterative deepening.

    Pruning keeps the search exact: resolvents subsumed by an existing clause
    are skipped, every derived clause must be used later, the narrowest
    clause bounds the remaining depth, independent steps are ordered, and
    failed states are cached.
    """
    clauses, n_atoms = _encode(cnf)
    if any(not c for c in clauses):
        return SearchResult(FOUND, 0, 0)
    try:
        upper = dpll_refutation(cnf).resolve_steps()
    except Unrefuted:
        return SearchResult(SATISFIABLE)
    s = _Search(clauses, n_atoms, budget, necessary_clauses(cnf))
    lower = 1
    for depth in range(1, budget.max_lines + 1):
        if depth == upper:
            return SearchResult(FOUND, depth, depth, s.nodes)
        try:
            found = s.run(depth)
        except TimeoutError:
            return SearchResult(BUDGET_EXCEEDED, None, lower, s.nodes)
        if found:
            return SearchResult(FOUND, depth, depth, s.nodes)
        lower = depth + 1
    return SearchResult(BUDGET_EXCEEDED, None, lower, s.nodes)
