"""Incremental construction of resolution and extended-resolution proofs."""
from __future__ import annotations

from .cnf import Literal
from .proofs import ResLine, ResolutionProof


class Unrefuted(ValueError):
    """The clause set is satisfiable under the given assumptions."""


class ResBuilder:
    """Append-only line store; every method returns the id of its line."""

    def __init__(self, system: str = "ER"):
        self.system = system
        self.lines: list = []
        self.clauses: dict = {}       # id -> frozenset of literals
        self._inputs: dict = {}
        self._resolved: dict = {}

    def _emit(self, clause, kind, a=None, b=None, c=None) -> int:
        lid = len(self.lines) + 1
        self.lines.append(ResLine(lid, tuple(clause) if clause is not None else None, kind, a, b, c))
        if clause is not None:
            self.clauses[lid] = frozenset(clause)
        return lid

    def input(self, index: int, clause) -> int:
        """Clause number ``index`` (1-based) of the CNF; emitted once."""
        lid = self._inputs.get(index)
        if lid is None:
            lid = self._inputs[index] = self._emit(clause, "INPUT", index)
        return lid

    def resolve(self, i: int, j: int) -> int:
        key = (i, j)
        if key in self._resolved:
            return self._resolved[key]
        c1, c2 = self.clauses[i], self.clauses[j]
        clash = [l for l in c1 if -l in c2]
        if len(clash) != 1:
            raise ValueError(f"lines {i} and {j} clash on {len(clash)} literals")
        x = clash[0]
        out = [l for l in self.lines[i - 1].clause if l != x]
        seen = set(out)
        out += [l for l in self.lines[j - 1].clause if l != -x and l not in seen]
        lid = self._resolved[key] = self._emit(out, "RESOLVE", i, j)
        return lid

    def extend(self, q: str, l1: Literal, l2: Literal):
        """q <-> (l1 or l2); returns the ids of its three definition clauses."""
        eid = self._emit(None, "EXTEND", q, l1, l2)
        p = Literal(q)
        out = []
        for cl in ((-p, l1, l2), (p, -l1), (p, -l2)):
            uniq = tuple(dict.fromkeys(cl))
            out.append(self._emit(uniq, "DEF", eid))
        return out

    def proof(self, cnf_path: str = None) -> ResolutionProof:
        return ResolutionProof(self.system, list(self.lines), cnf_path)

    def derive(self, pool, falsify) -> int:
        """Derive a subset of ``falsify`` from the clause ids in ``pool``.

        A DPLL search under the assignment making every literal of
        ``falsify`` false; each closed branch becomes one resolution step.
        """
        clauses = [(cid, self.clauses[cid]) for cid in pool]
        assign = {}
        for l in falsify:
            assign[l.atom] = not l.positive
        return self._dpll(clauses, assign)

    def _dpll(self, clauses, assign) -> int:
        best = None
        for cid, c in clauses:
            open_lits = []
            sat = False
            for l in c:
                v = assign.get(l.atom)
                if v is None:
                    open_lits.append(l)
                elif v == l.positive:
                    sat = True
                    break
            if sat:
                continue
            if not open_lits:
                return cid
            if best is None or len(open_lits) < len(best):
                best = open_lits
        if best is None:
            raise Unrefuted("assignment satisfies every clause")
        lit = best[0]
        atom = lit.atom
        found = {}
        for value in (not lit.positive, lit.positive):
            assign[atom] = value
            try:
                cid = self._dpll(clauses, assign)
            finally:
                del assign[atom]
            if not any(l.atom == atom for l in self.clauses[cid]):
                return cid
            found[value] = cid
        return self.resolve(found[True], found[False])
