"""Clauses as polynomial equations and as 0-1 integer linear inequalities."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

import numpy as np

from .cnf import CnfFormula
from .formula import TooManyAtomsError

MAX_ATOMS = 24
Monomial = Tuple[str, ...]


def _order(m: Monomial):
    return (len(m), m)


@dataclass(frozen=True)
class Polynomial:
    """Multilinear integer polynomial; terms sorted by degree, then lexicographically."""

    terms: Tuple[Tuple[int, Monomial], ...] = ()

    @classmethod
    def from_dict(cls, d: Dict[Monomial, int]) -> "Polynomial":
        return cls(tuple((c, m) for m, c in sorted(d.items(), key=lambda kv: _order(kv[0])) if c))

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls.from_dict({(): c})

    @classmethod
    def var(cls, x: str) -> "Polynomial":
        return cls.from_dict({(x,): 1})

    def as_dict(self) -> Dict[Monomial, int]:
        return {m: c for c, m in self.terms}

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = self.as_dict()
        for c, m in other.terms:
            d[m] = d.get(m, 0) + c
        return Polynomial.from_dict(d)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple((-c, m) for c, m in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        d: Dict[Monomial, int] = {}
        for c1, m1 in self.terms:
            for c2, m2 in other.terms:
                m = tuple(sorted(set(m1) | set(m2)))     # x*x = x on 0-1 values
                d[m] = d.get(m, 0) + c1 * c2
        return Polynomial.from_dict(d)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def atoms(self) -> set:
        return {x for _, m in self.terms for x in m}

    def evaluate(self, values: Dict[str, int]) -> int:
        total = 0
        for c, m in self.terms:
            if all(values[x] for x in m):
                total += c
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, m in self.terms:
            parts.append("*".join((str(c),) + m))
        return " + ".join(parts)

    def __str__(self):
        return self.render()


@dataclass
class PolynomialSystem:
    """Equations p = 0. ``boolean`` lists the atoms whose x^2 - x = 0 equation
    is kept only as a flagged, already-reduced (zero) entry."""

    clause_equations: List[Polynomial]
    atoms: List[str]

    @property
    def boolean(self) -> List[Tuple[str, Polynomial]]:
        return [(x, Polynomial()) for x in self.atoms]

    @property
    def equations(self) -> List[Polynomial]:
        return self.clause_equations + [p for _, p in self.boolean]

    def render(self) -> str:
        out = [f"{p.render()} = 0" for p in self.clause_equations]
        out += [f"1*{x}*{x} + -1*{x} = 0 # reduced" for x in self.atoms]
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class LinearConstraint:
    """sum(coeffs[x] * x) >= bound."""

    coeffs: Tuple[Tuple[str, int], ...]
    bound: int
    relation: str = ">="

    def render(self) -> str:
        lhs = " ".join(f"{c}*{x}" for x, c in self.coeffs) or "0"
        return f"{lhs} {self.relation} {self.bound}"


@dataclass
class LinearSystem:
    clause_constraints: List[LinearConstraint]
    atoms: List[str]

    @property
    def bounds(self) -> List[LinearConstraint]:
        out = []
        for x in self.atoms:
            out.append(LinearConstraint(((x, 1),), 0))
            out.append(LinearConstraint(((x, -1),), -1))
        return out

    @property
    def constraints(self) -> List[LinearConstraint]:
        return self.clause_constraints + self.bounds

    def render(self) -> str:
        out = [c.render() for c in self.clause_constraints]
        out.append("bounds 0 1")
        out += self.atoms
        return "\n".join(out) + "\n"


def _atoms(cnf: CnfFormula) -> List[str]:
    seen = dict.fromkeys(cnf.atoms)
    for c in cnf.clauses:
        for l in c:
            seen.setdefault(l.atom)
    return list(seen)


def clause_polynomial(clause) -> Polynomial:
    """Product of (1 - x) over positive and x over negative literals."""
    p = Polynomial.const(1)
    one = Polynomial.const(1)
    for l in clause:
        x = Polynomial.var(l.atom)
        p = p * (one - x if l.positive else x)
    return p


def encode_poly_system(cnf: CnfFormula) -> PolynomialSystem:
    return PolynomialSystem([clause_polynomial(c) for c in cnf.clauses], _atoms(cnf))


def clause_constraint(clause) -> LinearConstraint:
    coeffs: Dict[str, int] = {}
    neg = 0
    for l in clause:
        coeffs[l.atom] = coeffs.get(l.atom, 0) + (1 if l.positive else -1)
        neg += not l.positive
    return LinearConstraint(tuple(coeffs.items()), 1 - neg)


def encode_linear_system(cnf: CnfFormula) -> LinearSystem:
    return LinearSystem([clause_constraint(c) for c in cnf.clauses], _atoms(cnf))


# -- exhaustive 0-1 oracle ----------------------------------------------------------------

def _assignments(k: int, chunk: int = 1 << 16):
    """Blocks of rows of the 2^k x k 0-1 matrix, in binary counting order."""
    total = 1 << k
    shifts = np.arange(k, dtype=np.int64)
    for start in range(0, total, chunk):
        rows = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield ((rows[:, None] >> shifts) & 1).astype(np.int64)


def solvable_01(system: Union[PolynomialSystem, LinearSystem]) -> bool:
    """Whether some 0-1 assignment satisfies every equation or constraint."""
    atoms = list(system.atoms)
    k = len(atoms)
    if k > MAX_ATOMS:
        raise TooManyAtomsError(f"{k} atoms exceeds the limit of {MAX_ATOMS}")
    col = {x: i for i, x in enumerate(atoms)}
    if isinstance(system, PolynomialSystem):
        polys = [p for p in system.equations if not p.is_zero]
        for block in _assignments(k):
            ok = np.ones(len(block), dtype=bool)
            for p in polys:
                val = np.zeros(len(block), dtype=np.int64)
                for c, m in p.terms:
                    if m:
                        val += c * np.all(block[:, [col[x] for x in m]] == 1, axis=1)
                    else:
                        val += c
                ok &= val == 0
                if not ok.any():
                    break
            if ok.any():
                return True
        return False
    cons = system.constraints
    a = np.zeros((len(cons), k), dtype=np.int64)
    b = np.array([c.bound for c in cons], dtype=np.int64)
    for r, c in enumerate(cons):
        for x, v in c.coeffs:
            a[r, col[x]] += v
    for block in _assignments(k):
        if np.any(np.all(block @ a.T >= b, axis=1)):
            return True
    return False
