"""Proof objects for the Hilbert-style and resolution-style calculi, with text I/O."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from .cnf import Literal, read_dimacs
from .formula import (
    FALSE, TRUE, And, Formula, Not, Or, ParseError, Var, imp, parse_formula,
    render_formula,
)

HILBERT_SYSTEMS = ("F", "EF", "SF")
REFUTATION_SYSTEMS = ("RES", "ER")
SYSTEMS = HILBERT_SYSTEMS + REFUTATION_SYSTEMS


# -- axiom schemes ------------------------------------------------------------

def _schemes():
    P, Q, R = Var("P"), Var("Q"), Var("R")
    table = {
        "A1": (("P", "Q"), lambda P, Q: imp(P, imp(Q, P))),
        "A2": (("P", "Q", "R"), lambda P, Q, R: imp(imp(P, imp(Q, R)), imp(imp(P, Q), imp(P, R)))),
        "A3": (("P", "Q"), lambda P, Q: imp(And(P, Q), P)),
        "A4": (("P", "Q"), lambda P, Q: imp(And(P, Q), Q)),
        "A5": (("P", "Q"), lambda P, Q: imp(P, imp(Q, And(P, Q)))),
        "A6": (("P", "Q"), lambda P, Q: imp(P, Or(P, Q))),
        "A7": (("P", "Q"), lambda P, Q: imp(Q, Or(P, Q))),
        "A8": (("P", "Q", "R"), lambda P, Q, R: imp(imp(P, R), imp(imp(Q, R), imp(Or(P, Q), R)))),
        "A9": (("P", "Q"), lambda P, Q: imp(imp(P, Q), imp(imp(P, Not(Q)), Not(P)))),
        "A10": (("P",), lambda P: imp(Not(Not(P)), P)),
        "A11": ((), lambda: TRUE),
        "A12": (("P",), lambda P: imp(FALSE, P)),
    }
    env = {"P": P, "Q": Q, "R": R}
    patterns = {k: build(*[env[v] for v in names]) for k, (names, build) in table.items()}
    return table, patterns


SCHEMES, SCHEME_PATTERNS = _schemes()


def scheme_instance(scheme: str, args) -> Formula:
    names, build = SCHEMES[scheme]
    return build(*args)


# -- Hilbert proofs -------------------------------------------------------------

class HilbertLine:
    """One justified line. kind is AX, MP, EXT or SUB.

    AX: a = scheme id, b = tuple of formulas in the scheme's variable order.
    MP: a = id of the implication, b = id of its antecedent.
    EXT: a = the defined atom.
    SUB: a = id of the instantiated line, b = tuple of (atom, formula) pairs.
    """

    __slots__ = ("id", "formula", "kind", "a", "b")

    def __init__(self, id, formula, kind, a=None, b=None):
        self.id = id
        self.formula = formula
        self.kind = kind
        self.a = a
        self.b = b

    def __repr__(self):
        return f"HilbertLine({render_line(self)!r})"

    def copy(self, **changes):
        out = HilbertLine(self.id, self.formula, self.kind, self.a, self.b)
        for k, v in changes.items():
            setattr(out, k, v)
        return out


@dataclass
class HilbertProof:
    variant: str
    lines: list = field(default_factory=list)

    @property
    def conclusion(self):
        return self.lines[-1].formula if self.lines else None

    def steps(self):
        return len(self.lines)

    def symbols(self):
        return sum(ln.formula.size for ln in self.lines)


def _render_subst(pairs):
    return "{" + "; ".join(f"{k}={render_formula(v)}" for k, v in pairs) + "}"


def render_line(ln: HilbertLine) -> str:
    head = f"{ln.id} | {render_formula(ln.formula)} | "
    if ln.kind == "AX":
        names = SCHEMES[ln.a][0] if ln.a in SCHEMES else tuple(f"V{i}" for i in range(len(ln.b)))
        return head + f"AX {ln.a} " + _render_subst(zip(names, ln.b))
    if ln.kind == "MP":
        return head + f"MP {ln.a} {ln.b}"
    if ln.kind == "EXT":
        return head + f"EXT {ln.a}"
    return head + f"SUB {ln.a} " + _render_subst(ln.b)


def write_hilbert(proof: HilbertProof, stats: str = None) -> str:
    out = [f"system {proof.variant}"]
    out += [render_line(ln) for ln in proof.lines]
    if stats:
        out.append(f"# {stats}")
    return "\n".join(out) + "\n"


def _parse_subst(text, offset):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError("substitution must be written {...}", offset)
    body = text[1:-1].strip()
    pairs = []
    if not body:
        return pairs
    for part in body.split(";"):
        if "=" not in part:
            raise ParseError("substitution entries are name=formula", offset)
        k, v = part.split("=", 1)
        pairs.append((k.strip(), parse_formula(v.strip(), allow_reserved=True)))
    return pairs


def _data_lines(text):
    offset = 0
    for raw in text.splitlines(keepends=True):
        here = offset
        offset += len(raw.encode("utf-8"))
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line, here


def read_hilbert(text) -> HilbertProof:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows = list(_data_lines(text))
    if not rows:
        raise ParseError("empty proof", 0)
    head, off = rows[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "system" or parts[1] not in HILBERT_SYSTEMS:
        raise ParseError("expected 'system F|EF|SF'", off)
    proof = HilbertProof(parts[1])
    for line, off in rows[1:]:
        fields = line.split("|")
        if len(fields) != 3:
            raise ParseError("expected '<id> | <formula> | <rule>'", off)
        try:
            lid = int(fields[0])
        except ValueError:
            raise ParseError("bad line id", off) from None
        formula = parse_formula(fields[1].strip(), allow_reserved=True)
        rule = fields[2].strip()
        word, _, rest = rule.partition(" ")
        rest = rest.strip()
        if word == "AX":
            scheme, _, sub = rest.partition(" ")
            pairs = dict(_parse_subst(sub, off))
            names = SCHEMES[scheme][0] if scheme in SCHEMES else tuple(sorted(pairs))
            if set(pairs) != set(names):
                raise ParseError(f"substitution must bind exactly {', '.join(names) or 'nothing'}", off)
            proof.lines.append(HilbertLine(lid, formula, "AX", scheme, tuple(pairs[n] for n in names)))
        elif word == "MP":
            nums = rest.split()
            if len(nums) != 2 or not all(n.lstrip("-").isdigit() for n in nums):
                raise ParseError("MP takes two line ids", off)
            proof.lines.append(HilbertLine(lid, formula, "MP", int(nums[0]), int(nums[1])))
        elif word == "EXT":
            if len(rest.split()) != 1:
                raise ParseError("EXT takes one atom", off)
            proof.lines.append(HilbertLine(lid, formula, "EXT", rest))
        elif word == "SUB":
            num, _, sub = rest.partition(" ")
            if not num.lstrip("-").isdigit():
                raise ParseError("SUB takes a line id", off)
            proof.lines.append(HilbertLine(lid, formula, "SUB", int(num), tuple(_parse_subst(sub, off))))
        else:
            raise ParseError(f"unknown rule {word!r}", off)
    return proof


# -- resolution proofs -----------------------------------------------------------

class ResLine:
    """One resolution-family line. kind is INPUT, RESOLVE, EXTEND or DEF.

    INPUT: a = 1-based clause index. RESOLVE: a, b = premise ids, c = pivot
    atom (None lets the checker infer the unique clashing atom).
    EXTEND: a = new atom, b, c = literals (clause is None). DEF: a = id of the
    EXTEND line whose definition clause this line states.
    """

    __slots__ = ("id", "clause", "kind", "a", "b", "c")

    def __init__(self, id, clause, kind, a=None, b=None, c=None):
        self.id = id
        self.clause = clause
        self.kind = kind
        self.a = a
        self.b = b
        self.c = c

    def __repr__(self):
        return f"ResLine({self.id}, {self.kind}, {self.clause})"

    def copy(self, **changes):
        out = ResLine(self.id, self.clause, self.kind, self.a, self.b, self.c)
        for k, v in changes.items():
            setattr(out, k, v)
        return out


@dataclass
class ResolutionProof:
    system: str
    lines: list = field(default_factory=list)
    cnf_path: Optional[str] = None

    def steps(self):
        return len(self.lines)

    def symbols(self):
        return sum(4 if ln.kind == "EXTEND" else len(ln.clause) + 1 for ln in self.lines)

    def resolve_steps(self):
        return sum(1 for ln in self.lines if ln.kind == "RESOLVE")


def write_resolution(proof: ResolutionProof, cnf_path: str = None, stats: str = None) -> str:
    out = [f"system {proof.system}", f"cnf {cnf_path or proof.cnf_path or '-'}"]
    for ln in proof.lines:
        if ln.kind == "EXTEND":
            out.append(f"{ln.id} e {ln.a} {ln.b} {ln.c}")
            continue
        lits = " ".join(str(l) for l in ln.clause)
        lits = (lits + " 0") if lits else "0"
        if ln.kind == "INPUT":
            parents = f"i{ln.a}"
        elif ln.kind == "RESOLVE":
            parents = f"{ln.a} {ln.b}"
        else:
            parents = f"{ln.a}"
        out.append(f"{ln.id} {lits} {parents} 0")
    if stats:
        out.append(f"# {stats}")
    return "\n".join(out) + "\n"


def read_resolution(text, base_dir: str = None):
    """Parse the resolution format; returns (proof, cnf or None)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows = list(_data_lines(text))
    if len(rows) < 2:
        raise ParseError("expected 'system' and 'cnf' header lines", 0)
    parts = rows[0][0].split()
    if len(parts) != 2 or parts[0] != "system" or parts[1] not in REFUTATION_SYSTEMS:
        raise ParseError("expected 'system RES|ER'", rows[0][1])
    head = rows[1][0].split(None, 1)
    if len(head) != 2 or head[0] != "cnf":
        raise ParseError("expected 'cnf <path>'", rows[1][1])
    path = head[1].strip()
    proof = ResolutionProof(parts[1], cnf_path=path)
    cnf = None
    if path != "-":
        full = path if base_dir is None or os.path.isabs(path) else os.path.join(base_dir, path)
        with open(full, encoding="utf-8") as fh:
            cnf = read_dimacs(fh.read())
    for line, off in rows[2:]:
        toks = line.split()
        try:
            lid = int(toks[0])
        except (ValueError, IndexError):
            raise ParseError("bad line id", off) from None
        if len(toks) >= 2 and toks[1] == "e":
            if len(toks) != 5:
                raise ParseError("extension lines are '<id> e <atom> <lit> <lit>'", off)
            proof.lines.append(ResLine(lid, None, "EXTEND", toks[2], Literal.parse(toks[3]), Literal.parse(toks[4])))
            continue
        try:
            z1 = toks.index("0", 1)
        except ValueError:
            raise ParseError("missing clause terminator", off) from None
        lits = [Literal.parse(t) for t in toks[1:z1]]
        if len(set(lits)) != len(lits):
            raise ParseError("duplicate literal", off)
        rest = toks[z1 + 1:]
        if not rest or rest[-1] != "0":
            raise ParseError("missing parent terminator", off)
        parents = rest[:-1]
        clause = tuple(lits)
        if len(parents) == 1 and parents[0].startswith("i"):
            try:
                proof.lines.append(ResLine(lid, clause, "INPUT", int(parents[0][1:])))
            except ValueError:
                raise ParseError("bad input index", off) from None
        elif len(parents) == 2:
            try:
                proof.lines.append(ResLine(lid, clause, "RESOLVE", int(parents[0]), int(parents[1])))
            except ValueError:
                raise ParseError("bad parent id", off) from None
        elif len(parents) == 1:
            try:
                proof.lines.append(ResLine(lid, clause, "DEF", int(parents[0])))
            except ValueError:
                raise ParseError("bad parent id", off) from None
        else:
            raise ParseError("expected one input index, one extension id or two parents", off)
    return proof, cnf


def read_proof(text, base_dir: str = None):
    """Parse either format by its header; returns (proof, cnf or None)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for line, off in _data_lines(text):
        parts = line.split()
        if len(parts) == 2 and parts[0] == "system":
            if parts[1] in HILBERT_SYSTEMS:
                return read_hilbert(text), None
            if parts[1] in REFUTATION_SYSTEMS:
                return read_resolution(text, base_dir)
        raise ParseError("expected a 'system' header", off)
    raise ParseError("empty proof", 0)
