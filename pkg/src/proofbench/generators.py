"""Generators for pigeonhole, Tseitin parity and tau_b range-avoidance formulas."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .cnf import CnfFormula, Literal, critbit_tree, dnf_negation, map_tree
from .formula import Formula, ParseError

CNF = "CNF"
DNF = "DNF"
DEGREE_LIMIT = 6
INPUT_LIMIT = 16


class ParamError(ValueError):
    pass


class DegreeLimitError(ValueError):
    pass


class TooManyInputsError(ValueError):
    pass


def _form(form):
    f = str(form).upper()
    if f in ("CNF", "CNF_CONTRADICTION"):
        return CNF
    if f in ("DNF", "DNF_TAUTOLOGY"):
        return DNF
    raise ParamError(f"unknown form {form!r}")


# -- pigeonhole ---------------------------------------------------------------

@dataclass(frozen=True)
class PhpParams:
    pigeons: int
    holes: int
    functionality: bool = False
    form: str = CNF


def p_atom(i: int, j: int) -> str:
    return f"p_{i}_{j}"


PI, ETA, PHI = 0, 1, 2


def php_key(kind: int, a: int, b: int = 0, c: int = 0, width: int = 8) -> int:
    """Trie key of a PHP term: a tag followed by three fixed-width fields.

    pigeon term i -> (PI, i); hole term (i1 < i2, j) -> (ETA, j, i2, i1);
    functionality term (i, j1 < j2) -> (PHI, i, j2, j1).
    """
    return (((kind << width | a) << width | b) << width) | c


def php_width(m: int, h: int) -> int:
    return max(8, max(m, h).bit_length())


def php_clauses(m: int, h: int, functionality: bool = False):
    """List of (key, clause) pairs in the canonical CNF order."""
    w = php_width(m, h)
    out = []
    for i in range(1, m + 1):
        out.append((php_key(PI, i, width=w), [Literal(p_atom(i, j)) for j in range(1, h + 1)]))
    for j in range(1, h + 1):
        for i1, i2 in itertools.combinations(range(1, m + 1), 2):
            out.append((php_key(ETA, j, i2, i1, w),
                        [Literal(p_atom(i1, j), False), Literal(p_atom(i2, j), False)]))
    if functionality:
        for i in range(1, m + 1):
            for j1, j2 in itertools.combinations(range(1, h + 1), 2):
                out.append((php_key(PHI, i, j2, j1, w),
                            [Literal(p_atom(i, j1), False), Literal(p_atom(i, j2), False)]))
    return out


def gen_php(pigeons, holes=None, functionality: bool = False, form=CNF):
    """Pigeonhole formula: CNF contradiction or its DNF negation (a tautology).

    The DNF is laid out as a crit-bit trie over the term keys of
    :func:`php_key`, so the layout for fewer pigeons/holes embeds into the
    layout for more.
    """
    if isinstance(pigeons, PhpParams):
        p = pigeons
        pigeons, holes, functionality, form = p.pigeons, p.holes, p.functionality, p.form
    form = _form(form)
    if not isinstance(pigeons, int) or not isinstance(holes, int) or pigeons < 2 or holes < 1:
        raise ParamError(f"need pigeons >= 2 and holes >= 1, got {pigeons}, {holes}")
    pairs = php_clauses(pigeons, holes, functionality)
    index = {key: n for n, (key, _) in enumerate(pairs)}
    layout = map_tree(critbit_tree(index), index.__getitem__)
    atoms = [p_atom(i, j) for i in range(1, pigeons + 1) for j in range(1, holes + 1)]
    cnf = CnfFormula([c for _, c in pairs], atoms, layout=layout)
    return cnf if form == CNF else dnf_negation(cnf)


# -- Tseitin ------------------------------------------------------------------

@dataclass
class Graph:
    vertices: list
    edges: list = field(default_factory=list)

    def __post_init__(self):
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ParamError("duplicate vertex")
        for u, v in self.edges:
            if u not in known or v not in known:
                raise ParamError(f"edge ({u}, {v}) uses an undeclared vertex")
            if u == v:
                raise ParamError(f"self-loop at {u}")

    def incident(self, v):
        return [k for k, (a, b) in enumerate(self.edges) if v in (a, b)]


def edge_atom(k: int) -> str:
    return f"x_{k + 1}"


def gen_tseitin(graph: Graph, charges, degree_limit: int = DEGREE_LIMIT) -> CnfFormula:
    """Vertex-parity clauses: the edges at v must sum to charges[v] mod 2."""
    if set(charges) != set(graph.vertices):
        raise ParamError("charges must be given for every vertex")
    clauses = []
    for v in graph.vertices:
        inc = graph.incident(v)
        if len(inc) > degree_limit:
            raise DegreeLimitError(f"vertex {v} has degree {len(inc)} > {degree_limit}")
        want = int(charges[v]) & 1
        for bits in itertools.product((0, 1), repeat=len(inc)):
            if sum(bits) % 2 != want:
                clauses.append([Literal(edge_atom(e), b == 0) for e, b in zip(inc, bits)])
    return CnfFormula(clauses, [edge_atom(k) for k in range(len(graph.edges))])


def parse_graph(text: str):
    """Parse ``vertex``/``edge``/``charge`` lines into (Graph, charges)."""
    vertices, edges, charges = [], [], {}
    offset = 0
    for raw in text.splitlines(keepends=True):
        here = offset
        offset += len(raw.encode("utf-8"))
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        kind = parts[0]
        if kind == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif kind == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        elif kind == "charge" and len(parts) == 3 and parts[2] in ("0", "1"):
            charges[parts[1]] = int(parts[2])
        else:
            raise ParseError(f"bad graph line {raw.strip()!r}", here)
    for v in vertices:
        charges.setdefault(v, 0)
    try:
        return Graph(vertices, edges), charges
    except ParamError as exc:
        raise ParseError(str(exc), 0) from None


# -- circuits and tau_b -------------------------------------------------------

ARITY = {"AND": 2, "OR": 2, "XOR": 2, "NOT": 1, "CONST0": 0, "CONST1": 0}
_ID_RE = re.compile(r"[a-z0-9_]+\Z")


@dataclass
class Circuit:
    inputs: int
    gates: list
    outputs: list

    def __post_init__(self):
        self.gates = [(g, op.upper(), tuple(args)) for g, op, args in self.gates]
        self.outputs = list(self.outputs)
        if self.inputs < 1:
            raise ParamError("a circuit needs at least one input")
        known = {f"x{k}" for k in range(1, self.inputs + 1)}
        for gid, op, args in self.gates:
            if not _ID_RE.match(gid) or gid in known:
                raise ParamError(f"bad or duplicate gate id {gid!r}")
            if op not in ARITY or len(args) != ARITY[op]:
                raise ParamError(f"gate {gid}: bad op {op} / arity")
            for a in args:
                if a not in known:
                    raise ParamError(f"gate {gid} uses {a!r} before definition")
            known.add(gid)
        if len(self.outputs) != 2 * self.inputs:
            raise ParamError(f"need exactly {2 * self.inputs} outputs, got {len(self.outputs)}")
        for o in self.outputs:
            if o not in known:
                raise ParamError(f"unknown output {o!r}")

    def node_atom(self, ident: str) -> str:
        if ident.startswith("x") and ident[1:].isdigit() and 1 <= int(ident[1:]) <= self.inputs:
            return f"x_{ident[1:]}"
        return f"y_{ident}"

    def evaluate(self, xs) -> str:
        val = {f"x{k + 1}": int(b) for k, b in enumerate(xs)}
        for gid, op, args in self.gates:
            a = [val[x] for x in args]
            val[gid] = {
                "AND": lambda: a[0] & a[1], "OR": lambda: a[0] | a[1],
                "XOR": lambda: a[0] ^ a[1], "NOT": lambda: 1 - a[0],
                "CONST0": lambda: 0, "CONST1": lambda: 1,
            }[op]()
        return "".join(str(val[o]) for o in self.outputs)


@dataclass
class TauInstance:
    circuit: Circuit
    target: str

    def __post_init__(self):
        if len(self.target) != 2 * self.circuit.inputs or set(self.target) - {"0", "1"}:
            raise ParamError("target must be a bit string of length 2n")


def parse_circuit(text: str) -> Circuit:
    n, gates, outputs = None, [], None
    offset = 0
    for raw in text.splitlines(keepends=True):
        here = offset
        offset += len(raw.encode("utf-8"))
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        try:
            if parts[0] == "inputs" and len(parts) == 2 and n is None:
                n = int(parts[1])
            elif parts[0] == "gate" and len(parts) >= 3:
                gates.append((parts[1], parts[2], parts[3:]))
            elif parts[0] == "outputs" and outputs is None:
                outputs = parts[1:]
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"bad circuit line {raw.strip()!r}", here) from None
    if n is None or outputs is None:
        raise ParseError("circuit needs 'inputs' and 'outputs' lines", offset)
    try:
        return Circuit(n, gates, outputs)
    except ParamError as exc:
        raise ParseError(str(exc), 0) from None


def circuit_range(c: Circuit, limit: int = INPUT_LIMIT) -> set:
    if c.inputs > limit:
        raise TooManyInputsError(f"{c.inputs} inputs exceeds the limit of {limit}")
    return {c.evaluate(xs) for xs in itertools.product((0, 1), repeat=c.inputs)}


def _gate_clauses(out: str, op: str, ins):
    y = Literal(out)
    if op == "CONST0":
        return [[-y]]
    if op == "CONST1":
        return [[y]]
    if op == "NOT":
        a = Literal(ins[0])
        return [[y, a], [-y, -a]]
    a, b = Literal(ins[0]), Literal(ins[1])
    if op == "AND":
        return [[-y, a], [-y, b], [y, -a, -b]]
    if op == "OR":
        return [[y, -a], [y, -b], [-y, a, b]]
    return [[-y, a, b], [-y, -a, -b], [y, -a, b], [y, a, -b]]


def tau_cnf(t: TauInstance) -> CnfFormula:
    """Clauses saying y is a valid computation of the circuit with output b."""
    c = t.circuit
    atoms = [f"x_{k}" for k in range(1, c.inputs + 1)]
    clauses = []
    for gid, op, args in c.gates:
        atoms.append(c.node_atom(gid))
        clauses += _gate_clauses(c.node_atom(gid), op, [c.node_atom(a) for a in args])
    for o, bit in zip(c.outputs, t.target):
        clauses.append([Literal(c.node_atom(o), bit == "1")])
    return CnfFormula(clauses, atoms)


def gen_tau(t: TauInstance, target: str = None) -> Formula:
    """DNF that holds iff the computation is invalid or its output differs from b."""
    if isinstance(t, Circuit):
        t = TauInstance(t, target)
    return dnf_negation(tau_cnf(t))
