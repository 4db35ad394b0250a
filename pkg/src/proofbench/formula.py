"""Propositional formulas over 0, 1, not, and, or.

Nodes are hash-consed: building the same formula twice returns the same
object, so ``is``/``==`` comparisons are O(1) and shared subformulas are
stored once. Sizes are cached at construction time.
"""
from __future__ import annotations

import re

import numpy as np

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
RESERVED_PREFIX = "e_"
CLASSIFY_LIMIT = 24

TAUTOLOGY = "TAUTOLOGY"
SATISFIABLE_NOT_TAUTOLOGY = "SATISFIABLE_NOT_TAUTOLOGY"
UNSATISFIABLE = "UNSATISFIABLE"


class FormulaError(Exception):
    pass


class ParseError(FormulaError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class ReservedNameError(FormulaError):
    pass


class MissingAtomError(FormulaError):
    pass


class TooManyAtomsError(FormulaError):
    pass


_TABLE: dict = {}


class Formula:
    """An interned formula node. Build nodes with the module-level constructors."""

    __slots__ = ("op", "left", "right", "name", "size", "__weakref__")

    def __repr__(self):
        text = render_formula(self) if self.size < 60 else f"<{self.op} node, {self.size} symbols>"
        return f"Formula({text})"

    def __str__(self):
        return render_formula(self)

    def __reduce__(self):
        return (parse_formula, (render_formula(self), True))

    @property
    def is_atom(self):
        return self.op == "var"


def _make(key, op, left=None, right=None, name=None):
    node = _TABLE.get(key)
    if node is None:
        node = object.__new__(Formula)
        node.op = op
        node.left = left
        node.right = right
        node.name = name
        node.size = 1 + (left.size if left is not None else 0) + (right.size if right is not None else 0)
        _TABLE[key] = node
    return node


def Var(name: str) -> Formula:
    return _make(("v", name), "var", name=name)


def Const(value) -> Formula:
    value = int(value)
    if value not in (0, 1):
        raise ValueError("constants are 0 or 1")
    return _make(("c", value), "const", name=str(value))


def Not(a: Formula) -> Formula:
    return _make(("n", id(a)), "not", a)


def And(a: Formula, b: Formula) -> Formula:
    return _make(("a", id(a), id(b)), "and", a, b)


def Or(a: Formula, b: Formula) -> Formula:
    return _make(("o", id(a), id(b)), "or", a, b)


TRUE = Const(1)
FALSE = Const(0)


def imp(a: Formula, b: Formula) -> Formula:
    """Implication sugar, stored as (or (not a) b)."""
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(imp(a, b), imp(b, a))


def split_imp(f: Formula):
    """Return (a, b) when f has the shape (or (not a) b), else None."""
    if f.op == "or" and f.left.op == "not":
        return f.left.left, f.right
    return None


def split_iff(f: Formula):
    """Return (a, b) when f is the expansion of (iff a b), else None."""
    if f.op != "and":
        return None
    fw, bw = split_imp(f.left), split_imp(f.right)
    if fw is None or bw is None or fw[0] is not bw[1] or fw[1] is not bw[0]:
        return None
    return fw


def big_and(items):
    """Right-nested conjunction; a single item is returned as is."""
    items = list(items)
    out = items[-1]
    for x in reversed(items[:-1]):
        out = And(x, out)
    return out


def big_or(items):
    items = list(items)
    out = items[-1]
    for x in reversed(items[:-1]):
        out = Or(x, out)
    return out


# -- traversal helpers ------------------------------------------------------

def iter_nodes(f: Formula):
    """Yield the distinct nodes of f's DAG, children before parents."""
    seen = set()
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            yield node
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        if node.right is not None:
            stack.append((node.right, False))
        if node.left is not None:
            stack.append((node.left, False))


def atoms(f: Formula) -> set:
    """Set of atom names occurring in f."""
    return {n.name for n in iter_nodes(f) if n.op == "var"}


def atom_list(f: Formula) -> list:
    """Atom names in order of first (left-to-right) occurrence."""
    out, seen = [], set()
    stack = [f]
    visited = set()
    while stack:
        node = stack.pop()
        if id(node) in visited:
            continue
        visited.add(id(node))
        if node.op == "var":
            if node.name not in seen:
                seen.add(node.name)
                out.append(node.name)
        else:
            if node.right is not None:
                stack.append(node.right)
            if node.left is not None:
                stack.append(node.left)
    return out


def symbols(f: Formula) -> int:
    """Symbol count: number of nodes in the formula tree."""
    return f.size


# -- text format ------------------------------------------------------------

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def _tokens(text: str):
    for m in _TOKEN_RE.finditer(text):
        yield m.group(0), len(text[: m.start()].encode("utf-8"))


def parse_formula(text: str, allow_reserved: bool = False) -> Formula:
    """Parse the s-expression format; imp/iff and n-ary and/or are expanded."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    end = len(text.encode("utf-8"))
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty input", 0)
    pos = 0
    # frames: [op, offset, children]
    stack: list = []
    result = None
    while pos < len(toks):
        tok, off = toks[pos]
        pos += 1
        if tok == "(":
            if pos >= len(toks):
                raise ParseError("unexpected end of input", end)
            op, op_off = toks[pos]
            if op not in ("not", "and", "or", "imp", "iff"):
                raise ParseError(f"unknown connective {op!r}", op_off)
            pos += 1
            stack.append([op, off, []])
            continue
        if tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", off)
            op, op_off, kids = stack.pop()
            node = _build(op, kids, op_off, off)
        else:
            node = _leaf(tok, off, allow_reserved)
        if stack:
            stack[-1][2].append(node)
        else:
            if result is not None:
                raise ParseError("trailing input", off)
            result = node
    if stack:
        raise ParseError("unexpected end of input", end)
    return result


def _leaf(tok, off, allow_reserved):
    if tok in ("0", "1"):
        return Const(int(tok))
    if not ATOM_RE.match(tok):
        raise ParseError(f"bad atom {tok!r}", off)
    if tok.startswith(RESERVED_PREFIX) and not allow_reserved:
        raise ReservedNameError(f"atom {tok!r} uses the reserved prefix {RESERVED_PREFIX!r}")
    return Var(tok)


def _build(op, kids, op_off, close_off):
    if op == "not":
        if len(kids) != 1:
            raise ParseError("not takes one argument", close_off)
        return Not(kids[0])
    if op in ("imp", "iff"):
        if len(kids) != 2:
            raise ParseError(f"{op} takes two arguments", close_off)
        return imp(*kids) if op == "imp" else iff(*kids)
    if len(kids) < 2:
        raise ParseError(f"{op} takes at least two arguments", close_off)
    join = And if op == "and" else Or
    out = kids[-1]
    for k in reversed(kids[:-1]):
        out = join(k, out)
    return out


def render_formula(f: Formula) -> str:
    """Canonical binary s-expression (no sugar)."""
    parts = []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            parts.append(node)
            continue
        op = node.op
        if op in ("var", "const"):
            parts.append(node.name)
        elif op == "not":
            parts.append("(not ")
            stack.append(")")
            stack.append(node.left)
        else:
            parts.append("(" + op + " ")
            stack.append(")")
            stack.append(node.right)
            stack.append(" ")
            stack.append(node.left)
    return "".join(parts)


# -- semantics --------------------------------------------------------------

def evaluate(f: Formula, assignment) -> int:
    """Evaluate f under a total assignment (mapping atom name -> 0/1)."""
    val = {}
    for node in iter_nodes(f):
        op = node.op
        if op == "var":
            if node.name not in assignment:
                raise MissingAtomError(f"no value for atom {node.name!r}")
            v = 1 if assignment[node.name] else 0
        elif op == "const":
            v = 1 if node.name == "1" else 0
        elif op == "not":
            v = 1 - val[id(node.left)]
        elif op == "and":
            v = val[id(node.left)] & val[id(node.right)]
        else:
            v = val[id(node.left)] | val[id(node.right)]
        val[id(node)] = v
    return val[id(f)]


def value3(f: Formula, partial, memo=None):
    """Three-valued evaluation under a partial assignment: 0, 1 or None."""
    memo = {} if memo is None else memo
    for node in iter_nodes(f):
        if id(node) in memo:
            continue
        op = node.op
        if op == "var":
            v = partial.get(node.name)
        elif op == "const":
            v = 1 if node.name == "1" else 0
        elif op == "not":
            a = memo[id(node.left)]
            v = None if a is None else 1 - a
        elif op == "and":
            a, b = memo[id(node.left)], memo[id(node.right)]
            v = 0 if (a == 0 or b == 0) else (1 if (a == 1 and b == 1) else None)
        else:
            a, b = memo[id(node.left)], memo[id(node.right)]
            v = 1 if (a == 1 or b == 1) else (0 if (a == 0 and b == 0) else None)
        memo[id(node)] = v
    return memo[id(f)]


_CHUNK_BITS = 16


def truth_columns(f: Formula, names=None, limit: int = CLASSIFY_LIMIT):
    """Yield packed truth tables of f, one uint64 array per chunk of assignments.

    Assignment number a gives atom names[t] the value (a >> t) & 1.
    """
    names = sorted(atoms(f)) if names is None else list(names)
    k = len(names)
    if k > limit:
        raise TooManyAtomsError(f"{k} atoms exceeds the limit of {limit}")
    low = min(k, _CHUNK_BITS)
    width = 1 << low
    index = np.arange(width, dtype=np.uint64)
    pad = max(64, width)
    base = {}
    for t in range(low):
        bits = ((index >> np.uint64(t)) & np.uint64(1)).astype(bool)
        bits = np.concatenate([bits, np.zeros(pad - width, dtype=bool)])
        base[names[t]] = np.packbits(bits, bitorder="little").view(np.uint64)
    words = pad // 64
    ones = np.full(words, np.uint64(0xFFFFFFFFFFFFFFFF))
    zeros = np.zeros(words, dtype=np.uint64)
    order = list(iter_nodes(f))
    parents = {}
    for node in order:
        for c in (node.left, node.right):
            if c is not None:
                parents[id(c)] = parents.get(id(c), 0) + 1
    for high in range(1 << (k - low)):
        col = dict(base)
        for t in range(low, k):
            col[names[t]] = ones if (high >> (t - low)) & 1 else zeros
        val = {}
        left = dict(parents)
        for node in order:
            op = node.op
            if op == "var":
                v = col[node.name]
            elif op == "const":
                v = ones if node.name == "1" else zeros
            elif op == "not":
                v = ~val[id(node.left)]
            elif op == "and":
                v = val[id(node.left)] & val[id(node.right)]
            else:
                v = val[id(node.left)] | val[id(node.right)]
            val[id(node)] = v
            for c in (node.left, node.right):
                if c is not None:
                    left[id(c)] -= 1
                    if left[id(c)] == 0 and c is not f:
                        del val[id(c)]
        out = val[id(f)]
        if width < 64:
            out = out & np.uint64((1 << width) - 1)
        yield out, width


def brute_force_classify(f: Formula, limit: int = CLASSIFY_LIMIT) -> str:
    """Classify f by enumerating every assignment to its atoms."""
    seen_true = seen_false = False
    for col, width in truth_columns(f, limit=limit):
        ones = int(np.unpackbits(col.view(np.uint8)).sum())
        seen_true = seen_true or ones > 0
        seen_false = seen_false or ones < width
        if seen_true and seen_false:
            return SATISFIABLE_NOT_TAUTOLOGY
    if seen_true:
        return TAUTOLOGY
    return UNSATISFIABLE


# -- substitution and matching ----------------------------------------------

def apply_substitution(f: Formula, subst, memo=None) -> Formula:
    """Simultaneously replace atoms by formulas (subst maps names to Formulas)."""
    if not subst:
        return f
    memo = {} if memo is None else memo
    for node in iter_nodes(f):
        key = id(node)
        if key in memo:
            continue
        op = node.op
        if op == "var":
            out = subst.get(node.name, node)
        elif op == "const":
            out = node
        elif op == "not":
            out = Not(memo[id(node.left)])
        elif op == "and":
            out = And(memo[id(node.left)], memo[id(node.right)])
        else:
            out = Or(memo[id(node.left)], memo[id(node.right)])
        memo[key] = out
    return memo[id(f)]


class _NoMatch:
    def __repr__(self):
        return "NoMatch"

    def __bool__(self):
        return False


NoMatch = _NoMatch()


def match_scheme(pattern: Formula, f: Formula):
    """Match a scheme against f; pattern atoms are variables (nonlinear)."""
    binding = {}
    stack = [(pattern, f)]
    while stack:
        p, g = stack.pop()
        if p.op == "var":
            prev = binding.get(p.name)
            if prev is None:
                binding[p.name] = g
            elif prev is not g:
                return NoMatch
            continue
        if p.op != g.op:
            return NoMatch
        if p.op == "const":
            if p is not g:
                return NoMatch
            continue
        stack.append((p.left, g.left))
        if p.right is not None:
            stack.append((p.right, g.right))
    return binding


def compose_substitutions(s1, s2):
    """The substitution a -> apply(s1(a), s2), extended by s2 on atoms outside s1."""
    out = {a: apply_substitution(v, s2) for a, v in s1.items()}
    for a, v in s2.items():
        out.setdefault(a, v)
    return out
