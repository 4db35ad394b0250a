"""Named derived rules that expand into primitive AX/MP lines."""
from __future__ import annotations

from . import lemmas  # noqa: F401  (registers the lemma templates)
from .builder import ProofBuilder
from .formula import Formula, imp
from .proofs import HilbertProof


class MacroError(ValueError):
    pass


class UnknownMacroError(MacroError):
    pass


class ArityError(MacroError):
    pass


def _lem(name):
    return lambda b, prem, v: b.lemma(name, *v)


# name -> (number of premise lines, binding names, expansion)
MACROS = {
    "identity": (0, "A", lambda b, prem, v: b.refl(v[0])),
    "excluded_middle": (0, "A", _lem("em")),
    "double_negation_intro": (0, "A", _lem("dni")),
    "not_false": (0, "", _lem("not0")),
    "nand_left": (0, "AB", _lem("nand_l")),
    "nand_right": (0, "AB", _lem("nand_r")),
    "ex_falso": (0, "AB", _lem("efq")),
    "nor_intro": (0, "AB", _lem("nor")),
    "compose": (0, "ABC", _lem("bcomb")),
    "distribute_left": (0, "ABC", _lem("dist_l")),
    "distribute_right": (0, "ABC", _lem("dist_r")),
    "or_commute": (0, "AB", lambda b, prem, v: b.or_comm(*v)),
    "and_commute": (0, "AB", lambda b, prem, v: b.hand(b.ax("A4", *v), b.ax("A3", *v))),
    "demorgan_or": (0, "AB", _lem("demorgan_or")),
    "demorgan_and": (0, "AB", _lem("demorgan_and")),
    "weaken": (1, "A", lambda b, prem, v: b.weaken(prem[0], v[0])),
    "syllogism": (2, "", lambda b, prem, v: b.hs(*prem)),
    "case_split": (2, "ABC", lambda b, prem, v: b.case(*prem)),
    "and_intro": (2, "", lambda b, prem, v: b.hand(*prem)),
    "and_mono": (2, "", lambda b, prem, v: b.and_mono(*prem)),
    "or_mono": (2, "", lambda b, prem, v: b.or_mono(*prem)),
    "contrapose": (1, "", lambda b, prem, v: b.contrapose(prem[0])),
    "export": (1, "", lambda b, prem, v: b.export(prem[0])),
    "import": (1, "", lambda b, prem, v: b.imp_import(prem[0])),
}


def _check_case_split(prem, v):
    a, bb, c = v
    if prem[0] is not imp(a, c) or prem[1] is not imp(bb, c):
        raise MacroError("case_split premises must be A -> C and B -> C")


def expand_macro(rule: str, inputs=(), bindings=None, proof: HilbertProof = None) -> list:
    """Lines (numbered after ``proof``) deriving the macro's conclusion.

    The last returned line states the conclusion; nothing is returned when
    ``proof`` already contains it.

    ``inputs`` are ids of premise lines in ``proof``; ``bindings`` maps the
    macro's meta-variables (A, B, C) to formulas.
    """
    if rule not in MACROS:
        raise UnknownMacroError(f"unknown macro {rule!r}")
    n_in, names, fn = MACROS[rule]
    bindings = dict(bindings or {})
    inputs = list(inputs)
    if len(inputs) != n_in:
        raise ArityError(f"{rule} takes {n_in} premise line(s), got {len(inputs)}")
    if set(bindings) != set(names):
        want = ", ".join(names) or "no bindings"
        raise ArityError(f"{rule} needs bindings for {want}, got {sorted(bindings)}")
    values = [bindings[k] for k in names]
    for val in values:
        if not isinstance(val, Formula):
            raise MacroError("bindings must be formulas")
    b = ProofBuilder(proof.variant if proof is not None else "F")
    by_id = {}
    if proof is not None:
        for ln in proof.lines:
            b.ids.setdefault(id(ln.formula), ln.id)
            by_id[ln.id] = ln.formula
        b.base = proof.lines[-1].id if proof.lines else 0
    prem = []
    for i in inputs:
        if i not in by_id:
            raise MacroError(f"premise line {i} is not in the proof")
        prem.append(by_id[i])
    if rule == "case_split":
        _check_case_split(prem, values)
    try:
        goal = fn(b, prem, values)
    except (ValueError, TypeError) as exc:
        raise MacroError(f"{rule}: premises do not have the required shape") from exc
    if any(f is goal for f in by_id.values()):
        return []                       # the proof already states the conclusion
    # deduplication can state the goal early; later lines do not support it
    end = next(k for k, ln in enumerate(b.lines) if ln.formula is goal)
    return b.lines[:end + 1]
