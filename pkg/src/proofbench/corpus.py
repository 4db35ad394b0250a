"""A reproducible corpus of accepted proofs across all five calculi."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .builder import ProofBuilder
from .cnf import CnfFormula, Literal
from .formula import Var
from .generators import CNF, Graph, gen_php, gen_tseitin
from .macros import MACROS, expand_macro
from .php_proof import build_ef_proof_php
from .proofs import HilbertProof, ResLine, ResolutionProof
from .search import dpll_refutation
from .simulations import translate


@dataclass
class CorpusEntry:
    label: str
    system: str
    proof: object
    cnf: Optional[CnfFormula] = None


def macro_proofs() -> List[CorpusEntry]:
    """Every premise-free macro, expanded over distinct atoms, as an F proof."""
    out = []
    names = ("p", "q", "r")
    for name, (n_in, metas, _) in MACROS.items():
        if n_in:
            continue
        bindings = {m: Var(names[k]) for k, m in enumerate(metas)}
        lines = expand_macro(name, (), bindings)
        out.append(CorpusEntry(f"macro_{name}", "F", HilbertProof("F", lines)))
    return out


def taut_proofs() -> List[CorpusEntry]:
    from .formula import parse_formula
    out = []
    for k, text in enumerate((
        "(or p (not p))",
        "(imp (and p q) (or q r))",
        "(iff (not (and p q)) (or (not p) (not q)))",
        "(or (and p q) (or (not p) (not q)))",
    )):
        b = ProofBuilder("F")
        b.taut(parse_formula(text))
        out.append(CorpusEntry(f"taut_{k}", "F", b.proof()))
    return out


def unit_refutation() -> CorpusEntry:
    p = Literal("p")
    cnf = CnfFormula([(p,), (-p,)], ["p"])
    lines = [ResLine(1, (p,), "INPUT", 1), ResLine(2, (-p,), "INPUT", 2), ResLine(3, (), "RESOLVE", 1, 2)]
    return CorpusEntry("units_p", "RES", ResolutionProof("RES", lines), cnf)


def extension_refutation() -> CorpusEntry:
    """ER refutation of {p or q}, {not p}, {not q} that routes through z <-> (p or q)."""
    p, q, z = Literal("p"), Literal("q"), Literal("e_z")
    cnf = CnfFormula([(p, q), (-p,), (-q,)], ["p", "q"])
    lines = [
        ResLine(1, None, "EXTEND", "e_z", p, q),
        ResLine(2, (-z, p, q), "DEF", 1),
        ResLine(3, (z, -p), "DEF", 1),
        ResLine(4, (z, -q), "DEF", 1),
        ResLine(5, (p, q), "INPUT", 1),
        ResLine(6, (z, q), "RESOLVE", 3, 5),
        ResLine(7, (-p,), "INPUT", 2),
        ResLine(8, (-z, q), "RESOLVE", 2, 7),
        ResLine(9, (-q,), "INPUT", 3),
        ResLine(10, (-z,), "RESOLVE", 8, 9),
        ResLine(11, (q,), "RESOLVE", 6, 10),
        ResLine(12, (), "RESOLVE", 11, 9),
    ]
    return CorpusEntry("ext_pq", "ER", ResolutionProof("ER", lines), cnf)


def tseitin_triangle() -> CnfFormula:
    g = Graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    return gen_tseitin(g, {"a": 1, "b": 0, "c": 0})


def refutations(max_php: int = 4) -> List[CorpusEntry]:
    out = [unit_refutation(), extension_refutation()]
    for n in range(2, max_php + 1):
        cnf = gen_php(n, n - 1, False, CNF)
        out.append(CorpusEntry(f"php{n}_res", "RES", dpll_refutation(cnf), cnf))
    cnf = gen_php(3, 2, True, CNF)
    out.append(CorpusEntry("php3f_res", "RES", dpll_refutation(cnf), cnf))
    cnf = tseitin_triangle()
    out.append(CorpusEntry("tseitin3_res", "RES", dpll_refutation(cnf), cnf))
    return out


def ef_proofs(max_n: int = 5) -> List[CorpusEntry]:
    out = [CorpusEntry(f"php{n}_ef", "EF", build_ef_proof_php(n).proof) for n in range(2, max_n + 1)]
    out.append(CorpusEntry("php3f_ef", "EF", build_ef_proof_php(3, True).proof))
    return out


def standard_corpus(max_ef: int = 4, max_res: int = 4, derived: bool = True) -> List[CorpusEntry]:
    """F, EF, SF, RES and ER proofs; SF and the larger ER entries come from translation."""
    out = macro_proofs() + taut_proofs()
    two = build_ef_proof_php(2).proof
    out.append(CorpusEntry("php2_f", "F", HilbertProof("F", list(two.lines))))
    efs = ef_proofs(max_ef)
    out += efs
    out += refutations(max_res)
    if derived:
        for e in efs[:2]:
            sf = translate("EF", "SF", e.proof).proof
            out.append(CorpusEntry(e.label.replace("_ef", "_sf"), "SF", sf))
            er = translate("EF", "ER", e.proof)
            out.append(CorpusEntry(e.label.replace("_ef", "_er"), "ER", er.proof, er.cnf))
    return out
