import pytest

from proofbench import checkers as ck
from proofbench.checkers import (
    as_function, check_extended_resolution, check_frege_family, check_proof, check_resolution,
    proof_conclusion,
)
from proofbench.cnf import CnfFormula, Literal, write_dimacs
from proofbench.formula import TRUE, Not, Var, imp, iff, parse_formula
from proofbench.generators import CNF, DNF, gen_php
from proofbench.php_proof import build_ef_proof_php
from proofbench.proofs import (
    HilbertLine, HilbertProof, ResLine, ResolutionProof, read_hilbert, read_proof,
    read_resolution, write_hilbert, write_resolution,
)

P, Q, R = Var("p"), Var("q"), Var("r")
p, q, r = Literal("p"), Literal("q"), Literal("r")
UNITS = CnfFormula([(p,), (-p,)], ["p"])


def res(lines, system="RES"):
    return ResolutionProof(system, lines)


def units_proof(pivot=None):
    return res([ResLine(1, (p,), "INPUT", 1), ResLine(2, (-p,), "INPUT", 2),
                ResLine(3, (), "RESOLVE", 1, 2, pivot)])


def php2_proof(pivot="p_1_1"):
    a, b = Literal("p_1_1"), Literal("p_2_1")
    return res([
        ResLine(1, (a,), "INPUT", 1),
        ResLine(2, (-a, -b), "INPUT", 3),
        ResLine(3, (-b,), "RESOLVE", 1, 2, pivot),
        ResLine(4, (b,), "INPUT", 2),
        ResLine(5, (), "RESOLVE", 3, 4),
    ])


class TestResolution:
    def test_units(self):
        rep = check_resolution(UNITS, units_proof("p"), False)
        assert rep.accepted and rep.steps == 3 and rep.conclusion == ck.EMPTY_CLAUSE

    def test_php2(self):
        rep = check_resolution(gen_php(2, 1, True, CNF), php2_proof(), False)
        assert rep.accepted

    def test_wrong_pivot(self):
        rep = check_resolution(gen_php(2, 1, True, CNF), php2_proof("q"), False)
        assert (rep.verdict, rep.line, rep.reason) == (ck.REJECT, 3, ck.BAD_PIVOT)

    def test_not_a_resolvent(self):
        bad = units_proof()
        bad.lines[2] = bad.lines[2].copy(clause=(q,))
        rep = check_resolution(UNITS, bad, False)
        assert not rep.accepted and rep.line == 3

    def test_unknown_id(self):
        bad = res([ResLine(1, (p,), "INPUT", 1), ResLine(2, (), "RESOLVE", 1, 7)])
        assert check_resolution(UNITS, bad, False).reason == ck.UNKNOWN_ID

    def test_input_index_out_of_range(self):
        bad = res([ResLine(1, (p,), "INPUT", 9)])
        assert not check_resolution(UNITS, bad, False).accepted

    def test_final_must_be_empty(self):
        rep = check_resolution(UNITS, res([ResLine(1, (p,), "INPUT", 1)]), False)
        assert rep.reason == ck.NOT_EMPTY_FINAL

    def test_tree_like_reuse(self):
        cnf = CnfFormula([(p, q), (-p, q), (-q,)], ["p", "q"])
        lines = [
            ResLine(1, (p, q), "INPUT", 1), ResLine(2, (-p, q), "INPUT", 2),
            ResLine(3, (q,), "RESOLVE", 1, 2), ResLine(4, (-q,), "INPUT", 3),
            ResLine(5, (), "RESOLVE", 3, 4),
        ]
        assert check_resolution(cnf, res(lines), True).accepted
        dag = res(lines[:4] + [ResLine(5, (), "RESOLVE", 3, 4), ResLine(6, (), "RESOLVE", 3, 4)])
        assert check_resolution(cnf, dag, False).accepted
        rep = check_resolution(cnf, dag, True)
        assert (rep.reason, rep.line) == (ck.REUSE_IN_TREE, 6)

    def test_extend_forbidden(self):
        lines = [ResLine(1, None, "EXTEND", "e_z", p, q)] + units_proof().lines
        rep = check_resolution(UNITS, res(lines), False)
        assert rep.reason == ck.EXTEND_FORBIDDEN

    def test_duplicate_ids(self):
        bad = units_proof()
        bad.lines[1] = bad.lines[1].copy(id=1)
        assert not check_resolution(UNITS, bad, False).accepted


def er_lines(atom="e_z"):
    z = Literal(atom)
    return [
        ResLine(1, None, "EXTEND", atom, p, r),
        ResLine(2, (-z, p, r), "DEF", 1),
        ResLine(3, (z, -p), "DEF", 1),
        ResLine(4, (z, -r), "DEF", 1),
        ResLine(5, (p,), "INPUT", 1),
        ResLine(6, (z,), "RESOLVE", 3, 5),
        ResLine(7, (-z,), "INPUT", 2),
        ResLine(8, (), "RESOLVE", 6, 7),
    ]


class TestExtendedResolution:
    def test_atom_of_the_input_is_not_fresh(self):
        cnf = CnfFormula([(p,), (-Literal("e_y"),)], ["p", "r"])
        assert check_extended_resolution(cnf, res(er_lines("e_y"), "ER")).reason == ck.EXT_NOT_FRESH

    def test_fresh_extension_accepts(self):
        cnf = CnfFormula([(p,), (-p, r), (-r,)], ["p", "r"])
        z = Literal("e_z")
        proof = res([
            ResLine(1, None, "EXTEND", "e_z", p, r),
            ResLine(2, (-z, p, r), "DEF", 1),
            ResLine(3, (z, -p), "DEF", 1),
            ResLine(4, (z, -r), "DEF", 1),
            ResLine(5, (p,), "INPUT", 1),
            ResLine(6, (-p, r), "INPUT", 2),
            ResLine(7, (r,), "RESOLVE", 5, 6),
            ResLine(8, (-r,), "INPUT", 3),
            ResLine(9, (), "RESOLVE", 7, 8),
        ], "ER")
        assert check_extended_resolution(cnf, proof).accepted

    def test_extension_over_input_atom(self):
        lines = er_lines("p")
        assert check_extended_resolution(UNITS, res(lines, "ER")).reason == ck.EXT_NOT_FRESH

    def test_def_clauses_must_match(self):
        lines = er_lines()
        lines[2] = lines[2].copy(clause=(Literal("e_z"), -r))
        cnf = CnfFormula([(p,), (-p,)], ["p", "r"])
        assert not check_extended_resolution(cnf, res(lines, "ER")).accepted

    def test_conservative(self):
        proof = units_proof()
        a = check_resolution(UNITS, proof, False)
        b = check_extended_resolution(UNITS, res(proof.lines, "ER"))
        assert (a.verdict, a.steps, a.symbols) == (b.verdict, b.steps, b.symbols)
        bad = units_proof("q")
        assert check_resolution(UNITS, bad, False).reason == check_extended_resolution(
            UNITS, res(bad.lines, "ER")).reason


def a1(x, y):
    return HilbertLine(1, imp(x, imp(y, x)), "AX", "A1", (x, y))


class TestFrege:
    def test_single_axiom(self):
        proof = HilbertProof("F", [a1(P, Q)])
        assert parse_formula("(or (not p) (or (not q) p))") is proof.lines[0].formula
        rep = check_frege_family(proof)
        assert rep.accepted and rep.steps == 1 and rep.symbols == 7

    def test_bad_instance(self):
        line = a1(P, Q).copy(b=(P, R))
        assert check_frege_family(HilbertProof("F", [line])).reason == ck.BAD_AXIOM_INSTANCE

    def test_unknown_scheme(self):
        line = a1(P, Q).copy(a="A13")
        assert check_frege_family(HilbertProof("F", [line])).reason == ck.UNKNOWN_SCHEME

    def test_mp_needs_implication(self):
        lines = [HilbertLine(1, TRUE, "AX", "A11", ()), HilbertLine(2, TRUE, "AX", "A11", ()),
                 HilbertLine(3, P, "MP", 1, 2)]
        rep = check_frege_family(HilbertProof("F", lines))
        assert (rep.reason, rep.line) == (ck.BAD_MP, 3)

    def test_mp(self):
        lines = [HilbertLine(1, TRUE, "AX", "A11", ()),
                 HilbertLine(2, imp(TRUE, imp(P, TRUE)), "AX", "A1", (TRUE, P)),
                 HilbertLine(3, imp(P, TRUE), "MP", 2, 1)]
        assert check_frege_family(HilbertProof("F", lines)).accepted
        swapped = lines[:2] + [lines[2].copy(a=1, b=2)]
        assert check_frege_family(HilbertProof("F", swapped)).reason == ck.BAD_MP

    def ext_proof(self, variant="EF", atom="e_q", d=None):
        d = d if d is not None else imp(P, Q)
        return HilbertProof(variant, [
            HilbertLine(1, iff(Var(atom), d), "EXT", atom),
            HilbertLine(2, TRUE, "AX", "A11", ()),
        ])

    def test_ext(self):
        assert check_frege_family(self.ext_proof()).accepted
        assert check_frege_family(self.ext_proof("F")).reason == ck.EXT_FORBIDDEN
        assert check_frege_family(self.ext_proof("SF")).reason == ck.EXT_FORBIDDEN

    def test_ext_freshness(self):
        assert check_frege_family(self.ext_proof(d=imp(Var("e_q"), P))).reason == ck.EXT_NOT_FRESH
        two = self.ext_proof()
        two.lines.insert(1, HilbertLine(2, iff(Var("e_q"), P), "EXT", "e_q"))
        two.lines[2] = two.lines[2].copy(id=3)
        assert check_frege_family(two).reason == ck.EXT_NOT_FRESH

    def test_ext_in_conclusion(self):
        proof = self.ext_proof()
        proof.lines[1] = HilbertLine(2, imp(Var("e_q"), imp(P, Var("e_q"))), "AX", "A1", (Var("e_q"), P))
        assert check_frege_family(proof).reason == ck.EXT_IN_CONCLUSION

    def test_sub(self):
        lines = [a1(P, Q), HilbertLine(2, imp(R, imp(Q, R)), "SUB", 1, (("p", R),))]
        assert check_frege_family(HilbertProof("SF", lines)).accepted
        assert check_frege_family(HilbertProof("EF", lines)).reason == ck.SUB_FORBIDDEN
        wrong = lines[:1] + [lines[1].copy(b=(("p", Q),))]
        assert not check_frege_family(HilbertProof("SF", wrong)).accepted

    def test_php2_from_prover(self):
        proof = build_ef_proof_php(2, True).proof
        rep = check_frege_family(proof)
        assert rep.accepted and rep.conclusion is gen_php(2, 1, True, DNF)

    def test_conservative(self):
        proof = build_ef_proof_php(2).proof
        as_f = HilbertProof("F", proof.lines)
        a, b = check_frege_family(proof), check_frege_family(as_f)
        assert (a.verdict, a.steps, a.symbols) == (b.verdict, b.steps, b.symbols)


class TestFormats:
    def test_hilbert_round_trip(self):
        proof = build_ef_proof_php(3).proof
        back = read_hilbert(write_hilbert(proof, "n=3"))
        assert back.variant == "EF"
        assert [(l.id, l.formula, l.kind, l.a, l.b) for l in back.lines] == \
               [(l.id, l.formula, l.kind, l.a, l.b) for l in proof.lines]

    def test_sub_round_trip(self):
        lines = [a1(P, Q), HilbertLine(2, imp(R, imp(Q, R)), "SUB", 1, (("p", R),))]
        text = write_hilbert(HilbertProof("SF", lines))
        assert "SUB 1 {p=r}" in text
        assert check_frege_family(read_hilbert(text)).accepted

    def test_resolution_round_trip(self, tmp_path):
        (tmp_path / "u.cnf").write_text(write_dimacs(UNITS))
        text = write_resolution(units_proof(), "u.cnf")
        assert text.splitlines()[:3] == ["system RES", "cnf u.cnf", "1 p 0 i1 0"]
        proof, cnf = read_resolution(text, str(tmp_path))
        assert check_proof(proof, cnf).accepted

    def test_extend_rendering(self):
        text = write_resolution(res(er_lines(), "ER"))
        assert "1 e e_z p r" in text.splitlines()
        proof, cnf = read_proof(text)
        assert cnf is None and proof.lines[0].kind == "EXTEND"

    @pytest.mark.parametrize("text", [
        "", "system XX\n", "system F\n1 | p | AX\n", "system F\n1 | (or p | AX A1 {P=p}\n",
        "system RES\ncnf -\n1 p i1\n", "system RES\n",
    ])
    def test_malformed(self, text):
        from proofbench.formula import FormulaError
        with pytest.raises((FormulaError, ValueError)):
            read_proof(text)


class TestAsFunction:
    def test_php3(self):
        text = write_hilbert(build_ef_proof_php(3).proof).encode()
        assert as_function("EF", text) is gen_php(3, 2, False, DNF)

    def test_wrong_system_is_one(self):
        text = write_hilbert(build_ef_proof_php(3).proof).encode()
        assert as_function("F", text) is TRUE

    @pytest.mark.parametrize("junk", [b"", b"\xff\xfe", b"system EF\n1 | p | AX A1 {P=p; Q=q}\n",
                                      b"system RES\ncnf /nonexistent\n"])
    def test_garbage(self, junk):
        assert as_function("EF", junk) is TRUE
        assert as_function("RES", junk) is TRUE

    def test_refutation_conclusion(self, tmp_path):
        cnf = gen_php(2, 1, False, CNF)
        (tmp_path / "php2.cnf").write_text(write_dimacs(cnf))
        text = write_resolution(php2_proof(), "php2.cnf")
        assert as_function("RES", text, str(tmp_path)) is gen_php(2, 1, False, DNF)
        assert proof_conclusion(php2_proof(), cnf) is gen_php(2, 1, False, DNF)
        assert as_function("ER", text, str(tmp_path)) is TRUE

    def test_conclusion_not_negated(self):
        assert as_function("F", b"system F\n1 | 1 | AX A11 {}\n") is TRUE
        line = write_hilbert(HilbertProof("F", [a1(P, Q)])).encode()
        assert as_function("F", line) is imp(P, imp(Q, P))
        assert as_function("F", line) is not Not(imp(P, imp(Q, P)))
