import json
import os
import subprocess
import sys

import pytest

from proofbench.checkers import check_proof
from proofbench.cli import FAIL, OK, USAGE, main
from proofbench.cnf import write_dimacs
from proofbench.corpus import unit_refutation
from proofbench.formula import parse_formula
from proofbench.generators import CNF, gen_php
from proofbench.measure import COLUMNS, JobError, load_config, measure_proof, render_csv, run_corpus
from proofbench.mutations import mutants
from proofbench.php_proof import build_ef_proof_php
from proofbench.proofs import HilbertLine, HilbertProof, write_hilbert, write_resolution


def body_lines(text):
    """Proof lines of a serialized file, without headers or comments."""
    heads = ("system ", "cnf ", "#")
    return [ln for ln in text.splitlines() if ln.strip() and not ln.startswith(heads)]


class TestMeasure:
    def test_units_refutation(self):
        rep = measure_proof(unit_refutation().proof, "units")
        assert (rep.steps, rep.system) == (3, "RES")
        assert str(rep) == f"units RES steps=3 symbols={rep.symbols}"

    def test_single_axiom(self):
        f = parse_formula("(or (not p) (or (not q) p))")
        proof = HilbertProof("F", [HilbertLine(1, f, "AX", "A1", (parse_formula("p"), parse_formula("q")))])
        assert check_proof(proof).accepted
        rep = measure_proof(proof)
        assert (rep.steps, rep.symbols) == (1, 7)

    def test_text_input(self):
        assert measure_proof(write_resolution(unit_refutation().proof)).steps == 3

    @pytest.mark.parametrize("n", [2, 3])
    def test_steps_match_file(self, n):
        art = build_ef_proof_php(n)
        text = write_hilbert(art.proof, art.stats_line())
        rep = measure_proof(text)
        assert rep.steps == len(body_lines(text)) == art.steps
        assert rep.steps <= rep.symbols

    def test_steps_match_refutation_file(self, corpus):
        for entry in corpus:
            if entry.system in ("RES", "ER"):
                text = write_resolution(entry.proof, "x.cnf")
                assert measure_proof(entry.proof).steps == len(body_lines(text)), entry.label


def write_config(tmp_path, jobs, name="jobs.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"jobs": jobs}))
    return str(path)


class TestCorpusRunner:
    def test_php_jobs(self, tmp_path):
        cfg = write_config(tmp_path, [{"kind": "prove-php", "n": n, "label": f"php{n}"} for n in range(2, 7)])
        rows = run_corpus(cfg)
        assert [r.label for r in rows] == [f"php{n}" for n in range(2, 7)]
        assert all(r.verdict == "ACCEPT" and r.system == "EF" for r in rows)

    def test_missing_file(self, tmp_path):
        cfg = write_config(tmp_path, [{"kind": "check", "proof": "nope.proof", "label": "gone"}])
        (row,) = run_corpus(cfg)
        assert row.verdict == "ERROR(IO)"

    def test_bad_job_keeps_going(self, tmp_path):
        cfg = write_config(tmp_path, [{"kind": "dance"}, {"kind": "refute", "pigeons": 3}])
        rows = run_corpus(cfg)
        assert rows[0].verdict == "ERROR(JobError)"
        assert rows[1].verdict == "ACCEPT" and rows[1].system == "RES"

    def test_empty_config(self, tmp_path):
        cfg = tmp_path / "empty.json"
        cfg.write_text("")
        assert render_csv(run_corpus(str(cfg))) == ",".join(COLUMNS) + "\n"

    def test_bare_list_and_bad_shape(self, tmp_path):
        cfg = tmp_path / "list.json"
        cfg.write_text(json.dumps([{"kind": "prove-php", "n": 2}]))
        assert len(load_config(str(cfg))) == 1
        cfg.write_text(json.dumps({"jobs": [3]}))
        with pytest.raises(JobError):
            load_config(str(cfg))

    def test_files_and_translation(self, tmp_path):
        cnf = gen_php(3, 2, False, CNF)
        (tmp_path / "php3.cnf").write_text(write_dimacs(cnf))
        art = build_ef_proof_php(2)
        (tmp_path / "php2.proof").write_text(write_hilbert(art.proof))
        cfg = write_config(tmp_path, [
            {"kind": "refute", "cnf": "php3.cnf", "label": "r"},
            {"kind": "check", "proof": "php2.proof", "label": "c"},
            {"kind": "translate", "source": "EF", "target": "SF", "proof": "php2.proof", "label": "t"},
            {"kind": "translate", "source": "EF", "target": "ER", "php": 2, "label": "u"},
        ])
        rows = run_corpus(cfg, jobs=2)
        assert [(r.label, r.system, r.verdict) for r in rows] == [
            ("r", "RES", "ACCEPT"), ("c", "EF", "ACCEPT"), ("t", "SF", "ACCEPT"), ("u", "ER", "ACCEPT")]

    def test_deterministic_rows(self, tmp_path):
        cfg = write_config(tmp_path, [{"kind": "prove-php", "n": n} for n in (2, 3)]
                           + [{"kind": "refute", "pigeons": 4}])
        strip = lambda rows: [r.cells()[:-1] for r in rows]
        assert strip(run_corpus(cfg, jobs=1)) == strip(run_corpus(cfg, jobs=3))


class TestCli:
    def test_gen_and_check(self, tmp_path, capsys):
        out = tmp_path / "php3.cnf"
        assert main(["gen", "php", "--pigeons", "3", "-o", str(out)]) == OK
        assert "p cnf 6 12" in out.read_text()           # functionality clauses on by default
        assert main(["gen", "php", "--pigeons", "3", "--no-functionality", "-o", str(out)]) == OK
        assert "p cnf 6 9" in out.read_text()

    def test_prove_check_measure(self, tmp_path, capsys):
        proof = tmp_path / "php3.proof"
        assert main(["prove-php", "3", "--no-functionality", "-o", str(proof)]) == OK
        assert main(["check", str(proof), "--system", "EF"]) == OK
        assert capsys.readouterr().out.startswith("ACCEPT")
        assert main(["check", str(proof), "--system", "SF"]) == FAIL
        assert main(["measure", str(proof)]) == OK
        assert "steps=" in capsys.readouterr().out

    def test_reject_and_parse_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.proof"
        bad.write_text("system F\n1 (or p q) AX A1 p q\n")
        assert main(["check", str(bad)]) == FAIL
        bad.write_text("system F\n1 (or p AX\n")
        assert main(["check", str(bad)]) == FAIL
        assert "PARSE_ERROR" in capsys.readouterr().out

    def test_translate_to_er_writes_sidecar(self, tmp_path, capsys):
        src, dst = tmp_path / "p.proof", tmp_path / "p.er"
        main(["prove-php", "2", "-o", str(src)])
        assert main(["translate", str(src), "--system", "ER", "-o", str(dst)]) == OK
        assert (tmp_path / "p.er.cnf").exists()
        assert main(["check", str(dst)]) == OK
        back = tmp_path / "back.proof"
        assert main(["translate", str(dst), "--system", "EF", "-o", str(back)]) == OK
        assert main(["check", str(back)]) == OK
        assert main(["translate", str(src), "--system", "F"]) == USAGE

    def test_encode_verify(self, capsys):
        assert main(["encode", "ilp", "--pigeons", "3", "--verify"]) == OK
        assert main(["encode", "poly", "--pigeons", "2", "--holes", "2", "--verify"]) == OK

    def test_search(self, capsys):
        assert main(["search-min-res", "--pigeons", "3", "--no-functionality"]) == OK
        assert capsys.readouterr().out.strip() == "min_resolution_steps=10"
        assert main(["search-min-res", "--pigeons", "4", "--budget-secs", "0.2"]) == FAIL
        assert main(["search-min-res", "--pigeons", "3", "--budget-lines", "0"]) == USAGE

    def test_usage_errors(self, capsys):
        assert main(["frobnicate"]) == USAGE
        assert main(["gen", "php"]) == USAGE
        assert main(["check", "/no/such/file"]) == USAGE

    def test_corpus_exit(self, tmp_path, capsys):
        good = write_config(tmp_path, [{"kind": "prove-php", "n": 2}], "good.json")
        assert main(["corpus", good]) == OK
        bad = write_config(tmp_path, [{"kind": "check", "proof": "x"}], "bad.json")
        out = tmp_path / "r.csv"
        assert main(["corpus", bad, "-o", str(out)]) == FAIL
        assert "ERROR(IO)" in out.read_text()

    def test_module_entry_point(self):
        env = dict(os.environ)
        res = subprocess.run([sys.executable, "-m", "proofbench", "gen", "php", "--pigeons", "2"],
                             capture_output=True, text=True, env=env)
        assert res.returncode == 0 and "p cnf 2 3" in res.stdout


class TestMutations:
    def test_one_line_changed(self):
        proof = build_ef_proof_php(3).proof
        for m in mutants(proof, per_proof=30):
            diff = [a for a, b in zip(proof.lines, m.proof.lines) if a != b]
            assert len(diff) == 1 and diff[0].id == m.line

    def test_all_rejected_small(self):
        entry = unit_refutation()
        ms = list(mutants(entry.proof, entry.cnf))
        assert ms and not any(check_proof(m.proof, entry.cnf).accepted for m in ms)

    def test_deterministic(self):
        proof = build_ef_proof_php(2).proof
        a = [(m.operator, m.line) for m in mutants(proof, seed=4)]
        assert a == [(m.operator, m.line) for m in mutants(proof, seed=4)]
