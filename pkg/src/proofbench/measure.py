"""Size measurement and the batch corpus runner."""
from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List

from .checkers import check_proof
from .cnf import read_dimacs
from .generators import CNF, gen_php
from .php_proof import build_ef_proof_php
from .proofs import HilbertProof, read_proof
from .search import dpll_refutation
from .simulations import translate

COLUMNS = ("label", "system", "steps", "symbols", "verdict", "millis")


@dataclass(frozen=True)
class SizeReport:
    label: str
    steps: int
    symbols: int
    system: str

    def __str__(self):
        return f"{self.label} {self.system} steps={self.steps} symbols={self.symbols}"


def measure_proof(proof, label: str = "") -> SizeReport:
    """Line count and symbol count (formula nodes; a clause weighs its length plus one)."""
    if isinstance(proof, (str, bytes)):
        proof, _ = read_proof(proof)
    system = proof.variant if isinstance(proof, HilbertProof) else proof.system
    return SizeReport(label, proof.steps(), proof.symbols(), system)


# -- corpus runner ------------------------------------------------------------------------

class JobError(ValueError):
    pass


@dataclass
class Row:
    label: str
    system: str = ""
    steps: object = ""
    symbols: object = ""
    verdict: str = ""
    millis: int = 0

    def cells(self):
        return [self.label, self.system, self.steps, self.symbols, self.verdict, self.millis]


def _load(path: str, base: str):
    full = path if os.path.isabs(path) else os.path.join(base, path)
    with open(full, "rb") as fh:
        data = fh.read()
    return data, os.path.dirname(full)


def _source(job: dict, base: str):
    """(proof, cnf) named by a job: a proof file or a generated PHP proof."""
    if "proof" in job:
        data, where = _load(job["proof"], base)
        proof, cnf = read_proof(data, where)
        if "cnf" in job:
            cnf = read_dimacs(_load(job["cnf"], base)[0].decode("utf-8"))
        return proof, cnf
    if "php" in job:
        return build_ef_proof_php(int(job["php"]), bool(job.get("functionality", False))).proof, None
    raise JobError("job names neither a proof file nor a php size")


def _run_job(job: dict, base: str):
    kind = job.get("kind")
    if kind == "prove-php":
        return build_ef_proof_php(int(job["n"]), bool(job.get("functionality", False))).proof, None
    if kind == "check":
        return _source(job, base)
    if kind == "translate":
        proof, cnf = _source(job, base)
        res = translate(job["source"], job["target"], proof, cnf)
        return res.proof, res.cnf if res.cnf is not None else cnf
    if kind == "refute":
        if "cnf" in job:
            cnf = read_dimacs(_load(job["cnf"], base)[0].decode("utf-8"))
        else:
            m = int(job["pigeons"])
            cnf = gen_php(m, int(job.get("holes", m - 1)), bool(job.get("functionality", False)), CNF)
        return dpll_refutation(cnf), cnf
    raise JobError(f"unknown job kind {kind!r}")


def run_job(job: dict, base: str = ".") -> Row:
    """One CSV row; failures land in the verdict column instead of propagating."""
    label = str(job.get("label", job.get("kind", "?")))
    t0 = time.perf_counter()
    row = Row(label)
    try:
        proof, cnf = _run_job(job, base)
        size = measure_proof(proof, label)
        row.system, row.steps, row.symbols = size.system, size.steps, size.symbols
        row.verdict = check_proof(proof, cnf).verdict
    except OSError:
        row.verdict = "ERROR(IO)"
    except Exception as exc:
        row.verdict = f"ERROR({type(exc).__name__})"
    row.millis = round((time.perf_counter() - t0) * 1000)
    return row


def load_config(path: str) -> List[dict]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if not text.strip():
        return []
    data = json.loads(text)
    jobs = data.get("jobs", []) if isinstance(data, dict) else data
    if not isinstance(jobs, list) or not all(isinstance(j, dict) for j in jobs):
        raise JobError("config must hold a list of job objects")
    return jobs


def run_corpus(config_path: str, out=None, jobs: int = 1) -> List[Row]:
    """Run every job in a JSON config and write the CSV report to ``out``.

    Rows keep config order whatever the concurrency.
    """
    job_list = load_config(config_path)
    base = os.path.dirname(os.path.abspath(config_path))
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = list(pool.map(lambda j: run_job(j, base), job_list))
    if out is not None:
        out.write(render_csv(rows))
    return rows


def render_csv(rows: List[Row]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


def all_accepted(rows: List[Row]) -> bool:
    return all(r.verdict == "ACCEPT" for r in rows)
