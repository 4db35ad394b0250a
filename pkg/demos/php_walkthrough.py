"""Walk through the pigeonhole principle from formula to extended Frege proof.

    python3 demos/php_walkthrough.py [n]
"""
import sys

from proofbench.checkers import check_proof
from proofbench.cnf import cnf_formula
from proofbench.formula import brute_force_classify, render_formula, split_iff
from proofbench.generators import CNF, DNF, gen_php
from proofbench.measure import measure_proof
from proofbench.php_proof import build_ef_proof_php
from proofbench.search import SearchBudget, min_resolution_steps


def main(n: int = 3) -> None:
    cnf = gen_php(n, n - 1, False, CNF)
    print(f"PHP with {n} pigeons and {n - 1} holes: {len(cnf.clauses)} clauses over {len(cnf.atoms)} atoms")
    for clause in cnf.clauses[:4]:
        print("   ", " v ".join(str(l) for l in clause))
    print("    ...")
    print("clause set by brute force:", brute_force_classify(cnf_formula(cnf)))
    print("its negation as a DNF:   ", brute_force_classify(gen_php(n, n - 1, False, DNF)))

    art = build_ef_proof_php(n)
    print("\nextension atoms shrink the problem one pigeon at a time:")
    for line in art.proof.lines:
        if line.kind == "EXT":
            q, d = split_iff(line.formula)
            print(f"    {render_formula(q)} := {render_formula(d)}")
    report = check_proof(art.proof)
    print(f"\nchecker verdict: {report.verdict}")
    print("size:", measure_proof(art.proof, f"php{n}_ef"))

    print("\nfor comparison, the shortest resolution refutations:")
    for k in (2, 3):
        res = min_resolution_steps(gen_php(k, k - 1, False, CNF), SearchBudget(40, 60))
        print(f"    PHP_{k}: {res}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3)
