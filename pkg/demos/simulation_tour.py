"""Translate one proof through every supported pair of calculi and watch the sizes."""
from proofbench.checkers import check_proof, proof_conclusion
from proofbench.corpus import standard_corpus
from proofbench.php_proof import build_ef_proof_php
from proofbench.simulations import translate


def show(tag, res):
    verdict = check_proof(res.proof, res.cnf).verdict
    print(f"{tag:<10} {verdict:<7} {res.stats_line()}")


def main() -> None:
    ef = build_ef_proof_php(3).proof
    print("starting from the EF proof of PHP_3\n")
    to_sf = translate("EF", "SF", ef)
    show("EF->SF", to_sf)
    to_er = translate("EF", "ER", ef)
    show("EF->ER", to_er)
    print(f"           the refuted CNF has {len(to_er.cnf.clauses)} clauses, "
          f"{len(to_er.cnf.atoms)} atoms")
    back = translate("ER", "EF", to_er.proof, to_er.cnf)
    show("ER->EF", back)
    same = proof_conclusion(back.proof) is ef.conclusion
    print(f"\nround trip keeps the conclusion: {same}")

    print("\nsmall F proofs embed into EF unchanged:")
    for entry in standard_corpus(max_ef=2, max_res=2, derived=False):
        if entry.system == "F" and entry.label.startswith("taut"):
            show(entry.label, translate("F", "EF", entry.proof))


if __name__ == "__main__":
    main()
