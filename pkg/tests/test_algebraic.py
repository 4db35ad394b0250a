import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proofbench.algebraic import (
    LinearSystem, Polynomial, PolynomialSystem, clause_constraint, clause_polynomial,
    encode_linear_system, encode_poly_system, solvable_01,
)
from proofbench.cnf import CnfFormula, Literal
from proofbench.formula import TooManyAtomsError
from proofbench.generators import CNF, gen_php

p, q, r = Literal("p"), Literal("q"), Literal("r")


def product_form(clause, values):
    """The clause polynomial evaluated before any multilinear reduction."""
    out = 1
    for lit in clause:
        x = values[lit.atom]
        out *= (1 - x) if lit.positive else x
    return out


class TestPolynomial:
    def test_clause_example(self):
        poly = clause_polynomial((p, -q, r))
        assert poly.render() == "1*q + -1*p*q + -1*q*r + 1*p*q*r"

    def test_empty_clause(self):
        system = encode_poly_system(CnfFormula([()], []))
        assert system.render().splitlines()[0] == "1 = 0"
        assert not solvable_01(system)

    def test_units(self):
        system = encode_poly_system(CnfFormula([(p,), (-p,)], ["p"]))
        assert [e.render() for e in system.clause_equations] == ["1 + -1*p", "1*p"]
        assert not solvable_01(system)

    def test_idempotent_product(self):
        x = Polynomial.var("x")
        assert x * x == x
        assert (x - x).is_zero

    def test_render_flags_boolean_equations(self):
        text = encode_poly_system(CnfFormula([(p, q)], ["p", "q"])).render()
        assert "1*p*p + -1*p = 0 # reduced" in text

    def test_terms_are_graded(self):
        poly = clause_polynomial((Literal("b"), Literal("a"), -Literal("c")))
        keys = [(len(m), m) for _, m in poly.terms]
        assert keys == sorted(keys)

    @settings(max_examples=150)
    @given(st.lists(st.tuples(st.sampled_from("abcd"), st.booleans()), min_size=0, max_size=5),
           st.lists(st.integers(0, 1), min_size=4, max_size=4))
    def test_reduction_is_sound(self, lits, bits):
        clause = tuple(dict.fromkeys(Literal(a, s) for a, s in lits))
        values = dict(zip("abcd", bits))
        assert clause_polynomial(clause).evaluate(values) == product_form(clause, values)


class TestLinear:
    def test_clause_example(self):
        assert clause_constraint((p, -q, r)).render() == "1*p -1*q 1*r >= 0"

    def test_empty_clause(self):
        system = encode_linear_system(CnfFormula([()], []))
        assert system.render().splitlines()[0] == "0 >= 1"
        assert not solvable_01(system)

    def test_php32(self):
        system = encode_linear_system(gen_php(3, 2, True, CNF))
        assert len(system.clause_constraints) == 12
        assert len(system.constraints) == 12 + 2 * 6
        assert not solvable_01(system)

    def test_bounds_section(self):
        lines = encode_linear_system(CnfFormula([(p, q)], ["p", "q"])).render().splitlines()
        assert lines[lines.index("bounds 0 1") + 1:] == ["p", "q"]


class TestSolvable:
    def test_empty_system(self):
        assert solvable_01(PolynomialSystem([], []))
        assert solvable_01(LinearSystem([], []))

    def test_sizes(self):
        cnf = gen_php(3, 2, False, CNF)
        assert len(encode_poly_system(cnf).equations) == len(cnf.clauses) + len(cnf.atoms)
        assert len(encode_linear_system(cnf).constraints) == len(cnf.clauses) + 2 * len(cnf.atoms)

    def test_limit(self):
        wide = CnfFormula([tuple(Literal(f"x{k}") for k in range(25))], [])
        with pytest.raises(TooManyAtomsError):
            solvable_01(encode_linear_system(wide))

    def test_chunked_enumeration(self):
        # 18 atoms spans several enumeration blocks; the only model sets every atom
        atoms = [f"x{k}" for k in range(18)]
        cnf = CnfFormula([(Literal(a),) for a in atoms], atoms)
        assert solvable_01(encode_poly_system(cnf)) and solvable_01(encode_linear_system(cnf))
        cnf.clauses.append((-Literal("x17"),))
        assert not solvable_01(encode_poly_system(cnf))
        assert not solvable_01(encode_linear_system(cnf))

    @pytest.mark.parametrize("m,h", list(itertools.product(range(2, 5), range(1, 5))))
    def test_php_agreement(self, m, h):
        cnf = gen_php(m, h, False, CNF)
        sat = m <= h
        assert solvable_01(encode_poly_system(cnf)) == sat
        assert solvable_01(encode_linear_system(cnf)) == sat
