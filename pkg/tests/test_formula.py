"""Formula parsing, printing, classical evaluation, compilation."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_logic.formula import (
    MAX_DIMENSION,
    MAX_VARIABLES,
    BinOp,
    Const,
    FormulaSyntaxError,
    Not,
    Var,
    compile_formula,
    eval_classical,
    format_formula,
    parse,
    truth_table_rows,
)
from spectral_logic.multivalued import max3, min3

# Compiler-vs-oracle corpus: each formula paired with an independent
# Python predicate over an environment dict (m=2 semantics).
CORPUS = [
    ("A & B", lambda e: e["A"] & e["B"]),
    ("A | B", lambda e: e["A"] | e["B"]),
    ("A ^ B", lambda e: e["A"] ^ e["B"]),
    ("!A", lambda e: 1 - e["A"]),
    ("A -> B", lambda e: (1 - e["A"]) | e["B"]),
    ("A <-> B", lambda e: int(e["A"] == e["B"])),
    ("nand(A, B)", lambda e: 1 - (e["A"] & e["B"])),
    ("nor(A, B)", lambda e: 1 - (e["A"] | e["B"])),
    ("min(A, B)", lambda e: min(e["A"], e["B"])),
    ("max(A, B)", lambda e: max(e["A"], e["B"])),
    ("A min B", lambda e: min(e["A"], e["B"])),
    ("A max B", lambda e: max(e["A"], e["B"])),
    ("A & B | C", lambda e: (e["A"] & e["B"]) | e["C"]),
    ("A | B & C", lambda e: e["A"] | (e["B"] & e["C"])),
    ("A -> B -> C", lambda e: (1 - e["A"]) | ((1 - e["B"]) | e["C"])),
    ("(A -> B) -> C", lambda e: (1 - ((1 - e["A"]) | e["B"])) | e["C"]),
    ("!(A & B)", lambda e: 1 - (e["A"] & e["B"])),
    ("!A | !B", lambda e: (1 - e["A"]) | (1 - e["B"])),
    ("A ^ B ^ C", lambda e: e["A"] ^ e["B"] ^ e["C"]),
    ("A <-> B <-> C", lambda e: int(int(e["A"] == e["B"]) == e["C"])),
    ("A & !A", lambda e: 0),
    ("A | !A", lambda e: 1),
    ("0", lambda e: 0),
    ("1", lambda e: 1),
    ("A & 1", lambda e: e["A"]),
    ("A ^ 1", lambda e: 1 - e["A"]),
    ("(A | B) & (A | C)", lambda e: (e["A"] | e["B"]) & (e["A"] | e["C"])),
    ("A -> B & C", lambda e: (1 - e["A"]) | (e["B"] & e["C"])),
    ("nand(A, A)", lambda e: 1 - e["A"]),
    ("min(A, max(B, C))", lambda e: min(e["A"], max(e["B"], e["C"]))),
    ("!(A <-> B)", lambda e: e["A"] ^ e["B"]),
    ("((A))", lambda e: e["A"]),
    ("A & B & C & D", lambda e: e["A"] & e["B"] & e["C"] & e["D"]),
    ("(A -> B) <-> (!A | B)", lambda e: 1),
]


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 30


@pytest.mark.parametrize("text,oracle", CORPUS, ids=[c[0] for c in CORPUS])
def test_compiler_matches_oracle_exhaustively(text, oracle):
    formula = parse(text)
    f = compile_formula(formula, 2)
    for assignment in itertools.product((0, 1), repeat=formula.arity):
        env = dict(zip(formula.variables, assignment))
        expected = oracle(env)
        assert eval_classical(formula, assignment, 2) == expected
        index = 0
        for letter in assignment:
            index = index * 2 + letter
        assert f.diagonal[index] == expected


@pytest.mark.parametrize("text", [c[0] for c in CORPUS], ids=[c[0] for c in CORPUS])
def test_parse_print_round_trip(text):
    formula = parse(text)
    printed = format_formula(formula)
    assert parse(printed).root == formula.root
    # Printing is a fixed point after one normalization pass.
    assert format_formula(parse(printed)) == printed


def test_variables_ordered_by_first_appearance():
    assert parse("B & A").variables == ("B", "A")
    assert parse("x | y & x").variables == ("x", "y")
    assert parse("1").variables == ()


def test_precedence_structure():
    assert parse("A | B & C").root == BinOp(
        "OR", Var("A"), BinOp("AND", Var("B"), Var("C"))
    )
    assert parse("A ^ B | C").root == BinOp(
        "OR", BinOp("XOR", Var("A"), Var("B")), Var("C")
    )
    assert parse("!A & B").root == BinOp("AND", Not(Var("A")), Var("B"))
    assert parse("!!A").root == Not(Not(Var("A")))


def test_implication_is_right_associative():
    assert parse("A -> B -> C").root == BinOp(
        "IMPLIES", Var("A"), BinOp("IMPLIES", Var("B"), Var("C"))
    )


def test_equiv_is_left_associative():
    assert parse("A <-> B <-> C").root == BinOp(
        "EQUIV", BinOp("EQUIV", Var("A"), Var("B")), Var("C")
    )


def test_infix_min_max_bind_like_and_or():
    assert parse("A min B max C").root == BinOp(
        "MAX", BinOp("MIN", Var("A"), Var("B")), Var("C")
    )
    assert parse("A min B").root == parse("min(A, B)").root


def test_syntax_errors_carry_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("A &")
    assert info.value.line == 1
    assert info.value.col == 4
    with pytest.raises(FormulaSyntaxError) as info:
        parse("A @ B")
    assert info.value.col == 3
    with pytest.raises(FormulaSyntaxError) as info:
        parse("min(A B)")
    assert "','" in str(info.value)
    with pytest.raises(FormulaSyntaxError):
        parse("(A | B")
    with pytest.raises(FormulaSyntaxError):
        parse("A B")
    with pytest.raises(FormulaSyntaxError):
        parse("")


def test_error_reports_multiline_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("A &\n  ?")
    assert info.value.line == 2
    assert info.value.col == 3


def test_variable_cap():
    parse("A & B & C & D")
    with pytest.raises(ValueError):
        parse("A & B & C & D & E")


def test_dimension_cap():
    four = parse("A & B & C & D")
    compile_formula(four, 3)  # 3^4 = 81: the boundary dimension
    with pytest.raises(ValueError):
        compile_formula(four, 4)  # 4^4 = 256 > 81
    assert MAX_DIMENSION == 81
    assert MAX_VARIABLES == 4


def test_boolean_only_connectives_reject_m3():
    for text in ("A ^ B", "A -> B", "A <-> B"):
        formula = parse(text)
        with pytest.raises(ValueError):
            eval_classical(formula, (2, 1), 3)
        with pytest.raises(ValueError):
            compile_formula(formula, 3)


def test_m3_min_max_match_tables():
    assert np.array_equal(compile_formula(parse("min(A, B)"), 3).diagonal, min3().diagonal)
    assert np.array_equal(compile_formula(parse("max(A, B)"), 3).diagonal, max3().diagonal)


def test_m3_negation_is_involution():
    formula = parse("!A")
    assert [eval_classical(formula, (x,), 3) for x in (0, 1, 2)] == [2, 1, 0]
    assert np.array_equal(compile_formula(formula, 3).diagonal, [2.0, 1.0, 0.0])


def test_constants_respect_alphabet():
    assert eval_classical(parse("2"), (), 3) == 2
    with pytest.raises(ValueError):
        eval_classical(parse("2"), (), 2)


def test_letters_respect_alphabet():
    formula = parse("A")
    assert eval_classical(formula, (2,), 3) == 2
    with pytest.raises(ValueError):
        eval_classical(formula, (2,), 2)
    with pytest.raises(ValueError):
        eval_classical(formula, (), 2)


def test_constant_formula_compiles_to_scalar():
    f = compile_formula(parse("1"), 2)
    assert f.dim == 1
    assert f.diagonal[0] == 1.0


def test_truth_table_rows_order():
    rows = truth_table_rows(parse("A -> B"), 2)
    assert rows == [((0, 0), 1), ((0, 1), 1), ((1, 0), 0), ((1, 1), 1)]
    assert truth_table_rows(parse("1"), 2) == [((), 1)]


def test_keywords_are_not_identifiers():
    # 'min' as a bare identifier is a syntax error, not a variable.
    with pytest.raises(FormulaSyntaxError):
        parse("min")
    with pytest.raises(FormulaSyntaxError):
        parse("nand & A")


def test_format_formula_examples():
    assert format_formula(parse("A&B|C")) == "A & B | C"
    assert format_formula(parse("(A & B) | C")) == "A & B | C"
    assert format_formula(parse("A & (B | C)")) == "A & (B | C)"
    assert format_formula(parse("A min B")) == "min(A, B)"
    assert format_formula(parse("!(A -> B)")) == "!(A -> B)"
    assert format_formula(parse("A -> (B -> C)")) == "A -> B -> C"
    assert format_formula(parse("(A -> B) -> C")) == "(A -> B) -> C"


# Random AST round-trip: format then parse must reproduce the tree.

_names = st.sampled_from(["A", "B", "C", "D"])
_leaves = st.one_of(
    _names.map(Var), st.sampled_from([0, 1]).map(Const)
)


def _binop(children):
    ops = st.sampled_from(
        ["AND", "OR", "XOR", "IMPLIES", "EQUIV", "MIN", "MAX", "NAND", "NOR"]
    )
    return st.builds(BinOp, ops, children, children)


_trees = st.recursive(
    _leaves, lambda kids: st.one_of(st.builds(Not, kids), _binop(kids)), max_leaves=12
)


@settings(max_examples=300, deadline=None)
@given(_trees)
def test_format_parse_round_trip_property(tree):
    printed = format_formula(tree)
    assert parse(printed).root == tree


@settings(max_examples=150, deadline=None)
@given(_trees, st.data())
def test_eval_matches_compiled_diagonal_property(tree, data):
    printed = format_formula(tree)
    formula = parse(printed)
    f = compile_formula(formula, 2)
    assignment = tuple(
        data.draw(st.integers(0, 1)) for _ in range(formula.arity)
    )
    index = 0
    for letter in assignment:
        index = index * 2 + letter
    assert f.diagonal[index] == eval_classical(formula, assignment, 2)
