"""Propositional / multivalued formula language.

Grammar, by descending binding strength:

    primary := IDENT | CONST | '(' formula ')' | func '(' formula ',' formula ')'
    unary   := '!' unary | primary
    and     := unary  (('&' | 'min') unary)*        left-assoc
    xor     := and    ('^' and)*                    left-assoc
    or      := xor    (('|' | 'max') xor)*          left-assoc
    implies := or     ('->' implies)?               right-assoc
    equiv   := implies ('<->' implies)*             left-assoc

``min``, ``max``, ``nand``, ``nor`` are reserved words usable in call
form; ``min``/``max`` also work infix at the strength of '&' / '|'.
Identifiers are [A-Za-z][A-Za-z0-9_]*, constants are alphabet letters.

Compilation enumerates every assignment and lays the classical value on
the observable diagonal, so the classical evaluator is the single source
of connective semantics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union


from .connectives import LogicalObservable, TruthTable, index_digits, observable_from_truth_table
from .linop import DiagonalOperator

MAX_VARIABLES = 4
MAX_DIMENSION = 81

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
    | (?P<equiv><->)
    | (?P<implies>->)
    | (?P<and>&)
    | (?P<or>\|)
    | (?P<xor>\^)
    | (?P<not>!)
    | (?P<lparen>\()
    | (?P<rparen>\))
    | (?P<comma>,)
    | (?P<const>\d+)
    | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"min": "min", "max": "max", "nand": "nand", "nor": "nor"}

_TOKEN_LABELS = {
    "equiv": "'<->'",
    "implies": "'->'",
    "and": "'&'",
    "or": "'|'",
    "xor": "'^'",
    "not": "'!'",
    "lparen": "'('",
    "rparen": "')'",
    "comma": "','",
    "const": "constant",
    "ident": "identifier",
    "min": "'min'",
    "max": "'max'",
    "nand": "'nand'",
    "nor": "'nor'",
    "eof": "end of input",
}


class FormulaSyntaxError(ValueError):
    """Parse failure with position and the token set that was expected."""

    def __init__(self, message: str, line: int, col: int, expected: frozenset[str]):
        self.line = line
        self.col = col
        self.expected = expected
        wanted = ", ".join(sorted(_TOKEN_LABELS.get(e, e) for e in expected))
        super().__init__(f"{message} at line {line}, column {col} (expected: {wanted})")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise FormulaSyntaxError(
                f"unexpected character {text[pos]!r}",
                line,
                pos - line_start + 1,
                frozenset(_TOKEN_LABELS) - {"eof"},
            )
        kind = match.lastgroup
        lexeme = match.group()
        if kind == "ws":
            newlines = lexeme.count("\n")
            if newlines:
                line += newlines
                line_start = pos + lexeme.rindex("\n") + 1
        else:
            if kind == "ident" and lexeme in _KEYWORDS:
                kind = _KEYWORDS[lexeme]
            tokens.append(Token(kind, lexeme, line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


# AST nodes ----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Not:
    child: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # AND OR XOR NAND NOR IMPLIES EQUIV MIN MAX
    left: "Node"
    right: "Node"


Node = Union[Var, Const, Not, BinOp]


@dataclass(frozen=True)
class Formula:
    """Parsed formula with its variables ordered by first appearance."""

    root: Node
    variables: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.variables)


def _collect_variables(node: Node, seen: dict) -> None:
    if isinstance(node, Var):
        seen.setdefault(node.name, None)
    elif isinstance(node, Not):
        _collect_variables(node.child, seen)
    elif isinstance(node, BinOp):
        _collect_variables(node.left, seen)
        _collect_variables(node.right, seen)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: frozenset[str]) -> FormulaSyntaxError:
        tok = self.peek()
        got = _TOKEN_LABELS.get(tok.kind, tok.kind)
        return FormulaSyntaxError(f"unexpected {got}", tok.line, tok.col, expected)

    def expect(self, kind: str) -> Token:
        if self.peek().kind != kind:
            raise self.fail(frozenset({kind}))
        return self.advance()

    def parse(self) -> Node:
        node = self.equiv()
        if self.peek().kind != "eof":
            raise self.fail(
                frozenset({"eof", "equiv", "implies", "or", "xor", "and", "min", "max"})
            )
        return node

    def equiv(self) -> Node:
        node = self.implies()
        while self.peek().kind == "equiv":
            self.advance()
            node = BinOp("EQUIV", node, self.implies())
        return node

    def implies(self) -> Node:
        node = self.or_expr()
        if self.peek().kind == "implies":
            self.advance()
            return BinOp("IMPLIES", node, self.implies())
        return node

    def or_expr(self) -> Node:
        node = self.xor_expr()
        while self.peek().kind in ("or", "max"):
            op = "OR" if self.advance().kind == "or" else "MAX"
            node = BinOp(op, node, self.xor_expr())
        return node

    def xor_expr(self) -> Node:
        node = self.and_expr()
        while self.peek().kind == "xor":
            self.advance()
            node = BinOp("XOR", node, self.and_expr())
        return node

    def and_expr(self) -> Node:
        node = self.unary()
        while self.peek().kind in ("and", "min"):
            op = "AND" if self.advance().kind == "and" else "MIN"
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.peek().kind == "not":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Node:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "const":
            self.advance()
            return Const(int(tok.text))
        if tok.kind == "lparen":
            self.advance()
            node = self.equiv()
            self.expect("rparen")
            return node
        if tok.kind in ("min", "max", "nand", "nor"):
            self.advance()
            self.expect("lparen")
            left = self.equiv()
            self.expect("comma")
            right = self.equiv()
            self.expect("rparen")
            return BinOp(tok.kind.upper(), left, right)
        raise self.fail(
            frozenset({"ident", "const", "lparen", "not", "min", "max", "nand", "nor"})
        )


def parse(text: str) -> Formula:
    """Parse a formula; at most MAX_VARIABLES distinct variables."""
    root = _Parser(_tokenize(text)).parse()
    seen: dict = {}
    _collect_variables(root, seen)
    variables = tuple(seen)
    if len(variables) > MAX_VARIABLES:
        raise ValueError(
            f"formula uses {len(variables)} variables; at most {MAX_VARIABLES} supported"
        )
    return Formula(root=root, variables=variables)


# Classical evaluation (the oracle) ----------------------------------------

_BOOLEAN_ONLY = ("XOR", "IMPLIES", "EQUIV")


def eval_classical(formula: Formula, assignment: Sequence[int], m: int = 2) -> int:
    """Evaluate the formula at one assignment of alphabet letters.

    NOT is the involution x -> m-1-x; AND/MIN and OR/MAX are integer min
    and max (the usual tables at m=2); NAND/NOR are their involutions.
    XOR, IMPLIES and EQUIV are defined for m=2 only.
    """
    if len(assignment) != len(formula.variables):
        raise ValueError(
            f"expected {len(formula.variables)} letters, got {len(assignment)}"
        )
    env = dict(zip(formula.variables, assignment))
    for letter in assignment:
        if not 0 <= letter < m:
            raise ValueError(f"letter {letter} out of alphabet range 0..{m - 1}")
    return _eval(formula.root, env, m)


def _eval(node: Node, env: dict, m: int) -> int:
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Const):
        if not 0 <= node.value < m:
            raise ValueError(f"constant {node.value} out of alphabet range 0..{m - 1}")
        return node.value
    if isinstance(node, Not):
        return m - 1 - _eval(node.child, env, m)
    a = _eval(node.left, env, m)
    b = _eval(node.right, env, m)
    op = node.op
    if op in _BOOLEAN_ONLY and m != 2:
        raise ValueError(f"{op} is Boolean-only; not defined for alphabet size {m}")
    if op in ("AND", "MIN"):
        return min(a, b)
    if op in ("OR", "MAX"):
        return max(a, b)
    if op == "NAND":
        return m - 1 - min(a, b)
    if op == "NOR":
        return m - 1 - max(a, b)
    if op == "XOR":
        return a ^ b
    if op == "IMPLIES":
        return max(1 - a, b)
    if op == "EQUIV":
        return 1 if a == b else 0
    raise ValueError(f"unknown connective {op}")


def compile_formula(formula: Formula, m: int = 2) -> LogicalObservable:
    """Observable whose eigenvalue at each interpretation is the classical value."""
    n = formula.arity
    dim = m ** n
    if dim > MAX_DIMENSION:
        raise ValueError(f"m^n = {dim} exceeds the supported dimension {MAX_DIMENSION}")
    diagonal = [
        float(eval_classical(formula, index_digits(i, m, n), m)) for i in range(dim)
    ]
    if n == 0:
        # Constant formula: a 1-dimensional observable.
        return LogicalObservable(
            DiagonalOperator(diagonal), m=m, n=0, alphabet=tuple(range(m))
        )
    table = TruthTable(m=m, n=n, values=tuple(int(v) for v in diagonal))
    return observable_from_truth_table(table)


def truth_table_rows(formula: Formula, m: int = 2) -> list[tuple[tuple[int, ...], int]]:
    """All (assignment, value) pairs in basis order."""
    n = formula.arity
    if m ** n > MAX_DIMENSION:
        raise ValueError(f"m^n = {m ** n} exceeds the supported dimension {MAX_DIMENSION}")
    return [
        (index_digits(i, m, n), eval_classical(formula, index_digits(i, m, n), m))
        for i in range(m ** n)
    ]


# Pretty printing -----------------------------------------------------------

_LEVELS = {"EQUIV": 1, "IMPLIES": 2, "OR": 3, "MAX": 3, "XOR": 4, "AND": 5, "MIN": 5}
_INFIX = {"EQUIV": "<->", "IMPLIES": "->", "OR": "|", "XOR": "^", "AND": "&"}
_NOT_LEVEL = 6


def format_formula(formula: Union[Formula, Node]) -> str:
    """Canonical text that re-parses to the identical tree.

    MIN/MAX/NAND/NOR always print in call form, so infix and call inputs
    normalize to the same text.
    """
    node = formula.root if isinstance(formula, Formula) else formula
    return _format(node, 0)


def _format(node: Node, context_level: int) -> str:
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return str(node.value)
    if isinstance(node, Not):
        return "!" + _format(node.child, _NOT_LEVEL)
    op = node.op
    if op in ("MIN", "MAX", "NAND", "NOR"):
        return f"{op.lower()}({_format(node.left, 0)}, {_format(node.right, 0)})"
    level = _LEVELS[op]
    if op == "IMPLIES":  # right-associative
        text = f"{_format(node.left, level + 1)} -> {_format(node.right, level)}"
    else:  # left-associative
        text = f"{_format(node.left, level)} {_INFIX[op]} {_format(node.right, level + 1)}"
    if level < context_level:
        return f"({text})"
    return text
