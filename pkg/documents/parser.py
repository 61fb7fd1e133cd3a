"""Line-oriented input documents naming groups, matched pairs, Lie algebras, actions and tasks.

Statements, one per line (``#`` starts a comment)::

    group C2 cyclic 2                    # also: dihedral n, symmetric n
    group G table                        # rows of the multiplication table follow, then ``end``
    pair S3 inversion 3                  # C2 acting on Cn by inversion
    pair P library c2_on_c4              # any name from fingroup.standard_pairs()
    pair P trivial T=C2 N=C3
    pair P semidirect T=C2 N=C3          # rows of t▷n follow, then ``end``
    pair P actions T=A N=B               # ``left`` rows, ``right`` rows, then ``end``
    pair P factorization F=D4 N=0,4 T=0,1,2,3
    lie g abelian 3                      # also: sl n, brackets n (lines ``i j : k=c ...`` then ``end``)
    action rho lie=g group=C2            # lines ``element : row ; row ; ...`` on generators, then ``end``
    action rho conjugation 3 group=C2    # the same lines for every element, matrices in GL_n
    config E2 lie=g T=C2 N=C3 rhoT=a rhoN=b   # rows of t▷n follow, then ``end``
    task kac-verify target=S3 modulus=6
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

try:
    from ..core.errors import MatchedPairError, ParseError
    from ..exactlin import RationalMatrix
    from ..fingroup import (
        FiniteGroup,
        GroupMatchedPair,
        cyclic,
        dihedral,
        from_exact_factorization,
        inversion_pair,
        semidirect_pair,
        standard_pairs,
        symmetric,
        trivial_matched_pair,
        validate_group,
        validate_matched_pair,
    )
    from ..liecohomology import (
        LieAlgebraData,
        LieGroupAction,
        Method6Configuration,
        abelian,
        action_from_generators,
        conjugation_action,
        from_brackets,
        sl_structure_constants,
    )
except ImportError:
    import sys
    sys.path.append(str(Path(__file__).parent.parent))
    from core.errors import MatchedPairError, ParseError
    from exactlin import RationalMatrix
    from fingroup import (
        FiniteGroup,
        GroupMatchedPair,
        cyclic,
        dihedral,
        from_exact_factorization,
        inversion_pair,
        semidirect_pair,
        standard_pairs,
        symmetric,
        trivial_matched_pair,
        validate_group,
        validate_matched_pair,
    )
    from liecohomology import (
        LieAlgebraData,
        LieGroupAction,
        Method6Configuration,
        abelian,
        action_from_generators,
        conjugation_action,
        from_brackets,
        sl_structure_constants,
    )

logger = logging.getLogger(__name__)

COMMANDS = ("validate", "group-cohomology", "mp-cohomology", "bidegree", "kac-verify", "method6", "ez-verify")


@dataclass
class Token:
    text: str
    line: int
    column: int


@dataclass
class TaskDirective:
    command: str
    options: Dict[str, str]
    line: int


@dataclass
class InputDocument:
    """Everything declared in one input file, validated as it was read"""
    source: str = "<string>"
    groups: Dict[str, FiniteGroup] = field(default_factory=dict)
    pairs: Dict[str, GroupMatchedPair] = field(default_factory=dict)
    lie_algebras: Dict[str, LieAlgebraData] = field(default_factory=dict)
    actions: Dict[str, LieGroupAction] = field(default_factory=dict)
    configurations: Dict[str, Method6Configuration] = field(default_factory=dict)
    tasks: List[TaskDirective] = field(default_factory=list)

    def task_for(self, command: str) -> Optional[TaskDirective]:
        return next((task for task in self.tasks if task.command == command), None)

    def summary(self) -> Dict[str, List[str]]:
        return {
            "groups": sorted(self.groups),
            "pairs": sorted(self.pairs),
            "lie_algebras": sorted(self.lie_algebras),
            "actions": sorted(self.actions),
            "configurations": sorted(self.configurations),
            "tasks": [task.command for task in self.tasks],
        }


def _tokenize(text: str, line: int) -> List[Token]:
    body = text.split("#", 1)[0]
    return [Token(match.group(), line, match.start() + 1) for match in re.finditer(r"\S+", body)]


class _Lines:
    """Tokenized non-empty lines with one-line lookahead"""

    def __init__(self, text: str):
        self._lines = [(number, _tokenize(raw, number)) for number, raw in enumerate(text.splitlines(), start=1)]
        self._lines = [(number, tokens) for number, tokens in self._lines if tokens]
        self._position = 0
        self.last_line = self._lines[-1][0] if self._lines else 1

    def __iter__(self) -> Iterator[List[Token]]:
        return self

    def __next__(self) -> List[Token]:
        if self._position >= len(self._lines):
            raise StopIteration
        tokens = self._lines[self._position][1]
        self._position += 1
        return tokens

    def body(self, opener: Token) -> List[List[Token]]:
        """Lines up to the matching ``end``"""
        collected = []
        for tokens in self:
            if tokens[0].text == "end":
                return collected
            collected.append(tokens)
        raise ParseError(f"block opened by '{opener.text}' is missing 'end'", self.last_line, 1)


def _int(token: Token) -> int:
    try:
        return int(token.text)
    except ValueError:
        raise ParseError(f"expected an integer, got '{token.text}'", token.line, token.column)


def _fraction(token: Token) -> Fraction:
    try:
        return Fraction(token.text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational number, got '{token.text}'", token.line, token.column)


def _int_list(token: Token) -> List[int]:
    return [_int(Token(part, token.line, token.column)) for part in token.text.split(",")]


def _options(tokens: List[Token]) -> Dict[str, Token]:
    options = {}
    for token in tokens:
        if "=" not in token.text:
            raise ParseError(f"expected key=value, got '{token.text}'", token.line, token.column)
        key, value = token.text.split("=", 1)
        options[key] = Token(value, token.line, token.column + len(key) + 1)
    return options


def _require(options: Dict[str, Token], key: str, anchor: Token) -> Token:
    if key not in options:
        raise ParseError(f"missing '{key}=' on this line", anchor.line, anchor.column)
    return options[key]


def _table(rows: List[List[Token]]) -> np.ndarray:
    width = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != width:
            raise ParseError(f"table row has {len(row)} entries, expected {width}", row[0].line, row[0].column)
    return np.array([[_int(token) for token in row] for row in rows], dtype=np.int64).reshape(len(rows), width)


def _action_table(rows: List[List[Token]], height: int, width: int, bound: int, opener: Token) -> np.ndarray:
    """A height x width table whose entries index elements of a group of order ``bound``"""
    if len(rows) != height:
        anchor = rows[height][0] if len(rows) > height else opener
        raise ParseError(f"expected {height} table rows, got {len(rows)}", anchor.line, anchor.column)
    for row in rows:
        if len(row) != width:
            raise ParseError(f"table row has {len(row)} entries, expected {width}", row[0].line, row[0].column)
        for token in row:
            if not 0 <= _int(token) < bound:
                raise ParseError(f"entry {token.text} is not an element index below {bound}", token.line, token.column)
    return _table(rows)


def _matrix_rows(tokens: List[Token]) -> List[List[Fraction]]:
    """``a b ; c d`` → [[a, b], [c, d]]"""
    rows, current = [], []
    for token in tokens:
        if token.text == ";":
            rows.append(current)
            current = []
        else:
            current.append(_fraction(token))
    rows.append(current)
    width = len(rows[0])
    if any(len(row) != width for row in rows) or len(rows) != width:
        raise ParseError("matrix must be square with rows separated by ';'", tokens[0].line, tokens[0].column)
    return rows


def _split_colon(tokens: List[Token]) -> Tuple[List[Token], List[Token]]:
    for position, token in enumerate(tokens):
        if token.text == ":":
            return tokens[:position], tokens[position + 1:]
    raise ParseError("expected ':'", tokens[0].line, tokens[0].column)


class DocumentParser:
    """Builds an InputDocument; validation errors from the computation packages pass through unchanged"""

    def __init__(self, source: str = "<string>"):
        self.document = InputDocument(source=source)

    # --- lookups --------------------------------------------------------------
    def _lookup(self, table: Dict, token: Token, kind: str):
        if token.text not in table:
            raise ParseError(f"unknown {kind} '{token.text}'", token.line, token.column)
        return table[token.text]

    def _define(self, table: Dict, name: Token, value, kind: str) -> None:
        if name.text in table:
            raise ParseError(f"{kind} '{name.text}' is defined twice", name.line, name.column)
        table[name.text] = value
        logger.debug(f"{kind} '{name.text}' defined on line {name.line}")

    # --- statements -----------------------------------------------------------
    def parse(self, text: str) -> InputDocument:
        lines = _Lines(text)
        for tokens in lines:
            keyword = tokens[0]
            handler = getattr(self, f"_statement_{keyword.text}", None)
            if handler is None:
                raise ParseError(f"unknown statement '{keyword.text}'", keyword.line, keyword.column)
            if len(tokens) < 2 and keyword.text != "task":
                raise ParseError(f"'{keyword.text}' needs a name", keyword.line, keyword.column)
            handler(tokens, lines)
        return self.document

    def _statement_group(self, tokens: List[Token], lines: _Lines) -> None:
        name = tokens[1]
        if len(tokens) < 3:
            raise ParseError("expected a group kind (cyclic, dihedral, symmetric, table)", name.line, name.column)
        kind = tokens[2]
        constructors = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}
        if kind.text == "table":
            rows = lines.body(kind)
            if not rows:
                raise ParseError("empty multiplication table", kind.line, kind.column)
            group = validate_group(_table(rows), name=name.text)
        elif kind.text in constructors:
            if len(tokens) < 4:
                raise ParseError(f"'{kind.text}' needs a size", kind.line, kind.column)
            group = constructors[kind.text](_int(tokens[3]))
        else:
            raise ParseError(f"unknown group kind '{kind.text}'", kind.line, kind.column)
        self._define(self.document.groups, name, group, "group")

    def _statement_pair(self, tokens: List[Token], lines: _Lines) -> None:
        name = tokens[1]
        if len(tokens) < 3:
            raise ParseError("expected a pair kind", name.line, name.column)
        kind = tokens[2]
        groups = self.document.groups
        if kind.text in ("inversion", "library") and len(tokens) < 4:
            raise ParseError(f"'{kind.text}' needs an argument", kind.line, kind.column)
        if kind.text == "inversion":
            pair = inversion_pair(_int(tokens[3]))
        elif kind.text == "library":
            pair = self._lookup(standard_pairs(), tokens[3], "library pair")()
        elif kind.text in ("trivial", "semidirect", "actions"):
            options = _options(tokens[3:])
            T = self._lookup(groups, _require(options, "T", kind), "group")
            N = self._lookup(groups, _require(options, "N", kind), "group")
            if kind.text == "trivial":
                pair = trivial_matched_pair(T, N, name=name.text)
            elif kind.text == "semidirect":
                left = _action_table(lines.body(kind), T.order, N.order, N.order, kind)
                pair = semidirect_pair(T, N, lambda t, n: int(left[t, n]), name=name.text)
            else:
                pair = self._actions_pair(T, N, name, lines.body(kind))
        elif kind.text == "factorization":
            options = _options(tokens[3:])
            F = self._lookup(groups, _require(options, "F", kind), "group")
            N_elems = _int_list(_require(options, "N", kind))
            T_elems = _int_list(_require(options, "T", kind))
            pair = from_exact_factorization(F, N_elems, T_elems, name=name.text)
        else:
            raise ParseError(f"unknown pair kind '{kind.text}'", kind.line, kind.column)
        self._define(self.document.pairs, name, pair, "pair")

    def _actions_pair(self, T: FiniteGroup, N: FiniteGroup, name: Token, body: List[List[Token]]) -> GroupMatchedPair:
        sections: Dict[str, List[List[Token]]] = {}
        current = None
        for row in body:
            if row[0].text in ("left", "right") and len(row) == 1:
                current = row[0].text
                sections[current] = []
            elif current is None:
                raise ParseError("table rows must follow 'left' or 'right'", row[0].line, row[0].column)
            else:
                sections[current].append(row)
        if "left" not in sections or "right" not in sections:
            raise ParseError("an 'actions' pair needs both 'left' and 'right' tables", name.line, name.column)
        left = _action_table(sections["left"], T.order, N.order, N.order, name)
        right = _action_table(sections["right"], T.order, N.order, T.order, name)
        return validate_matched_pair(T, N, left, right, name=name.text)

    def _statement_lie(self, tokens: List[Token], lines: _Lines) -> None:
        name = tokens[1]
        if len(tokens) < 4:
            raise ParseError("expected 'lie NAME abelian|sl|brackets n'", name.line, name.column)
        kind, size = tokens[2], _int(tokens[3])
        if kind.text == "abelian":
            algebra = abelian(size)
        elif kind.text == "sl":
            algebra = sl_structure_constants(size)
        elif kind.text == "brackets":
            brackets = {}
            for row in lines.body(kind):
                left, right = _split_colon(row)
                if len(left) != 2:
                    raise ParseError("expected 'i j : k=c ...'", row[0].line, row[0].column)
                i, j = _int(left[0]), _int(left[1])
                brackets[(i, j)] = {_int(Token(key, row[0].line, row[0].column)): _fraction(value)
                                    for key, value in _options(right).items()}
            algebra = from_brackets(size, brackets, name=name.text)
        else:
            raise ParseError(f"unknown Lie algebra kind '{kind.text}'", kind.line, kind.column)
        self._define(self.document.lie_algebras, name, algebra, "Lie algebra")

    def _statement_action(self, tokens: List[Token], lines: _Lines) -> None:
        name = tokens[1]
        if len(tokens) > 2 and tokens[2].text == "conjugation":
            size = _int(tokens[3])
            options = _options(tokens[4:])
            group = self._lookup(self.document.groups, _require(options, "group", tokens[2]), "group")
            given = self._element_matrices(lines.body(tokens[2]), group.order)
            missing = [g for g in range(group.order) if g not in given]
            if missing:
                raise ParseError(f"conjugation needs a matrix for every element, missing {missing}",
                                 name.line, name.column)
            action = conjugation_action(size, group, [given[g] for g in range(group.order)], name=name.text)
        else:
            options = _options(tokens[2:])
            algebra = self._lookup(self.document.lie_algebras, _require(options, "lie", name), "Lie algebra")
            group = self._lookup(self.document.groups, _require(options, "group", name), "group")
            given = self._element_matrices(lines.body(name), group.order)
            generators = {g: RationalMatrix.from_rows(rows) for g, rows in given.items()}
            action = action_from_generators(algebra, group, generators, name=name.text)
        self._define(self.document.actions, name, action, "action")

    def _element_matrices(self, body: List[List[Token]], order: int) -> Dict[int, List[List[Fraction]]]:
        matrices = {}
        for row in body:
            left, right = _split_colon(row)
            if len(left) != 1 or not right:
                raise ParseError("expected 'element : row ; row ; ...'", row[0].line, row[0].column)
            element = _int(left[0])
            if not 0 <= element < order:
                raise ParseError(f"element {element} outside a group of order {order}", left[0].line, left[0].column)
            matrices[element] = _matrix_rows(right)
        return matrices

    def _statement_config(self, tokens: List[Token], lines: _Lines) -> None:
        name = tokens[1]
        options = _options(tokens[2:])
        document = self.document
        algebra = self._lookup(document.lie_algebras, _require(options, "lie", name), "Lie algebra")
        G_T = self._lookup(document.groups, _require(options, "T", name), "group")
        G_N = self._lookup(document.groups, _require(options, "N", name), "group")
        configuration = Method6Configuration(
            name=name.text,
            algebra=algebra,
            G_T=G_T,
            G_N=G_N,
            group_action=_action_table(lines.body(name), G_T.order, G_N.order, G_N.order, name),
            lie_action_T=self._lookup(document.actions, _require(options, "rhoT", name), "action"),
            lie_action_N=self._lookup(document.actions, _require(options, "rhoN", name), "action"),
        )
        self._define(document.configurations, name, configuration, "configuration")

    def _statement_task(self, tokens: List[Token], lines: _Lines) -> None:
        if len(tokens) < 2 or tokens[1].text not in COMMANDS:
            anchor = tokens[1] if len(tokens) > 1 else tokens[0]
            raise ParseError(f"task must name one of {', '.join(COMMANDS)}", anchor.line, anchor.column)
        options = {key: token.text for key, token in _options(tokens[2:]).items()}
        self.document.tasks.append(TaskDirective(tokens[1].text, options, tokens[0].line))


def parse_document(text: str, source: str = "<string>") -> InputDocument:
    document = DocumentParser(source).parse(text)
    logger.info(f"Parsed {source}: {document.summary()}")
    return document


def load_document(path: str) -> InputDocument:
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 0, 0)
    try:
        return parse_document(text, source=str(file_path))
    except MatchedPairError as exc:
        logger.error(f"{path}: {exc.message}")
        raise
