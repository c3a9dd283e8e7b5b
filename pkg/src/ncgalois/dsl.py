"""Tokenizer, parser and printer for the presentation DSL.

Grammar (comments run from '#' to end of line, files are UTF-8):

    file        := item* ;
    item        := algebra | morphism | action ;
    algebra     := "algebra" IDENT params? "{" "generators:" identlist ";"
                   ("grade:" gradelist ";")? ("order:" "deglex" preclist ";")?
                   "relations:" [relation ("," relation)*] ";" "}" ;
    relation    := expr "=" expr ;
    expr        := ("+"|"-")? term (("+"|"-") term)* ;
    term        := scalar? factor ("*" factor)* ;
    factor      := IDENT | INT | "(" expr ")" | factor "^" INT ;
    scalar      := rational function in p, q with the same expr syntax ;
    params      := "(" identlist ")" ;
    gradelist   := IDENT "=" INT ("," IDENT "=" INT)* ;
    preclist    := IDENT (">" IDENT)* ;
    morphism    := "morphism" IDENT ":" IDENT "->" IDENT ("anti")? "{"
                   (IDENT "|->" expr ";")* "}" ;
    action      := "action" IDENT ":" IDENT "on" IDENT "{"
                   (IDENT "|>" IDENT "=" expr ";")* "}" ;

The generator `Dinv` denotes the inverse-determinant generator in text form,
`p` and `q` are reserved scalar atoms, and `^` accepts a negative exponent on
scalar bases.  The parser produces location-tagged ASTs; evaluation against a
concrete alphabet happens in the presentations module so that diagnostics can
point at the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

__all__ = ["DSLError", "Token", "tokenize", "Parser", "parse_document"]

RESERVED_SCALARS = ("p", "q")

KEYWORDS = {
    "algebra",
    "morphism",
    "action",
    "generators",
    "grade",
    "order",
    "relations",
    "deglex",
    "anti",
    "on",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<op>\|->|\|>|->|>|\^|\*|\+|-|/|=|\(|\)|\{|\}|:|;|,)
""",
    re.VERBOSE,
)


class DSLError(ValueError):
    """Parse or validation failure with a source location."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        loc = "" if line is None else " at line %d, column %d" % (line, col)
        super().__init__(message + loc)


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | INT | OP | EOF
    value: str
    line: int
    col: int


def tokenize(text: str):
    tokens = []
    line, col = 1, 1
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DSLError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        elif kind == "ident":
            tokens.append(Token("IDENT", value, line, col))
            col += len(value)
        elif kind == "int":
            tokens.append(Token("INT", value, line, col))
            col += len(value)
        else:
            tokens.append(Token("OP", value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(Token("EOF", "", line, col))
    return tokens


# AST nodes are plain tuples:
#   ("int", n, loc) ("ident", name, loc) ("neg", x) ("add"/"sub"/"mul"/"div", l, r)
#   ("pow", base, exponent_int)
# where loc = (line, col).


@dataclass
class AlgebraDecl:
    name: str
    params: tuple
    generators: tuple
    grades: tuple  # ((name, int), ...)
    precedence: tuple
    relations: tuple  # ((lhs_ast, rhs_ast), ...)
    loc: tuple


@dataclass
class MorphismDecl:
    name: str
    source: str
    target: str
    anti: bool
    images: tuple  # ((gen_name, ast, loc), ...)
    loc: tuple


@dataclass
class ActionDecl:
    name: str
    hopf: str
    base: str
    entries: tuple  # ((h_gen, b_gen, ast, loc), ...)
    loc: tuple


@dataclass
class Document:
    algebras: list
    morphisms: list
    actions: list


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # stream helpers ---------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def accept(self, kind, value=None):
        t = self.peek()
        if t.kind == kind and (value is None or t.value == value):
            return self.next()
        return None

    def expect(self, kind, value=None, what=None):
        t = self.peek()
        if t.kind == kind and (value is None or t.value == value):
            return self.next()
        want = what or (value if value is not None else kind)
        raise DSLError("expected %s, found %r" % (want, t.value or "end of input"), t.line, t.col)

    def parse_identlist(self):
        names = [self.expect("IDENT", what="identifier").value]
        while self.accept("OP", ","):
            names.append(self.expect("IDENT", what="identifier").value)
        return tuple(names)

    # grammar ----------------------------------------------------------------

    def parse_document(self) -> Document:
        doc = Document([], [], [])
        while self.peek().kind != "EOF":
            t = self.peek()
            if t.kind == "IDENT" and t.value == "algebra":
                doc.algebras.append(self.parse_algebra())
            elif t.kind == "IDENT" and t.value == "morphism":
                doc.morphisms.append(self.parse_morphism())
            elif t.kind == "IDENT" and t.value == "action":
                doc.actions.append(self.parse_action())
            else:
                raise DSLError(
                    "expected 'algebra', 'morphism' or 'action', found %r" % t.value,
                    t.line,
                    t.col,
                )
        return doc

    def parse_algebra(self) -> AlgebraDecl:
        kw = self.expect("IDENT", "algebra")
        name = self.expect("IDENT", what="algebra name")
        params = ()
        if self.accept("OP", "("):
            params = self.parse_identlist()
            self.expect("OP", ")")
        self.expect("OP", "{")
        self.expect("IDENT", "generators")
        self.expect("OP", ":")
        gens = self.parse_identlist()
        self.expect("OP", ";")
        grades = ()
        if self.peek().kind == "IDENT" and self.peek().value == "grade":
            self.next()
            self.expect("OP", ":")
            entries = []
            while True:
                g = self.expect("IDENT", what="generator name in grade list")
                self.expect("OP", "=")
                n = self.expect("INT", what="grade value")
                entries.append((g.value, int(n.value)))
                if not self.accept("OP", ","):
                    break
            grades = tuple(entries)
            self.expect("OP", ";")
        precedence = ()
        if self.peek().kind == "IDENT" and self.peek().value == "order":
            self.next()
            self.expect("OP", ":")
            self.expect("IDENT", "deglex")
            names = [self.expect("IDENT", what="generator name in order").value]
            while self.accept("OP", ">"):
                names.append(self.expect("IDENT", what="generator name in order").value)
            precedence = tuple(names)
            self.expect("OP", ";")
        self.expect("IDENT", "relations")
        self.expect("OP", ":")
        relations = []
        if not (self.peek().kind == "OP" and self.peek().value == ";"):
            while True:
                lhs = self.parse_expr()
                self.expect("OP", "=")
                rhs = self.parse_expr()
                relations.append((lhs, rhs))
                if not self.accept("OP", ","):
                    break
        self.expect("OP", ";")
        self.expect("OP", "}")
        return AlgebraDecl(
            name=name.value,
            params=params,
            generators=gens,
            grades=grades,
            precedence=precedence,
            relations=tuple(relations),
            loc=(kw.line, kw.col),
        )

    def parse_morphism(self) -> MorphismDecl:
        kw = self.expect("IDENT", "morphism")
        name = self.expect("IDENT", what="morphism name")
        self.expect("OP", ":")
        src = self.expect("IDENT", what="source algebra")
        self.expect("OP", "->")
        tgt = self.expect("IDENT", what="target algebra")
        anti = bool(self.accept("IDENT", "anti"))
        self.expect("OP", "{")
        images = []
        while not (self.peek().kind == "OP" and self.peek().value == "}"):
            g = self.expect("IDENT", what="generator name")
            self.expect("OP", "|->")
            ast = self.parse_expr()
            self.expect("OP", ";")
            images.append((g.value, ast, (g.line, g.col)))
        self.expect("OP", "}")
        return MorphismDecl(name.value, src.value, tgt.value, anti, tuple(images), (kw.line, kw.col))

    def parse_action(self) -> ActionDecl:
        kw = self.expect("IDENT", "action")
        name = self.expect("IDENT", what="action name")
        self.expect("OP", ":")
        hopf = self.expect("IDENT", what="acting algebra")
        self.expect("IDENT", "on")
        base = self.expect("IDENT", what="base algebra")
        self.expect("OP", "{")
        entries = []
        while not (self.peek().kind == "OP" and self.peek().value == "}"):
            h = self.expect("IDENT", what="acting generator")
            self.expect("OP", "|>")
            b = self.expect("IDENT", what="base generator")
            self.expect("OP", "=")
            ast = self.parse_expr()
            self.expect("OP", ";")
            entries.append((h.value, b.value, ast, (h.line, h.col)))
        self.expect("OP", "}")
        return ActionDecl(name.value, hopf.value, base.value, tuple(entries), (kw.line, kw.col))

    # expressions ------------------------------------------------------------

    def parse_expr(self):
        neg = False
        if self.accept("OP", "-"):
            neg = True
        else:
            self.accept("OP", "+")
        node = self.parse_term()
        if neg:
            node = ("neg", node)
        while True:
            if self.accept("OP", "+"):
                node = ("add", node, self.parse_term())
            elif self.accept("OP", "-"):
                node = ("sub", node, self.parse_term())
            else:
                return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            if self.accept("OP", "*"):
                node = ("mul", node, self.parse_factor())
            elif self.accept("OP", "/"):
                node = ("div", node, self.parse_factor())
            else:
                return node

    def parse_factor(self):
        t = self.peek()
        if t.kind == "IDENT":
            self.next()
            node = ("ident", t.value, (t.line, t.col))
        elif t.kind == "INT":
            self.next()
            node = ("int", int(t.value), (t.line, t.col))
        elif t.kind == "OP" and t.value == "(":
            self.next()
            node = self.parse_expr()
            self.expect("OP", ")")
        else:
            raise DSLError("expected an expression, found %r" % (t.value or "end of input"), t.line, t.col)
        while self.accept("OP", "^"):
            sign = -1 if self.accept("OP", "-") else 1
            e = self.expect("INT", what="integer exponent")
            node = ("pow", node, sign * int(e.value))
        return node


def parse_document(text: str) -> Document:
    return Parser(text).parse_document()
