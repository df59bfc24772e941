"""
parser for .hk ring specs

    spec := stmt*
    stmt := ("char" INT | "vars" IDENT+ | "rel" POLY
             | "ideal" IDENT "=" POLY ("," POLY)*) ";"

polynomials use + - * ^, integer coefficients and parentheses; '#' starts a comment
"""
import re
from dataclasses import dataclass, field

from errors import InvalidParameters, SpecSyntaxError, UnknownVariable
from finite_field import check_characteristic
from groebner import IdealSpec
from hk_estimator import RingSpec
from polynomial import PolynomialRing

KEYWORDS = ('char', 'vars', 'rel', 'ideal')

TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),;=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == 'newline':
            line += 1
            line_start = m.end()
        elif kind not in ('ws', 'comment'):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token('eof', '', line, pos - line_start + 1))
    return tokens


@dataclass
class InputSpec:
    characteristic: int = None
    variables: tuple = ()
    relations: tuple = ()
    ideals: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def ring(self):
        if self.characteristic is None:
            raise InvalidParameters("spec declares no characteristic")
        return PolynomialRing(self.characteristic, self.variables)

    def ring_spec(self, dimension=None):
        if not self.variables:
            raise InvalidParameters("spec needs char and vars (pass --spec)")
        return RingSpec(self.characteristic, self.variables, self.relations, dimension)

    def ideal(self, name=None):
        """named ideal, or the ideal of all variables when name is None"""
        ring = self.ring
        if name is None:
            return IdealSpec(ring, ring.gens())
        if name not in self.ideals:
            known = ', '.join(self.ideals) or 'none'
            raise InvalidParameters(f"no ideal named {name!r} (declared: {known})")
        return IdealSpec(ring, self.ideals[name])


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0
        self.spec = InputSpec()
        self.ring = None

    # ---- token helpers ----

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return SpecSyntaxError(message, tok.line, tok.column)

    def expect(self, kind, text=None):
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            got = tok.text or 'end of input'
            raise self.error(f"expected {want!r}, got {got!r}")
        return self.advance()

    def at(self, text):
        tok = self.peek()
        return tok.kind == 'op' and tok.text == text

    # ---- statements ----

    def parse(self):
        while self.peek().kind != 'eof':
            tok = self.expect('ident')
            if tok.text not in KEYWORDS:
                raise self.error(f"unknown statement {tok.text!r}", tok)
            getattr(self, f"stmt_{tok.text}")(tok)
            self.expect('op', ';')
        return self.spec

    def stmt_char(self, tok):
        if self.spec.characteristic is not None:
            raise self.error("char declared twice", tok)
        value = int(self.expect('int').text)
        check_characteristic(value)
        self.spec.characteristic = value

    def stmt_vars(self, tok):
        if self.spec.variables:
            raise self.error("vars declared twice", tok)
        if self.spec.characteristic is None:
            raise self.error("char must be declared before vars", tok)
        names = []
        while self.peek().kind == 'ident':
            name = self.advance()
            if name.text in KEYWORDS or name.text in names:
                raise self.error(f"bad variable name {name.text!r}", name)
            names.append(name.text)
        if not names:
            raise self.error("vars needs at least one name")
        self.spec.variables = tuple(names)
        self.ring = PolynomialRing(self.spec.characteristic, self.spec.variables)

    def _require_ring(self, tok):
        if self.ring is None:
            raise self.error(f"{tok.text} needs char and vars declared first", tok)

    def stmt_rel(self, tok):
        self._require_ring(tok)
        self.spec.relations = self.spec.relations + (self.expression(),)

    def stmt_ideal(self, tok):
        self._require_ring(tok)
        name = self.expect('ident')
        if name.text in self.spec.ideals:
            raise self.error(f"ideal {name.text!r} declared twice", name)
        self.expect('op', '=')
        gens = [self.expression()]
        while self.at(','):
            self.advance()
            gens.append(self.expression())
        self.spec.ideals[name.text] = tuple(gens)

    # ---- polynomial expressions ----

    def expression(self):
        value = self.term()
        while self.at('+') or self.at('-'):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == '+' else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.at('*'):
            self.advance()
            value = value * self.unary()
        return value

    def unary(self):
        if self.at('-'):
            self.advance()
            return -self.unary()
        if self.at('+'):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at('^'):
            self.advance()
            exponent = int(self.expect('int').text)
            base = base ** exponent
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == 'int':
            self.advance()
            return self.ring.constant(int(tok.text))
        if tok.kind == 'ident':
            self.advance()
            if tok.text not in self.ring.variables:
                raise UnknownVariable(tok.text, tok.line, tok.column)
            return self.ring.var(tok.text)
        if self.at('('):
            self.advance()
            value = self.expression()
            self.expect('op', ')')
            return value
        got = tok.text or 'end of input'
        raise self.error(f"expected a polynomial, got {got!r}")


def parse_spec(text):
    return _Parser(text).parse()


def render_spec(spec):
    lines = []
    if spec.characteristic is not None:
        lines.append(f"char {spec.characteristic};")
    if spec.variables:
        lines.append(f"vars {' '.join(spec.variables)};")
    for rel in spec.relations:
        lines.append(f"rel {rel};")
    for name, gens in spec.ideals.items():
        lines.append(f"ideal {name} = {', '.join(str(g) for g in gens)};")
    return '\n'.join(lines) + '\n'


def load_spec(path):
    with open(path, 'rb') as f:
        data = f.read()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as exc:
        line_start = data.rfind(b'\n', 0, exc.start) + 1
        raise SpecSyntaxError("spec file is not valid utf-8", data.count(b'\n', 0, exc.start) + 1,
                              exc.start - line_start + 1) from exc
    return parse_spec(text)
