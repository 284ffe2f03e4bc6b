"""Tokenizer and recursive-descent parser for polynomial expressions.

Grammar (a superset of the core grammar):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*       '/' only by nonzero constants
    factor := atom ('^' nat)?
    atom   := rational | ident | ident '(' expr ')' | '(' expr ')'
    rational := int ('/' nat)?

Tensor mode inserts a level between expr and term: legs separated by ``(x)``.
Noncommutative mode also accepts ``.`` as a product.
"""

import re
from fractions import Fraction


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ValueError):
    def __init__(self, name, position=None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown variable {name!r}{where}")
        self.name = name
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<tensor>\(x\))|(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^().]))")


def tokenize(text, tensor=False):
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "tensor" and not tensor:
            # plain mode: "(x)" is a parenthesised identifier
            tokens.append(("op", "(", start))
            tokens.append(("ident", "x", start + 1))
            tokens.append(("op", ")", start + 2))
        else:
            tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, tensor=False, noncommutative=False):
        self.tokens = tokenize(text, tensor)
        self.i = 0
        self.tensor = tensor
        self.nc = noncommutative

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}", pos)

    def at_op(self, *values):
        kind, v, _ = self.peek()
        return kind == "op" and v in values

    def parse(self):
        node = self.expr(top=True)
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {v!r}", pos)
        return node

    def expr(self, top=False):
        parts = []
        sign = 1
        if self.at_op("-"):
            self.take()
            sign = -1
        item = self.tensor_term() if (self.tensor and top) else self.term()
        parts.append((sign, item))
        while self.at_op("+", "-"):
            _, op, _ = self.take()
            item = self.tensor_term() if (self.tensor and top) else self.term()
            parts.append((1 if op == "+" else -1, item))
        if len(parts) == 1 and parts[0][0] == 1:
            return parts[0][1]
        return ("add", parts)

    def tensor_term(self):
        pos = self.peek()[2]
        legs = [self.term()]
        while self.peek()[0] == "tensor":
            self.take()
            legs.append(self.term())
        return ("tensor", legs, pos)

    def term(self):
        node = self.factor()
        while self.at_op("*", "/") or (self.nc and self.at_op(".")):
            _, op, pos = self.take()
            rhs = self.factor()
            if op == "/":
                node = ("div", node, rhs, pos)
            else:
                node = ("mul", node, rhs)
        return node

    def factor(self):
        node = self.atom()
        if self.at_op("^"):
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError("expected a natural-number exponent", pos)
            node = ("pow", node, int(v))
        return node

    def atom(self):
        kind, v, pos = self.take()
        if kind == "int":
            value = Fraction(int(v))
            if self.at_op("/") and self.tokens[self.i + 1][0] == "int":
                self.take()
                _, d, dpos = self.take()
                if int(d) == 0:
                    raise ParseError("zero denominator", dpos)
                value = Fraction(int(v), int(d))
            return ("num", value)
        if kind == "ident":
            if self.at_op("("):
                self.take()
                inner = self.expr()
                self.expect(")")
                return ("call", v, inner, pos)
            return ("var", v, pos)
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {v!r}", pos)


def parse_ast(text, tensor=False, noncommutative=False):
    return _Parser(text, tensor=tensor, noncommutative=noncommutative).parse()


def evaluate(node, env):
    """Fold an AST through env, an object providing num/var/div/tensor/call."""
    kind = node[0]
    if kind == "num":
        return env.num(node[1])
    if kind == "var":
        return env.var(node[1], node[2])
    if kind == "add":
        total = None
        for sign, item in node[1]:
            v = evaluate(item, env)
            if sign < 0:
                v = -v
            total = v if total is None else total + v
        return total
    if kind == "mul":
        return evaluate(node[1], env) * evaluate(node[2], env)
    if kind == "div":
        return env.div(evaluate(node[1], env), evaluate(node[2], env), node[3])
    if kind == "pow":
        base = evaluate(node[1], env)
        result = env.num(Fraction(1))
        for _ in range(node[2]):
            result = result * base
        return result
    if kind == "tensor":
        return env.tensor([evaluate(leg, env) for leg in node[1]], node[2])
    if kind == "call":
        return env.call(node[1], node[2], node[3])
    raise AssertionError(kind)


def format_coefficient_term(c, mono_text):
    """Render c*mono as a signed pair (sign, body)."""
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not mono_text:
        return sign, str(a)
    if a == 1:
        return sign, mono_text
    return sign, f"{a}*{mono_text}"


def join_terms(pairs):
    if not pairs:
        return "0"
    out = []
    for k, (sign, body) in enumerate(pairs):
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
