"""Sparse multivariate polynomials over the rationals.

Terms live in a dict mapping exponent tuples to nonzero rational
coefficients.  Evaluation is generic: the inputs may be rationals,
first-order jets, or other polynomials (which makes composition a
special case of evaluation).  A small recursive-descent parser covers
the input grammar: integers, rational literals a/b, variables, + - * ^
(also **), unary minus and parentheses.
"""

from __future__ import annotations

from .scalars import Q, ZERO, qstr

_SCALARS = (int,) + ((type(Q(0)),) if not isinstance(Q(0), int) else ())


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError("exponent tuple has wrong arity")
            c = Q(coeff)
            if c != 0:
                clean[tuple(int(e) for e in exps)] = c
        self.terms = clean

    @classmethod
    def const(cls, value, nvars):
        return cls(nvars, {(0,) * nvars: Q(value)})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def var(cls, index, nvars):
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Q(1)})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * self.nvars: Q(1)}

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, index):
        return max((e[index] for e in self.terms), default=0)

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("mixed arities")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        o = self._lift(other)
        terms = dict(self.terms)
        for exps, c in o.terms.items():
            s = terms.get(exps, ZERO) + c
            if s == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = s
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("mixed arities")
            terms = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    key = tuple(x + y for x, y in zip(ea, eb))
                    s = terms.get(key, ZERO) + ca * cb
                    if s == 0:
                        terms.pop(key, None)
                    else:
                        terms[key] = s
            out = Poly.__new__(Poly)
            out.nvars = self.nvars
            out.terms = terms
            return out
        c = Q(other)
        if c == 0:
            return Poly.zero(self.nvars)
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                raise ValueError("division only by constants")
            other = other.constant_value()
        c = Q(other)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (Q(1) / c)

    def __pow__(self, exponent):
        e = int(exponent)
        if e < 0:
            raise ValueError("negative polynomial exponent")
        out = Poly.const(1, self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def diff(self, index):
        terms = {}
        for exps, c in self.terms.items():
            k = exps[index]
            if k == 0:
                continue
            e = list(exps)
            e[index] = k - 1
            terms[tuple(e)] = c * k
        return Poly(self.nvars, terms)

    def evaluate(self, values, zero=ZERO):
        """Evaluate on ring elements supporting + * ** and rational mixing."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        powers = [{} for _ in range(self.nvars)]
        total = None
        for exps, coeff in self.terms.items():
            factor = None
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                p = powers[i].get(e)
                if p is None:
                    p = values[i] ** e
                    powers[i][e] = p
                factor = p if factor is None else factor * p
            piece = coeff if factor is None else factor * coeff
            total = piece if total is None else total + piece
        return zero if total is None else total

    def compose(self, substitutions):
        """Substitute a polynomial for every variable."""
        subs = list(substitutions)
        if len(subs) != self.nvars:
            raise ValueError("wrong number of substitutions")
        arity = subs[0].nvars if subs else 0
        # evaluate leaves constant terms as bare scalars; lift them back
        result = self.evaluate(subs, zero=Poly.zero(arity))
        if not isinstance(result, Poly):
            result = Poly.const(result, arity)
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def format(self, names=None):
        if not self.terms:
            return "0"
        names = names or [f"v{i}" for i in range(self.nvars)]
        pieces = []
        for exps, coeff in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = qstr(coeff)
            elif coeff == 1:
                body = "*".join(factors)
            elif coeff == -1:
                body = "-" + "*".join(factors)
            else:
                body = qstr(coeff) + "*" + "*".join(factors)
            pieces.append(body)
        text = pieces[0]
        for p in pieces[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self):
        return f"Poly({self.format()})"


class PolyParseError(ValueError):
    pass


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        if text.startswith("**", i):
            tokens.append(("op", "^"))
            i += 2
            continue
        if ch in "+-*/^()":
            tokens.append(("op", ch))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, tokens, names):
        self.tokens = tokens
        self.pos = 0
        self.index = {name: k for k, name in enumerate(names)}
        self.nvars = len(names)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.take()[1]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                node = node * rhs
            else:
                if not rhs.is_constant():
                    raise PolyParseError("division only by rational constants")
                node = node / rhs
        return node

    def factor(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.factor()
        if tok == ("op", "+"):
            self.take()
            return self.factor()
        node = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, text = self.take()
            if kind != "int":
                raise PolyParseError("exponent must be a nonnegative integer")
            node = node ** int(text)
        return node

    def atom(self):
        kind, text = self.take()
        if kind == "int":
            return Poly.const(int(text), self.nvars)
        if kind == "name":
            if text not in self.index:
                raise PolyParseError(f"unknown variable {text!r}")
            return Poly.var(self.index[text], self.nvars)
        if (kind, text) == ("op", "("):
            node = self.expr()
            if self.take() != ("op", ")"):
                raise PolyParseError("missing closing parenthesis")
            return node
        raise PolyParseError(f"unexpected token {text!r}")


def parse_poly(text, variables):
    """Parse a polynomial in the named variables."""
    parser = _Parser(_tokenize(text), list(variables))
    node = parser.expr()
    if parser.peek()[0] != "end":
        raise PolyParseError(f"trailing input {parser.peek()[1]!r}")
    return node
