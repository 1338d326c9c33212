"""Expressions over A(P): parser, evaluation, and the formal image in phi-jets.

Grammar (binary operators are left-associative and share one precedence
level, so mixing different ones needs parentheses)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := [integer '*'] factor (op factor)*
    op     := 'o' (quasi-shuffle) | '.' (prec) | '@' (bullet) | 'x' (hat product)
    factor := 'P' ['^' integer] | '(' expr ')'

``P^n`` is the bullet power of P.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple, Union

from . import qshuffle as qs
from .ncpoly import NCPoly, ddx, ddt_formal

OPS = {"o": "qshuffle", ".": "prec", "@": "bullet", "x": "hat_times"}


class ExprSyntaxError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class AmbiguityError(ExprSyntaxError):
    pass


class NotAnIdentityTerm(ValueError):
    """The expression uses products outside the o / hat-product fragment."""


@dataclass(frozen=True)
class Letter:
    power: int = 1


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Scaled:
    coeff: int
    body: "Node"


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]


Node = Union[Letter, BinOp, Scaled, Sum]

_TOKEN = re.compile(r"\s*(?:(\d+)|([Pox.@+\-*^()]))")


def _tokens(text):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        num, sym = m.groups()
        out.append((num or sym, m.start(1) if num else m.start(2)))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            raise ExprSyntaxError(f"expected {expected!r}, found {tok or 'end of input'!r}", pos)
        self.i += 1
        return tok

    def expr(self):
        terms = []
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.take() == "-" else 1
        terms.append((sign, self.term()))
        while self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.take() == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self):
        coeff = None
        if self.peek().isdigit():
            coeff = int(self.take())
            self.take("*")
        node = self.factor()
        op_seen = None
        while self.peek() in OPS and self.peek():
            pos = self.pos()
            op = self.take()
            if op_seen is not None and op != op_seen:
                raise AmbiguityError(
                    f"operators {op_seen!r} and {op!r} mixed without parentheses", pos
                )
            op_seen = op
            node = BinOp(op, node, self.factor())
        return node if coeff is None else Scaled(coeff, node)

    def factor(self):
        tok = self.peek()
        if tok == "P":
            self.take()
            if self.peek() == "^":
                self.take()
                if not self.peek().isdigit():
                    raise ExprSyntaxError("integer exponent expected", self.pos())
                n = int(self.take())
                if n < 1:
                    raise ExprSyntaxError("exponent must be positive", self.pos())
                return Letter(n)
            return Letter(1)
        if tok == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ExprSyntaxError(f"unexpected {tok or 'end of input'!r}", self.pos())


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    if p.peek():
        raise ExprSyntaxError(f"trailing input {p.peek()!r}", p.pos())
    return node


def to_text(node: Node, top: bool = True) -> str:
    """Canonical text; ``parse(to_text(n)) == n`` for parsed nodes."""
    if isinstance(node, Letter):
        return "P" if node.power == 1 else f"P^{node.power}"
    if isinstance(node, BinOp):
        left = to_text(node.left, False)
        if isinstance(node.left, BinOp) and node.left.op == node.op:
            left = left[1:-1]
        s = f"{left} {node.op} {to_text(node.right, False)}"
        return s if top else f"({s})"
    if isinstance(node, Scaled):
        return f"{node.coeff}*{to_text(node.body, False)}"
    if isinstance(node, Sum):
        parts = []
        for i, (sign, t) in enumerate(node.terms):
            body = to_text(t, True)
            if isinstance(t, Sum):
                body = f"({body})"
            if i == 0:
                parts.append(body if sign == 1 else f"-{body}")
            else:
                parts.append(("+ " if sign == 1 else "- ") + body)
        s = " ".join(parts)
        return s if top else f"({s})"
    raise TypeError(node)


def evaluate(node: Node) -> qs.AlgElement:
    """Value of the expression in A(P)."""
    if isinstance(node, Letter):
        return qs.P(node.power)
    if isinstance(node, BinOp):
        f = getattr(qs, OPS[node.op])
        return f(evaluate(node.left), evaluate(node.right))
    if isinstance(node, Scaled):
        return node.coeff * evaluate(node.body)
    if isinstance(node, Sum):
        acc = qs.AlgElement()
        for sign, t in node.terms:
            acc = acc + sign * evaluate(t)
        return acc
    raise TypeError(node)


# --- formal image in phi-jets -------------------------------------------------------
#
# Under either evaluation map, P^n goes to phi_{t_n} (with t_1 = x), the hat
# product to the ordinary product, and P^n o a to the t_n-derivative of the
# image of a.  The image of an identity is therefore a polynomial in jets of
# a single matrix potential phi: letter ("phi_t2_t3", 1) is phi_{x t2 t3}.

PHI = "phi"


def delta(p: NCPoly, n: int) -> NCPoly:
    return ddx(p) if n == 1 else ddt_formal(p, n)


def phi_letter(n: int) -> NCPoly:
    if n == 1:
        return NCPoly.symbol(PHI, 1)
    return NCPoly.symbol(f"{PHI}_t{n}")


def _letter_power(node: Node):
    if isinstance(node, Letter):
        return node.power
    if isinstance(node, BinOp) and node.op == "@":
        a, b = _letter_power(node.left), _letter_power(node.right)
        if a is not None and b is not None:
            return a + b
    return None


def phi_image(node: Node) -> NCPoly:
    """Formal phi-jet image of an expression built from P^n with o and hat product."""
    n = _letter_power(node)
    if n is not None:
        return phi_letter(n)
    if isinstance(node, BinOp):
        if node.op == "x":
            return phi_image(node.left) * phi_image(node.right)
        if node.op == "o":
            left, right = _letter_power(node.left), _letter_power(node.right)
            if right is not None:
                return delta(phi_image(node.left), right)
            if left is not None:
                return delta(phi_image(node.right), left)
            raise NotAnIdentityTerm(
                f"{to_text(node)}: a quasi-shuffle needs a letter P^n on one side"
            )
        raise NotAnIdentityTerm(f"{to_text(node)}: operator {node.op!r} is not allowed in identities")
    if isinstance(node, Scaled):
        return phi_image(node.body).scale(node.coeff)
    if isinstance(node, Sum):
        acc = NCPoly.zero()
        for sign, t in node.terms:
            acc = acc + phi_image(t).scale(sign)
        return acc
    raise TypeError(node)


KP_IDENTITY_LHS = "4*(P^3 o P) - (P o P o P o P) - 6*(P o (P x P))"
KP_IDENTITY_RHS = "6*(P^2 x P) - 6*(P x P^2) + 3*(P^2 o P^2)"


def kp_identity_nodes() -> Tuple[Node, Node]:
    return parse(KP_IDENTITY_LHS), parse(KP_IDENTITY_RHS)


def potential_kp(rules=None) -> NCPoly:
    """``(4 phi_t3 - phi_xxx - 6 phi_x^2)_x - 6[phi_t2, phi_x] - 3 phi_t2t2``."""
    from .ncpoly import FREE
    from .ncpoly import parse as nparse

    rules = rules or FREE
    return ddx(nparse("4*phi_t3 - phi_xxx - 6*phi_x^2", rules)) - nparse(
        "6*[phi_t2, phi_x] + 3*phi_t2_t2", rules
    )


# --- realization of phi-jets ------------------------------------------------------


class Realization:
    """Concrete meaning of phi-jets in some coefficient ring.

    Subclasses provide ``phi(n)`` (image of P^n), ``dx`` and ``dt(value, n)``.
    ``order`` picks how a mixed jet is built: ``"x-first"`` starts from
    phi_x and applies time derivatives (the form used when an identity term
    P^n o P is read as d/dt_n of the image of P); ``"t-first"`` starts from
    phi_{t_n} and differentiates in x last (the potential-KP reading).
    """

    order = "t-first"

    def phi(self, n: int):
        raise NotImplementedError

    def dx(self, value):
        raise NotImplementedError

    def dt(self, value, n: int):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def jet(self, letter):
        from .ncpoly import base_name, t_suffixes

        name, k = letter
        if base_name(name) != PHI:
            raise NotAnIdentityTerm(f"unexpected letter {name} in a phi-jet polynomial")
        ts = [int(t) for t in t_suffixes(name)]
        if k == 0 and not ts:
            raise NotAnIdentityTerm("phi itself has no image; only its derivatives do")
        if k >= 1 and (self.order == "x-first" or not ts):
            value, rest_x = self.phi(1), k - 1
        else:
            value, rest_x, ts = self.phi(ts[0]), k, ts[1:]
        for t in ts:
            value = self.dt(value, t)
        for _ in range(rest_x):
            value = self.dx(value)
        return value

    def realize(self, p: NCPoly):
        from .ncpoly import evaluate as nevaluate

        return nevaluate(p, self.jet, self.one(), self.zero())
