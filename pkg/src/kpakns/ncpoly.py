"""Noncommutative differential polynomials.

A letter is a pair ``(name, xorder)``; ``("q", 2)`` prints as ``q_xx``.  A
word is a tuple of letters and the empty word is the unit ``I``.  Names may
carry formal time-derivative suffixes (``q_t2``, ``phi_t2_t3``); those are
unresolved unknowns until a :class:`DerivationTable` or a substitution
replaces them.

Every :class:`NCPoly` carries a rewrite-rule set (free, commutative, or the
``H``-involution rules of the ``V^2 = V`` reduction) applied after each
product, so stored words are always in normal form.
"""

from __future__ import annotations

import itertools
import json
import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .scalar import ZETA, CycScalar, format_scalar, inverse, parse_scalar, simplify

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]

CONSTANTS = frozenset({"J", "H", "I"})


class NCPolyError(ValueError):
    pass


class MissingTableEntry(NCPolyError, KeyError):
    """A t-derivative was requested for a letter the table does not cover."""


class InconsistentRules(NCPolyError):
    pass


class NotConfluent(NCPolyError):
    pass


# --- rewrite rules ------------------------------------------------------------


class FreeRules:
    """No relations: the free associative algebra."""

    name = "free"
    is_free = True

    def normalize(self, word: Word):
        return ((1, word),)

    def __repr__(self):
        return f"<{self.name} rules>"


class CommutativeRules(FreeRules):
    """All letters commute; words are kept sorted."""

    name = "commutative"
    is_free = False

    def normalize(self, word: Word):
        return ((1, tuple(sorted(word))),)


class InvolutionRules(FreeRules):
    """``H^2 = I`` and ``H a = -a H`` for every letter whose base name is in ``anti``.

    Letters outside ``anti`` commute with ``H``.  Normal words carry at most
    one ``H``, at the right end.
    """

    is_free = False

    def __init__(self, h: str = "H", anti: Iterable[str] = ("u",)):
        self.h = (h, 0)
        self.anti = frozenset(anti)
        self.name = f"involution[{h};{','.join(sorted(self.anti))}]"

    def normalize(self, word: Word):
        h = self.h
        if h not in word:
            return ((1, word),)
        sign, nh, rest = 1, 0, []
        for letter in word:
            if letter == h:
                nh += 1
            else:
                if nh % 2 and base_name(letter[0]) in self.anti:
                    sign = -sign
                rest.append(letter)
        if nh % 2:
            rest.append(h)
        return ((sign, tuple(rest)),)

    def __eq__(self, other):
        return isinstance(other, InvolutionRules) and (self.h, self.anti) == (other.h, other.anti)

    def __hash__(self):
        return hash((self.h, self.anti))


FREE = FreeRules()
COMMUTATIVE = CommutativeRules()


def check_confluence(rules, alphabet: Sequence[Letter], max_len: int = 4) -> None:
    """Exhaustive small-word check that normalization is well defined.

    Every word up to ``max_len`` is reduced both directly and by reducing each
    split ``w = a b`` separately and then the product; the results must agree.
    """
    def reduce(word):
        return _collect(rules.normalize(word))

    for n in range(1, max_len + 1):
        for word in itertools.product(alphabet, repeat=n):
            direct = reduce(word)
            again = {}
            for w, c in direct.items():
                for c2, w2 in rules.normalize(w):
                    again[w2] = again.get(w2, 0) + c * c2
            if {k: v for k, v in again.items() if v} != direct:
                raise NotConfluent(f"normalization not idempotent on {word}")
            for i in range(1, n):
                left, right = reduce(word[:i]), reduce(word[i:])
                split = {}
                for w1, c1 in left.items():
                    for w2, c2 in right.items():
                        for c3, w3 in rules.normalize(w1 + w2):
                            split[w3] = split.get(w3, 0) + c1 * c2 * c3
                split = {k: v for k, v in split.items() if v}
                if split != direct:
                    raise NotConfluent(f"critical split {word[:i]}|{word[i:]} diverges")


def _collect(pairs) -> Dict[Word, object]:
    out: Dict[Word, object] = {}
    for c, w in pairs:
        out[w] = out.get(w, 0) + c
    return {k: v for k, v in out.items() if v}


# --- names and letters ----------------------------------------------------------

_NAME_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)((?:_t\d*)*)$")


def base_name(name: str) -> str:
    return name.split("_t", 1)[0]


def t_suffixes(name: str) -> Tuple[str, ...]:
    """Time labels of a formal derivative name: ``"q_t2_t3"`` -> ``("2", "3")``.

    The empty label (``q_t``) denotes an unnumbered time variable.
    """
    m = _NAME_RE.match(name)
    if not m:
        raise NCPolyError(f"bad symbol name {name!r}")
    return tuple(m.group(2).split("_t")[1:])


def with_t(name: str, label) -> str:
    ts = sorted(t_suffixes(name) + (str(label),), key=lambda t: (len(t), t))
    return base_name(name) + "".join(f"_t{t}" for t in ts)


def format_letter(letter: Letter) -> str:
    name, k = letter
    return name + ("_" + "x" * k if k else "")


_LETTER_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*(?:_t\d*)*)(?:_(x+))?$")


def parse_letter(text: str) -> Letter:
    m = _LETTER_RE.match(text)
    if not m:
        raise NCPolyError(f"bad letter {text!r}")
    return (m.group(1), len(m.group(2) or ""))


class DSymbol(tuple):
    """Named differential symbol; a thin tuple so it is usable as a letter."""

    def __new__(cls, name: str, xorder: int = 0, constants=CONSTANTS):
        if xorder < 0:
            raise NCPolyError("xorder must be nonnegative")
        if name in constants and xorder:
            raise NCPolyError(f"constant {name} cannot carry x-derivatives")
        t_suffixes(name)
        return super().__new__(cls, (name, xorder))

    @property
    def name(self):
        return self[0]

    @property
    def xorder(self):
        return self[1]

    def __str__(self):
        return format_letter(self)


# --- the polynomial type --------------------------------------------------------


def _word_key(word: Word):
    return (len(word), word)


class NCPoly:
    __slots__ = ("terms", "rules")

    def __init__(self, terms: Optional[Mapping[Word, object]] = None, rules=FREE, *, _trusted=False):
        self.rules = rules
        if _trusted:
            self.terms = terms
            return
        out: Dict[Word, object] = {}
        if terms:
            for w, c in terms.items():
                w = tuple(tuple(l) for l in w)
                if rules.is_free:
                    out[w] = out.get(w, 0) + c
                else:
                    for s, w2 in rules.normalize(w):
                        out[w2] = out.get(w2, 0) + s * c
        self.terms = {w: c for w, c in out.items() if c}

    # constructors
    @classmethod
    def zero(cls, rules=FREE) -> "NCPoly":
        return cls({}, rules, _trusted=True)

    @classmethod
    def one(cls, rules=FREE) -> "NCPoly":
        return cls({(): 1}, rules, _trusted=True)

    @classmethod
    def const(cls, c, rules=FREE) -> "NCPoly":
        return cls({(): c} if c else {}, rules, _trusted=True)

    @classmethod
    def symbol(cls, name: str, xorder: int = 0, rules=FREE) -> "NCPoly":
        if name == "I":
            return cls.one(rules)
        return cls({((name, xorder),): 1}, rules)

    @classmethod
    def word(cls, *letters, rules=FREE) -> "NCPoly":
        w = tuple(parse_letter(l) if isinstance(l, str) else tuple(l) for l in letters)
        return cls({w: 1}, rules)

    def with_rules(self, rules) -> "NCPoly":
        return NCPoly(self.terms, rules)

    # queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, word) -> object:
        if isinstance(word, str):
            word = tuple(parse_letter(s) for s in word.split("*")) if word not in ("", "I") else ()
        return self.terms.get(tuple(tuple(l) for l in word), 0)

    def letters(self) -> set:
        return {l for w in self.terms for l in w}

    def names(self) -> set:
        return {l[0] for w in self.terms for l in w}

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def constant_term(self):
        return self.terms.get((), 0)

    # arithmetic
    def _add(self, other: "NCPoly", sign=1) -> "NCPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + (c if sign == 1 else -c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(out, self.rules, _trusted=True)

    def __add__(self, other):
        if isinstance(other, NCPoly):
            return self._add(other)
        if _is_scalar(other):
            return self._add(NCPoly.const(other, self.rules))
        return NotImplemented

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, NCPoly):
            return self._add(other, -1)
        if _is_scalar(other):
            return self._add(NCPoly.const(other, self.rules), -1)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()}, self.rules, _trusted=True)

    def scale(self, s) -> "NCPoly":
        if not s:
            return NCPoly.zero(self.rules)
        return NCPoly({w: c * s for w, c in self.terms.items()}, self.rules, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return mul(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return self.scale(inverse(other))
        if isinstance(other, NCPoly) and set(other.terms) <= {()} and other.terms:
            return self.scale(inverse(other.terms[()]))
        raise NCPolyError("can only divide by a nonzero scalar")

    def __pow__(self, n: int):
        if n < 0:
            raise NCPolyError("negative power")
        out = NCPoly.one(self.rules)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        if _is_scalar(other):
            return self.terms == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _word_key(kv[0]))

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"NCPoly({to_text(self)!r})"


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, CycScalar))


def _emit(out: Dict[Word, object], rules, word: Word, c) -> None:
    if rules.is_free:
        v = out.get(word, 0) + c
        if v:
            out[word] = v
        else:
            out.pop(word, None)
        return
    for s, w in rules.normalize(word):
        v = out.get(w, 0) + s * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)


def mul(p: NCPoly, q: NCPoly) -> NCPoly:
    rules = p.rules
    out: Dict[Word, object] = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            _emit(out, rules, w1 + w2, c1 * c2)
    return NCPoly(out, rules, _trusted=True)


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b - b * a


def anticommutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b + b * a


def symmetrize(args: Sequence[NCPoly]) -> NCPoly:
    """Sum of the product over all orderings of ``args``."""
    if not args:
        raise NCPolyError("symmetrizer needs at least one argument")
    rules = args[0].rules
    out = NCPoly.zero(rules)
    for perm in itertools.permutations(range(len(args))):
        term = NCPoly.one(rules)
        for i in perm:
            term = term * args[i]
        out = out + term
    return out


# --- derivations ------------------------------------------------------------------


def apply_derivation(p: NCPoly, image: Callable[[Letter], Optional[NCPoly]]) -> NCPoly:
    """Extend ``letter -> image(letter)`` to ``p`` by the Leibniz rule."""
    rules = p.rules
    cache: Dict[Letter, Optional[NCPoly]] = {}
    out: Dict[Word, object] = {}
    for word, c in p.terms.items():
        for i, letter in enumerate(word):
            d = cache.get(letter, False)
            if d is False:
                d = image(letter)
                cache[letter] = d
            if not d:
                continue
            pre, post = word[:i], word[i + 1 :]
            for w, c2 in d.terms.items():
                _emit(out, rules, pre + w + post, c * c2)
    return NCPoly(out, rules, _trusted=True)


def ddx(p: NCPoly, table: Optional[Mapping[str, NCPoly]] = None, constants=CONSTANTS) -> NCPoly:
    """x-derivative.  Letters in ``table`` (by name) differentiate to their entry."""
    if table is None:
        rules = p.rules
        out: Dict[Word, object] = {}
        for word, c in p.terms.items():
            for i, (name, k) in enumerate(word):
                if name in constants:
                    continue
                _emit(out, rules, word[:i] + ((name, k + 1),) + word[i + 1 :], c)
        return NCPoly(out, rules, _trusted=True)

    def image(letter):
        name, k = letter
        if name in constants:
            return None
        if name in table:
            if k:
                raise NCPolyError(f"table-driven letter {name} cannot carry xorder")
            if table[name] is None:
                raise MissingTableEntry(f"no x-derivative recorded for {name}")
            return table[name]
        return NCPoly({((name, k + 1),): 1}, p.rules, _trusted=True)

    return apply_derivation(p, image)


def ddx_n(p: NCPoly, n: int, table=None, constants=CONSTANTS) -> NCPoly:
    for _ in range(n):
        p = ddx(p, table, constants)
    return p


def ddt_formal(p: NCPoly, n, constants=CONSTANTS) -> NCPoly:
    """t_n-derivative with every non-constant letter kept as an unresolved unknown."""
    def image(letter):
        name, k = letter
        if name in constants:
            return None
        return NCPoly({((with_t(name, n), k),): 1}, p.rules, _trusted=True)

    return apply_derivation(p, image)


class DerivationTable:
    """Declared t_n-derivatives of generators, one map per flow index.

    ``x_table`` optionally makes the x-derivative table-driven as well (used
    when generators are free letters whose x-evolution is itself a flow).
    Entries are frozen at construction.
    """

    def __init__(self, flows: Mapping[int, Mapping[str, NCPoly]], x_table=None, constants=CONSTANTS):
        self.flows = {int(n): dict(m) for n, m in flows.items()}
        self.x_table = dict(x_table) if x_table is not None else None
        self.constants = frozenset(constants)
        self._cache: Dict[Tuple[int, str, int], NCPoly] = {}

    def __contains__(self, n):
        return n in self.flows

    def entry(self, n: int, name: str) -> NCPoly:
        try:
            return self.flows[n][name]
        except KeyError:
            raise MissingTableEntry(f"no t{n}-derivative recorded for {name}") from None

    def letter_derivative(self, n: int, letter: Letter) -> Optional[NCPoly]:
        name, k = letter
        if name in self.constants:
            return None
        key = (n, name, k)
        hit = self._cache.get(key)
        if hit is None:
            hit = ddx_n(self.entry(n, name), k, self.x_table, self.constants)
            self._cache[key] = hit
        return hit

    def ddx(self, p: NCPoly) -> NCPoly:
        return ddx(p, self.x_table, self.constants)

    def replace(self, n: int, name: str, value: NCPoly) -> "DerivationTable":
        flows = {k: dict(v) for k, v in self.flows.items()}
        flows.setdefault(n, {})[name] = value
        return DerivationTable(flows, self.x_table, self.constants)


def ddt(p: NCPoly, n: int, table: DerivationTable) -> NCPoly:
    """t_n-derivative resolved through ``table``; commutes with ddx by construction."""
    return apply_derivation(p, lambda letter: table.letter_derivative(n, letter))


# --- substitution -----------------------------------------------------------------


def evaluate(p: NCPoly, image: Callable[[Letter], object], one, zero):
    """Ring homomorphism defined letterwise; ``image`` may target any ring."""
    cache: Dict[Letter, object] = {}
    acc = zero
    for word, c in p.terms.items():
        term = one
        for letter in word:
            v = cache.get(letter)
            if v is None:
                v = image(letter)
                cache[letter] = v
            term = term * v
        acc = acc + term * c
    return acc


def substitute(p: NCPoly, rules: Mapping, constants=CONSTANTS, target_rules=None) -> NCPoly:
    """Simultaneous substitution of symbols by polynomials.

    Keys are names (``"q"``) or letters (``("q", 1)`` / ``"q_x"``).  A name
    rule also covers every x-derivative and every formal t-derivative of that
    symbol.  An explicit letter rule must agree with the derived one.
    """
    target_rules = target_rules or p.rules
    by_name: Dict[str, NCPoly] = {}
    by_letter: Dict[Letter, NCPoly] = {}
    for key, val in rules.items():
        if isinstance(val, (int, Fraction, CycScalar)):
            val = NCPoly.const(val, target_rules)
        if isinstance(key, str) and "_x" not in key:
            by_name[key] = val
        else:
            letter = parse_letter(key) if isinstance(key, str) else tuple(key)
            by_letter[letter] = val
    for (name, k), val in by_letter.items():
        if name in by_name and ddx_n(by_name[name], k, None, constants) != val:
            raise InconsistentRules(f"rule for {format_letter((name, k))} disagrees with rule for {name}")

    def image(letter):
        if letter in by_letter:
            return by_letter[letter]
        name, k = letter
        if name in by_name:
            val = by_name[name]
        else:
            base = base_name(name)
            if base not in by_name:
                return NCPoly({(letter,): 1}, target_rules, _trusted=True)
            val = by_name[base]
            for t in t_suffixes(name):
                val = ddt_formal(val, t, constants)
        return ddx_n(val, k, None, constants)

    return evaluate(p, image, NCPoly.one(target_rules), NCPoly.zero(target_rules))


def with_rules(p: NCPoly, rules) -> NCPoly:
    return NCPoly(p.terms, rules)


# --- text, LaTeX and JSON forms -------------------------------------------------------


def _format_coeff(c) -> str:
    return format_scalar(c)


def to_text(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for word, c in p.sorted_terms():
        c = simplify(c)
        body = "*".join(format_letter(l) for l in word)
        neg = False
        if not isinstance(c, CycScalar):
            neg = c < 0
            mag = -c if neg else c
            cs = "" if (mag == 1 and body) else format_scalar(mag)
        else:
            cs = format_scalar(c)
        if cs and body:
            text = f"{cs}*{body}"
        else:
            text = cs or body
        if not parts:
            parts.append("-" + text if neg else text)
        else:
            parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts)


_GREEK = {"phi": r"\phi", "psi": r"\psi", "zeta": r"\zeta"}


def letter_latex(letter: Letter) -> str:
    name, k = letter
    base = base_name(name)
    ts = t_suffixes(name)
    m = re.match(r"^([A-Za-z]+)(\d*)$", base)
    stem, idx = (m.group(1), m.group(2)) if m else (base, "")
    stem = _GREEK.get(stem, stem)
    subs = []
    if idx:
        subs.append(idx)
    derivs = " ".join(filter(None, ["x" * k] + [f"t_{t}" if t else "t" for t in ts]))
    if derivs:
        subs.append(derivs)
    if not subs:
        return stem
    return f"{stem}_{{{','.join(subs)}}}"


def to_latex(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for word, c in p.sorted_terms():
        c = simplify(c)
        body = " ".join(letter_latex(l) for l in word)
        if isinstance(c, CycScalar):
            cs = f"({c.a} + {c.b}\\zeta)".replace("+ -", "- ")
            parts.append(("+ " if parts else "") + (f"{cs} {body}" if body else cs))
            continue
        neg = c < 0
        mag = -c if neg else c
        if mag == 1 and body:
            cs = ""
        elif isinstance(mag, Fraction) and mag.denominator != 1:
            cs = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        else:
            cs = str(mag)
        text = f"{cs} {body}".strip() if body else cs
        if parts:
            parts.append(("- " if neg else "+ ") + text)
        else:
            parts.append(("-" if neg else "") + text)
    return " ".join(parts)


def to_json_obj(p: NCPoly) -> dict:
    return {
        "terms": [
            {"coeff": _format_coeff(c), "word": [format_letter(l) for l in w]}
            for w, c in p.sorted_terms()
        ]
    }


def to_json(p: NCPoly) -> str:
    return json.dumps(to_json_obj(p), sort_keys=True)


def from_json_obj(obj, rules=FREE) -> NCPoly:
    out: Dict[Word, object] = {}
    for term in obj["terms"]:
        w = tuple(parse_letter(s) for s in term["word"])
        out[w] = out.get(w, 0) + parse_scalar(term["coeff"])
    return NCPoly(out, rules)


def from_json(text: str, rules=FREE) -> NCPoly:
    return from_json_obj(json.loads(text), rules)


# --- expression parser --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z][A-Za-z0-9]*(?:_t\d*)*(?:_x+)?)|(.))"
)


def _tokenize(text: str):
    pos, toks = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        num, ident, op = m.groups()
        start = m.start(1) if num else m.start(2) if ident else m.start(3)
        if num:
            toks.append(("num", num, start))
        elif ident:
            toks.append(("id", ident, start))
        else:
            if op not in "+-*/^()[]{},":
                raise NCPolyError(f"unexpected character {op!r} at {start}")
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, rules):
        self.toks = _tokenize(text)
        self.i = 0
        self.rules = rules
        self.text = text

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise NCPolyError(f"expected {value!r} at {tok[2]} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.power()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            kind, val, pos = self.take()
            if kind != "num" or "/" in val:
                raise NCPolyError(f"integer exponent expected at {pos}")
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return NCPoly.const(Fraction(val), self.rules)
        if kind == "id":
            if val == "z":
                return NCPoly.const(ZETA, self.rules)
            if val == "I":
                return NCPoly.one(self.rules)
            name, k = parse_letter(val)
            return NCPoly({((name, k),): 1}, self.rules)
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        if val == "-":
            return -self.power()
        if val == "[":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]")
            return commutator(a, b)
        if val == "{":
            args = [self.expr()]
            while self.peek()[1] == ",":
                self.take()
                args.append(self.expr())
            self.take("}")
            return symmetrize(args)
        raise NCPolyError(f"unexpected {val!r} at {pos} in {self.text!r}")


def parse(text: str, rules=FREE) -> NCPoly:
    """Parse text such as ``"-(u_x + u^2)*H"`` or ``"{J,v3}*J"``.

    ``[a,b]`` is the commutator, ``{a,...}`` the symmetrizer, ``I`` the unit
    and ``z`` the cube root of unity.
    """
    p = _Parser(text, rules)
    out = p.expr()
    if p.peek()[0] != "end":
        raise NCPolyError(f"trailing input at {p.peek()[2]} in {text!r}")
    return out
