"""The single-generator algebra A(P) on the composition basis.

A composition ``(n1, ..., nk)`` stands for ``P^{.n1} < ... < P^{.nk}`` where
``<`` is the concatenation product and ``P^{.n}`` the n-fold merge (bullet)
power of P.  Elements are finite rational combinations of compositions.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Tuple

Composition = Tuple[int, ...]


def composition(*parts: int) -> Composition:
    c = tuple(int(p) for p in parts)
    if not c or any(p < 1 for p in c):
        raise ValueError(f"not a composition: {parts!r}")
    return c


def weight(c: Composition) -> int:
    return sum(c)


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of ``n``, ordered by length then lexicographically."""
    for k in range(1, n + 1):
        for cuts in itertools.combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def compositions_up_to(n: int) -> Iterator[Composition]:
    for w in range(1, n + 1):
        yield from compositions(w)


def _sort_key(c: Composition):
    return (sum(c), len(c), c)


class AlgElement:
    """Finite linear combination of compositions with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Dict[Composition, Fraction] = {}
        if terms:
            for c, v in dict(terms).items():
                if v:
                    clean[tuple(c)] = Fraction(v)
        self.terms = clean

    @classmethod
    def basis(cls, *parts: int) -> "AlgElement":
        return cls({composition(*parts): 1})

    @classmethod
    def zero(cls) -> "AlgElement":
        return cls()

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, c) -> Fraction:
        return self.terms.get(tuple(c), Fraction(0))

    def __add__(self, other: "AlgElement") -> "AlgElement":
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0) + v
        return AlgElement(out)

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def __neg__(self) -> "AlgElement":
        return AlgElement({c: -v for c, v in self.terms.items()})

    def __mul__(self, s) -> "AlgElement":
        if isinstance(s, AlgElement):
            return NotImplemented
        return AlgElement({c: v * s for c, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def weights(self) -> set:
        return {sum(c) for c in self.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"AlgElement({format_element(self)!r})"


def as_element(x) -> AlgElement:
    if isinstance(x, AlgElement):
        return x
    if isinstance(x, tuple):
        return AlgElement({composition(*x): 1})
    raise TypeError(f"cannot interpret {x!r} as an element of A(P)")


def _bilinear(word_op):
    def op(a, b) -> AlgElement:
        a, b = as_element(a), as_element(b)
        out: Dict[Composition, Fraction] = {}
        for ca, va in a.terms.items():
            for cb, vb in b.terms.items():
                s = va * vb
                # integer coefficients are by far the common case; ints are much faster
                if s.denominator == 1:
                    s = s.numerator
                for c, v in word_op(ca, cb):
                    out[c] = out.get(c, 0) + s * v
        return AlgElement(out)

    op.__name__ = word_op.__name__.lstrip("_")
    op.__doc__ = word_op.__doc__
    return op


def _prec(a: Composition, b: Composition):
    """Concatenation product."""
    return ((a + b, 1),)


def _bullet(a: Composition, b: Composition):
    """Merge product: the last letter of ``a`` fuses with the first of ``b``."""
    return ((a[:-1] + (a[-1] + b[0],) + b[1:], 1),)


@lru_cache(maxsize=None)
def stuffle(a: Composition, b: Composition) -> Tuple[Tuple[Composition, int], ...]:
    """Quasi-shuffle of two words (empty words allowed) as (word, multiplicity) pairs."""
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: Dict[Composition, int] = {}
    for w, m in stuffle(a[1:], b):
        key = (a[0],) + w
        out[key] = out.get(key, 0) + m
    for w, m in stuffle(a, b[1:]):
        key = (b[0],) + w
        out[key] = out.get(key, 0) + m
    for w, m in stuffle(a[1:], b[1:]):
        key = (a[0] + b[0],) + w
        out[key] = out.get(key, 0) + m
    return tuple(out.items())


def _qshuffle(a: Composition, b: Composition):
    return stuffle(a, b)


def _hat_times(a: Composition, b: Composition):
    return ((a + (1,) + b, -1), (a + (1 + b[0],) + b[1:], -1))


prec = _bilinear(_prec)
bullet = _bilinear(_bullet)
qshuffle = _bilinear(_qshuffle)
hat_times = _bilinear(_hat_times)


def succ(a, b) -> AlgElement:
    """Combined product ``a < b + a . b``."""
    return prec(a, b) + bullet(a, b)


def P(n: int = 1) -> AlgElement:
    """The letter ``P^{.n}``."""
    return AlgElement.basis(n)


def qshuffle_power(n: int) -> AlgElement:
    if n < 1:
        raise ValueError("power must be positive")
    out = P(1)
    for _ in range(n - 1):
        out = qshuffle(out, P(1))
    return out


def hat_commutator(a, b) -> AlgElement:
    return hat_times(a, b) - hat_times(b, a)


def kp_identity_lhs_rhs() -> Tuple[AlgElement, AlgElement]:
    """Both sides of the weight-4 identity that maps to potential KP.

    ``4 P^{.3} o P - P^{o4} - 6 P o (P x P) = 6 [P^{.2}, P]_x + 3 P^{.2} o P^{.2}``
    """
    lhs = (
        4 * qshuffle(P(3), P(1))
        - qshuffle_power(4)
        - 6 * qshuffle(P(1), hat_times(P(1), P(1)))
    )
    rhs = 6 * hat_commutator(P(2), P(1)) + 3 * qshuffle(P(2), P(2))
    return lhs, rhs


# --- quasi-symmetric oracle -------------------------------------------------


class OracleError(ValueError):
    pass


def _monomial_qsym(c: Composition, nvars: int) -> Dict[Tuple[int, ...], int]:
    out = {}
    for idx in itertools.combinations(range(nvars), len(c)):
        e = [0] * nvars
        for i, p in zip(idx, c):
            e[i] = p
        out[tuple(e)] = 1
    return out


def qsym_oracle_product(a, b, nvars: int) -> AlgElement:
    """Multiply monomial quasi-symmetric polynomials M_a * M_b by brute force.

    The product is expanded in ``nvars`` commuting variables and read back in
    the M basis: the coefficient of M_c is the coefficient of the monomial
    ``x1^c1 ... xk^ck``.
    """
    a, b = composition(*a), composition(*b)
    if nvars < len(a) + len(b):
        raise OracleError(
            f"need at least {len(a) + len(b)} variables, got {nvars}"
        )
    ma, mb = _monomial_qsym(a, nvars), _monomial_qsym(b, nvars)
    prod: Dict[Tuple[int, ...], int] = {}
    for ea, va in ma.items():
        for eb, vb in mb.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            prod[e] = prod.get(e, 0) + va * vb
    out = {}
    for e, v in prod.items():
        k = sum(1 for x in e if x)
        if all(e[:k]) and not any(e[k:]):
            out[e[:k]] = v
    return AlgElement(out)


# --- text form --------------------------------------------------------------


def format_composition(c: Composition) -> str:
    return "(" + ",".join(str(p) for p in c) + ")"


def format_element(x: AlgElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for c, v in x.sorted_terms():
        mag = abs(v)
        body = format_composition(c) if mag == 1 else f"{mag}*{format_composition(c)}"
        if not parts:
            parts.append(body if v > 0 else "-" + body)
        else:
            parts.append(("+ " if v > 0 else "- ") + body)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)\s*"
)


def parse_element(text: str) -> AlgElement:
    """Parse the canonical text form, e.g. ``"2*(1,1) + (2)"``."""
    s = text.strip()
    if s == "0":
        return AlgElement()
    pos, out = 0, {}
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad element text at {pos}: {text!r}")
        sign, coef, parts = m.groups()
        if sign is None and pos > 0:
            raise ValueError(f"missing operator at {pos}: {text!r}")
        v = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            v = -v
        c = composition(*(int(p) for p in parts.split(",")))
        out[c] = out.get(c, 0) + v
        pos = m.end()
    return AlgElement(out)


def linear_map(a: AlgElement, f, zero):
    """Extend ``f`` (defined on compositions) linearly to ``a``."""
    acc = zero
    for c, v in a.terms.items():
        acc = acc + f(c) * v
    return acc


def elements_weight(n: int) -> Iterable[AlgElement]:
    for c in compositions(n):
        yield AlgElement.basis(*c)
