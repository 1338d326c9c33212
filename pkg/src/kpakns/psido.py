"""Truncated pseudo-differential operators and the KP evaluation map.

A :class:`PsiDO` stores ``sum_e c_e d^e`` for exponents ``e >= floor``;
everything below ``floor`` is unknown.  Products track the floor
pessimistically, and :func:`residue` refuses to read the ``d^-1``
coefficient unless it is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .errors import InsufficientDepth
from .expr import Realization
from .ncpoly import FREE, DerivationTable, NCPoly, ddt, ddx
from .qshuffle import AlgElement, Composition, as_element


def gbinom(k: int, j: int) -> int:
    """Binomial coefficient k(k-1)...(k-j+1)/j! for any integer k."""
    num, den = 1, 1
    for i in range(j):
        num *= k - i
        den *= i + 1
    return num // den


class PsiDO:
    __slots__ = ("coeffs", "floor", "rules")

    def __init__(self, coeffs: Optional[Dict[int, NCPoly]] = None, floor: Optional[int] = None, rules=FREE):
        self.rules = rules
        self.floor = floor
        self.coeffs = {
            e: c for e, c in (coeffs or {}).items() if c and (floor is None or e >= floor)
        }

    @classmethod
    def d(cls, power: int = 1, rules=FREE) -> "PsiDO":
        return cls({power: NCPoly.one(rules)}, None, rules)

    @classmethod
    def scalar(cls, p: NCPoly) -> "PsiDO":
        return cls({0: p}, None, p.rules)

    def max_order(self) -> Optional[int]:
        if self.coeffs:
            return max(self.coeffs)
        return None if self.floor is None else self.floor - 1

    def coeff(self, e: int) -> NCPoly:
        if self.floor is not None and e < self.floor:
            raise InsufficientDepth(
                f"coefficient of d^{e} requested but operator is exact only down to d^{self.floor}",
                floor=self.floor,
                needed=e,
            )
        return self.coeffs.get(e, NCPoly.zero(self.rules))

    def __add__(self, other: "PsiDO") -> "PsiDO":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return PsiDO(out, _max_floor(self.floor, other.floor), self.rules)

    def __neg__(self) -> "PsiDO":
        return PsiDO({e: -c for e, c in self.coeffs.items()}, self.floor, self.rules)

    def __sub__(self, other: "PsiDO") -> "PsiDO":
        return self + (-other)

    def scale(self, s) -> "PsiDO":
        return PsiDO({e: c.scale(s) for e, c in self.coeffs.items()}, self.floor, self.rules)

    def __mul__(self, other):
        if isinstance(other, PsiDO):
            return psido_mul(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, PsiDO):
            return NotImplemented
        return self.floor == other.floor and self.coeffs == other.coeffs

    def __repr__(self):
        body = " + ".join(f"({c})d^{e}" for e, c in sorted(self.coeffs.items(), reverse=True))
        return f"PsiDO[{body or '0'}; floor={self.floor}]"


def _max_floor(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def product_floor(A: PsiDO, B: PsiDO) -> Optional[int]:
    """Lowest exponent of ``A*B`` unaffected by the unknown tails of A and B."""
    cands = []
    ma, mb = A.max_order(), B.max_order()
    if A.floor is not None and mb is not None:
        cands.append(A.floor + mb)
    if B.floor is not None and ma is not None:
        cands.append(B.floor + ma)
    return max(cands) if cands else None


def psido_mul(A: PsiDO, B: PsiDO, cut: Optional[int] = None) -> PsiDO:
    """Composition via ``d^k a = sum_j binom(k, j) a^(j) d^(k-j)``.

    ``cut`` forces a floor when both factors are exact but the expansion is
    infinite (negative powers acting on non-constant coefficients).
    """
    floor = _max_floor(product_floor(A, B), cut)
    rules = A.rules
    out: Dict[int, NCPoly] = {}
    derivs: Dict[int, list] = {}
    for j, b in B.coeffs.items():
        derivs[j] = [b]
    for i, a in A.coeffs.items():
        for j in B.coeffs:
            s = 0
            chain = derivs[j]
            while True:
                e = i + j - s
                if floor is not None and e < floor:
                    break
                if i >= 0 and s > i:
                    break
                while len(chain) <= s:
                    chain.append(ddx(chain[-1]))
                bs = chain[s]
                if not bs:
                    break
                if floor is None and i < 0 and s >= 1:
                    raise InsufficientDepth("infinite expansion: pass an explicit cut")
                term = (a * bs).scale(gbinom(i, s)) if s else a * bs
                if term:
                    out[e] = out[e] + term if e in out else term
                s += 1
    return PsiDO(out, floor, rules)


def proj_neg(A: PsiDO) -> PsiDO:
    return PsiDO({e: c for e, c in A.coeffs.items() if e < 0}, A.floor, A.rules)


def proj_nonneg(A: PsiDO) -> PsiDO:
    floor = None if A.floor is None or A.floor <= 0 else A.floor
    return PsiDO({e: c for e, c in A.coeffs.items() if e >= 0}, floor, A.rules)


def residue(A: PsiDO) -> NCPoly:
    return A.coeff(-1)


def op_commutator(A: PsiDO, B: PsiDO) -> PsiDO:
    return psido_mul(A, B) - psido_mul(B, A)


# --- Lax operator and flows ----------------------------------------------------


def u(i: int) -> str:
    return f"u{i}"


@dataclass
class LaxContext:
    """``L = d + sum_{n=1}^{K-1} u_{n+1} d^-n`` with its flow tables up to ``t_N``.

    The t1 table is checked against the x-derivative and then replaced by it
    (t1 = x is exact even where the commutator is truncated).
    """

    depth: int = 6
    flows: int = 3
    rules: object = FREE
    L: PsiDO = field(init=False)
    tables: DerivationTable = field(init=False)
    _powers: Dict[int, PsiDO] = field(init=False, default_factory=dict, repr=False)
    _ell: Dict[Composition, PsiDO] = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        K = self.depth
        if K < 2:
            raise ValueError("depth must be at least 2")
        coeffs = {1: NCPoly.one(self.rules)}
        for n in range(1, K):
            coeffs[-n] = NCPoly.symbol(u(n + 1), rules=self.rules)
        self.L = PsiDO(coeffs, 1 - K, self.rules)
        self._powers[1] = self.L
        self.tables = build_lax_tables(self, self.flows)

    @property
    def alphabet(self):
        return [u(i) for i in range(2, self.depth + 1)]

    def power(self, n: int) -> PsiDO:
        if n not in self._powers:
            self._powers[n] = psido_mul(self.power(n - 1), self.L)
        return self._powers[n]

    def flow_operator(self, n: int) -> PsiDO:
        """``-[(L^n)_<0, L]``."""
        return -op_commutator(proj_neg(self.power(n)), self.L)

    def with_table_entry(self, n: int, name: str, value: NCPoly) -> "LaxContext":
        """Copy with one flow-table entry overwritten (mutation testing)."""
        clone = object.__new__(LaxContext)
        clone.__dict__.update(self.__dict__)
        clone._ell = self._ell
        clone.tables = self.tables.replace(n, name, value)
        return clone


class LaxTableError(AssertionError):
    pass


def build_lax_tables(ctx: LaxContext, N: int) -> DerivationTable:
    """Flow tables ``u_{m+1} -> coefficient of d^-m in -[(L^n)_<0, L]``.

    Only exponents at or above the commutator's floor are recorded.  The
    ``d^0`` coefficient must vanish (the flow preserves the form of L), and
    the t1 flow must coincide with d/dx wherever it is exact.
    """
    flows: Dict[int, Dict[str, NCPoly]] = {}
    K = ctx.depth
    for n in range(1, N + 1):
        C = ctx.flow_operator(n)
        for e in C.coeffs:
            if e >= 0:
                raise LaxTableError(f"flow t{n} produced a d^{e} term")
        entries = {}
        for m in range(1, K):
            if C.floor is not None and -m < C.floor:
                break
            entries[u(m + 1)] = C.coeff(-m)
        flows[n] = entries
    for name, value in flows.get(1, {}).items():
        if value != ddx(NCPoly.symbol(name, rules=ctx.rules)):
            raise LaxTableError(f"t1 flow differs from d/dx on {name}")
    if 1 in flows:
        flows[1] = {name: ddx(NCPoly.symbol(name, rules=ctx.rules)) for name in ctx.alphabet}
    return DerivationTable(flows)


def ell_kp(w, ctx: LaxContext) -> PsiDO:
    """The map A(P) -> PsiDO, by recursion on the last letter of each word."""
    if isinstance(w, AlgElement):
        acc = None
        for c, v in w.terms.items():
            term = ell_kp(c, ctx).scale(v)
            acc = term if acc is None else acc + term
        return acc if acc is not None else PsiDO({}, None, ctx.rules)
    w = tuple(w)
    hit = ctx._ell.get(w)
    if hit is not None:
        return hit
    if w == (1,):
        out = ctx.L
    elif w[-1] == 1:
        out = -psido_mul(proj_neg(ell_kp(w[:-1], ctx)), ctx.L)
    else:
        out = psido_mul(ell_kp(w[:-1] + (w[-1] - 1,), ctx), ctx.L)
    ctx._ell[w] = out
    return out


def phi_kp(a, ctx: LaxContext) -> NCPoly:
    """Residue of the ell-image, extended linearly."""
    a = as_element(a)
    acc = NCPoly.zero(ctx.rules)
    for c, v in a.terms.items():
        acc = acc + residue(ell_kp(c, ctx)).scale(v)
    return acc


def dt(p: NCPoly, n: int, ctx: LaxContext) -> NCPoly:
    """t_n-derivative through the Lax tables (t1 is d/dx)."""
    if n == 1:
        return ddx(p)
    return ddt(p, n, ctx.tables)


# --- verifications -------------------------------------------------------------


def with_retry(check, depth: int, flows: int = 3, rules=FREE, max_depth: Optional[int] = None, cache=None):
    """Run ``check(ctx)`` at ``depth``, deepening on InsufficientDepth.

    Tries ``depth, depth + 1, ...`` up to ``max_depth`` (default ``depth + 2``)
    and returns ``(result, depth_used)``; the last failure propagates.
    ``cache`` may be a dict reused across calls to share contexts.
    """
    max_depth = depth + 2 if max_depth is None else max_depth
    cache = {} if cache is None else cache
    K = depth
    while True:
        key = (K, flows, rules)
        if key not in cache:
            cache[key] = LaxContext(K, flows, rules)
        try:
            return check(cache[key]), K
        except InsufficientDepth:
            if K >= max_depth:
                raise
            K += 1


def needed_depth(*weights: int) -> int:
    """Smallest K at which residues of words of these total weight are exact."""
    return sum(weights) + 1


def verify_hom_property(a, b, ctx: LaxContext) -> bool:
    """``Phi(a x b) = Phi(a) Phi(b)``."""
    from .qshuffle import hat_times

    return phi_kp(hat_times(a, b), ctx) == phi_kp(a, ctx) * phi_kp(b, ctx)


def verify_flow_property(w, n: int, ctx: LaxContext) -> bool:
    """``Phi(P^n o w) = d/dt_n Phi(w)``."""
    from .qshuffle import P, qshuffle

    return phi_kp(qshuffle(P(n), as_element(w)), ctx) == dt(phi_kp(w, ctx), n, ctx)


class KPRealization(Realization):
    """phi_{t_n} -> Phi_KP(P^n), derivatives through the Lax tables."""

    def __init__(self, ctx: LaxContext, order: str = "t-first"):
        self.ctx = ctx
        self.order = order

    def phi(self, n):
        return phi_kp((n,), self.ctx)

    def dx(self, value):
        return ddx(value)

    def dt(self, value, n):
        return dt(value, n, self.ctx)

    def one(self):
        return NCPoly.one(self.ctx.rules)

    def zero(self):
        return NCPoly.zero(self.ctx.rules)


@dataclass
class KPIdentityReport:
    algebra_difference: AlgElement
    jet_difference: NCPoly
    residual: NCPoly
    term_mismatches: list
    depth: int

    @property
    def passed(self) -> bool:
        return not self.residual and not self.jet_difference and not self.term_mismatches


def verify_kp_identity(ctx: Optional[LaxContext] = None, depth: int = 6) -> KPIdentityReport:
    """The KP identity against the potential KP equation.

    Three checks: both sides agree in A(P); the formal phi-jet image of
    LHS - RHS is literally the potential KP expression; and that expression
    realized through Phi_KP and the Lax tables is zero.  Each identity term
    is also compared with the direct residue of its A(P) value.
    """
    from .expr import evaluate, kp_identity_nodes, phi_image, potential_kp

    ctx = ctx or LaxContext(depth, 3)
    lhs, rhs = kp_identity_nodes()
    alg = evaluate(lhs) - evaluate(rhs)
    jets = phi_image(lhs) - phi_image(rhs)
    pkp = potential_kp()
    real = KPRealization(ctx)
    residual = real.realize(pkp)
    mismatches = []
    for side in (lhs, rhs):
        for sign, term in side.terms:
            direct = phi_kp(evaluate(term), ctx)
            via_jets = real.realize(phi_image(term))
            if direct != via_jets:
                mismatches.append(term)
    return KPIdentityReport(alg, jets - pkp, residual, mismatches, ctx.depth)
