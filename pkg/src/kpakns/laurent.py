"""Truncated Laurent series in lambda and the AKNS evaluation maps.

Coefficients are either noncommutative polynomials (abstract mode: ``J`` and
``v1, v2, ...`` are free letters) or :class:`~kpakns.matrix.Matrix` values
(explicit reductions).  A series is exact at exponents ``>= floor``.
"""

from __future__ import annotations

from typing import Callable, Dict, Optional

from .errors import InsufficientDepth, VerificationError
from .expr import Realization
from .ncpoly import (
    FREE,
    DerivationTable,
    MissingTableEntry,
    NCPoly,
    commutator,
    ddt,
    ddt_formal,
    ddx,
)
from .qshuffle import AlgElement, Composition, as_element


def _max_floor(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class LaurentSeries:
    __slots__ = ("coeffs", "floor", "zero")

    def __init__(self, coeffs: Dict[int, object], floor: Optional[int], zero):
        self.zero = zero
        self.floor = floor
        self.coeffs = {e: c for e, c in coeffs.items() if c and (floor is None or e >= floor)}

    def max_exp(self) -> Optional[int]:
        if self.coeffs:
            return max(self.coeffs)
        return None if self.floor is None else self.floor - 1

    def coeff(self, e: int):
        if self.floor is not None and e < self.floor:
            raise InsufficientDepth(
                f"coefficient of lambda^{e} requested but series is exact only down to lambda^{self.floor}",
                floor=self.floor,
                needed=e,
            )
        return self.coeffs.get(e, self.zero)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by lambda^k."""
        floor = None if self.floor is None else self.floor + k
        return LaurentSeries({e + k: c for e, c in self.coeffs.items()}, floor, self.zero)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return LaurentSeries(out, _max_floor(self.floor, other.floor), self.zero)

    def __neg__(self):
        return LaurentSeries({e: -c for e, c in self.coeffs.items()}, self.floor, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "LaurentSeries":
        return LaurentSeries({e: c * s for e, c in self.coeffs.items()}, self.floor, self.zero)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return laurent_mul(self, other)
        return self.scale(other)

    def map(self, f: Callable) -> "LaurentSeries":
        return LaurentSeries({e: f(c) for e, c in self.coeffs.items()}, self.floor, self.zero)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.floor == other.floor and self.coeffs == other.coeffs

    def __repr__(self):
        body = " + ".join(f"l^{e}({c})" for e, c in sorted(self.coeffs.items(), reverse=True))
        return f"LaurentSeries[{body or '0'}; floor={self.floor}]"


def product_floor(A: LaurentSeries, B: LaurentSeries) -> Optional[int]:
    cands = []
    ma, mb = A.max_exp(), B.max_exp()
    if A.floor is not None and mb is not None:
        cands.append(A.floor + mb)
    if B.floor is not None and ma is not None:
        cands.append(B.floor + ma)
    return max(cands) if cands else None


def laurent_mul(A: LaurentSeries, B: LaurentSeries) -> LaurentSeries:
    floor = product_floor(A, B)
    out: Dict[int, object] = {}
    for i, a in A.coeffs.items():
        for j, b in B.coeffs.items():
            e = i + j
            if floor is not None and e < floor:
                continue
            t = a * b
            if t:
                out[e] = out[e] + t if e in out else t
    return LaurentSeries(out, floor, A.zero)


def proj_geq0(X: LaurentSeries) -> LaurentSeries:
    floor = None if X.floor is None or X.floor <= 0 else X.floor
    return LaurentSeries({e: c for e, c in X.coeffs.items() if e >= 0}, floor, X.zero)


def proj_lt0(X: LaurentSeries) -> LaurentSeries:
    return LaurentSeries({e: c for e, c in X.coeffs.items() if e < 0}, X.floor, X.zero)


def series_commutator(A: LaurentSeries, B: LaurentSeries) -> LaurentSeries:
    return laurent_mul(A, B) - laurent_mul(B, A)


# --- contexts ---------------------------------------------------------------------


class AknsContext:
    """The series ``V = J + l^-1 v1 + l^-2 v2 + ...`` with derivative rules.

    ``dx(value)`` and ``dt(value, n)`` differentiate coefficient-ring values
    (t1 is x).  ``depth`` is the highest retained ``v_m``.
    """

    def __init__(self, V: LaurentSeries, J, dx: Callable, dt: Callable, depth: int, mode: str, one=None):
        self.V = V
        self.J = J
        self.lamV = V.shift(1)
        self._dx = dx
        self._dt = dt
        self.depth = depth
        self.mode = mode
        self.one = one
        self._ell: Dict[Composition, LaurentSeries] = {}
        self._r: Dict[Composition, LaurentSeries] = {}
        self._powers: Dict[int, LaurentSeries] = {1: self.lamV}
        self.tables: Optional[DerivationTable] = None

    @property
    def zero(self):
        return self.V.zero

    def dx(self, value):
        try:
            return self._dx(value)
        except MissingTableEntry as exc:
            raise InsufficientDepth(str(exc)) from exc

    def dt(self, value, n: int):
        if n == 1:
            return self.dx(value)
        try:
            return self._dt(value, n)
        except MissingTableEntry as exc:
            raise InsufficientDepth(str(exc)) from exc

    def lam_power(self, n: int) -> LaurentSeries:
        """``(lambda V)^n``."""
        if n not in self._powers:
            self._powers[n] = laurent_mul(self.lam_power(n - 1), self.lamV)
        return self._powers[n]

    def flow(self, n: int) -> LaurentSeries:
        """``[(l^n V^n)_{>=0}, V]``."""
        return series_commutator(proj_geq0(self.lam_power(n)), self.V)

    def flow_negative_form(self, n: int) -> LaurentSeries:
        """``-[(l^n V^n)_{<0}, V]``."""
        return -series_commutator(proj_lt0(self.lam_power(n)), self.V)


def v(m: int) -> str:
    return f"v{m}"


def abstract_context(depth: int = 8, flows: int = 3, rules=FREE) -> AknsContext:
    """Abstract mode: ``J, v1..v_depth`` free letters, derivatives from the flows."""
    J = NCPoly.symbol("J", rules=rules)
    coeffs = {0: J}
    for m in range(1, depth + 1):
        coeffs[-m] = NCPoly.symbol(v(m), rules=rules)
    V = LaurentSeries(coeffs, -depth, NCPoly.zero(rules))
    holder = {}

    def dx(p):
        return ddx(p, holder["table"].x_table)

    def dt(p, n):
        return ddt(p, n, holder["table"])

    ctx = AknsContext(V, J, dx, dt, depth, "abstract", NCPoly.one(rules))
    table = build_akns_tables(ctx, flows)
    x_table = dict(table.flows[1])
    for m in range(1, depth + 1):
        x_table.setdefault(v(m), None)
    ctx.tables = DerivationTable(table.flows, x_table)
    holder["table"] = ctx.tables
    return ctx


class AknsTableError(VerificationError):
    pass


def build_akns_tables(ctx: AknsContext, N: int) -> DerivationTable:
    """``v_m -> lambda^-m coefficient of [(l^n V^n)_{>=0}, V]`` where exact.

    Checks that the two commutator forms agree on retained exponents and that
    nothing is produced at ``lambda^0`` or above (``J`` is invariant).
    """
    flows = {}
    for n in range(1, N + 1):
        C = ctx.flow(n)
        C2 = ctx.flow_negative_form(n)
        floor = _max_floor(C.floor, C2.floor)
        for e in set(C.coeffs) | set(C2.coeffs):
            if floor is not None and e < floor:
                continue
            if C.coeff(e) != C2.coeff(e):
                raise AknsTableError(f"flow t{n}: commutator forms differ at lambda^{e}")
        for e in C.coeffs:
            if e >= 0:
                raise AknsTableError(f"flow t{n} moves J (lambda^{e} term)")
        entries = {}
        for m in range(1, ctx.depth + 1):
            if floor is not None and -m < floor:
                break
            entries[v(m)] = C.coeff(-m)
        flows[n] = entries
    return DerivationTable(flows)


# --- the maps ell, r and Phi -----------------------------------------------------------


def ell_akns(w, ctx: AknsContext) -> LaurentSeries:
    """Last-letter recursion: ell(a < P) = -ell(a)_<0 lV, ell(a . P) = ell(a) lV."""
    if isinstance(w, AlgElement):
        return _linear(w, ctx, ell_akns)
    w = tuple(w)
    hit = ctx._ell.get(w)
    if hit is not None:
        return hit
    if w == (1,):
        out = ctx.lamV
    elif w[-1] == 1:
        out = -laurent_mul(proj_lt0(ell_akns(w[:-1], ctx)), ctx.lamV)
    else:
        out = laurent_mul(ell_akns(w[:-1] + (w[-1] - 1,), ctx), ctx.lamV)
    ctx._ell[w] = out
    return out


def r_akns(w, ctx: AknsContext) -> LaurentSeries:
    """First-letter recursion: r(P < a) = -lV r(a)_>=0, r(P . a) = lV r(a)."""
    if isinstance(w, AlgElement):
        return _linear(w, ctx, r_akns)
    w = tuple(w)
    hit = ctx._r.get(w)
    if hit is not None:
        return hit
    if w == (1,):
        out = ctx.lamV
    elif w[0] == 1:
        out = -laurent_mul(ctx.lamV, proj_geq0(r_akns(w[1:], ctx)))
    else:
        out = laurent_mul(ctx.lamV, r_akns((w[0] - 1,) + w[1:], ctx))
    ctx._r[w] = out
    return out


def _linear(a: AlgElement, ctx, f) -> LaurentSeries:
    acc = LaurentSeries({}, None, ctx.zero)
    for c, val in a.terms.items():
        acc = acc + f(c, ctx).scale(val)
    return acc


class LRMismatch(VerificationError):
    pass


def phi_akns(a, ctx: AknsContext, cross_check: bool = True):
    """``ell(a)_{-1} J``; with ``cross_check`` the r-route must give the same."""
    a = as_element(a)
    acc = ctx.zero
    for c, val in a.terms.items():
        left = ell_akns(c, ctx).coeff(-1) * ctx.J
        if cross_check:
            right = r_akns(c, ctx).coeff(-1) * ctx.J
            if left != right:
                raise LRMismatch(f"ell and r evaluations of {c} disagree")
        acc = acc + left * val
    return acc


def verify_akns_hom(a, b, ctx: AknsContext) -> bool:
    from .qshuffle import hat_times

    return phi_akns(hat_times(a, b), ctx) == phi_akns(a, ctx) * phi_akns(b, ctx)


def verify_akns_flow(w, n: int, ctx: AknsContext) -> bool:
    from .qshuffle import P, qshuffle

    return phi_akns(qshuffle(P(n), as_element(w)), ctx) == ctx.dt(phi_akns(w, ctx), n)


def verify_flow_symmetry(n: int, k: int, ctx: AknsContext) -> bool:
    """``(Phi(P^n))_{t_k} = (Phi(P^k))_{t_n}``."""
    return ctx.dt(phi_akns((n,), ctx), k) == ctx.dt(phi_akns((k,), ctx), n)


# --- realizations of phi-jets ------------------------------------------------------------


class AknsRealization(Realization):
    """phi_{t_n} -> Phi_AKNS(P^n) with derivatives resolved through ``ctx``."""

    def __init__(self, ctx: AknsContext, order: str = "x-first"):
        self.ctx = ctx
        self.order = order

    def phi(self, n):
        return phi_akns((n,), self.ctx)

    def dx(self, value):
        return self.ctx.dx(value)

    def dt(self, value, n):
        return self.ctx.dt(value, n)

    def one(self):
        return self.ctx.one

    def zero(self):
        return self.ctx.zero


class FormalAknsRealization(AknsRealization):
    """Same images but x- and t-derivatives stay formal on the v letters."""

    def dx(self, value):
        return ddx(value)

    def dt(self, value, n):
        return ddx(value) if n == 1 else ddt_formal(value, n)


def displayed_phi(n: int, rules=FREE) -> NCPoly:
    """Closed forms of Phi_AKNS(P^n), n = 1, 2, 3, in the letters J, v_m.

    ``{a, b, ...}`` is the sum over all orderings of the arguments.
    """
    from fractions import Fraction

    from .ncpoly import parse, symmetrize

    J, v1, v2, v3, v4 = (parse(s, rules) for s in ("J", "v1", "v2", "v3", "v4"))
    half = Fraction(1, 2)
    if n == 1:
        inner = v2
    elif n == 2:
        inner = symmetrize([J, v3]) + symmetrize([v1, v2])
    elif n == 3:
        inner = (
            symmetrize([J, J, v4]).scale(half)
            + symmetrize([J, v1, v3])
            + symmetrize([J, v2, v2]).scale(half)
            + symmetrize([v1, v1, v2]).scale(half)
        )
    else:
        raise ValueError("closed forms are available for n = 1, 2, 3")
    return inner * J


def displayed_kp_identity_image(rules=FREE) -> NCPoly:
    """The AKNS image of the KP identity written out in v-letters.

    ``(4 v2_t3 - v2_xxx - 3 S_t2 - 6 (v2 J v2)_x) J + 6 [v2 J, S J]`` with
    ``S = {J, v3} + {v1, v2}``.
    """
    from .ncpoly import parse

    S = parse("{J,v3} + {v1,v2}", rules)
    J = parse("J", rules)
    v2 = parse("v2", rules)
    inner = (
        parse("4*v2_t3 - v2_xxx", rules)
        - ddt_formal(S, 2).scale(3)
        - ddx(v2 * J * v2).scale(6)
    )
    return inner * J + commutator(v2 * J, S * J).scale(6)


def akns_image_of_kp_identity(ctx: Optional[AknsContext] = None, depth: int = 6):
    """Phi_AKNS of (LHS - RHS) of the KP identity, via flow and product rules.

    Without ``ctx`` (or with an abstract context but formal derivatives) the
    result keeps t-derivatives unresolved; with ``ctx`` they are resolved
    through its tables.
    """
    from .expr import kp_identity_nodes, phi_image

    lhs, rhs = kp_identity_nodes()
    jets = phi_image(lhs) - phi_image(rhs)
    if ctx is None:
        base = abstract_context(depth, 1)
        return FormalAknsRealization(base).realize(jets)
    return AknsRealization(ctx).realize(jets)
