"""Tau functions and Darboux-transformed second difference operators.

The discrete Laplacian  L0 = shift - 2 Id + shift^{-1}  admits lower-upper
factorizations at both ends of its spectrum; iterating them R times at one
end and S times at the other produces a tridiagonal operator whose
coefficients are rational functions of the site n, all encoded by a single
polynomial tau(n).  tau is a discrete Wronskian of Schur-like components
phi_j, psi_j; each psi column carries a factor (-1)^n c (c a constant
exponential in the parameters) which is pulled out of the determinant
column by column and cancels against the normalization, leaving a clean
polynomial.

The first Darboux parameter r_1 is kept as a formal variable through the
Wronskian so that the operator's diagonal (which involves a derivative in
r_1 of log tau) is computed symbolically and only then specialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactcore import (
    LaurentPoly,
    Poly,
    PolyFraction,
    RationalFunc,
    ZeroDenominator,
    rat,
)

N = "n"
R1 = "r1"

#: default half-width of the tau regularity window
REG_WINDOW = 512


class SingularTau(ArithmeticError):
    """tau vanishes at an integer site; the parameters are inadmissible there."""

    def __init__(self, site: int, message: str = ""):
        self.site = site
        super().__init__(message or f"tau vanishes at n = {site}")


@dataclass(frozen=True)
class ParamVector:
    """Darboux data: R steps at spectrum end 0, S steps at end -4, and the
    finitely many nonzero parameters r_1..r_M (all higher r_i are zero)."""

    R: int
    S: int
    r: tuple[Fraction, ...]

    def __init__(self, R: int, S: int, r=()):
        if R < 0 or S < 0:
            raise ValueError("R and S must be nonnegative")
        rs = [rat(v) for v in r]
        m = max(1, 2 * (R + S), len(rs))
        rs.extend([Fraction(0)] * (m - len(rs)))
        object.__setattr__(self, "R", int(R))
        object.__setattr__(self, "S", int(S))
        object.__setattr__(self, "r", tuple(rs))

    @classmethod
    def from_alpha_beta(cls, R: int, S: int, alpha, beta) -> "ParamVector":
        """Convenience reparametrization: r_1 = alpha, r_2 = -beta/4.

        beta is the combination sum_{i>=2} (-2)^{i-1} i r_i, reached with
        minimal support through r_2 alone.
        """
        return cls(R, S, (rat(alpha), -rat(beta) / 4))

    @property
    def M(self) -> int:
        return len(self.r)

    @property
    def order(self) -> int:
        return self.R + self.S

    def is_validated(self, window: int = REG_WINDOW) -> bool:
        return _VALIDATED.get(self) is not None and _VALIDATED[self] >= window

    def r_strings(self) -> list[str]:
        return [str(v) for v in self.r]


_VALIDATED: dict[ParamVector, int] = {}


@dataclass(frozen=True)
class QuasiPolynomial:
    """Polynomial in n (coefficients polynomial in the formal r_1) times an
    optional character factor (-1)^n c, with c = exp(sum (-2)^i r_i) carried
    formally and never evaluated.  The factor is present iff `char` is set."""

    poly: Poly
    char: bool = False

    def __add__(self, other: "QuasiPolynomial") -> "QuasiPolynomial":
        if self.char != other.char:
            raise ValueError("cannot add quasipolynomials with different characters")
        return QuasiPolynomial(self.poly + other.poly, self.char)

    def __mul__(self, other):
        if isinstance(other, QuasiPolynomial):
            if self.char and other.char:
                raise ValueError("product would carry c^2; outside this type")
            return QuasiPolynomial(self.poly * other.poly, self.char or other.char)
        return QuasiPolynomial(self.poly * other, self.char)

    __rmul__ = __mul__


def _r1_const(c) -> Poly:
    return Poly.const(R1, c)


def _binomial_poly(k: int) -> Poly:
    """C(n, k) as a polynomial in n: n(n-1)...(n-k+1)/k!."""
    out = Poly.const(N, 1)
    for i in range(k):
        out = out * Poly(N, [-i, 1])
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    return out.scale(Fraction(1, fact))


def _exp_series_coeffs(gs: list, count: int) -> list:
    """Coefficients of exp(sum_a g_a z^a) up to z^{count-1}.

    gs[a] is the coefficient of z^a (gs[0] ignored); entries may be rational
    or polynomial in r_1.  Uses E_l = (1/l) sum a g_a E_{l-a}.
    """
    E = [_r1_const(1)]
    for l in range(1, count):
        acc = Poly(R1)
        for a in range(1, min(l, len(gs) - 1) + 1):
            g = gs[a]
            if g:
                acc = acc + (a * g) * E[l - a]
        E.append(acc.scale(Fraction(1, l)) if isinstance(acc, Poly) else Fraction(acc, l))
    return E


def schur_component(epsilon: int, j: int, params: ParamVector) -> QuasiPolynomial:
    """Taylor coefficient S^eps_j(n; r): (1/j!) d^j/dz^j of
    (1+z)^n exp(sum r_i z^i) at z = eps - 1.

    r_1 stays a formal variable; r_2..r_M enter numerically.  For eps = -1
    the character flag is set and the returned polynomial is the part left
    after extracting (-1)^n c.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if j < 0:
        raise ValueError("j must be nonnegative")
    M = params.M
    if epsilon == 1:
        # expansion variable is z itself
        gs: list = [None] + [Poly(R1, [0, 1]) if i == 1 else _r1_const(params.r[i - 1])
                             for i in range(1, M + 1)]
        sign = 1
    else:
        # expand around z = -2 in s = z + 2:
        # (1+z)^n = (-1)^n (1-s)^n,  exp part contributes c * exp(g(s))
        gs = [None]
        for a in range(1, M + 1):
            acc = Poly(R1)
            for i in range(a, M + 1):
                binom = 1
                for l in range(a):
                    binom = binom * (i - l) // (l + 1)
                coef = Fraction(binom) * Fraction(-2) ** (i - a)
                term = Poly(R1, [0, coef]) if i == 1 else _r1_const(coef * params.r[i - 1])
                acc = acc + term
            gs.append(acc)
        sign = -1
    E = _exp_series_coeffs(gs, j + 1)
    total = Poly(N)
    for k in range(j + 1):
        c = E[j - k]
        if not c:
            continue
        coeff = c if sign == 1 else c.scale(Fraction((-1) ** k)) if isinstance(c, Poly) else Fraction((-1) ** k) * c
        total = total + _binomial_poly(k).scale(coeff)
    return QuasiPolynomial(poly=total, char=(epsilon == -1))


def _phi(j: int, params: ParamVector) -> Poly:
    """phi_j(n; r) = S^1_{2j-1}(n + j - 1; r), polynomial in n over r_1-polys."""
    return schur_component(1, 2 * j - 1, params).poly.shift(j - 1)


def _psi_reduced(j: int, params: ParamVector) -> Poly:
    """Polynomial part of psi_j(n; r) = S^{-1}_{2j-1}(n + j - 1; r)."""
    return schur_component(-1, 2 * j - 1, params).poly.shift(j - 1)


def _delta(p: Poly) -> Poly:
    return p.shift(1) - p


def _delta_tilde(p: Poly) -> Poly:
    # forward difference acting through a (-1)^n factor
    return -(p.shift(1) + p)


def _delta_star(p: Poly) -> Poly:
    return p.shift(-1) - p


def _delta_tilde_star(p: Poly) -> Poly:
    return -(p.shift(-1) + p)


def exact_det(rows: list) -> object:
    """Determinant over any commutative ring, by memoized Laplace expansion."""
    size = len(rows)
    if size == 0:
        return Fraction(1)
    memo: dict = {}

    def rec(cols: tuple) -> object:
        if not cols:
            return Fraction(1)
        if cols in memo:
            return memo[cols]
        r = size - len(cols)
        total = None
        for idx, c in enumerate(cols):
            e = rows[r][c]
            if not e:
                continue
            sub = rec(cols[:idx] + cols[idx + 1:])
            term = e * sub
            if idx % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = Fraction(0)
        memo[cols] = total
        return total

    return rec(tuple(range(size)))


def _column_chains(params: ParamVector, depth: int, starred: bool) -> list[list[Poly]]:
    """Iterated differences of the Wronskian columns, to the given depth.

    Column order: phi_1..phi_R then the reduced psi_1..psi_S.  Starred
    chains shift every function by R+S sites and use the adjoint difference.
    """
    K = params.order
    cols = []
    for j in range(1, params.R + 1):
        cols.append(("phi", _phi(j, params)))
    for j in range(1, params.S + 1):
        cols.append(("psi", _psi_reduced(j, params)))
    chains = []
    for kind, p in cols:
        if starred:
            p = p.shift(K)
            step = _delta_star if kind == "phi" else _delta_tilde_star
        else:
            step = _delta if kind == "phi" else _delta_tilde
        chain = [p]
        for _ in range(depth):
            chain.append(step(chain[-1]))
        chains.append(chain)
    return chains


def _sub_r1(p: Poly, value: Fraction) -> Poly:
    return p.map_coeffs(lambda c: c.subs(value) if isinstance(c, Poly) else c)


def _d_r1(p: Poly) -> Poly:
    return p.map_coeffs(lambda c: c.derivative() if isinstance(c, Poly) else Fraction(0))


@dataclass(frozen=True)
class TauFunction:
    """The Wronskian tau, pure polynomial in n after character cancellation.

    `poly2` keeps r_1 formal (coefficients are polynomials in r_1); `polyn`
    and `dpolyn` are tau and its r_1-derivative with r_1 specialized.
    """

    params: ParamVector
    poly2: Poly
    polyn: Poly
    dpolyn: Poly

    @property
    def degree(self) -> int:
        return self.polyn.degree

    def value(self, n: int) -> Fraction:
        return Fraction(self.polyn.subs(Fraction(n)))

    def ratio(self, a: int, b: int) -> Fraction:
        """tau(a)/tau(b); raises SingularTau at a vanishing denominator."""
        vb = self.value(b)
        if vb == 0:
            raise SingularTau(b)
        return self.value(a) / vb


@lru_cache(maxsize=None)
def tau_build(params: ParamVector) -> TauFunction:
    """Discrete Wronskian of (phi_1..phi_R, psi_1..psi_S), normalized.

    Each psi column's (-1)^n c factor is extracted before taking the
    determinant; the normalization (-1)^{nS} exp(-S sum (-2)^i r_i) cancels
    it exactly, so the result is a genuine polynomial in n.
    """
    K = params.order
    chains = _column_chains(params, K - 1 if K else 0, starred=False)
    rows = [[chains[c][i] for c in range(K)] for i in range(K)]
    det = exact_det(rows) if K else _r1_const(1)
    if not isinstance(det, Poly) or det.var != N:
        det = Poly.const(N, det)
    r1 = params.r[0]
    return TauFunction(
        params=params,
        poly2=det,
        polyn=_sub_r1(det, r1),
        dpolyn=_sub_r1(_d_r1(det), r1),
    )


def ensure_regular(params: ParamVector, window: int = REG_WINDOW) -> TauFunction:
    """Validate tau(n) != 0 for every integer |n| <= window.

    The admissible parameter region has no closed description; this window
    check is the pragmatic substitute.  Successful validation is recorded on
    the parameter vector.
    """
    tau = tau_build(params)
    if params.is_validated(window):
        return tau
    if tau.polyn.is_zero():
        raise SingularTau(0, "tau is identically zero")
    for n in range(-window, window + 1):
        if tau.value(n) == 0:
            raise SingularTau(n)
    _VALIDATED[params] = max(window, _VALIDATED.get(params, 0))
    return tau


class BandOperator:
    """Finite band difference operator sum_j b_j(n) Lambda^j.

    Coefficients are exact rational functions of the site n; application to
    a sequence f follows (X f)(n) = sum_j b_j(n) f(n + j).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        clean = {}
        for j, c in coeffs.items():
            if isinstance(c, (int, Fraction)):
                c = PolyFraction.const(N, c)
            elif isinstance(c, Poly):
                c = PolyFraction(c)
            if not c.is_zero():
                clean[int(j)] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("BandOperator is immutable")

    @classmethod
    def identity(cls) -> "BandOperator":
        return cls({0: 1})

    @classmethod
    def shift(cls, j: int = 1, coeff=1) -> "BandOperator":
        return cls({j: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def support(self) -> tuple[int, int]:
        if not self.coeffs:
            raise ValueError("zero operator has empty support")
        return min(self.coeffs), max(self.coeffs)

    def coeff(self, j: int) -> PolyFraction:
        return self.coeffs.get(j, PolyFraction.const(N, 0))

    def __eq__(self, other):
        if not isinstance(other, BandOperator):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(j) == other.coeff(j) for j in keys)

    def __add__(self, other: "BandOperator") -> "BandOperator":
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, PolyFraction.const(N, 0)) + c
        return BandOperator(out)

    def __neg__(self) -> "BandOperator":
        return BandOperator({j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other: "BandOperator") -> "BandOperator":
        return self + (-other)

    def __mul__(self, other):
        """Operator composition, or scalar scaling."""
        if isinstance(other, (int, Fraction, Poly, PolyFraction)):
            return BandOperator({j: c * other for j, c in self.coeffs.items()})
        if not isinstance(other, BandOperator):
            return NotImplemented
        out: dict = {}
        for j, b in self.coeffs.items():
            for k, c in other.coeffs.items():
                term = b * c.shift(j)
                key = j + k
                out[key] = out.get(key, PolyFraction.const(N, 0)) + term
        return BandOperator(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly, PolyFraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, k: int) -> "BandOperator":
        if k < 0:
            raise ValueError("negative operator power")
        out = BandOperator.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def adjoint(self) -> "BandOperator":
        """Formal adjoint: sum_j b_j(n) Lambda^j -> sum_j b_j(n-j) Lambda^{-j}."""
        return BandOperator({-j: c.shift(-j) for j, c in self.coeffs.items()})

    def coeff_at(self, j: int, n: int) -> Fraction:
        """b_j evaluated at the integer site n."""
        c = self.coeffs.get(j)
        if c is None:
            return Fraction(0)
        try:
            return c.subs(Fraction(n))
        except ZeroDenominator as exc:
            raise SingularTau(n, f"operator coefficient has a pole at n = {n}") from exc

    def symbol_at(self, n: int, var: str = "x") -> LaurentPoly:
        """The Laurent polynomial sum_j b_j(n) x^j at a fixed site."""
        return LaurentPoly(var, {j: self.coeff_at(j, n) for j in self.coeffs})

    def to_json(self) -> dict:
        m1, m2 = self.support
        return {
            "support": [m1, m2],
            "coeffs": [
                {
                    "shift": j,
                    "num": self.coeffs[j].num.to_strings(),
                    "den": self.coeffs[j].den.to_strings(),
                }
                for j in sorted(self.coeffs)
            ],
        }

    def __repr__(self):
        if not self.coeffs:
            return "BandOperator(0)"
        parts = [f"L^{j}: {c!r}" for j, c in sorted(self.coeffs.items())]
        return "BandOperator(" + "; ".join(parts) + ")"


def free_operator() -> BandOperator:
    """The plain second difference operator Lambda - 2 Id + Lambda^{-1}."""
    return BandOperator({1: 1, 0: -2, -1: 1})


@lru_cache(maxsize=None)
def operator_build(params: ParamVector, window: int = REG_WINDOW) -> BandOperator:
    """The tridiagonal operator carried by tau:

    Lambda + (-2 + d/dr1 log(tau(n+1)/tau(n))) Id
           + (tau(n-1) tau(n+1) / tau(n)^2) Lambda^{-1}.

    The r_1 derivative is taken on the formal tau and specialized afterwards.
    """
    tau = ensure_regular(params, window)
    t0, d0 = tau.polyn, tau.dpolyn
    t_plus, d_plus = t0.shift(1), d0.shift(1)
    t_minus = t0.shift(-1)
    diag = PolyFraction.const(N, -2) \
        + PolyFraction(d_plus, t_plus) - PolyFraction(d0, t0)
    sub = PolyFraction(t_minus * t_plus, t0 * t0)
    return BandOperator({1: 1, 0: diag, -1: sub})


@lru_cache(maxsize=None)
def _q_delta_coeffs(params: ParamVector) -> tuple[PolyFraction, ...]:
    """Coefficients c_i(n) of Q = sum_i c_i(n) Delta^i from the Wronskian ratio."""
    K = params.order
    if K == 0:
        return (PolyFraction.const(N, 1),)
    r1 = params.r[0]
    chains = _column_chains(params, K, starred=False)
    num_chains = [[_sub_r1(p, r1) for p in chain] for chain in chains]
    den = exact_det([[num_chains[c][i] for c in range(K)] for i in range(K)])
    out = []
    for i in range(K + 1):
        rows = [r for r in range(K + 1) if r != i]
        minor = exact_det([[num_chains[c][r] for c in range(K)] for r in rows])
        sign = (-1) ** (i + K)
        out.append(PolyFraction(sign * _as_n_poly(minor), _as_n_poly(den)))
    return tuple(out)


@lru_cache(maxsize=None)
def _pstar_delta_coeffs(params: ParamVector) -> tuple[PolyFraction, ...]:
    """Coefficients d_i(n) of P* = sum_i d_i(n) (Delta*)^i, from the starred ratio."""
    K = params.order
    if K == 0:
        return (PolyFraction.const(N, 1),)
    r1 = params.r[0]
    chains = _column_chains(params, K, starred=True)
    num_chains = [[_sub_r1(p, r1) for p in chain] for chain in chains]
    den = exact_det([[num_chains[c][i] for c in range(K)] for i in range(K)])
    out = []
    for i in range(K + 1):
        rows = [r for r in range(K + 1) if r != i]
        minor = exact_det([[num_chains[c][r] for c in range(K)] for r in rows])
        sign = (-1) ** (i + K)
        out.append(PolyFraction(sign * _as_n_poly(minor), _as_n_poly(den)))
    return tuple(out)


def _as_n_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.const(N, value)


def qp_build(params: ParamVector, window: int = REG_WINDOW) -> tuple[BandOperator, BandOperator]:
    """The order R+S forward-difference factors Q and P.

    Q comes from the Wronskian ratio with one extra column, P as the formal
    adjoint of the starred ratio P*.  Their composition satisfies
    P Q = (Lambda - Id)^{2R} (Lambda + Id)^{2S} identically in n.
    """
    ensure_regular(params, window)
    delta = BandOperator({1: 1, 0: -1})
    delta_star = BandOperator({-1: 1, 0: -1})
    Q = BandOperator({})
    for i, c in enumerate(_q_delta_coeffs(params)):
        Q = Q + BandOperator({0: c}) * (delta ** i)
    Pstar = BandOperator({})
    for i, c in enumerate(_pstar_delta_coeffs(params)):
        Pstar = Pstar + BandOperator({0: c}) * (delta_star ** i)
    return Q, Pstar.adjoint()


def factorization_target(R: int, S: int) -> BandOperator:
    """(Lambda - Id)^{2R} (Lambda + Id)^{2S}."""
    return (BandOperator({1: 1, 0: -1}) ** (2 * R)) * (BandOperator({1: 1, 0: 1}) ** (2 * S))


@dataclass(frozen=True)
class WaveFunction:
    """p_n(x) (or its adjoint partner) as an exact rational function of x."""

    site: int
    value: RationalFunc


def _denominator_x(R: int, S: int) -> LaurentPoly:
    return (LaurentPoly("x", {1: 1, 0: -1}) ** R) * (LaurentPoly("x", {1: 1, 0: 1}) ** S)


def wave_p(params: ParamVector, n: int, window: int = REG_WINDOW) -> WaveFunction:
    """p_n(x): Q applied to the sequence k -> x^k, taken at k = n, divided by
    (x-1)^R (x+1)^S.

    Delta^i acts on x-powers as multiplication by (x-1)^i, so the numerator
    is x^n sum_i c_i(n) (x-1)^i with the cached Q coefficients.
    """
    ensure_regular(params, window)
    num = LaurentPoly("x")
    xm1 = LaurentPoly("x", {1: 1, 0: -1})
    for i, c in enumerate(_q_delta_coeffs(params)):
        try:
            ci = c.subs(Fraction(n))
        except ZeroDenominator as exc:
            raise SingularTau(n) from exc
        if ci:
            num = num + (xm1 ** i) * ci
    num = num.shift_exp(n)
    return WaveFunction(site=n, value=RationalFunc(num, _denominator_x(params.R, params.S)))


def wave_p_star(params: ParamVector, n: int, window: int = REG_WINDOW) -> WaveFunction:
    """p*_n(x) through the duality route: (tau(n-1)/tau(n)) x^{-1} p_{n-1}(1/x)."""
    tau = ensure_regular(params, window)
    factor = tau.ratio(n - 1, n)
    p = wave_p(params, n - 1, window).value
    value = p.inverse_var() * factor
    value = RationalFunc(value.num.shift_exp(-1), value.den)
    return WaveFunction(site=n, value=value)


def wave_p_star_via_adjoint(params: ParamVector, n: int, window: int = REG_WINDOW) -> WaveFunction:
    """p*_n(x) built independently from the starred Wronskian ratio P*.

    P*, with coefficients frozen at site n-1, is applied formally to x^{-n}:
    (Delta*)^i acts on inverse powers as multiplication by (x-1)^i.
    """
    ensure_regular(params, window)
    num = LaurentPoly("x")
    xm1 = LaurentPoly("x", {1: 1, 0: -1})
    for i, c in enumerate(_pstar_delta_coeffs(params)):
        try:
            ci = c.subs(Fraction(n - 1))
        except ZeroDenominator as exc:
            raise SingularTau(n - 1) from exc
        if ci:
            num = num + (xm1 ** i) * ci
    num = num.shift_exp(-n)
    return WaveFunction(site=n, value=RationalFunc(num, _denominator_x(params.R, params.S)))


def darboux_one_step(delta, window: int = REG_WINDOW) -> BandOperator:
    """One explicit Darboux step from the free operator, with tau_n = n + delta.

    Returns Q0 P0 for P0 = Id - (tau_{n-1}/tau_n) Lambda^{-1} and
    Q0 = Lambda - (tau_{n+1}/tau_n) Id; must agree with the tau route at
    R = 1, S = 0, r_1 = delta.
    """
    delta = rat(delta)
    if delta.denominator == 1 and abs(delta.numerator) <= window:
        raise SingularTau(int(-delta), "delta places a tau zero on the lattice")
    tau_n = Poly(N, [delta, 1])
    p0 = BandOperator({0: 1, -1: -PolyFraction(tau_n.shift(-1), tau_n)})
    q0 = BandOperator({1: 1, 0: -PolyFraction(tau_n.shift(1), tau_n)})
    return q0 * p0
