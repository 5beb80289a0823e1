"""Floating-point analytics for square-root generating functions.

Each family is described by three polynomials with

    C(x) = (P(x) - sqrt(Q(x))) / R(x),

valid on (0, rho] where rho, the critical value, is the smallest positive
root of Q.  Built-in families:

    binary trees   B(x) = (1 - sqrt(1 - 4x^2)) / 2x                rho = 1/2
    Motzkin trees  M(x) = (1 - x - sqrt(1 - 2x - 3x^2)) / 2x       rho = 1/3
    lambda terms   S(x) = (x^3 - x^2 - x + 1 - sqrt(x^6 + 2x^5
                           - 5x^4 + 4x^3 - x^2 - 2x + 1))
                          / (2x^2 (1 - x))                         rho ~ 0.50931

The size of a Boltzmann-distributed object at parameter x has first moment
E(N) = x C'(x) / C(x) and second moment E(N^2) = (x^2 C''(x) + x C'(x)) / C(x);
C' is evaluated analytically, C'' by a central difference on C'.  E(N) is
strictly increasing in x and diverges at rho, which is what ``tune_for_mean``
inverts by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class NoRootError(ValueError):
    """Q has no sign change on (0, 1): no critical value to find."""


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial; coeffs[k] is the coefficient of x^k."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial((0.0,))
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class GFSpec:
    """A generating function (P - sqrt(Q)) / R with a family tag."""

    p: Polynomial
    q: Polynomial
    r: Polynomial
    family: str = "custom"


BINARY_GF = GFSpec(Polynomial((1,)), Polynomial((1, 0, -4)),
                   Polynomial((0, 2)), family="binary")
MOTZKIN_GF = GFSpec(Polynomial((1, -1)), Polynomial((1, -2, -3)),
                    Polynomial((0, 2)), family="motzkin")
LAMBDA_GF = GFSpec(Polynomial((1, -1, -1, 1)), Polynomial((1, -2, -1, 4, -5, 2, 1)),
                   Polynomial((0, 0, 2, -2)), family="lambda")

BUILTIN_SPECS = {"binary": BINARY_GF, "motzkin": MOTZKIN_GF, "lambda": LAMBDA_GF}

_DOMAIN_SLACK = 1e-12


@lru_cache(maxsize=None)
def critical_value(spec: GFSpec) -> float:
    """Smallest positive root of Q, by scan plus bisection, to ~1e-12."""
    q = spec.q
    lo = 1e-6
    hi = 1.0 - 1e-6
    f_lo = q(lo)
    if f_lo <= 0.0:
        raise NoRootError("Q must be positive near 0")
    # locate the first sign change, then bisect inside it
    steps = 4096
    bracket = None
    prev_x, prev_f = lo, f_lo
    for i in range(1, steps + 1):
        x = lo + (hi - lo) * i / steps
        f = q(x)
        if (f > 0.0) != (prev_f > 0.0):
            bracket = (prev_x, x)
            break
        prev_x, prev_f = x, f
    if bracket is None:
        raise NoRootError("Q has no sign change on (0, 1)")
    a, b = bracket
    f_a = q(a)
    while b - a > 1e-13:
        mid = (a + b) / 2
        f_mid = q(mid)
        if (f_mid > 0.0) == (f_a > 0.0):
            a, f_a = mid, f_mid
        else:
            b = mid
    return (a + b) / 2


@lru_cache(maxsize=None)
def _derivatives(spec: GFSpec) -> tuple[Polynomial, Polynomial, Polynomial]:
    return spec.p.derivative(), spec.q.derivative(), spec.r.derivative()


def eval_gf(spec: GFSpec, x: float) -> float:
    """C(x) = (P(x) - sqrt(Q(x))) / R(x) for 0 < x <= critical value."""
    crit = critical_value(spec)
    if not 0.0 < x <= crit + _DOMAIN_SLACK:
        raise ValueError(f"x={x!r} outside (0, {crit!r}]")
    qv = spec.q(x)
    if qv < 0.0:
        if qv < -1e-9:
            raise ValueError(f"Q({x!r}) is negative inside the domain")
        qv = 0.0  # rounding noise at the singularity
    rv = spec.r(x)
    if rv == 0.0:
        raise ValueError(f"R vanishes at x={x!r}")
    return (spec.p(x) - math.sqrt(qv)) / rv


def eval_gf_deriv(spec: GFSpec, x: float) -> float:
    """C'(x) from the analytic quotient rule; diverges as x approaches rho."""
    crit = critical_value(spec)
    if not 0.0 < x < crit:
        raise ValueError(f"derivative requires 0 < x < {crit!r}, got {x!r}")
    qv = spec.q(x)
    if qv <= 0.0:
        raise ValueError(f"x={x!r} is too close to the critical value")
    sq = math.sqrt(qv)
    dp, dq, dr = _derivatives(spec)
    pv, rv = spec.p(x), spec.r(x)
    return dp(x) / rv - dq(x) / (2.0 * sq * rv) - (pv - sq) * dr(x) / rv ** 2


def mean_size(spec: GFSpec, x: float) -> float:
    """Expected size x C'(x) / C(x) of the Boltzmann model at parameter x."""
    return x * eval_gf_deriv(spec, x) / eval_gf(spec, x)


def std_dev(spec: GFSpec, x: float) -> float:
    """Standard deviation of the Boltzmann size at parameter x.

    C'' comes from a central finite difference on the analytic C' with step
    h = max(1e-7 x, 1e-10), shrunk if x + h would cross the critical value.
    """
    crit = critical_value(spec)
    if not 0.0 < x < crit:
        raise ValueError(f"std_dev requires 0 < x < {crit!r}, got {x!r}")
    h = max(1e-7 * x, 1e-10)
    if x + h >= crit:
        h = (crit - x) / 2.0
    c2 = (eval_gf_deriv(spec, x + h) - eval_gf_deriv(spec, x - h)) / (2.0 * h)
    cv = eval_gf(spec, x)
    c1 = eval_gf_deriv(spec, x)
    second_moment = (x * x * c2 + x * c1) / cv
    mean = x * c1 / cv
    return math.sqrt(max(second_moment - mean * mean, 0.0))


def tune_for_mean(spec: GFSpec, n: float) -> float:
    """The x in (0, rho) whose Boltzmann mean size equals n, by bisection."""
    if n < 1:
        raise ValueError(f"target mean must be >= 1, got {n!r}")
    crit = critical_value(spec)
    # below ~1e-4 the numerator P - sqrt(Q) cancels into rounding noise
    lo = 1e-4
    hi = crit - 1e-13
    m_lo = mean_size(spec, lo)
    if m_lo > n and m_lo - n > 1e-9 * n:
        raise ValueError(f"mean {n!r} is below the family's minimum object size")
    if mean_size(spec, hi) < n:
        raise ValueError(f"mean {n!r} is not reachable in double precision")
    for _ in range(200):
        mid = (lo + hi) / 2.0
        m = mean_size(spec, mid)
        if abs(m - n) <= 1e-9 * n:
            return mid
        if m < n:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * crit:
            break
    return (lo + hi) / 2.0


def branch_probs(spec: GFSpec, x: float) -> dict[str, float]:
    """Per-kind branching probabilities of the Boltzmann sampler at x.

    lambda:  var  x^2 / ((1-x) C(x)),  abs  x^2,  app  x^2 C(x)
    motzkin: leaf x / C(x),  unary x,  binary x C(x)
    binary:  leaf x / C(x),  node x C(x)

    Within 1e-9 of the critical value the sqrt term is treated as exactly
    zero (C(rho) = P(rho)/R(rho)), which keeps the components summing to 1
    instead of amplifying rounding noise through the square root.
    """
    crit = critical_value(spec)
    if not 0.0 < x <= crit + _DOMAIN_SLACK:
        raise ValueError(f"x={x!r} outside (0, {crit!r}]")
    family = spec.family
    if family == "lambda":
        if abs(x - crit) <= 1e-9:
            # at rho the variable and application weights coincide
            p_var = (1.0 - x * x) / 2.0
            return {"var": p_var, "abs": x * x, "app": p_var}
        c = eval_gf(spec, x)
        return {"var": x * x / ((1.0 - x) * c), "abs": x * x, "app": x * x * c}
    if family == "motzkin":
        c = spec.p(x) / spec.r(x) if abs(x - crit) <= 1e-9 else eval_gf(spec, x)
        return {"leaf": x / c, "unary": x, "binary": x * c}
    if family == "binary":
        c = spec.p(x) / spec.r(x) if abs(x - crit) <= 1e-9 else eval_gf(spec, x)
        return {"leaf": x / c, "node": x * c}
    raise ValueError(f"no branching rule for family {family!r}")
