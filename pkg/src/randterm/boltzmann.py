"""Boltzmann samplers for lambda terms, Motzkin trees and binary trees.

A sampler at parameter x grows a structure top-down, choosing each node's
kind with the branching probabilities of the family at x; at the critical
value equal-size outputs are equiprobable, which is what makes windowed
rejection produce uniform samples within each size.

Ceiled generation threads the size budget top-down: costs are committed as
soon as a kind is chosen and the attempt is abandoned the moment the
running total passes the ceiling, so one attempt does O(ceiling) work.
A rejected attempt returns None; no partial structures escape.

Generation is deterministic given a seed: identical (seed, ceiling) or
(seed, window) pairs reproduce identical outputs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .analytic import BINARY_GF, LAMBDA_GF, MOTZKIN_GF, branch_probs, critical_value
from .terms import Abs, App, BLeaf, BNode, Index, MBinary, MLeaf, MUnary

FREE_SIZE_CAP = 100_000_000


class AttemptsExhaustedError(RuntimeError):
    """Windowed or typable sampling gave up after max_attempts rejections."""

    def __init__(self, attempts: int):
        super().__init__(f"no acceptable structure after {attempts} attempts")
        self.attempts = attempts


class SizeCapError(RuntimeError):
    """A free (unceiled) sampler ran past the hard size cap."""


class RandomState:
    """Seeded deterministic source of uniforms; same seed, same transcript."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return self._rng.random()

    def getrandbits(self, k: int) -> int:
        return self._rng.getrandbits(k)

    def randbelow(self, n: int) -> int:
        """Exact uniform integer in [0, n): rejection from a power-of-two range."""
        if n < 1:
            raise ValueError(f"randbelow needs n >= 1, got {n}")
        k = n.bit_length()
        while True:
            v = self._rng.getrandbits(k)
            if v < n:
                return v


@dataclass(frozen=True)
class Sample:
    """A generated structure together with its exact size."""

    value: object
    size: int


@dataclass(frozen=True)
class WindowSpec:
    """Accept sizes in [min_size, max_size]; give up after max_attempts."""

    min_size: int
    max_size: int
    max_attempts: int = 1_000_000

    def __post_init__(self):
        if not 1 <= self.min_size <= self.max_size:
            raise ValueError(f"need 1 <= min_size <= max_size, got "
                             f"[{self.min_size}, {self.max_size}]")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")


def window_around(target: int, tolerance: float = 0.1,
                  max_attempts: int = 1_000_000) -> WindowSpec:
    """Window [ceil((1-tol)*target), ceil((1+tol)*target)]."""
    return WindowSpec(max(1, math.ceil((1.0 - tolerance) * target)),
                      math.ceil((1.0 + tolerance) * target), max_attempts)


def bernoulli_select(p_a: float, rng) -> bool:
    """True with probability p_a; consumes exactly one uniform."""
    if not 0.0 <= p_a <= 1.0:
        raise ValueError(f"probability {p_a!r} outside [0, 1]")
    return rng.random() < p_a


@lru_cache(maxsize=128)
def _lambda_thresholds(x: float) -> tuple[float, float]:
    probs = branch_probs(LAMBDA_GF, x)
    return probs["var"], probs["var"] + probs["abs"]


@lru_cache(maxsize=128)
def _motzkin_thresholds(x: float) -> tuple[float, float]:
    probs = branch_probs(MOTZKIN_GF, x)
    return probs["leaf"], probs["leaf"] + probs["unary"]


@lru_cache(maxsize=128)
def _binary_leaf_prob(x: float) -> float:
    return branch_probs(BINARY_GF, x)["leaf"]


def select_kind_lambda(x: float, rng) -> str:
    """'var', 'abs' or 'app' with the lambda branching law at x."""
    t_var, t_abs = _lambda_thresholds(x)
    u = rng.random()
    if u < t_var:
        return "var"
    if u < t_abs:
        return "abs"
    return "app"


def select_kind_motzkin(x: float, rng) -> str:
    """'leaf', 'unary' or 'binary' with the Motzkin branching law at x."""
    t_leaf, t_unary = _motzkin_thresholds(x)
    u = rng.random()
    if u < t_leaf:
        return "leaf"
    if u < t_unary:
        return "unary"
    return "binary"


def select_kind_binary(x: float, rng) -> str:
    """'leaf' or 'node' with the binary-tree branching law at x."""
    return "leaf" if bernoulli_select(_binary_leaf_prob(x), rng) else "node"


def draw_index(x: float, rng) -> int:
    """Geometric de Bruijn index: P(i) = (1-x) x^(i-1), i >= 1."""
    if not 0.0 < x < 1.0:
        raise ValueError(f"index parameter must be in (0, 1), got {x!r}")
    i = 1
    while rng.random() < x:
        i += 1
    return i


_WRAP = object()      # completed child gets wrapped (Abs / MUnary)
_FIRST = object()     # completed child is the first of two; second follows


def _ceiled_lambda(x: float, ceiling: int, rng) -> Sample | None:
    t_var, t_abs = _lambda_thresholds(x)
    used = 0
    frames: list = []
    while True:
        u = rng.random()
        if u < t_var:
            i = 1
            while rng.random() < x:
                i += 1
            used += i + 1
            if used > ceiling:
                return None
            value = Index(i)
        elif u < t_abs:
            used += 2
            if used > ceiling:
                return None
            frames.append(_WRAP)
            continue
        else:
            used += 2
            if used > ceiling:
                return None
            frames.append(_FIRST)
            continue
        while frames:
            top = frames.pop()
            if top is _WRAP:
                value = Abs(value)
            elif top is _FIRST:
                frames.append(value)
                value = None
                break
            else:
                value = App(top, value)
        if value is not None:
            return Sample(value, used)


def _ceiled_motzkin(x: float, ceiling: int, rng) -> Sample | None:
    t_leaf, t_unary = _motzkin_thresholds(x)
    used = 0
    frames: list = []
    while True:
        u = rng.random()
        used += 1
        if used > ceiling:
            return None
        if u < t_leaf:
            value = MLeaf()
        elif u < t_unary:
            frames.append(_WRAP)
            continue
        else:
            frames.append(_FIRST)
            continue
        while frames:
            top = frames.pop()
            if top is _WRAP:
                value = MUnary(value)
            elif top is _FIRST:
                frames.append(value)
                value = None
                break
            else:
                value = MBinary(top, value)
        if value is not None:
            return Sample(value, used)


def _ceiled_binary(x: float, ceiling: int, rng) -> Sample | None:
    p_leaf = _binary_leaf_prob(x)
    used = 0
    frames: list = []
    while True:
        u = rng.random()
        used += 1
        if used > ceiling:
            return None
        if u < p_leaf:
            value = BLeaf()
        else:
            frames.append(_FIRST)
            continue
        while frames:
            top = frames.pop()
            if top is _FIRST:
                frames.append(value)
                value = None
                break
            else:
                value = BNode(top, value)
        if value is not None:
            return Sample(value, used)


def ceiled_sample_lambda(ceiling: int, rng, x: float | None = None) -> Sample | None:
    """One Boltzmann attempt at x (default: the critical value).

    Returns the term with its size, or None once the running size would
    pass the ceiling.
    """
    if ceiling < 2:
        raise ValueError("no lambda term has size below 2")
    if x is None:
        x = critical_value(LAMBDA_GF)
    return _ceiled_lambda(x, ceiling, rng)


def ceiled_sample_motzkin(ceiling: int, rng, x: float | None = None) -> Sample | None:
    """One ceiled Motzkin-tree attempt at x (default: 1/3)."""
    if ceiling < 1:
        raise ValueError("ceiling must be >= 1")
    if x is None:
        x = critical_value(MOTZKIN_GF)
    return _ceiled_motzkin(x, ceiling, rng)


def ceiled_sample_binary(ceiling: int, rng, x: float | None = None) -> Sample | None:
    """One ceiled binary-tree attempt at x (default: 1/2)."""
    if ceiling < 1:
        raise ValueError("ceiling must be >= 1")
    if x is None:
        x = critical_value(BINARY_GF)
    return _ceiled_binary(x, ceiling, rng)


def _free(core, spec, x: float, rng, what: str) -> Sample:
    # at the critical value the expected size is infinite, hence the strict
    # bound and the hard cap
    if not 0.0 < x < critical_value(spec):
        raise ValueError(f"free sampling needs x strictly below the critical value")
    out = core(x, FREE_SIZE_CAP, rng)
    if out is None:
        raise SizeCapError(f"free {what} sample exceeded {FREE_SIZE_CAP} nodes")
    return out


def free_sample_lambda(x: float, rng) -> Sample:
    """Unceiled sample at x < rho; raises SizeCapError past the hard cap."""
    return _free(_ceiled_lambda, LAMBDA_GF, x, rng, "lambda")


def free_sample_motzkin(x: float, rng) -> Sample:
    """Unceiled Motzkin sample at x < 1/3."""
    return _free(_ceiled_motzkin, MOTZKIN_GF, x, rng, "Motzkin")


def free_sample_binary(x: float, rng) -> Sample:
    """Unceiled binary-tree sample at x < 1/2."""
    return _free(_ceiled_binary, BINARY_GF, x, rng, "binary")


def sample_in_window(sampler, window: WindowSpec, rng):
    """Repeat ceiled attempts with ceiling max_size until size >= min_size.

    ``sampler`` is one of the ceiled_sample_* functions (or any callable
    with the same (ceiling, rng) -> Sample-or-None contract).  Conditioned
    on its size, the returned structure is uniform within that size class.
    """
    for _ in range(window.max_attempts):
        out = sampler(window.max_size, rng)
        if out is not None and out.size >= window.min_size:
            return out.value
    raise AttemptsExhaustedError(window.max_attempts)
