"""Rank/unrank bijections between [1..count] and terms of a given size.

Rank layout for size n (plain terms):

    1 .. S[n-2]          abstractions, body keeping its own rank
    S[n-2]+1 .. S[n]-1   applications, grouped by left size j = 0, 1, ...;
                         within a group the left rank is the major index
                         (quotient) and the right rank the minor (remainder)
    S[n]                 the index n-1, always last

The bounded variant uses the same layout over the S(m, n) tables: the body
of an abstraction may use one more free index (m+1), and the top rank is an
index only when m >= n-1.  Ranking inverts the interval arithmetic exactly.
"""

from __future__ import annotations

from .counting import count_bounded, count_plain
from .terms import Abs, App, Index, Term

DEFAULT_ENUMERATION_CAP = 16

_WRAP_ABS = object()


def _check_rank(k: int, total: int, what: str) -> None:
    if total < 1:
        raise ValueError(f"{what} is empty")
    if not 1 <= k <= total:
        raise ValueError(f"rank {k} out of range [1..{total}] for {what}")


def unrank_plain(n: int, k: int) -> Term:
    """The k-th term of size n, 1 <= k <= count_plain(n)."""
    _check_rank(k, count_plain(n), f"size-{n} terms")
    frames: list = []
    while True:
        total = count_plain(n)
        if k == total:
            value: Term = Index(n - 1)
        elif k <= count_plain(n - 2):
            frames.append(_WRAP_ABS)
            n -= 2
            continue
        else:
            r = k - count_plain(n - 2)
            body = n - 2
            j = 0
            while True:
                right_count = count_plain(body - j)
                block = count_plain(j) * right_count
                if r <= block:
                    left_rank, right_rank = divmod(r - 1, right_count)
                    frames.append((body - j, right_rank + 1))
                    n, k = j, left_rank + 1
                    break
                r -= block
                j += 1
            continue
        while frames:
            top = frames.pop()
            if top is _WRAP_ABS:
                value = Abs(value)
            elif isinstance(top, tuple):
                frames.append(value)
                n, k = top
                value = None
                break
            else:
                value = App(top, value)
        if value is not None:
            return value


def rank_plain(t: Term) -> int:
    """Position of t among the terms of its size; inverse of unrank_plain."""
    order = []
    stack = [t]
    while stack:
        node = stack.pop()
        order.append(node)
        if isinstance(node, Abs):
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.fun)
            stack.append(node.arg)
    info: dict[int, tuple[int, int]] = {}  # id -> (size, rank)
    for node in reversed(order):
        if id(node) in info:
            continue
        if isinstance(node, Index):
            size = node.i + 1
            info[id(node)] = (size, count_plain(size))
        elif isinstance(node, Abs):
            body_size, body_rank = info[id(node.body)]
            info[id(node)] = (body_size + 2, body_rank)
        else:
            fun_size, fun_rank = info[id(node.fun)]
            arg_size, arg_rank = info[id(node.arg)]
            body = fun_size + arg_size
            base = count_plain(body) + sum(
                count_plain(j) * count_plain(body - j) for j in range(fun_size))
            rank = base + (fun_rank - 1) * count_plain(arg_size) + arg_rank
            info[id(node)] = (body + 2, rank)
    return info[id(t)][1]


def unrank_bounded(m: int, n: int, k: int) -> Term:
    """The k-th size-n term with at most m free indices."""
    _check_rank(k, count_bounded(m, n), f"size-{n} terms with at most {m} free indices")
    frames: list = []
    while True:
        if m >= n - 1 and k == count_bounded(m, n):
            value: Term = Index(n - 1)
        elif k <= count_bounded(m + 1, n - 2):
            frames.append(_WRAP_ABS)
            m += 1
            n -= 2
            continue
        else:
            h = k - count_bounded(m + 1, n - 2)
            body = n - 2
            j = 0
            while True:
                right_count = count_bounded(m, body - j)
                block = count_bounded(m, j) * right_count
                if h <= block:
                    left_rank, right_rank = divmod(h - 1, right_count)
                    frames.append((m, body - j, right_rank + 1))
                    n, k = j, left_rank + 1
                    break
                h -= block
                j += 1
            continue
        while frames:
            top = frames.pop()
            if top is _WRAP_ABS:
                value = Abs(value)
                m -= 1  # leaving the binder restores the outer budget
            elif isinstance(top, tuple):
                frames.append(value)
                m, n, k = top
                value = None
                break
            else:
                value = App(top, value)
        if value is not None:
            return value


def enumerate_terms(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Term]:
    """All terms of size n in rank order; refuses n above the cap."""
    if n > cap:
        raise ValueError(f"enumeration of size {n} exceeds the cap {cap}")
    return [unrank_plain(n, k) for k in range(1, count_plain(n) + 1)]


def random_by_rank(n: int, rng) -> Term:
    """Uniform term of size n: draw a rank uniformly and unrank it.

    ``rng`` must provide ``randbelow`` (exact uniform integers, as
    :class:`randterm.boltzmann.RandomState` does).
    """
    total = count_plain(n)
    if total < 1:
        raise ValueError(f"there are no terms of size {n}")
    return unrank_plain(n, rng.randbelow(total) + 1)
