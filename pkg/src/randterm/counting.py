"""Exact counts of lambda terms and trees via memoized integer recurrences.

Plain terms:    S[0] = S[1] = 0,  S[n+2] = 1 + S[n] + sum(S[k]*S[n-k]).
Bounded terms:  S(m,0) = S(m,1) = 0,
                S(m,n+2) = [m >= n+1] + S(m+1,n) + sum(S(m,k)*S(m,n-k)),
counting terms of size n with at most m free indices; closed terms are m=0.
Motzkin trees:  M[n] = [n==1] + M[n-1] + sum(M[k]*M[n-1-k]).
Binary trees:   B[n] = [n==1] + sum(B[k]*B[n-1-k])   (zero for even n).

Since the deepest index a size-n term can hold is n-1, S(m,n) saturates to
S[n] once m >= n-1; such queries are redirected to the plain table so the
bounded memo stays O(n^2) per query.  All values are Python ints, so there
is no overflow.  Tables grow lazily; ``precompute`` fills them up front so
a populated table can be shared read-only across threads.
"""

from __future__ import annotations

_plain: list[int] = [0, 0]
_motzkin: list[int] = [0]
_binary: list[int] = [0]
_bounded: dict[tuple[int, int], int] = {}


def _check_natural(value: int, name: str) -> None:
    if not isinstance(value, int) or value < 0:
        raise ValueError(f"{name} must be a natural number, got {value!r}")


def count_plain(n: int) -> int:
    """Number of lambda terms of size n (free indices unrestricted)."""
    _check_natural(n, "n")
    while len(_plain) <= n:
        m = len(_plain) - 2
        _plain.append(1 + _plain[m]
                      + sum(_plain[k] * _plain[m - k] for k in range(m + 1)))
    return _plain[n]


def count_bounded(m: int, n: int) -> int:
    """Number of size-n terms with at most m free indices."""
    _check_natural(m, "m")
    _check_natural(n, "n")
    if n <= 1:
        return 0
    if m >= n - 1:
        return count_plain(n)
    key = (m, n)
    cached = _bounded.get(key)
    if cached is not None:
        return cached

    def get(mm: int, nn: int) -> int:
        if nn <= 1:
            return 0
        if mm >= nn - 1:
            return count_plain(nn)
        return _bounded[(mm, nn)]

    # Row j holds budget m+j and is needed up to size n-2j; filling rows
    # top-down makes every S(m+1, n-2) dependency available.
    for j in range((n - 2) // 2, -1, -1):
        mm = m + j
        for nn in range(2, n - 2 * j + 1):
            if mm >= nn - 1 or (mm, nn) in _bounded:
                continue
            body = nn - 2
            _bounded[(mm, nn)] = (get(mm + 1, body)
                                  + sum(get(mm, k) * get(mm, body - k)
                                        for k in range(body + 1)))
    return _bounded[key]


def count_closed(n: int) -> int:
    """Number of closed lambda terms of size n."""
    return count_bounded(0, n)


def count_motzkin(n: int) -> int:
    """Number of Motzkin trees of size n."""
    _check_natural(n, "n")
    while len(_motzkin) <= n:
        k = len(_motzkin)
        _motzkin.append((1 if k == 1 else 0) + _motzkin[k - 1]
                        + sum(_motzkin[i] * _motzkin[k - 1 - i] for i in range(k)))
    return _motzkin[n]


def count_binary(n: int) -> int:
    """Number of binary trees of size n; zero whenever n is even."""
    _check_natural(n, "n")
    while len(_binary) <= n:
        k = len(_binary)
        _binary.append((1 if k == 1 else 0)
                       + sum(_binary[i] * _binary[k - 1 - i] for i in range(k)))
    return _binary[n]


def precompute(n: int) -> None:
    """Fill the plain, Motzkin and binary tables up to size n."""
    count_plain(n)
    count_motzkin(n)
    count_binary(n)
