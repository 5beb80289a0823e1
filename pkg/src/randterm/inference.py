"""Principal simple types for de Bruijn terms, via first-order unification.

A term is considered typable if it has a simple type in some context: free
indices receive fresh type variables, with the same variable shared by all
occurrences that point at the same (absent) binder level.  Unification
performs the occurs check, so self-application is rejected.

Inferred types are canonical: variables are renumbered by first appearance
in a pre-order (domain before codomain) walk, making principal types
directly comparable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .boltzmann import AttemptsExhaustedError, WindowSpec, ceiled_sample_lambda, \
    sample_in_window
from .counting import count_plain
from .terms import Abs, App, Index, Term
from .unrank import unrank_plain

DEFAULT_TYPABLE_CAP = 30


@dataclass(frozen=True)
class TypeVar:
    vid: int


@dataclass(frozen=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"


SimpleType = TypeVar | Arrow


def _walk(ty: SimpleType, subst: dict) -> SimpleType:
    seen = []
    while isinstance(ty, TypeVar):
        bound = subst.get(ty.vid)
        if bound is None:
            break
        seen.append(ty.vid)
        ty = bound
    for vid in seen[:-1]:
        subst[vid] = ty  # path compression
    return ty


def _occurs(vid: int, ty: SimpleType, subst: dict) -> bool:
    stack = [ty]
    visited = set()
    while stack:
        node = _walk(stack.pop(), subst)
        if isinstance(node, TypeVar):
            if node.vid == vid:
                return True
        elif id(node) not in visited:
            visited.add(id(node))
            stack.append(node.dom)
            stack.append(node.cod)
    return False


def _unify(a: SimpleType, b: SimpleType, subst: dict) -> bool:
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x = _walk(x, subst)
        y = _walk(y, subst)
        if x is y:
            continue
        if isinstance(x, TypeVar):
            if isinstance(y, TypeVar):
                if x.vid != y.vid:
                    subst[x.vid] = y
                continue
            if _occurs(x.vid, y, subst):
                return False
            subst[x.vid] = y
        elif isinstance(y, TypeVar):
            if _occurs(y.vid, x, subst):
                return False
            subst[y.vid] = x
        else:
            stack.append((x.dom, y.dom))
            stack.append((x.cod, y.cod))
    return True


def _infer_raw(t: Term):
    """(root type, substitution) for typable t, else None."""
    subst: dict = {}
    fresh = itertools.count()
    binders: list[TypeVar] = []
    free_levels: dict[int, TypeVar] = {}
    actions: list = [("infer", t)]
    results: list = []
    while actions:
        op, payload = actions.pop()
        if op == "infer":
            node = payload
            if isinstance(node, Index):
                depth = len(binders)
                if node.i <= depth:
                    results.append(binders[depth - node.i])
                else:
                    level = node.i - depth
                    var = free_levels.get(level)
                    if var is None:
                        var = TypeVar(next(fresh))
                        free_levels[level] = var
                    results.append(var)
            elif isinstance(node, Abs):
                var = TypeVar(next(fresh))
                binders.append(var)
                actions.append(("close_abs", var))
                actions.append(("infer", node.body))
            else:
                actions.append(("close_app", None))
                actions.append(("infer", node.arg))
                actions.append(("infer", node.fun))
        elif op == "close_abs":
            binders.pop()
            results.append(Arrow(payload, results.pop()))
        else:
            arg_ty = results.pop()
            fun_ty = results.pop()
            res = TypeVar(next(fresh))
            if not _unify(fun_ty, Arrow(arg_ty, res), subst):
                return None
            results.append(res)
    return results[0], subst


def _resolve(ty: SimpleType, subst: dict) -> SimpleType:
    """Apply the substitution, preserving sharing of repeated subterms."""
    memo: dict[int, SimpleType] = {}
    root = _walk(ty, subst)
    if isinstance(root, TypeVar):
        return root
    stack = [root]
    while stack:
        node = stack[-1]
        if id(node) in memo:
            stack.pop()
            continue
        dom = _walk(node.dom, subst)
        cod = _walk(node.cod, subst)
        pending = [k for k in (dom, cod)
                   if isinstance(k, Arrow) and id(k) not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[id(node)] = Arrow(dom if isinstance(dom, TypeVar) else memo[id(dom)],
                               cod if isinstance(cod, TypeVar) else memo[id(cod)])
        stack.pop()
    return memo[id(root)]


def _canonical(ty: SimpleType) -> SimpleType:
    # first-appearance order; visited arrows are skipped because a repeated
    # subtree cannot introduce a new variable first
    mapping: dict[int, int] = {}
    visited = set()
    stack = [ty]
    while stack:
        node = stack.pop()
        if isinstance(node, TypeVar):
            if node.vid not in mapping:
                mapping[node.vid] = len(mapping)
        elif id(node) not in visited:
            visited.add(id(node))
            stack.append(node.cod)
            stack.append(node.dom)
    if isinstance(ty, TypeVar):
        return TypeVar(mapping[ty.vid])
    rebuilt: dict[int, SimpleType] = {}
    stack = [ty]
    while stack:
        node = stack[-1]
        if id(node) in rebuilt:
            stack.pop()
            continue
        pending = [k for k in (node.dom, node.cod)
                   if isinstance(k, Arrow) and id(k) not in rebuilt]
        if pending:
            stack.extend(pending)
            continue
        dom, cod = node.dom, node.cod
        rebuilt[id(node)] = Arrow(
            TypeVar(mapping[dom.vid]) if isinstance(dom, TypeVar) else rebuilt[id(dom)],
            TypeVar(mapping[cod.vid]) if isinstance(cod, TypeVar) else rebuilt[id(cod)])
        stack.pop()
    return rebuilt[id(ty)]


def infer_type(t: Term) -> SimpleType | None:
    """Canonical principal type of t, or None if t is untypable."""
    raw = _infer_raw(t)
    if raw is None:
        return None
    root, subst = raw
    return _canonical(_resolve(root, subst))


def is_typable(t: Term) -> bool:
    return _infer_raw(t) is not None


def format_type(ty: SimpleType) -> str:
    """'a', 'b', ... for variables; arrows right-associative, domains in parens."""
    out = []
    stack: list = [ty]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, TypeVar):
            vid = item.vid
            out.append(chr(ord("a") + vid) if vid < 26 else f"t{vid}")
        elif isinstance(item.dom, Arrow):
            stack.extend((item.cod, " → ", ")", item.dom, "("))
        else:
            stack.extend((item.cod, " → ", item.dom))
    return "".join(out)


def count_typable(n: int, cap: int = DEFAULT_TYPABLE_CAP) -> int:
    """How many of the count_plain(n) terms of size n are simply typable."""
    if n > cap:
        raise ValueError(f"size {n} exceeds the exhaustive-count cap {cap}")
    return sum(1 for k in range(1, count_plain(n) + 1)
               if is_typable(unrank_plain(n, k)))


def sample_typable(window: WindowSpec, rng) -> Term:
    """Windowed lambda samples filtered for typability.

    Uniform among typable terms of the drawn size; raises
    AttemptsExhaustedError after max_attempts typability rejections.
    """
    for _ in range(window.max_attempts):
        term = sample_in_window(ceiled_sample_lambda, window, rng)
        if is_typable(term):
            return term
    raise AttemptsExhaustedError(window.max_attempts)
