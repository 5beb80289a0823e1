"""Lambda terms in de Bruijn form, binary trees, and Motzkin trees.

Term size follows the binary-encoding model: an index ``i`` costs ``i + 1``
bits, abstraction and application nodes cost 2 bits each, so the size of a
term equals the length of its bit encoding.  Tree nodes (leaves included)
all weigh 1.

Indices are 1-based: ``Index(1)`` refers to the innermost enclosing binder.
A bare ``0`` in the bit encoding would denote index 0 and is rejected.

The samplers routinely build terms with ~10^5 nodes, well past the
interpreter's recursion limit, so every traversal in this module is
iterative -- including structural equality and hashing.
"""

from __future__ import annotations

from dataclasses import dataclass


class DecodeError(ValueError):
    """Raised for bit strings that are not the encoding of exactly one term."""


class ParseError(ValueError):
    """Raised for malformed term text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Node:
    """Base for immutable structure nodes: iterative equality and hashing."""

    def _scalars(self) -> tuple:
        return ()

    def _kids(self) -> tuple:
        return ()

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, _Node):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if a.__class__ is not b.__class__ or a._scalars() != b._scalars():
                return False
            stack.extend(zip(a._kids(), b._kids()))
        return True

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        cached = self.__dict__.get("_hash")
        if cached is not None:
            return cached
        stack = [self]
        while stack:
            node = stack[-1]
            if "_hash" in node.__dict__:
                stack.pop()
                continue
            pending = [k for k in node._kids() if "_hash" not in k.__dict__]
            if pending:
                stack.extend(pending)
                continue
            parts = (node.__class__.__name__, *node._scalars(),
                     *(k.__dict__["_hash"] for k in node._kids()))
            object.__setattr__(node, "_hash", hash(parts))
            stack.pop()
        return self.__dict__["_hash"]


class _TermNode(_Node):
    def __repr__(self):
        return print_term(self)


class _BTreeNode(_Node):
    def __repr__(self):
        return print_btree(self)


class _MTreeNode(_Node):
    def __repr__(self):
        return print_mtree(self)


@dataclass(frozen=True, eq=False, repr=False)
class Index(_TermNode):
    i: int

    def __post_init__(self):
        if self.i < 1:
            raise ValueError(f"de Bruijn indices start at 1, got {self.i}")

    def _scalars(self):
        return (self.i,)


@dataclass(frozen=True, eq=False, repr=False)
class Abs(_TermNode):
    body: "Term"

    def _kids(self):
        return (self.body,)


@dataclass(frozen=True, eq=False, repr=False)
class App(_TermNode):
    fun: "Term"
    arg: "Term"

    def _kids(self):
        return (self.fun, self.arg)


Term = Index | Abs | App


@dataclass(frozen=True, eq=False, repr=False)
class BLeaf(_BTreeNode):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class BNode(_BTreeNode):
    left: "BTree"
    right: "BTree"

    def _kids(self):
        return (self.left, self.right)


BTree = BLeaf | BNode


@dataclass(frozen=True, eq=False, repr=False)
class MLeaf(_MTreeNode):
    pass


@dataclass(frozen=True, eq=False, repr=False)
class MUnary(_MTreeNode):
    child: "MTree"

    def _kids(self):
        return (self.child,)


@dataclass(frozen=True, eq=False, repr=False)
class MBinary(_MTreeNode):
    left: "MTree"
    right: "MTree"

    def _kids(self):
        return (self.left, self.right)


MTree = MLeaf | MUnary | MBinary


def term_size(t: Term) -> int:
    """Size of a term: index i costs i+1, Abs and App cost 2 plus children."""
    total = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Index):
            total += node.i + 1
        else:
            total += 2
            stack.extend(node._kids())
    return total


def btree_size(t: BTree) -> int:
    """Size of a binary tree: every leaf and node weighs 1."""
    total = 0
    stack = [t]
    while stack:
        node = stack.pop()
        total += 1
        stack.extend(node._kids())
    return total


def mtree_size(t: MTree) -> int:
    """Size of a Motzkin tree: every leaf, unary and binary node weighs 1."""
    total = 0
    stack = [t]
    while stack:
        node = stack.pop()
        total += 1
        stack.extend(node._kids())
    return total


def encode_term(t: Term) -> str:
    """Encode a term as a '0'/'1' string: index i -> 1^i 0, Abs -> 00, App -> 01.

    The output length equals ``term_size(t)`` and the code is prefix-free.
    """
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Index):
            out.append("1" * node.i + "0")
        elif isinstance(node, Abs):
            out.append("00")
            stack.append(node.body)
        else:
            out.append("01")
            stack.append(node.arg)
            stack.append(node.fun)
    return "".join(out)


_WRAP = object()      # a completed subterm gets wrapped by Abs / MUnary
_FIRST = object()     # a completed subterm is the first child; second follows


def decode_term(bits: str) -> Term:
    """Inverse of :func:`encode_term`.

    Raises :class:`DecodeError` if the input is truncated, has trailing
    bits, contains non-bit characters, or encodes index 0.
    """
    if bits.strip("01"):
        raise DecodeError("bit strings may contain only '0' and '1'")
    n = len(bits)
    pos = 0
    frames: list = []
    while True:
        if bits.startswith("00", pos):
            frames.append(_WRAP)
            pos += 2
            continue
        if bits.startswith("01", pos):
            frames.append(_FIRST)
            pos += 2
            continue
        i = 0
        while pos < n and bits[pos] == "1":
            i += 1
            pos += 1
        if pos >= n:
            raise DecodeError("truncated encoding")
        pos += 1
        if i == 0:
            raise DecodeError("index 0 is not a term (indices start at 1)")
        value: Term = Index(i)
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
        if value is None:
            continue
        if pos != n:
            raise DecodeError("trailing bits after a complete term")
        return value


def free_index_excess(t: Term) -> int:
    """Smallest m such that every index i at binder depth d satisfies i <= d + m.

    0 means the term is closed.
    """
    excess = 0
    stack = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, Index):
            if node.i - depth > excess:
                excess = node.i - depth
        elif isinstance(node, Abs):
            stack.append((node.body, depth + 1))
        else:
            stack.append((node.fun, depth))
            stack.append((node.arg, depth))
    return excess


def close_term(t: Term) -> Term:
    """Wrap t in exactly as many abstractions as needed to close it."""
    for _ in range(free_index_excess(t)):
        t = Abs(t)
    return t


def print_term(t: Term) -> str:
    """Canonical text: indices are decimal, 'λ' prefixes, '(f a)' applications."""
    out = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, Index):
            out.append(str(item.i))
        elif isinstance(item, Abs):
            out.append("λ")
            stack.append(item.body)
        else:
            out.append("(")
            stack.extend((")", item.arg, " ", item.fun))
    return "".join(out)


def _tokenize(s: str):
    tokens = []
    i, n = 0, len(s)
    while i < n:
        c = s[i]
        if c.isspace():
            i += 1
        elif c in "λ\\":
            tokens.append(("lam", 0, i))
            i += 1
        elif c == "(":
            tokens.append(("open", 0, i))
            i += 1
        elif c == ")":
            tokens.append(("close", 0, i))
            i += 1
        elif c in "0123456789":
            j = i
            while j < n and s[j] in "0123456789":
                j += 1
            tokens.append(("num", int(s[i:j]), i))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    return tokens


def parse_term(s: str) -> Term:
    """Parse the canonical text format; 'λ' may be written as a backslash."""
    tokens = _tokenize(s)
    end = len(s)
    i = 0
    frames: list = []
    while True:
        if i >= len(tokens):
            raise ParseError("unexpected end of input", end)
        kind, num, pos = tokens[i]
        if kind == "lam":
            frames.append(_WRAP)
            i += 1
            continue
        if kind == "open":
            frames.append(_FIRST)
            i += 1
            continue
        if kind != "num":
            raise ParseError("expected a term", pos)
        if num < 1:
            raise ParseError("indices start at 1", pos)
        value: Term = Index(num)
        i += 1
        while frames:
            top = frames.pop()
            if top is _WRAP:
                value = Abs(value)
            elif top is _FIRST:
                frames.append(value)
                value = None
                break
            else:
                if i >= len(tokens) or tokens[i][0] != "close":
                    raise ParseError("expected ')'",
                                     tokens[i][2] if i < len(tokens) else end)
                i += 1
                value = App(top, value)
        if value is None:
            continue
        if i != len(tokens):
            raise ParseError("trailing input after a complete term", tokens[i][2])
        return value


def print_btree(t: BTree) -> str:
    """Text for binary trees: 'L' for leaves, '(left right)' for nodes."""
    out = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, BLeaf):
            out.append("L")
        else:
            out.append("(")
            stack.extend((")", item.right, " ", item.left))
    return "".join(out)


def print_mtree(t: MTree) -> str:
    """Text for Motzkin trees: 'L', '(child)' for unary, '(left right)' for binary."""
    out = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, MLeaf):
            out.append("L")
        elif isinstance(item, MUnary):
            out.append("(")
            stack.extend((")", item.child))
        else:
            out.append("(")
            stack.extend((")", item.right, " ", item.left))
    return "".join(out)
