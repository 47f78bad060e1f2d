"""Planar rooted trees, non-planar rooted trees and decorated planar
binary trees, with canonical forms, the text grammar, angles and
exhaustive enumeration.

Grammar (whitespace insignificant)::

    planar / non-planar:  tree := label | label "(" tree ("," tree)* ")"
    label := [A-Za-z0-9_]+
    decorated binary:     pbt := "*" | "(" pbt label pbt ")"

Planar printing preserves child order; non-planar trees store children
sorted by their printed form (lexicographic byte order), so printing is
canonical.
"""

import re
from functools import lru_cache
from itertools import permutations, product
from typing import NamedTuple


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


class DuplicateLabelError(ValueError):
    pass


class PlanarTree:
    """Rooted tree with significant left-to-right child order."""

    __slots__ = ("label", "children", "_str", "_hash", "size")

    def __init__(self, label, children=()):
        self.label = label
        self.children = tuple(children)
        if self.children:
            s = label + "(" + ",".join(c._str for c in self.children) + ")"
        else:
            s = label
        self._str = s
        self._hash = hash(s)
        self.size = 1 + sum(c.size for c in self.children)

    def __str__(self):
        return self._str

    def __repr__(self):
        return "PlanarTree(%r)" % self._str

    def __eq__(self, other):
        return isinstance(other, PlanarTree) and self._str == other._str

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._str < other._str

    def labels(self):
        """Vertex labels in preorder."""
        out = [self.label]
        for c in self.children:
            out.extend(c.labels())
        return out

    def label_set(self):
        return frozenset(self.labels())

    def find(self, label):
        """Subtree rooted at the given vertex, or None."""
        if self.label == label:
            return self
        for c in self.children:
            hit = c.find(label)
            if hit is not None:
                return hit
        return None

    def relabel(self, mapping):
        return PlanarTree(
            mapping.get(self.label, self.label),
            [c.relabel(mapping) for c in self.children],
        )


class RootedTree:
    """Rooted tree with unordered children, stored in canonical order."""

    __slots__ = ("label", "children", "_str", "_hash", "size")

    def __init__(self, label, children=()):
        self.label = label
        self.children = tuple(sorted(children, key=lambda c: c._str))
        if self.children:
            s = label + "(" + ",".join(c._str for c in self.children) + ")"
        else:
            s = label
        self._str = s
        self._hash = hash(s)
        self.size = 1 + sum(c.size for c in self.children)

    def __str__(self):
        return self._str

    def __repr__(self):
        return "RootedTree(%r)" % self._str

    def __eq__(self, other):
        return isinstance(other, RootedTree) and self._str == other._str

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._str < other._str

    def labels(self):
        out = [self.label]
        for c in self.children:
            out.extend(c.labels())
        return out

    def label_set(self):
        return frozenset(self.labels())

    def find(self, label):
        if self.label == label:
            return self
        for c in self.children:
            hit = c.find(label)
            if hit is not None:
                return hit
        return None

    def relabel(self, mapping):
        return RootedTree(
            mapping.get(self.label, self.label),
            [c.relabel(mapping) for c in self.children],
        )


def to_rooted(t: PlanarTree) -> RootedTree:
    return RootedTree(t.label, [to_rooted(c) for c in t.children])


def to_planar(t: RootedTree) -> PlanarTree:
    """Planar embedding in the canonical (sorted) child order."""
    return PlanarTree(t.label, [to_planar(c) for c in t.children])


class PBT:
    """Planar binary tree with generator-decorated internal nodes.

    LEAF is the unique empty tree (degree 0); it stands for the unit
    when a node slot is vacant and never occurs as a basis element.
    """

    __slots__ = ("left", "label", "right", "_str", "_hash", "degree")

    def __init__(self, left, label, right):
        self.left = left
        self.label = label
        self.right = right
        self._str = "(%s %s %s)" % (left._str, label, right._str)
        self._hash = hash(self._str)
        self.degree = left.degree + 1 + right.degree

    def __str__(self):
        return self._str

    def __repr__(self):
        return "PBT(%r)" % self._str

    def __eq__(self, other):
        return isinstance(other, (PBT, _Leaf)) and self._str == other._str

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._str < other._str

    def is_leaf(self):
        return False

    def decorations(self):
        """Internal node labels in infix (left-to-right) order."""
        out = []
        stack = [(self, False)]
        while stack:
            node, seen = stack.pop()
            if node.is_leaf():
                continue
            if seen:
                out.append(node.label)
                stack.append((node.right, False))
            else:
                stack.append((node, True))
                stack.append((node.left, False))
        return out

    def relabel(self, mapping):
        if self.is_leaf():
            return self
        return PBT(
            self.left.relabel(mapping),
            mapping.get(self.label, self.label),
            self.right.relabel(mapping),
        )


class _Leaf:
    __slots__ = ()
    _str = "*"
    degree = 0
    label = None

    def __str__(self):
        return "*"

    def __repr__(self):
        return "LEAF"

    def __eq__(self, other):
        return other is self or (isinstance(other, _Leaf))

    def __hash__(self):
        return hash("*")

    def __lt__(self, other):
        return "*" < other._str

    def is_leaf(self):
        return True

    def decorations(self):
        return []

    def relabel(self, mapping):
        return self


LEAF = _Leaf()


class Angle(NamedTuple):
    """Planar region at a vertex: slot k sits between incoming edges
    k and k+1 (slot 0 left of all, slot d right of all)."""

    vertex: str
    slot: int


def angles(t: PlanarTree):
    """All angles of t in global left-to-right planar order.

    Depth-first emission: a vertex's slot-k angle appears between the
    traversals of its k-th and (k+1)-th child subtrees, which matches
    the geometric order without coordinates.
    """
    out = []

    def walk(v):
        out.append(Angle(v.label, 0))
        for i, c in enumerate(v.children):
            walk(c)
            out.append(Angle(v.label, i + 1))

    walk(t)
    return out


def entering_edges(t: PlanarTree, vertex):
    """Child subtrees of the vertex in planar order (edges point to the
    root, so the incoming edges at v are exactly its child edges)."""
    node = t.find(vertex)
    if node is None:
        raise KeyError("no vertex %r in %s" % (vertex, t))
    return node.children


_TOKEN_RE = re.compile(r"\s*([A-Za-z0-9_]+|[(),*])")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError("unexpected character %r" % text[pos], pos)
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self):
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", len(self.text))
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, what):
        tok, pos = self.next()
        if tok != what:
            raise ParseError("expected %r, found %r" % (what, tok), pos)

    def label(self):
        tok, pos = self.next()
        if not re.fullmatch(r"[A-Za-z0-9_]+", tok):
            raise ParseError("expected a label, found %r" % tok, pos)
        return tok

    def done(self):
        if self.i != len(self.tokens):
            tok, pos = self.tokens[self.i]
            raise ParseError("trailing input %r" % tok, pos)


def _parse_node(p: _Parser, cls):
    label = p.label()
    children = []
    if p.peek() == "(":
        p.next()
        children.append(_parse_node(p, cls))
        while p.peek() == ",":
            p.next()
            children.append(_parse_node(p, cls))
        p.expect(")")
    return cls(label, children)


def _check_distinct(t):
    seen = set()
    for lab in t.labels():
        if lab in seen:
            raise DuplicateLabelError("duplicate vertex label %r in %s" % (lab, t))
        seen.add(lab)


def parse_planar(text) -> PlanarTree:
    p = _Parser(text)
    t = _parse_node(p, PlanarTree)
    p.done()
    _check_distinct(t)
    return t


def parse_rooted(text) -> RootedTree:
    p = _Parser(text)
    t = _parse_node(p, RootedTree)
    p.done()
    _check_distinct(t)
    return t


def _parse_pbt(p: _Parser):
    tok = p.peek()
    if tok == "*":
        p.next()
        return LEAF
    p.expect("(")
    left = _parse_pbt(p)
    label = p.label()
    right = _parse_pbt(p)
    p.expect(")")
    return PBT(left, label, right)


def parse_pbt(text) -> PBT:
    p = _Parser(text)
    t = _parse_pbt(p)
    p.done()
    return t


def parse_tree(text, species):
    """species is 'planar', 'nonplanar' or 'pbt'."""
    if species == "planar":
        return parse_planar(text)
    if species == "nonplanar":
        return parse_rooted(text)
    if species == "pbt":
        return parse_pbt(text)
    raise ValueError("unknown tree species %r" % species)


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


@lru_cache(maxsize=None)
def _planar_structures(n):
    """Planar shapes with n vertices as nested tuples."""
    if n == 1:
        return ((),)
    out = []
    for first in range(1, n):
        for head in _planar_structures(first):
            for rest in _forest_structures(n - 1 - first):
                out.append((head,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _forest_structures(n):
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for head in _planar_structures(first):
            for rest in _forest_structures(n - first):
                out.append((head,) + rest)
    return tuple(out)


def _structure_to_tree(struct, labels, pos):
    label = labels[pos[0]]
    pos[0] += 1
    return PlanarTree(label, [_structure_to_tree(c, labels, pos) for c in struct])


def planar_shapes(n):
    """All planar rooted shapes on n vertices, preorder-labeled 1..n."""
    assert n >= 1
    labels = [str(i) for i in range(1, n + 1)]
    return [_structure_to_tree(s, labels, [0]) for s in _planar_structures(n)]


def planar_trees(labels):
    """All planar rooted trees on the given distinct labels."""
    labels = list(labels)
    assert len(set(labels)) == len(labels)
    out = []
    for s in _planar_structures(len(labels)):
        for perm in permutations(labels):
            out.append(_structure_to_tree(s, perm, [0]))
    return out


@lru_cache(maxsize=None)
def _rooted_trees_cached(labels):
    seen = {}
    for t in planar_trees(labels):
        r = to_rooted(t)
        seen[r._str] = r
    return tuple(seen[k] for k in sorted(seen))


def rooted_trees(labels):
    """All non-planar rooted trees on the given labels (n^(n-1) many)."""
    return list(_rooted_trees_cached(tuple(sorted(labels))))


def _pbt_range(lo, hi):
    """PBT shapes whose infix node labels are exactly lo..hi."""
    if lo > hi:
        return [LEAF]
    out = []
    for mid in range(lo, hi + 1):
        for left in _pbt_range(lo, mid - 1):
            for right in _pbt_range(mid + 1, hi):
                out.append(PBT(left, str(mid), right))
    return out


def pbt_shapes(n):
    """All binary shapes with n internal nodes, infix-labeled 1..n."""
    assert n >= 0
    return _pbt_range(1, n)


def pbt_basis(degree, alphabet):
    """All decorated PBTs of the given degree over the alphabet."""
    assert degree >= 1
    alphabet = list(alphabet)
    out = []
    for shape in pbt_shapes(degree):
        for decor in product(alphabet, repeat=degree):
            mapping = {str(i + 1): decor[i] for i in range(degree)}
            out.append(shape.relabel(mapping))
    return out


def weighted_pbt_basis(alphabet, weights, max_weight):
    """Decorated PBTs of weighted degree 1..max_weight, where each
    decoration contributes its weight.  Built degree by degree, so large
    alphabets with heavy letters never blow up."""
    exact = {0: [LEAF]}
    for d in range(1, max_weight + 1):
        out = []
        for a in alphabet:
            w = weights[a]
            if w > d:
                continue
            for dl in range(0, d - w + 1):
                for left in exact[dl]:
                    for right in exact[d - w - dl]:
                        out.append(PBT(left, a, right))
        exact[d] = out
    result = []
    for d in range(1, max_weight + 1):
        result.extend(exact[d])
    return result


def enumerate_trees(species, size, labels=None):
    """Exhaustive duplicate-free enumeration.

    planar without labels: shapes (Catalan(size-1) many); with labels:
    all labeled trees.  nonplanar: labeled trees (default labels
    1..size).  pbt without labels: shapes; with labels: all decoration
    assignments (len(labels)^size many).
    """
    if species == "planar":
        return planar_trees(labels) if labels is not None else planar_shapes(size)
    if species == "nonplanar":
        if labels is None:
            labels = [str(i) for i in range(1, size + 1)]
        return rooted_trees(labels)
    if species == "pbt":
        return pbt_basis(size, labels) if labels is not None else pbt_shapes(size)
    raise ValueError("unknown tree species %r" % species)
