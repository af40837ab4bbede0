"""Words over signed edges, free reduction, and graph groupoid elements.

A word is a tuple of SignedEdge.  It is admissible when consecutive
endpoints match; reduction cancels adjacent (x, x~) pairs until none
remain.  A fully cancelled word collapses to the vertex it started at,
a non-admissible word to the absorbing Empty element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graphs import ShadowedGraph, SignedEdge


class _EmptyElement:
    """The absorbing empty element of the groupoid (unique instance)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "Empty"

    def __bool__(self) -> bool:
        return False


EMPTY = _EmptyElement()


@dataclass(frozen=True)
class Vertex:
    v: str

    def __repr__(self) -> str:
        return f"Vertex({self.v})"


@dataclass(frozen=True)
class ReducedPath:
    """A nonempty admissible word with no adjacent inverse pair."""

    word: tuple

    def __repr__(self) -> str:
        return "Path(" + " ".join(s.name() for s in self.word) + ")"

    def __len__(self) -> int:
        return len(self.word)


GroupoidElement = object  # Vertex | ReducedPath | _EmptyElement


def is_admissible(word) -> bool:
    if not word:
        return False
    return all(word[i].dst == word[i + 1].src for i in range(len(word) - 1))


def is_loop(word) -> bool:
    return is_admissible(word) and word[0].src == word[-1].dst


def source(a):
    if isinstance(a, Vertex):
        return a.v
    if isinstance(a, ReducedPath):
        return a.word[0].src
    raise ValueError("Empty element has no source")


def target(a):
    if isinstance(a, Vertex):
        return a.v
    if isinstance(a, ReducedPath):
        return a.word[-1].dst
    raise ValueError("Empty element has no target")


def reduce_word(word) -> GroupoidElement:
    """Reduce an edge word to its groupoid element.

    Non-admissible words give Empty.  Cancellation is a single stack
    pass; confluence of free reduction makes the order irrelevant
    (cross-checked by the randomized canceller in the test suite).
    """
    if not word or not is_admissible(word):
        return EMPTY
    stack = []
    for s in word:
        if stack and stack[-1] == s.inverted():
            stack.pop()
        else:
            stack.append(s)
    if not stack:
        return Vertex(word[0].src)
    return ReducedPath(tuple(stack))


def element_word(a) -> tuple:
    """The underlying word of a groupoid element (empty for vertices)."""
    if isinstance(a, ReducedPath):
        return a.word
    if isinstance(a, Vertex):
        return ()
    raise ValueError("Empty element has no word")


def inverse(a) -> GroupoidElement:
    """Groupoid inverse: reverse the word and flip every orientation."""
    if a is EMPTY or isinstance(a, Vertex):
        return a
    return ReducedPath(tuple(s.inverted() for s in reversed(a.word)))


def concat(a, b) -> GroupoidElement:
    """Partially defined product: Empty unless target(a) = source(b)."""
    if a is EMPTY or b is EMPTY:
        return EMPTY
    if target(a) != source(b):
        return EMPTY
    if isinstance(a, Vertex):
        return b
    if isinstance(b, Vertex):
        return a
    return reduce_word(a.word + b.word)


def enumerate_admissible_words(g: ShadowedGraph, n: int) -> Iterator[tuple]:
    """Stream the admissible length-n words in lexicographic signed-edge
    order.  Nothing is materialized; the count equals the number of
    length-n walks on the shadowed graph.
    """
    if n < 1:
        raise ValueError("word length must be >= 1")
    word: list = []

    def extend() -> Iterator[tuple]:
        if len(word) == n:
            yield tuple(word)
            return
        candidates = g.out_edges(word[-1].dst) if word else g.signed_edges
        for s in candidates:
            word.append(s)
            yield from extend()
            word.pop()

    yield from extend()


def loop_words(g: ShadowedGraph, n: int) -> Iterator[tuple]:
    """Admissible length-n words with matching first source and last target."""
    for w in enumerate_admissible_words(g, n):
        if w[0].src == w[-1].dst:
            yield w


def d_loop_words(g: ShadowedGraph, n: int) -> Iterator[tuple]:
    """Loop words whose letters all share one base edge."""
    for w in loop_words(g, n):
        base = {s.base_id for s in w}
        if len(base) == 1:
            yield w


def diagram(a) -> frozenset:
    """Base-edge support of an element, orientation and multiplicity
    forgotten.  Vertices have empty support.
    """
    if a is EMPTY:
        raise ValueError("Empty element has no diagram")
    if isinstance(a, Vertex):
        return frozenset()
    return frozenset(s.base_id for s in a.word)


def diagram_distinct(a, b) -> bool:
    """Distinctness test backing the freeness criterion: the elements
    must not be mutually inverse and must have different diagrams.
    """
    if a is EMPTY or b is EMPTY:
        raise ValueError("diagram_distinct undefined on Empty")
    return a != inverse(b) and diagram(a) != diagram(b)
