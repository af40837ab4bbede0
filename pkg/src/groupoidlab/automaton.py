"""Graph automaton of a labeled graph: labeling map, shifting map,
automata actions, bounded-depth action trees, and the fractaloid test.

States are weighted elements (endpoint pair plus label word).  The
labeling map answers admissibility questions with the weight of the
connecting edge; the shifting map returns the edge (or the whole
continuation path in its extended form).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groupoid
from .graphs import GraphError, SignedEdge
from .groupoid import EMPTY, ReducedPath, Vertex
from .labeling import EMPTY_WEIGHT, LabeledGraph, WeightedElement, weight


class GraphAutomaton:
    """Automaton <states, signed edges, phi, psi> of a labeled graph."""

    def __init__(self, lg: LabeledGraph):
        self.lg = lg
        self.shadowed = lg.shadowed

    def vertex_state(self, v: str) -> WeightedElement:
        return weight(self.lg, Vertex(v))

    def phi(self, state: WeightedElement, w) -> WeightedElement:
        """Labeling map.  For a single edge: its weight when it continues
        the state; for a path: the weight of the path's last edge when
        the whole continuation is admissible; the empty weight otherwise.
        """
        word = _as_word(w)
        if state.is_empty or word is None:
            return EMPTY_WEIGHT
        if not groupoid.is_admissible(word) or word[0].src != state.terminal:
            return EMPTY_WEIGHT
        return weight(self.lg, (word[-1],))

    def psi_edge(self, state: WeightedElement, w):
        """Shifting map, edge form: the starting edge of the admissible
        continuation (coincides with the whole input on single edges)."""
        word = _as_word(w)
        if state.is_empty or word is None:
            return EMPTY
        if not groupoid.is_admissible(word) or word[0].src != state.terminal:
            return EMPTY
        return word[0]

    def psi_path(self, state: WeightedElement, w):
        """Shifting map, path form: the whole admissible continuation,
        returned as the raw edge word."""
        word = _as_word(w)
        if state.is_empty or word is None:
            return EMPTY
        if not groupoid.is_admissible(word) or word[0].src != state.terminal:
            return EMPTY
        return word

    def act(self, w):
        """The automaton action of a word: fold phi over its letters.
        Composition satisfies act(e1) o act(e2) = act(word e2 e1)."""
        word = _as_word(w)
        if word is None:
            raise ValueError("cannot act by the empty element")

        def action(state: WeightedElement) -> WeightedElement:
            for s in word:
                state = self.phi(state, (s,))
                if state.is_empty:
                    return EMPTY_WEIGHT
            return state

        return action


def _as_word(w):
    if w is EMPTY:
        return None
    if isinstance(w, SignedEdge):
        return (w,)
    if isinstance(w, ReducedPath):
        return w.word
    if isinstance(w, Vertex):
        return None
    word = tuple(w)
    return word if word else None


@dataclass(frozen=True)
class TreeNode:
    state: WeightedElement
    edge: SignedEdge | None  # psi output that produced this node; None at the root
    depth: int
    children: tuple


@dataclass(frozen=True)
class AutomatonTree:
    root_vertex: str
    depth: int
    root: TreeNode

    def nodes(self):
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(node.children))
        return out


def build_tree(aut: GraphAutomaton, root_vertex: str, depth: int) -> AutomatonTree:
    """Breadth-regular action tree to the given depth.  A node's
    children follow the signed edges leaving its terminal vertex, in
    sorted signed-edge order; payloads are the phi outputs."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if root_vertex not in aut.shadowed.vertices:
        raise GraphError(f"unknown root vertex {root_vertex!r}")

    def grow(state: WeightedElement, d: int) -> tuple:
        if d == depth:
            return ()
        kids = []
        for s in aut.shadowed.out_edges(state.terminal):
            child_state = aut.phi(state, (s,))
            kids.append(
                TreeNode(child_state, s, d + 1, grow(child_state, d + 1))
            )
        return tuple(kids)

    root_state = aut.vertex_state(root_vertex)
    root = TreeNode(root_state, None, 0, grow(root_state, 0))
    return AutomatonTree(root_vertex, depth, root)


@dataclass(frozen=True)
class FractaloidVerdict:
    fractaloid: bool
    depth: int
    max_label: int
    witness: dict | None  # vertex and reason of the first local failure
    trees: tuple  # per-root (vertex, regular, node count)


def _local_label_sets(aut: GraphAutomaton):
    """Per vertex, the multiset of signed labels on outgoing signed
    edges of the shadowed graph."""
    lg = aut.lg
    return {
        v: sorted(lg.label(s) for s in aut.shadowed.out_edges(v))
        for v in aut.shadowed.vertices
    }


def is_fractaloid(aut: GraphAutomaton, depth: int = 4) -> FractaloidVerdict:
    """Decide the fractaloid property.

    Local criterion (complete for finite labeled graphs): at every
    vertex of the shadowed graph the outgoing signed edges carry each
    label of {-N..-1, 1..N} exactly once, which makes every action tree
    the full 2N-regular tree.  The depth-d trees are built as evidence
    either way; the verdict is labeled with the depth checked.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    n = aut.lg.max_label
    full = sorted(list(range(-n, 0)) + list(range(1, n + 1)))
    witness = None
    for v, labels in sorted(_local_label_sets(aut).items()):
        if labels != full:
            witness = {
                "vertex": v,
                "reason": f"outgoing labels {labels} != full set {full}",
            }
            break
    trees = []
    for v in aut.shadowed.vertices:
        tree = build_tree(aut, v, depth)
        regular = _regular_to_depth(aut, tree, full)
        trees.append((v, regular, len(tree.nodes())))
    fractaloid = witness is None
    return FractaloidVerdict(
        fractaloid=fractaloid,
        depth=depth,
        max_label=n,
        witness=witness,
        trees=tuple(trees),
    )


def _regular_to_depth(aut: GraphAutomaton, tree: AutomatonTree, full) -> bool:
    for node in tree.nodes():
        if node.depth == tree.depth:
            continue
        labels = sorted(aut.lg.label(k.edge) for k in node.children)
        if labels != full:
            return False
    return True


def tree_dot(aut: GraphAutomaton, tree: AutomatonTree) -> str:
    """GraphViz DOT rendering of an action tree."""
    lines = ["digraph automaton_tree {", "  rankdir=LR;"]
    counter = 0

    def fmt(state: WeightedElement) -> str:
        if state.is_empty:
            return "empty"
        (a, b), labels = state.endpoints, state.labels
        return f"({a},{b})|{','.join(map(str, labels))}"

    def walk(node: TreeNode, name: str):
        nonlocal counter
        lines.append(f'  {name} [label="{fmt(node.state)}"];')
        for child in node.children:
            counter += 1
            cname = f"n{counter}"
            walk(child, cname)
            lines.append(f'  {name} -> {cname} [label="{child.edge.name()}"];')

    walk(tree.root, "n0")
    lines.append("}")
    return "\n".join(lines)
