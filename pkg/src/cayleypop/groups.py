"""Finite groups with canonical integer enumeration, Cayley graphs and digraphs.

Group elements are plain ``int`` indices into a fixed enumeration; the identity
is always index 0. Cyclic groups enumerate ``0..N-1``. A direct product
``A x B`` enumerates pairs row-major, so ``(a, b)`` has index ``a * |B| + b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .exceptions import CapacityError, InvalidOrderError, InvalidWeightsError, SelfLoopError

__all__ = [
    "MAX_GROUP_ORDER",
    "PALETTE",
    "FiniteGroup",
    "CyclicGroup",
    "ProductGroup",
    "GeneratorSet",
    "CayleyGraph",
    "CayleyDigraph",
    "make_cyclic",
    "direct_product",
    "group_from_json",
    "cayley_graph",
    "cayley_digraph",
    "free_group_ball",
    "free_group_ball_size",
    "export_dot",
]

MAX_GROUP_ORDER = 1 << 24
WEIGHT_TOL = 1e-12

PALETTE = ("red", "green", "blue", "orange", "purple", "brown", "magenta", "cyan", "gray", "black")


class FiniteGroup:
    """Base class. Subclasses provide ``order``, ``multiply``, ``inverse``, ``label``."""

    order: int
    identity = 0

    def multiply(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inverse(self, a: int) -> int:
        raise NotImplementedError

    def label(self, a: int) -> str:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise IndexError(f"element {a} out of range for group of order {self.order}")
        return a

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.array([self.inverse(a) for a in self.elements()], dtype=np.intp)

    def left_translation(self, h: int) -> np.ndarray:
        """Array ``p`` with ``p[g] = h * g``; a permutation of the elements."""
        return np.array([self.multiply(h, g) for g in self.elements()], dtype=np.intp)

    def right_translation(self, h: int) -> np.ndarray:
        """Array ``p`` with ``p[g] = g * h``."""
        return np.array([self.multiply(g, h) for g in self.elements()], dtype=np.intp)


@dataclass(frozen=True, eq=True)
class CyclicGroup(FiniteGroup):
    """The additive group of integers modulo ``N``."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise InvalidOrderError(f"cyclic group order must be a positive integer, got {self.N!r}")
        if self.N > MAX_GROUP_ORDER:
            raise CapacityError(f"group order {self.N} exceeds {MAX_GROUP_ORDER}")

    @property
    def order(self) -> int:
        return int(self.N)

    def multiply(self, a: int, b: int) -> int:
        return (a + b) % self.N

    def inverse(self, a: int) -> int:
        return (-a) % self.N

    def label(self, a: int) -> str:
        return str(a)

    def left_translation(self, h: int) -> np.ndarray:
        return (np.arange(self.N, dtype=np.intp) + h) % self.N

    right_translation = left_translation

    def to_json(self) -> dict:
        return {"type": "cyclic", "N": self.order}

    def __repr__(self):
        return f"Z{self.N}"


@dataclass(frozen=True, eq=True)
class ProductGroup(FiniteGroup):
    """Direct product ``left x right`` with componentwise operations."""

    left: FiniteGroup
    right: FiniteGroup

    def __post_init__(self):
        if self.left.order * self.right.order > MAX_GROUP_ORDER:
            raise CapacityError(
                f"product order {self.left.order}*{self.right.order} exceeds {MAX_GROUP_ORDER}"
            )

    @property
    def order(self) -> int:
        return self.left.order * self.right.order

    def compose(self, a: int, b: int) -> int:
        return a * self.right.order + b

    def decompose(self, g: int) -> tuple[int, int]:
        return divmod(g, self.right.order)

    def multiply(self, a: int, b: int) -> int:
        a1, a2 = self.decompose(a)
        b1, b2 = self.decompose(b)
        return self.compose(self.left.multiply(a1, b1), self.right.multiply(a2, b2))

    def inverse(self, a: int) -> int:
        a1, a2 = self.decompose(a)
        return self.compose(self.left.inverse(a1), self.right.inverse(a2))

    def label(self, a: int) -> str:
        a1, a2 = self.decompose(a)
        return f"({self.left.label(a1)},{self.right.label(a2)})"

    def left_translation(self, h: int) -> np.ndarray:
        h1, h2 = self.decompose(h)
        p1 = self.left.left_translation(h1)
        p2 = self.right.left_translation(h2)
        return (p1[:, None] * self.right.order + p2[None, :]).ravel()

    def right_translation(self, h: int) -> np.ndarray:
        h1, h2 = self.decompose(h)
        p1 = self.left.right_translation(h1)
        p2 = self.right.right_translation(h2)
        return (p1[:, None] * self.right.order + p2[None, :]).ravel()

    def to_json(self) -> dict:
        return {"type": "product", "factors": [self.left.to_json(), self.right.to_json()]}

    def __repr__(self):
        return f"{self.left!r}x{self.right!r}"


def make_cyclic(N: int) -> CyclicGroup:
    return CyclicGroup(N)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> ProductGroup:
    return ProductGroup(A, B)


def group_from_json(data: dict) -> FiniteGroup:
    kind = data.get("type")
    if kind == "cyclic":
        return CyclicGroup(int(data["N"]))
    if kind == "product":
        left, right = data["factors"]
        return ProductGroup(group_from_json(left), group_from_json(right))
    raise ValueError(f"unknown group type {kind!r}")


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered distinct group elements with weights summing to one."""

    elements: tuple[int, ...]
    weights: tuple[float, ...] = ()

    def __post_init__(self):
        elements = tuple(int(s) for s in self.elements)
        weights = tuple(float(p) for p in self.weights) if self.weights else ()
        if not elements:
            raise ValueError("generator set is empty")
        if len(set(elements)) != len(elements):
            raise ValueError(f"generator elements are not distinct: {elements}")
        if not weights:
            weights = (1.0 / len(elements),) * len(elements)
        if len(weights) != len(elements):
            raise InvalidWeightsError("weights and elements differ in length")
        if any(p < 0 or p > 1 for p in weights):
            raise InvalidWeightsError(f"weights must lie in [0, 1]: {weights}")
        if abs(math.fsum(weights) - 1.0) > WEIGHT_TOL:
            raise InvalidWeightsError(f"weights sum to {math.fsum(weights)!r}, not 1")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(zip(self.elements, self.weights))


GeneratorsLike = Union[GeneratorSet, Sequence[int]]


def _as_generators(S: GeneratorsLike) -> GeneratorSet:
    return S if isinstance(S, GeneratorSet) else GeneratorSet(tuple(S))


@dataclass(frozen=True)
class CayleyGraph:
    vertices: tuple[int, ...]
    edges: frozenset
    labels: tuple[str, ...] = ()

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def components(self) -> list[set[int]]:
        adjacency = {v: set() for v in self.vertices}
        for a, b in self.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        seen, comps = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(adjacency[u] - comp)
            seen |= comp
            comps.append(comp)
        return comps


@dataclass(frozen=True)
class CayleyDigraph:
    vertices: tuple[int, ...]
    arcs: tuple[tuple[int, int, int], ...]
    labels: tuple[str, ...] = ()

    def arcs_of_color(self, color: int) -> list[tuple[int, int]]:
        return [(a, b) for a, b, c in self.arcs if c == color]

    @property
    def colors(self) -> list[int]:
        return sorted({c for _, _, c in self.arcs})

    def color_permutation(self, color: int) -> dict[int, int] | None:
        """Map source -> target for one color, or None if it is not a bijection."""
        pairs = self.arcs_of_color(color)
        mapping = dict(pairs)
        if len(mapping) != len(pairs) or set(mapping) != set(self.vertices):
            return None
        if set(mapping.values()) != set(self.vertices):
            return None
        return mapping

    def cycles_of_color(self, color: int) -> list[list[int]]:
        mapping = self.color_permutation(color)
        if mapping is None:
            raise ValueError(f"color {color} does not act as a permutation")
        seen, cycles = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            cycle, u = [], v
            while u not in seen:
                seen.add(u)
                cycle.append(u)
                u = mapping[u]
            cycles.append(cycle)
        return cycles


def _check_generators(G: FiniteGroup, S: GeneratorSet) -> None:
    for s in S.elements:
        G.check(s)
        if s == G.identity:
            raise SelfLoopError("the identity in a generating set would create self-loops")


def cayley_graph(G: FiniteGroup, S: GeneratorsLike) -> CayleyGraph:
    S = _as_generators(S)
    _check_generators(G, S)
    edges = set()
    for s in S.elements:
        target = G.left_translation(s)
        for g in G.elements():
            h = int(target[g])
            edges.add((min(g, h), max(g, h)))
    labels = tuple(G.label(g) for g in G.elements())
    return CayleyGraph(tuple(G.elements()), frozenset(edges), labels)


def cayley_digraph(G: FiniteGroup, S: GeneratorsLike) -> CayleyDigraph:
    S = _as_generators(S)
    _check_generators(G, S)
    arcs = []
    for color, s in enumerate(S.elements):
        target = G.left_translation(s)
        arcs.extend((g, int(target[g]), color) for g in G.elements())
    labels = tuple(G.label(g) for g in G.elements())
    return CayleyDigraph(tuple(G.elements()), tuple(arcs), labels)


def free_group_ball_size(num_generators: int, radius: int) -> int:
    n, r = num_generators, radius
    if n == 1:
        return 2 * r + 1
    return 1 + 2 * n * ((2 * n - 1) ** r - 1) // (2 * n - 2)


def _letters(n: int) -> list[str]:
    if n > 26:
        raise CapacityError("at most 26 free generators are supported")
    out = []
    for i in range(n):
        c = chr(ord("a") + i)
        out += [c, c.upper()]
    return out


def free_group_ball(num_generators: int, radius: int) -> CayleyDigraph:
    """Cayley digraph of the free group restricted to reduced words of length <= radius.

    Arcs ``g -> s g`` are drawn for the positive generators ``a, b, ...`` and kept
    only when both ends lie inside the ball. Vertex 0 is the empty word ``e``.
    """
    if num_generators < 1:
        raise InvalidOrderError("need at least one generator")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if free_group_ball_size(num_generators, radius) > MAX_GROUP_ORDER:
        raise CapacityError("free group ball too large")

    letters = _letters(num_generators)
    words = [""]
    layer = [""]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for c in letters:
                if w and w[-1] == c.swapcase():
                    continue
                nxt.append(w + c)
        words += nxt
        layer = nxt
    index = {w: i for i, w in enumerate(words)}

    arcs = []
    for color in range(num_generators):
        s = letters[2 * color]
        for w in words:
            prod = w[1:] if w and w[0] == s.swapcase() else s + w
            if prod in index:
                arcs.append((index[w], index[prod], color))
    labels = tuple(w or "e" for w in words)
    return CayleyDigraph(tuple(range(len(words))), tuple(arcs), labels)


def export_dot(
    graph: CayleyGraph | CayleyDigraph,
    labeler: Callable[[int], str] | None = None,
    name: str = "G",
) -> str:
    """Render a Cayley graph or digraph as DOT text with deterministic ordering."""
    if labeler is None:
        labeler = (lambda v: graph.labels[v]) if graph.labels else str
    directed = isinstance(graph, CayleyDigraph)
    lines = [f"{'digraph' if directed else 'graph'} {name} {{"]
    for v in graph.vertices:
        text = labeler(v).replace('"', '\\"')
        lines.append(f'  v{v} [label="{text}"];')
    if directed:
        for a, b, c in graph.arcs:
            lines.append(f"  v{a} -> v{b} [color={PALETTE[c % len(PALETTE)]}];")
    else:
        for a, b in sorted(graph.edges):
            lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
