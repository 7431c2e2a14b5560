"""Balls in the Cayley tree of a free group.

Vertices are reduced words (tuples of letters); the ball of radius r
holds every reduced word of length at most r.  Edges join u to u.x when
the product stays reduced.  For rank n >= 2 the vertex count is
1 + 2n((2n-1)^r - 1)/(2n-2), and a guard refuses to materialise balls
beyond a configurable budget.
"""

from __future__ import annotations

from .errors import InvalidInputError, ResourceCapError
from .words import Alphabet, Word, format_word

DEFAULT_VERTEX_CAP = 2_000_000


def predicted_vertex_count(rank: int, radius: int) -> int:
    if radius < 0:
        raise InvalidInputError(f"radius must be >= 0, got {radius}")
    if rank == 1:
        return 2 * radius + 1
    d = 2 * rank
    return 1 + d * ((d - 1) ** radius - 1) // (d - 2)


class TreeBall:
    """The radius-r ball around the identity vertex."""

    def __init__(self, alphabet: Alphabet, radius: int, vertices):
        self.alphabet = alphabet
        self.radius = radius
        self.vertices: tuple[Word, ...] = tuple(vertices)
        self._vset = frozenset(self.vertices)

    def __contains__(self, vertex) -> bool:
        return tuple(vertex) in self._vset

    def vertex_count(self) -> int:
        return len(self.vertices)

    def edge_count(self) -> int:
        return len(self.vertices) - 1

    def edges(self):
        """Edges as (parent, child) pairs, child one letter longer."""
        for v in self.vertices:
            if v:
                yield v[:-1], v

    def sphere(self, distance: int) -> tuple[Word, ...]:
        return tuple(v for v in self.vertices if len(v) == distance)

    def interior_vertices(self) -> tuple[Word, ...]:
        """Vertices whose whole star lies inside the ball."""
        return tuple(v for v in self.vertices if len(v) <= self.radius - 1)

    def interior_edges(self):
        """Edges with both endpoints at distance <= radius - 1."""
        for u, v in self.edges():
            if len(v) <= self.radius - 1:
                yield u, v

    def neighbors(self, vertex: Word) -> tuple[Word, ...]:
        """Ball neighbours of a vertex, parent first."""
        out = []
        if vertex:
            out.append(vertex[:-1])
        if len(vertex) < self.radius:
            for x in self.alphabet.letters():
                if not vertex or x != -vertex[-1]:
                    out.append(vertex + (x,))
        return tuple(out)

    def to_dot(self, name: str = "ball") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{format_word(v)}";')
        for u, v in self.edges():
            lines.append(f'  "{format_word(u)}" -- "{format_word(v)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_ball(alphabet: Alphabet, radius: int, cap: int = DEFAULT_VERTEX_CAP) -> TreeBall:
    """Materialise the ball, refusing if the predicted size exceeds ``cap``."""
    predicted = predicted_vertex_count(alphabet.rank, radius)
    if predicted > cap:
        raise ResourceCapError(
            f"ball of rank {alphabet.rank}, radius {radius} has {predicted} vertices"
            f" (cap {cap})",
            predicted=predicted,
            cap=cap,
        )
    letters = alphabet.letters()
    vertices: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for x in letters:
                if not v or x != -v[-1]:
                    nxt.append(v + (x,))
        vertices.extend(nxt)
        frontier = nxt
    return TreeBall(alphabet, radius, vertices)


def edge_label(frm: Word, to: Word) -> int:
    """The letter labelling the tree edge from ``frm`` to ``to``."""
    if len(to) == len(frm) + 1 and to[: len(frm)] == frm:
        return to[-1]
    if len(frm) == len(to) + 1 and frm[: len(to)] == to:
        return -frm[-1]
    raise InvalidInputError(f"not a tree edge: {frm} -- {to}")
