"""Shared test utilities: random corpora and independent oracles.

The oracles deliberately avoid the production code paths: articulation
points by vertex deletion, axis membership by the conjugation-length
criterion |v^-1 h v| = |h|_cyclic, and axis identity by the reduced
conjugate element itself (valid for indivisible words, where conjugates
correspond to axes one to one).
"""

from __future__ import annotations

import random

from freesplit.graphs import Multigraph
from freesplit.words import (
    CyclicWord,
    conjugacy_class_rep,
    cyclic_reduce,
    free_reduce,
    invert_word,
)


# ---------------------------------------------------------------------------
# Random corpora


def random_reduced_word(rng: random.Random, rank: int, length: int) -> tuple[int, ...]:
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    word: list[int] = []
    for _ in range(length):
        choices = [x for x in letters if not word or x != -word[-1]]
        word.append(rng.choice(choices))
    return tuple(word)


def random_cyclic_word(rng: random.Random, rank: int, length: int) -> CyclicWord:
    """A uniform-ish cyclically reduced word of exactly the given length."""
    assert length >= 1
    while True:
        word = random_reduced_word(rng, rank, length)
        if word[0] != -word[-1] or length == 1:
            return CyclicWord(word)


def random_family(
    rng: random.Random, rank: int, max_words: int, max_total_length: int
) -> tuple[CyclicWord, ...]:
    n_words = rng.randint(1, max_words)
    family = []
    budget = max_total_length
    for i in range(n_words):
        remaining = n_words - i
        max_len = max(1, budget - (remaining - 1))
        length = rng.randint(1, max_len)
        budget -= length
        family.append(random_cyclic_word(rng, rank, length))
    return tuple(family)


def random_clean_family(
    rng: random.Random, rank: int, max_words: int, max_total_length: int
) -> tuple[CyclicWord, ...]:
    """A family of indivisible, pairwise non-conjugate-up-to-inverse words.

    Arc systems are sets of lines, so a proper power or a repeated
    conjugacy class contributes its line only once while the Whitehead
    graph counts its letters every time; the star/Whitehead multigraph
    comparison is only meaningful on families like these.
    """
    while True:
        family = random_family(rng, rank, max_words, max_total_length)
        if any(w.is_proper_power() for w in family):
            continue
        reps = {conjugacy_class_rep(w) for w in family}
        if len(reps) == len(family):
            return family


# ---------------------------------------------------------------------------
# Graph oracles


def brute_articulation_points(graph: Multigraph) -> set:
    """Articulation points by deleting each vertex and recounting components."""
    cuts = set()
    for v in graph.vertices:
        comp = _component_of(graph, v, excluded=None)
        if comp == {v}:
            continue
        rest = comp - {v}
        start = next(iter(rest))
        reached = _component_of(graph, start, excluded=v)
        if reached != rest:
            cuts.add(v)
    return cuts


def _component_of(graph: Multigraph, start, excluded) -> set:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in graph.neighbors(u):
            if w != excluded and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def brute_is_two_vertex_connected(graph: Multigraph) -> bool:
    if len(graph.vertices) < 2:
        return False
    start = graph.vertices[0]
    if _component_of(graph, start, excluded=None) != set(graph.vertices):
        return False
    return not brute_articulation_points(graph)


def collapse(graph: Multigraph, subset, label) -> Multigraph:
    """Collapse a vertex subset to one new vertex, dropping resulting loops."""
    subset = set(subset)
    vertices = [v for v in graph.vertices if v not in subset] + [label]
    out = Multigraph(vertices, allow_loops=True)
    for u, v, m in graph.edges():
        nu = label if u in subset else u
        nv = label if v in subset else v
        if nu == nv:
            continue
        out.add_edge(nu, nv, m)
    return out


def random_multigraph(rng: random.Random, max_vertices: int = 12) -> Multigraph:
    n = rng.randint(2, max_vertices)
    vertices = list(range(n))
    graph = Multigraph(vertices, allow_loops=True)
    # spanning tree first so most samples are connected
    for v in range(1, n):
        graph.add_edge(rng.randrange(v), v)
    extra = rng.randint(0, n)
    for _ in range(extra):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            graph.add_edge(u, v, rng.randint(1, 2))
    return graph


def grow_connected_subset(rng: random.Random, graph: Multigraph, size: int, forbidden=()):
    """A random connected vertex subset avoiding ``forbidden``, or None."""
    candidates = [v for v in graph.vertices if v not in forbidden]
    if not candidates:
        return None
    start = rng.choice(candidates)
    subset = {start}
    while len(subset) < size:
        frontier = [
            w
            for v in subset
            for w in graph.neighbors(v)
            if w not in subset and w not in forbidden
        ]
        if not frontier:
            break
        subset.add(rng.choice(frontier))
    return subset


# ---------------------------------------------------------------------------
# Tree-side oracles (independent of the arcs module)


def on_axis(vertex, element) -> bool:
    """Whether a vertex lies on the axis of a hyperbolic element.

    Uses the classical criterion: v is on the axis of h iff conjugating
    h by v does not increase reduced length beyond the cyclic length.
    """
    core, _ = cyclic_reduce(element)
    cyc_len = 0 if core is None else len(core)
    conj = free_reduce(invert_word(vertex) + tuple(element) + tuple(vertex))
    return len(conj) == cyc_len


def oracle_lines(family, rank: int, base_radius: int) -> dict[tuple, tuple[int, ...]]:
    """Axes with base within ``base_radius``, keyed independently.

    Every such line passes through its base b and reads some rotation of
    a family word there, so it is the axis of the reduced conjugate
    h = b w' b^-1.  For indivisible, pairwise non-conjugate-up-to-inverse
    families the key min(h, h^-1) identifies the line.  Returns a map
    from key to one representative element.
    """
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    lines: dict[tuple, tuple[int, ...]] = {}
    vertices = _ball_vertices(letters, base_radius)
    for word in family:
        rotations = {
            word.letters[k:] + word.letters[:k] for k in range(len(word.letters))
        }
        for b in vertices:
            for rot in rotations:
                h = free_reduce(b + rot + invert_word(b))
                key = min(h, invert_word(h))
                lines.setdefault(key, h)
    return lines


def _ball_vertices(letters, radius: int):
    out = [()]
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for x in letters:
                if not v or x != -v[-1]:
                    nxt.append(v + (x,))
        out.extend(nxt)
        frontier = nxt
    return out


def oracle_axis_count(family, rank: int, radius: int) -> int:
    """Number of distinct axes meeting the ball, by the element oracle."""
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    ball = _ball_vertices(letters, radius)
    lines = oracle_lines(family, rank, radius)
    return sum(1 for h in lines.values() if any(on_axis(v, h) for v in ball))


def oracle_edge_count(family, rank: int, edge) -> int:
    """Number of distinct axes containing both endpoints of a tree edge."""
    u, v = (tuple(p) for p in edge)
    base_radius = max(len(u), len(v))
    lines = oracle_lines(family, rank, base_radius)
    return sum(1 for h in lines.values() if on_axis(u, h) and on_axis(v, h))


def oracle_class_count(family, rank: int, radius: int) -> int:
    """Sphere-class count at one radius, by the element oracle."""
    letters = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    sphere = [v for v in _ball_vertices(letters, radius) if len(v) == radius]
    index = {v: i for i, v in enumerate(sphere)}
    parent = list(range(len(sphere)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for h in oracle_lines(family, rank, radius - 1).values():
        exits = [v for v in sphere if on_axis(v, h)]
        if len(exits) == 2:
            a, b = find(index[exits[0]]), find(index[exits[1]])
            if a != b:
                parent[a] = b
    return sum(1 for i in range(len(sphere)) if find(i) == i)


# ---------------------------------------------------------------------------
# Word-side oracles


def whitehead_pair_recount(family, rank: int) -> dict[frozenset, int]:
    """Edge multiplicities recounted directly from letter pair scans."""
    counts: dict[frozenset, int] = {}
    for word in family:
        w = word.letters
        for i in range(len(w)):
            x, y = w[i], w[(i + 1) % len(w)]
            key = frozenset((x, -y))
            counts[key] = counts.get(key, 0) + 1
    return counts


def bounded_product_search(candidates, target, max_factors: int):
    """Search products of the candidates and inverses for a target element.

    Returns a factor list like [(index, exponent), ...] or None.  The
    search is breadth-first over expressions with at most ``max_factors``
    factors, so a None answer only certifies absence within the bound.
    """
    target = free_reduce(target)
    gens = []
    for i, c in enumerate(candidates):
        word = tuple(c.letters) if isinstance(c, CyclicWord) else tuple(c)
        gens.append(((i, 1), word))
        gens.append(((i, -1), invert_word(word)))
    frontier = [((), ())]
    seen = {()}
    for _ in range(max_factors):
        nxt = []
        for expr, word in frontier:
            for tag, gen in gens:
                new_word = free_reduce(word + gen)
                if new_word == target:
                    return list(expr + (tag,))
                if new_word not in seen:
                    seen.add(new_word)
                    nxt.append((expr + (tag,), new_word))
        frontier = nxt
    return None
