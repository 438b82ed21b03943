"""Loop-free digraphs, walk streams, and exact chromatic machinery."""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .errors import InvalidGraphError, NotProperColoring, SizeLimitExceeded
from .poset import Poset

Walk = tuple[int, ...]

INFINITE = math.inf

DEFAULT_MAX_COLORING_N = 24


class Digraph:
    """Immutable digraph on vertices ``0..n-1``.

    Edges are ordered pairs of distinct vertices; (u, v) and (v, u) may
    both be present but duplicates and self loops are rejected.
    """

    __slots__ = ("n", "edges", "out", "inn")

    def __init__(self, n: int, edges):
        if n < 0:
            raise InvalidGraphError("vertex count must be non-negative")
        self.n = n
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise InvalidGraphError(f"self loop at vertex {u}")
            if (u, v) in seen:
                raise InvalidGraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        self.edges = tuple(sorted(seen))
        out = [[] for _ in range(n)]
        inn = [[] for _ in range(n)]
        for u, v in self.edges:
            out[u].append(v)
            inn[v].append(u)
        self.out = tuple(tuple(a) for a in out)
        self.inn = tuple(tuple(a) for a in inn)

    def is_symmetric(self) -> bool:
        es = set(self.edges)
        return all((v, u) in es for u, v in es)

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={len(self.edges)})"


def complete_symmetric(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def walks(G: Digraph, k: int) -> Iterator[Walk]:
    """Stream every k-walk exactly once, in lexicographic vertex order.

    A k-walk is a vertex sequence of length k whose consecutive pairs are
    edges; non-consecutive repeats are allowed. The stream is never
    materialized here - walk counts grow like n * max_outdegree**(k-1).
    """
    if k < 1:
        raise ValueError("walk order k must be >= 1")

    def extend(prefix: Walk) -> Iterator[Walk]:
        if len(prefix) == k:
            yield prefix
            return
        for w in G.out[prefix[-1]]:
            yield from extend(prefix + (w,))

    for v in range(G.n):
        yield from extend((v,))


def is_walk(G: Digraph, seq) -> bool:
    seq = tuple(seq)
    if len(seq) < 1 or any(not 0 <= v < G.n for v in seq):
        return False
    es = set(G.edges)
    return all((a, b) in es for a, b in zip(seq, seq[1:]))


def has_directed_cycle(G: Digraph) -> bool:
    return _topological_order(G) is None


def _topological_order(G: Digraph) -> list[int] | None:
    indeg = [len(G.inn[v]) for v in range(G.n)]
    stack = [v for v in range(G.n) if indeg[v] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in G.out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return order if len(order) == G.n else None


def longest_walk_length(G: Digraph) -> int | float:
    """Edge count of a longest walk; INFINITE when a directed cycle exists."""
    order = _topological_order(G)
    if order is None:
        return INFINITE
    dist = [0] * G.n
    for v in order:
        for w in G.out[v]:
            if dist[v] + 1 > dist[w]:
                dist[w] = dist[v] + 1
    return max(dist, default=0)


def undirected_version(G: Digraph) -> Digraph:
    """Symmetric closure: both directions present wherever either was."""
    es = set(G.edges)
    es |= {(v, u) for u, v in G.edges}
    return Digraph(G.n, es)


def _adjacency_sets(G: Digraph) -> list[set[int]]:
    und = undirected_version(G)
    return [set(und.out[v]) for v in range(und.n)]


def _greedy_clique(adj: list[set[int]]) -> list[int]:
    n = len(adj)
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    clique: list[int] = []
    for v in order:
        if all(v in adj[u] for u in clique):
            clique.append(v)
    return clique


def _dsatur_greedy(adj: list[set[int]]) -> list[int]:
    n = len(adj)
    colors = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] == -1),
            key=lambda u: (len(sat[u]), len(adj[u]), -u),
        )
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for w in adj[v]:
            sat[w].add(c)
    return colors


def optimal_coloring(G: Digraph, max_n: int = DEFAULT_MAX_COLORING_N) -> list[int]:
    """Minimum proper coloring of the undirected version, exactly.

    Branch and bound over DSATUR vertex order, seeded with a greedy clique
    lower bound and the DSATUR-greedy upper bound.
    """
    if G.n > max_n:
        raise SizeLimitExceeded(f"exact coloring capped at {max_n} vertices (got {G.n})")
    n = G.n
    if n == 0:
        return []
    adj = _adjacency_sets(G)
    clique = _greedy_clique(adj)
    lower = len(clique)
    best = _dsatur_greedy(adj)
    upper = max(best) + 1
    if upper == lower:
        return best

    colors = [-1] * n
    # pre-color the clique: any optimal coloring can be permuted onto it
    for i, v in enumerate(clique):
        colors[v] = i

    def saturation(u: int) -> int:
        return len({colors[w] for w in adj[u] if colors[w] != -1})

    def search(uncolored: list[int], used: int):
        nonlocal best, upper
        if not uncolored:
            if used < upper:
                best = colors.copy()
                upper = used
            return
        v = max(uncolored, key=lambda u: (saturation(u), len(adj[u]), -u))
        rest = [u for u in uncolored if u != v]
        forbidden = {colors[w] for w in adj[v] if colors[w] != -1}
        # existing colors plus at most one fresh one, staying under the best
        for c in range(used + 1):
            if c + 1 >= upper:
                break
            if c in forbidden:
                continue
            colors[v] = c
            search(rest, max(used, c + 1))
            colors[v] = -1
            if upper == lower:
                return

    search([v for v in range(n) if colors[v] == -1], lower)
    return best


def chromatic_number(G: Digraph, max_n: int = DEFAULT_MAX_COLORING_N) -> int:
    if G.n == 0:
        return 0
    return max(optimal_coloring(G, max_n)) + 1


def orient_from_coloring(G0: Digraph, P: Poset, colors, linear_extension=None) -> Digraph:
    """Orient each undirected edge against a linear extension of the colors.

    ``colors`` must be proper on the undirected version. Each edge {u, v}
    runs from the endpoint whose color comes later in the extension, so the
    result is acyclic and u -> v implies colors[u] is not below colors[v].
    """
    und = undirected_version(G0)
    colors = list(colors)
    if len(colors) != G0.n:
        raise NotProperColoring("need one color per vertex")
    P._check_ids(colors)
    if linear_extension is None:
        linear_extension = P.linear_extension()
    position = {e: i for i, e in enumerate(linear_extension)}
    if sorted(position) != list(range(P.n)):
        raise ValueError("linear extension must enumerate every poset element once")
    edges = []
    for u, v in und.edges:
        if u > v:
            continue
        cu, cv = colors[u], colors[v]
        if cu == cv:
            raise NotProperColoring(f"adjacent vertices {u} and {v} share color {cu}")
        edges.append((u, v) if position[cu] > position[cv] else (v, u))
    return Digraph(G0.n, edges)


# ---------------------------------------------------------------------------
# serialization


def digraph_to_json(G: Digraph) -> dict:
    return {"n": G.n, "edges": [[u, v] for u, v in G.edges]}


def digraph_from_json(obj: dict) -> Digraph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"malformed digraph JSON: {exc}") from exc
    return Digraph(n, edges)


def digraph_from_edge_list(text: str, n: int | None = None) -> Digraph:
    """Parse one ``u v`` pair per line; blank lines and # comments ignored."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidGraphError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = max((max(u, v) for u, v in edges), default=-1) + 1
    return Digraph(n, edges)


def digraph_to_dot(G: Digraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(G.n):
        lines.append(f"  {v};")
    for u, v in G.edges:
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
