"""Finite posets, antichains, order ideals, and the antichain lattice.

Elements of a poset are dense integer ids ``0..n-1``; the order relation is
a dense boolean matrix (``leq[x, y]`` iff ``x <= y``). Antichains are
canonicalized as sorted id tuples, order ideals as frozensets of ids.

The central constructor is :func:`birkhoff`, which materializes the
distributive lattice of all antichains of a poset (equivalently, its lower
order ideals ordered by containment) and which can be iterated with
:func:`birkhoff_power`.
"""

from __future__ import annotations

import heapq
from itertools import product as _iproduct
from math import prod

import numpy as np

from .errors import (
    AntichainLimitExceeded,
    CycleInCoverRelations,
    InvalidPosetError,
    NotALattice,
    SizeLimitExceeded,
)

Antichain = tuple[int, ...]
OrderIdeal = frozenset[int]

DEFAULT_ANTICHAIN_LIMIT = 10**6
DEFAULT_PRODUCT_CAP = 4096


class Poset:
    """Immutable finite poset over elements ``0..n-1``.

    ``leq`` is stored as a read-only boolean matrix. ``labels`` are
    human-readable names, defaulting to the decimal ids.
    """

    __slots__ = ("leq", "n", "labels")

    def __init__(self, leq, labels=None, *, validate=True):
        m = np.asarray(leq, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidPosetError(f"relation matrix must be square, got shape {m.shape}")
        m = m.copy()
        m.setflags(write=False)
        self.leq = m
        self.n = m.shape[0]
        if labels is None:
            labels = tuple(str(i) for i in range(self.n))
        else:
            labels = tuple(str(x) for x in labels)
            if len(labels) != self.n:
                raise InvalidPosetError("label count does not match element count")
        self.labels = labels
        if validate:
            self._validate()

    def _validate(self):
        m = self.leq
        if self.n and not m.diagonal().all():
            raise InvalidPosetError("relation is not reflexive")
        if (m & m.T & ~np.eye(self.n, dtype=bool)).any():
            raise InvalidPosetError("relation is not antisymmetric")
        if self.n:
            two_step = (m.astype(np.float32) @ m.astype(np.float32)) > 0
            if (two_step & ~m).any():
                raise InvalidPosetError("relation is not transitive")

    def le(self, x: int, y: int) -> bool:
        self._check_ids((x, y))
        return bool(self.leq[x, y])

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.le(x, y)

    def _check_ids(self, ids):
        for x in ids:
            if not 0 <= x < self.n:
                raise IndexError(f"element id {x} out of range for poset of size {self.n}")

    def down_set(self, x: int) -> OrderIdeal:
        """All elements below or equal to ``x``."""
        self._check_ids((x,))
        return frozenset(np.flatnonzero(self.leq[:, x]).tolist())

    def up_set(self, x: int) -> OrderIdeal:
        self._check_ids((x,))
        return frozenset(np.flatnonzero(self.leq[x, :]).tolist())

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (x, y) with x < y and nothing strictly between."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        between = (lt.astype(np.float32) @ lt.astype(np.float32)) > 0
        cov = lt & ~between
        return [(int(x), int(y)) for x, y in zip(*np.nonzero(cov))]

    def linear_extension(self) -> list[int]:
        """Lexicographically smallest topological order of the elements."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        indeg = lt.sum(axis=0).astype(int).tolist()
        heap = [x for x in range(self.n) if indeg[x] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            x = heapq.heappop(heap)
            order.append(x)
            for y in np.flatnonzero(lt[x]).tolist():
                indeg[y] -= 1
                if indeg[y] == 0:
                    heapq.heappush(heap, y)
        return order

    def dual(self) -> "Poset":
        return Poset(self.leq.T, self.labels, validate=False)

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.n == other.n
            and np.array_equal(self.leq, other.leq)
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.leq.tobytes(), self.labels))

    def __repr__(self):
        return f"Poset(n={self.n})"


class AntichainLattice(Poset):
    """The lattice A(P) of all antichains of a base poset.

    Element ``i`` stands for ``antichains[i]`` (a sorted tuple of base-poset
    ids, in lexicographic enumeration order); the order is containment of
    the generated ideals.
    """

    __slots__ = ("base", "antichains", "_index")

    def __init__(self, base: Poset, antichains, leq, labels):
        super().__init__(leq, labels, validate=False)
        self.base = base
        self.antichains = tuple(tuple(a) for a in antichains)
        self._index = {a: i for i, a in enumerate(self.antichains)}

    def index_of(self, antichain) -> int:
        key = tuple(sorted(antichain))
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{key} is not an antichain of the base poset") from None


class ProductPoset(Poset):
    """Componentwise order on tuples in [0,l_1] x ... x [0,l_d]."""

    __slots__ = ("bounds", "tuples", "_index")

    def __init__(self, bounds, tuples, leq, labels):
        super().__init__(leq, labels, validate=False)
        self.bounds = tuple(bounds)
        self.tuples = tuple(tuple(t) for t in tuples)
        self._index = {t: i for i, t in enumerate(self.tuples)}

    def index_of(self, coords) -> int:
        return self._index[tuple(coords)]


# ---------------------------------------------------------------------------
# antichains and ideals


def is_antichain(P: Poset, elems) -> bool:
    xs = sorted(set(elems))
    P._check_ids(xs)
    for i, x in enumerate(xs):
        for y in xs[i + 1 :]:
            if P.leq[x, y] or P.leq[y, x]:
                return False
    return True


def max_elements(P: Poset, xs) -> Antichain:
    """Maximal elements of a subset: those with nothing of the subset above."""
    xs = sorted(set(xs))
    P._check_ids(xs)
    out = []
    for x in xs:
        if not any(y != x and P.leq[x, y] for y in xs):
            out.append(x)
    return tuple(out)


def ideal_generated(P: Poset, ys) -> OrderIdeal:
    """Smallest lower order ideal containing ``ys``."""
    ys = sorted(set(ys))
    P._check_ids(ys)
    if not ys:
        return frozenset()
    mask = np.zeros(P.n, dtype=bool)
    for y in ys:
        mask |= P.leq[:, y]
    return frozenset(np.flatnonzero(mask).tolist())


def is_order_ideal(P: Poset, members) -> bool:
    members = frozenset(members)
    P._check_ids(members)
    return ideal_generated(P, members) == members


def antichain_leq(P: Poset, X, Y) -> bool:
    """X <= Y in A(P): every x in X lies below some y in Y.

    Equivalent to containment of the generated ideals.
    """
    xs, ys = sorted(set(X)), sorted(set(Y))
    P._check_ids(xs)
    P._check_ids(ys)
    return all(any(P.leq[x, y] for y in ys) for x in xs)


def iter_antichains(P: Poset, limit: int | None = None):
    """Yield every antichain of P as a sorted tuple, in lexicographic order.

    Depth-first over elements in id order, pruning on comparability, so the
    empty antichain comes first and the stream is the canonical enumeration
    used by :func:`birkhoff`. Raises AntichainLimitExceeded past ``limit``.
    """
    n = P.n
    # incomparability bitmask per element, restricted to larger ids
    incomp_above = []
    for x in range(n):
        mask = 0
        for y in range(x + 1, n):
            if not (P.leq[x, y] or P.leq[y, x]):
                mask |= 1 << y
        incomp_above.append(mask)
    count = 0

    def emit(prefix, avail):
        nonlocal count
        count += 1
        if limit is not None and count > limit:
            raise AntichainLimitExceeded(
                f"poset has more than {limit} antichains; raise the limit or avoid materializing"
            )
        yield prefix
        while avail:
            e = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            yield from emit(prefix + (e,), avail & incomp_above[e])

    yield from emit((), (1 << n) - 1 if n else 0)


def birkhoff(P: Poset, limit: int = DEFAULT_ANTICHAIN_LIMIT) -> AntichainLattice:
    """The distributive lattice A(P) of all antichains of P.

    Antichains get dense ids in lexicographic order of their sorted id
    tuples; the empty antichain is the minimum. Raises
    AntichainLimitExceeded when more than ``limit`` antichains exist.
    """
    chains = list(iter_antichains(P, limit))
    m = len(chains)
    # order by containment of generated ideals
    ideals = np.zeros((m, max(P.n, 1)), dtype=bool)
    for i, a in enumerate(chains):
        for x in a:
            ideals[i, : P.n] |= P.leq[:, x]
    misses = ideals.astype(np.float32) @ (~ideals).astype(np.float32).T
    leq = misses == 0
    labels = ["{" + ",".join(P.labels[x] for x in a) + "}" for a in chains]
    return AntichainLattice(P, chains, leq, labels)


def birkhoff_power(P: Poset, m: int, limit: int = DEFAULT_ANTICHAIN_LIMIT) -> Poset:
    """Apply the antichain-lattice operator ``m`` times; m = 0 returns P."""
    if m < 0:
        raise ValueError("power must be non-negative")
    Q = P
    for _ in range(m):
        Q = birkhoff(Q, limit)
    return Q


# ---------------------------------------------------------------------------
# Dilworth number


def _strict_adjacency(P: Poset) -> list[list[int]]:
    lt = P.leq & ~np.eye(P.n, dtype=bool)
    return [np.flatnonzero(lt[x]).tolist() for x in range(P.n)]


def _max_matching(adj: list[list[int]]) -> list[int]:
    """Kuhn's augmenting paths; returns match_right (right id -> left id or -1)."""
    n = len(adj)
    match_right = [-1] * n
    match_left = [-1] * n

    def try_augment(u, seen):
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] == -1 or try_augment(match_right[v], seen):
                    match_right[v] = u
                    match_left[u] = v
                    return True
        return False

    for u in range(n):
        try_augment(u, [False] * n)
    return match_right


def dilworth_number(P: Poset) -> int:
    """Maximum antichain size, via minimum chain cover.

    On the transitively closed comparability DAG, a minimum chain cover has
    n - |M| chains for a maximum matching M of the split-node bipartite
    graph, and by Dilworth's theorem that equals the maximum antichain size.
    """
    if P.n == 0:
        return 0
    match_right = _max_matching(_strict_adjacency(P))
    matched = sum(1 for v in match_right if v != -1)
    return P.n - matched


def maximum_antichain(P: Poset) -> Antichain:
    """A maximum antichain, extracted from a minimum vertex cover.

    Uses the alternating-reachability construction: with cover
    C = (L \\ Z) + (R & Z), the elements covered on neither side are
    pairwise incomparable and there are exactly ``dilworth_number(P)``
    of them.
    """
    if P.n == 0:
        return ()
    adj = _strict_adjacency(P)
    match_right = _max_matching(adj)
    match_left = [-1] * P.n
    for v, u in enumerate(match_right):
        if u != -1:
            match_left[u] = v
    z_left = [match_left[u] == -1 for u in range(P.n)]
    z_right = [False] * P.n
    queue = [u for u in range(P.n) if z_left[u]]
    while queue:
        u = queue.pop()
        for v in adj[u]:
            if match_left[u] != v and not z_right[v]:
                z_right[v] = True
                w = match_right[v]
                if w != -1 and not z_left[w]:
                    z_left[w] = True
                    queue.append(w)
    picked = tuple(x for x in range(P.n) if z_left[x] and not z_right[x])
    return picked


def dilworth_number_exhaustive(P: Poset, max_n: int = 20) -> int:
    """Enumeration oracle for the matching implementation."""
    if P.n > max_n:
        raise SizeLimitExceeded(f"exhaustive antichain scan capped at {max_n} elements")
    best = 0
    for a in iter_antichains(P):
        if len(a) > best:
            best = len(a)
    return best


# ---------------------------------------------------------------------------
# lattices and join-irreducibles


def _least_of(P: Poset, mask: np.ndarray) -> int | None:
    """Id of the minimum of the masked element set, or None if there is none."""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    sub = P.leq[np.ix_(idx, idx)]
    rows = np.flatnonzero(sub.all(axis=1))
    if rows.size == 0:
        return None
    return int(idx[rows[0]])


def join_table(L: Poset) -> np.ndarray:
    """n x n table of least upper bounds; raises NotALattice when one is missing."""
    n = L.n
    table = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            j = _least_of(L, L.leq[x] & L.leq[y])
            if j is None:
                raise NotALattice(f"elements {x} and {y} have no join")
            table[x, y] = table[y, x] = j
    return table


def meet_table(L: Poset) -> np.ndarray:
    dual = join_table(L.dual())
    return dual


def bottom_element(L: Poset) -> int | None:
    for x in range(L.n):
        if L.leq[x].all():
            return x
    return None


def join_irreducible_ids(L: Poset) -> list[int]:
    """Ids of the non-minimum elements that are not a join of two strictly
    smaller elements; raises NotALattice when L is not a lattice."""
    join_table(L)
    meet_table(L)
    if L.n == 0:
        return []
    bottom = bottom_element(L)
    ids = []
    for z in range(L.n):
        if z == bottom:
            continue
        below = L.leq[:, z].copy()
        below[z] = False
        if not below.any():
            ids.append(z)
            continue
        # join of everything strictly below z: z is reducible iff it equals z
        common_ub = np.ones(L.n, dtype=bool)
        for x in np.flatnonzero(below):
            common_ub &= L.leq[x]
        if _least_of(L, common_ub) != z:
            ids.append(z)
    return ids


def induced_subposet(P: Poset, ids) -> Poset:
    ids = list(ids)
    P._check_ids(ids)
    sub = P.leq[np.ix_(ids, ids)]
    return Poset(sub, [P.labels[i] for i in ids], validate=False)


def join_irreducibles(L: Poset) -> Poset:
    """The induced poset of join-irreducibles (Birkhoff's representing poset)."""
    return induced_subposet(L, join_irreducible_ids(L))


def is_distributive_lattice(L: Poset) -> bool:
    """True when the join-irreducible down-set map is an order embedding."""
    try:
        ids = join_irreducible_ids(L)
    except NotALattice:
        return False
    if L.n == 0:
        return True
    rep = L.leq[np.ix_(ids, range(L.n))]  # rep[:, z] = irreducibles below z
    misses = rep.astype(np.float32).T @ (~rep).astype(np.float32)
    return bool(((misses == 0) == L.leq).all())


# ---------------------------------------------------------------------------
# constructors


def trivial_poset(n: int, labels=None) -> Poset:
    """Antichain order: x <= y iff x = y."""
    if n < 0:
        raise ValueError("size must be non-negative")
    return Poset(np.eye(n, dtype=bool), labels, validate=False)


def chain_poset(n: int, labels=None) -> Poset:
    """Total order 0 < 1 < ... < n-1."""
    if n < 0:
        raise ValueError("size must be non-negative")
    return Poset(np.triu(np.ones((n, n), dtype=bool)), labels, validate=False)


def from_cover_relations(pairs, n: int | None = None, labels=None) -> Poset:
    """Poset from (smaller, larger) cover pairs via reflexive-transitive closure.

    The closure is computed by iterated boolean matrix squaring; a closure
    that relates two distinct elements both ways raises
    CycleInCoverRelations.
    """
    pairs = list(pairs)
    if n is None:
        n = max((max(a, b) for a, b in pairs), default=-1) + 1
    m = np.eye(n, dtype=bool)
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidPosetError(f"cover pair ({a}, {b}) out of range for {n} elements")
        m[a, b] = True
    while True:
        closed = m | ((m.astype(np.float32) @ m.astype(np.float32)) > 0)
        if np.array_equal(closed, m):
            break
        m = closed
    if (m & m.T & ~np.eye(n, dtype=bool)).any():
        raise CycleInCoverRelations("cover relations close into a directed cycle")
    return Poset(m, labels, validate=False)


def diamond_poset() -> Poset:
    """Four elements 0 < a < 1 and 0 < b < 1 with a, b incomparable."""
    return from_cover_relations([(0, 1), (0, 2), (1, 3), (2, 3)], labels=["0", "a", "b", "1"])


def product_poset(bounds, cap: int = DEFAULT_PRODUCT_CAP) -> ProductPoset:
    """Componentwise order on tuples bounded by ``bounds`` per coordinate."""
    bounds = [int(b) for b in bounds]
    if any(b < 1 for b in bounds):
        raise ValueError("every coordinate bound must be >= 1")
    size = prod(b + 1 for b in bounds)
    if size > cap:
        raise SizeLimitExceeded(f"product poset would have {size} elements (cap {cap})")
    tuples = list(_iproduct(*(range(b + 1) for b in bounds)))
    arr = np.array(tuples, dtype=np.int64).reshape(size, len(bounds))
    leq = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    labels = ["(" + ",".join(map(str, t)) + ")" for t in tuples]
    return ProductPoset(bounds, tuples, leq, labels)


# ---------------------------------------------------------------------------
# isomorphism


def is_order_isomorphic(P: Poset, Q: Poset) -> bool:
    """Exact order-isomorphism test by invariant-pruned backtracking."""
    if P.n != Q.n:
        return False
    n = P.n
    if n == 0:
        return True

    def profile(R):
        return [
            (int(R.leq[:, x].sum()), int(R.leq[x, :].sum()))
            for x in range(R.n)
        ]

    pp, qp = profile(P), profile(Q)
    if sorted(pp) != sorted(qp):
        return False
    # map P elements in order of rarest profile first
    order = sorted(range(n), key=lambda x: (sum(1 for y in pp if y == pp[x]), x))
    image = [-1] * n
    used = [False] * n

    def place(i):
        if i == n:
            return True
        x = order[i]
        for y in range(n):
            if used[y] or qp[y] != pp[x]:
                continue
            ok = True
            for j in range(i):
                z = order[j]
                if P.leq[x, z] != Q.leq[y, image[z]] or P.leq[z, x] != Q.leq[image[z], y]:
                    ok = False
                    break
            if ok:
                image[x] = y
                used[y] = True
                if place(i + 1):
                    return True
                image[x] = -1
                used[y] = False
        return False

    return place(0)


# ---------------------------------------------------------------------------
# serialization


def poset_to_json(P: Poset) -> dict:
    """Emit labels plus the full reflexive-transitive relation."""
    pairs = [[int(x), int(y)] for x, y in zip(*np.nonzero(P.leq))]
    return {"elements": list(P.labels), "leq": sorted(pairs)}


def poset_from_json(obj: dict) -> Poset:
    """Load a poset; ``leq`` may list cover or full relations (closed on load)."""
    try:
        labels = list(obj["elements"])
        pairs = [(int(a), int(b)) for a, b in obj["leq"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidPosetError(f"malformed poset JSON: {exc}") from exc
    return from_cover_relations(pairs, n=len(labels), labels=labels)
