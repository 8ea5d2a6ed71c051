"""Stallings graphs: folded inverse automata for subgroups of free groups.

A finitely generated subgroup H of a free group is represented by its
folded core graph: reduced words tracing closed loops at the basepoint are
exactly the elements of H.  On top of the core construction this module
provides membership, free bases, conjugation, intersections via the
fiber-product (pullback) of two graphs, and coset automata with an
emptiness test for intersections of cosets.

Graphs are immutable after construction; the mutation needed while folding
is confined to each builder's private state, so all public values are safe
to share across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .words import Alphabet, Word, free_reduce, signed_letter_order

__all__ = [
    "StallingsGraph",
    "Subgroup",
    "CosetAutomaton",
    "PullbackComponent",
    "fold",
    "build_graph",
    "core_trim",
    "graph_basis",
    "conjugate_subgroup",
    "pullback",
    "intersection",
    "coset_automaton",
    "double_coset_automaton",
    "coset_intersect",
    "to_dot",
]


class StallingsGraph:
    """Folded, connected, basepointed graph with generator-labeled edges.

    Edges are stored once, in positive orientation, as (source, generator
    index, target) triples; traversing an edge backwards reads the inverse
    letter, so the involution is structural rather than stored.  ``step``
    is deterministic because the graph is folded.
    """

    __slots__ = ("alphabet", "num_vertices", "basepoint", "edges", "_steps", "_tree")

    def __init__(self, alphabet: Alphabet, num_vertices: int, edges, basepoint: int = 0):
        if num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        if not 0 <= basepoint < num_vertices:
            raise ValueError("basepoint out of range")
        edges = tuple(sorted(tuple(e) for e in edges))
        steps: list[dict[int, int]] = [{} for _ in range(num_vertices)]
        rank = alphabet.rank
        for u, x, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge {(u, x, v)} out of vertex range")
            if not 0 <= x < rank:
                raise ValueError(f"edge label {x} outside alphabet of rank {rank}")
            if x + 1 in steps[u] or -(x + 1) in steps[v]:
                raise ValueError(f"graph is not folded at edge {(u, x, v)}")
            steps[u][x + 1] = v
            steps[v][-(x + 1)] = u
        self.alphabet = alphabet
        self.num_vertices = num_vertices
        self.basepoint = basepoint
        self.edges = edges
        self._steps = steps
        self._tree = None

    def step(self, vertex: int, letter: int) -> int | None:
        """Follow the signed letter from a vertex, or None if undefined."""
        return self._steps[vertex].get(letter)

    def trace(self, letters, start: int | None = None) -> int | None:
        """Endpoint of the path reading the letters, or None if it leaves the graph.

        Membership questions must trace reduced words: folding makes a
        backtracking step return to the same vertex, so a fully traced word
        agrees with its reduction, but an unreduced word may fall off the
        graph where its reduction does not.
        """
        v = self.basepoint if start is None else start
        steps = self._steps
        for letter in letters:
            v = steps[v].get(letter)
            if v is None:
                return None
        return v

    def degree(self, vertex: int) -> int:
        return len(self._steps[vertex])

    @property
    def rank(self) -> int:
        """Rank of the fundamental group: edges - vertices + 1."""
        return len(self.edges) - self.num_vertices + 1

    def spanning_tree(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Canonical BFS spanning tree as (parent vertex, parent letter) arrays.

        The basepoint has parent -1.  Letters are scanned in the fixed
        signed order, so the tree depends only on the graph.
        """
        if self._tree is None:
            order = signed_letter_order(self.alphabet.rank)
            parent = [-1] * self.num_vertices
            letter_in = [0] * self.num_vertices
            seen = [False] * self.num_vertices
            seen[self.basepoint] = True
            queue = deque([self.basepoint])
            count = 1
            while queue:
                v = queue.popleft()
                nbrs = self._steps[v]
                for s in order:
                    t = nbrs.get(s)
                    if t is not None and not seen[t]:
                        seen[t] = True
                        parent[t] = v
                        letter_in[t] = s
                        count += 1
                        queue.append(t)
            if count != self.num_vertices:
                raise ValueError("graph is not connected")
            self._tree = (tuple(parent), tuple(letter_in))
        return self._tree

    def path_letters(self, vertex: int) -> tuple[int, ...]:
        """Letters of the spanning-tree path basepoint -> vertex."""
        parent, letter_in = self.spanning_tree()
        out = []
        v = vertex
        while parent[v] != -1:
            out.append(letter_in[v])
            v = parent[v]
        out.reverse()
        return tuple(out)

    def path_word(self, vertex: int) -> Word:
        return Word(self.alphabet, self.path_letters(vertex))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StallingsGraph):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.num_vertices == other.num_vertices
            and self.basepoint == other.basepoint
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.num_vertices, self.basepoint, self.edges))

    def __repr__(self) -> str:
        return (
            f"StallingsGraph(V={self.num_vertices}, E={len(self.edges)}, "
            f"rank={self.rank}, basepoint={self.basepoint})"
        )


@dataclass(frozen=True, slots=True)
class Subgroup:
    """A finitely generated subgroup with its canonical folded core graph."""

    generators: tuple[Word, ...]
    graph: StallingsGraph

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    @property
    def rank(self) -> int:
        return self.graph.rank

    @property
    def is_trivial(self) -> bool:
        return self.graph.rank == 0

    def contains(self, w: Word) -> bool:
        """Membership: w is in the subgroup iff it traces a basepoint loop."""
        if w.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch")
        return self.graph.trace(w.letters) == self.graph.basepoint

    def basis(self) -> tuple[Word, ...]:
        return graph_basis(self.graph)

    def __repr__(self) -> str:
        gens = ",".join(str(g) for g in self.generators)
        return f"Subgroup(<{gens}>, rank={self.rank})"


@dataclass(frozen=True, slots=True)
class CosetAutomaton:
    """Folded graph with start and accept vertices recognizing one coset.

    Reduced words readable on paths start -> accept are exactly the reduced
    words of a right coset S*g.  When g lies in S the two vertices
    coincide and the language is S itself.
    """

    graph: StallingsGraph
    start: int
    accept: int

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    def accepts(self, w: Word) -> bool:
        if w.alphabet != self.alphabet:
            raise ValueError("alphabet mismatch")
        return self.graph.trace(w.letters, self.start) == self.accept


@dataclass(frozen=True, slots=True)
class PullbackComponent:
    """One connected component of the fiber product of two folded graphs."""

    vertices: tuple[tuple[int, int], ...]
    edges: tuple[tuple[tuple[int, int], int, tuple[int, int]], ...]
    rank: int


# ---------------------------------------------------------------------------
# folding core
# ---------------------------------------------------------------------------


def _fold_darts(num_vertices: int, darts):
    """Union-find folding over signed darts (u, s, v).

    Repeatedly identifies the targets of equal-label darts leaving one
    vertex until the quotient is deterministic.  Near-linear time: each
    dart is inserted once and every clash merges two classes.

    Returns (find, adj) where adj maps each surviving representative to a
    dict {signed letter: target}; targets may be stale and must be passed
    through find when read.
    """
    parent = list(range(num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: list[dict[int, int]] = [{} for _ in range(num_vertices)]
    pending: deque[tuple[int, int]] = deque()

    for u, s, v in darts:
        for a, sl, b in ((u, s, v), (v, -s, u)):
            r = find(a)
            slot = adj[r]
            t = slot.get(sl)
            if t is None:
                slot[sl] = b
            elif find(t) != find(b):
                pending.append((t, b))

    while pending:
        a, b = pending.popleft()
        a, b = find(a), find(b)
        if a == b:
            continue
        if len(adj[a]) < len(adj[b]):
            a, b = b, a
        parent[b] = a
        moved = adj[b]
        adj[b] = {}
        target = adj[a]
        for s, t in moved.items():
            cur = target.get(s)
            if cur is None:
                target[s] = t
            elif find(cur) != find(t):
                pending.append((cur, t))

    return find, adj


def _folded_adjacency(num_vertices: int, darts) -> tuple:
    """Fold and normalize: adjacency dict over representatives only."""
    find, adj = _fold_darts(num_vertices, darts)
    norm: dict[int, dict[int, int]] = {}
    for v in range(num_vertices):
        if find(v) == v:
            norm[v] = {s: find(t) for s, t in adj[v].items()}
    return find, norm


def _trim_adjacency(adj: dict[int, dict[int, int]], keep: set[int]) -> None:
    """Iteratively delete degree <= 1 vertices outside keep (in place)."""
    queue = deque(v for v, nbrs in adj.items() if len(nbrs) <= 1 and v not in keep)
    while queue:
        v = queue.popleft()
        if v not in adj or v in keep or len(adj[v]) > 1:
            continue
        nbrs = adj.pop(v)
        for s, t in nbrs.items():
            # t != v: a loop contributes two darts, so v would have degree 2
            del adj[t][-s]
            if len(adj[t]) <= 1 and t not in keep:
                queue.append(t)


def _renumber_adjacency(alphabet: Alphabet, adj: dict[int, dict[int, int]], root: int):
    """Canonical BFS renumbering from root, darts scanned in signed order.

    Equal subgroups therefore produce identical graphs, which makes graph
    equality usable for deduplication and golden tests.

    Returns (num_vertices, sorted positive edge list, old->new map).
    """
    order = signed_letter_order(alphabet.rank)
    number = {root: 0}
    bfs = [root]
    for v in bfs:
        nbrs = adj[v]
        for s in order:
            t = nbrs.get(s)
            if t is not None and t not in number:
                number[t] = len(number)
                bfs.append(t)
    if len(number) != len(adj):
        raise ValueError("graph is not connected")
    edges = []
    for v, nbrs in adj.items():
        nv = number[v]
        for s, t in nbrs.items():
            if s > 0:
                edges.append((nv, s - 1, number[t]))
    edges.sort()
    return len(number), edges, number


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def fold(alphabet: Alphabet, num_vertices: int, edges, basepoint: int = 0) -> StallingsGraph:
    """Fold an arbitrary connected edge-labeled graph.

    Input edges are (source, generator index, target) triples in positive
    orientation; parallel and clashing edges are allowed.  The result
    recognizes the same subgroup, is canonically renumbered, and refolding
    it is the identity.
    """
    darts = [(u, x + 1, v) for (u, x, v) in edges]
    find, adj = _folded_adjacency(num_vertices, darts)
    root = find(basepoint)
    n, out_edges, number = _renumber_adjacency(alphabet, adj, root)
    return StallingsGraph(alphabet, n, out_edges, number[root])


def build_graph(gens, alphabet: Alphabet | None = None) -> Subgroup:
    """Stallings graph of <gens>: fold a bouquet of subdivided loops, trim.

    An empty generator list yields the one-vertex graph of the trivial
    subgroup.
    """
    gens = tuple(gens)
    if alphabet is None:
        if not gens:
            raise ValueError("alphabet required for an empty generator list")
        alphabet = gens[0].alphabet
    darts = []
    n = 1
    for w in gens:
        if w.alphabet != alphabet:
            raise ValueError("alphabet mismatch among generators")
        ls = w.letters
        if not ls:
            continue
        prev = 0
        for letter in ls[:-1]:
            darts.append((prev, letter, n))
            prev = n
            n += 1
        darts.append((prev, ls[-1], 0))
    find, adj = _folded_adjacency(n, darts)
    root = find(0)
    _trim_adjacency(adj, {root})
    n2, edges, number = _renumber_adjacency(alphabet, adj, root)
    return Subgroup(gens, StallingsGraph(alphabet, n2, edges, number[root]))


def core_trim(graph: StallingsGraph) -> StallingsGraph:
    """Remove degree-1 vertices other than the basepoint, repeatedly.

    The fundamental group is unchanged; the result is the core graph.
    """
    adj = {v: dict(graph._steps[v]) for v in range(graph.num_vertices)}
    _trim_adjacency(adj, {graph.basepoint})
    n, edges, number = _renumber_adjacency(graph.alphabet, adj, graph.basepoint)
    return StallingsGraph(graph.alphabet, n, edges, number[graph.basepoint])


def graph_basis(graph: StallingsGraph) -> tuple[Word, ...]:
    """Free basis from the spanning tree: one word per non-tree edge.

    The word for edge (u, x, v) is tree-path(u) * x * tree-path(v)^-1;
    foldedness rules out cancellation at the seams, and the basis size
    equals the graph rank.
    """
    parent, letter_in = graph.spanning_tree()
    tree_edges = set()
    for v in range(graph.num_vertices):
        p, s = parent[v], letter_in[v]
        if p == -1:
            continue
        tree_edges.add((p, s - 1, v) if s > 0 else (v, -s - 1, p))
    out = []
    for edge in graph.edges:
        if edge in tree_edges:
            continue
        u, x, v = edge
        letters = graph.path_letters(u) + (x + 1,) + tuple(
            -l for l in reversed(graph.path_letters(v))
        )
        out.append(Word(graph.alphabet, free_reduce(letters)))
    return tuple(out)


def conjugate_subgroup(H: Subgroup, g: Word) -> Subgroup:
    """The subgroup g H g^-1, built from conjugated generators and folded."""
    if g.alphabet != H.alphabet:
        raise ValueError("alphabet mismatch")
    ginv = g.inverse()
    return build_graph(tuple(g * h * ginv for h in H.generators), H.alphabet)


def pullback(a: StallingsGraph, b: StallingsGraph) -> tuple[PullbackComponent, ...]:
    """Fiber product: vertices are pairs, edges are equal-label edge pairs.

    Returns every connected component (isolated pairs included) with its
    core rank; the component containing the pair of basepoints recognizes
    the intersection of the two subgroups.  Rank is edges - vertices + 1,
    which trimming to the core does not change.
    """
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    nb = b.num_vertices
    total = a.num_vertices * nb
    parent = list(range(total))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_gen: dict[int, list[tuple[int, int]]] = {}
    for s, x, t in b.edges:
        by_gen.setdefault(x, []).append((s, t))
    prod_edges = []
    for u, x, v in a.edges:
        for s, t in by_gen.get(x, ()):
            i, j = u * nb + s, v * nb + t
            prod_edges.append((i, x, j))
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    comp_vertices: dict[int, list[tuple[int, int]]] = {}
    for idx in range(total):
        comp_vertices.setdefault(find(idx), []).append(divmod(idx, nb))
    comp_edges: dict[int, list] = {}
    for i, x, j in prod_edges:
        comp_edges.setdefault(find(i), []).append((divmod(i, nb), x, divmod(j, nb)))
    comps = []
    for root, verts in comp_vertices.items():
        edges = tuple(sorted(comp_edges.get(root, ())))
        comps.append(
            PullbackComponent(tuple(sorted(verts)), edges, len(edges) - len(verts) + 1)
        )
    comps.sort(key=lambda c: c.vertices[0])
    return tuple(comps)


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    """Intersection subgroup: basepoint component of the pullback.

    Explored lazily outward from the pair of basepoints; the product of
    folded graphs is folded, so the component is already deterministic and
    only needs trimming and renumbering.  Generators are a free basis.
    """
    if A.alphabet != B.alphabet:
        raise ValueError("alphabet mismatch")
    ga, gb = A.graph, B.graph
    order = signed_letter_order(A.alphabet.rank)
    start = (ga.basepoint, gb.basepoint)
    number = {start: 0}
    bfs = [start]
    adj: dict[int, dict[int, int]] = {0: {}}
    for pair in bfs:
        i = number[pair]
        p, q = pair
        row = adj[i]
        for s in order:
            a2 = ga.step(p, s)
            if a2 is None:
                continue
            b2 = gb.step(q, s)
            if b2 is None:
                continue
            nxt = (a2, b2)
            j = number.get(nxt)
            if j is None:
                j = number[nxt] = len(number)
                bfs.append(nxt)
                adj[j] = {}
            row[s] = j
    _trim_adjacency(adj, {0})
    n, edges, renum = _renumber_adjacency(A.alphabet, adj, 0)
    graph = StallingsGraph(A.alphabet, n, edges, renum[0])
    return Subgroup(graph_basis(graph), graph)


def coset_automaton(S: Subgroup, g: Word) -> CosetAutomaton:
    """Automaton of the right coset S*g.

    A fresh path spelling g is attached at the basepoint of the subgroup
    graph and the result folded while tracking the images of the basepoint
    (start) and the path's endpoint (accept).  Hanging trees through
    neither marked vertex cannot lie on a reduced accepted path and are
    trimmed away.
    """
    if g.alphabet != S.alphabet:
        raise ValueError("alphabet mismatch")
    graph = S.graph
    darts = [(u, x + 1, v) for (u, x, v) in graph.edges]
    n = graph.num_vertices
    cur = graph.basepoint
    for letter in g.letters:
        darts.append((cur, letter, n))
        cur = n
        n += 1
    find, adj = _folded_adjacency(n, darts)
    start, accept = find(graph.basepoint), find(cur)
    _trim_adjacency(adj, {start, accept})
    n2, edges, number = _renumber_adjacency(S.alphabet, adj, start)
    return CosetAutomaton(
        StallingsGraph(S.alphabet, n2, edges, number[start]),
        number[start],
        number[accept],
    )


def double_coset_automaton(S: Subgroup, g: Word) -> CosetAutomaton:
    """Automaton of the double coset S*g*S.

    Two copies of the subgroup graph chained by a path spelling g: reduced
    words readable start -> accept are exactly the reduced words of SgS.
    """
    if g.alphabet != S.alphabet:
        raise ValueError("alphabet mismatch")
    graph = S.graph
    darts = [(u, x + 1, v) for (u, x, v) in graph.edges]
    n = graph.num_vertices
    cur = graph.basepoint
    for letter in g.letters:
        darts.append((cur, letter, n))
        cur = n
        n += 1
    offset = {}
    for v in range(graph.num_vertices):
        if v == graph.basepoint:
            offset[v] = cur
        else:
            offset[v] = n
            n += 1
    for u, x, v in graph.edges:
        darts.append((offset[u], x + 1, offset[v]))
    find, adj = _folded_adjacency(n, darts)
    start, accept = find(graph.basepoint), find(cur)
    _trim_adjacency(adj, {start, accept})
    n2, edges, number = _renumber_adjacency(S.alphabet, adj, start)
    return CosetAutomaton(
        StallingsGraph(S.alphabet, n2, edges, number[start]),
        number[start],
        number[accept],
    )


def coset_intersect(A: CosetAutomaton, B: CosetAutomaton) -> Word | None:
    """Shortest word accepted by both coset automata, or None.

    Breadth-first search on the product of the two graphs from the pair of
    start vertices to the pair of accept vertices.  The product of folded
    graphs is folded, so plain reachability decides emptiness, the witness
    read off the BFS tree is freely reduced, and its length is below the
    product vertex count.  Ties break by the fixed signed letter order, so
    the witness is canonical.
    """
    if A.alphabet != B.alphabet:
        raise ValueError("alphabet mismatch")
    ga, gb = A.graph, B.graph
    order = signed_letter_order(A.alphabet.rank)
    start = (A.start, B.start)
    goal = (A.accept, B.accept)
    if start == goal:
        return A.alphabet.identity()
    prev: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        for s in order:
            a2 = ga.step(p, s)
            if a2 is None:
                continue
            b2 = gb.step(q, s)
            if b2 is None:
                continue
            nxt = (a2, b2)
            if nxt in prev:
                continue
            prev[nxt] = (pair, s)
            if nxt == goal:
                letters = []
                at = nxt
                while prev[at] is not None:
                    at, s0 = prev[at]
                    letters.append(s0)
                letters.reverse()
                return Word(A.alphabet, tuple(letters))
            queue.append(nxt)
    return None


def to_dot(graph: StallingsGraph) -> str:
    """Deterministic Graphviz rendering; the basepoint is double-circled."""
    lines = ["digraph stallings {", "  rankdir=LR;"]
    for v in range(graph.num_vertices):
        shape = "doublecircle" if v == graph.basepoint else "circle"
        lines.append(f"  {v} [shape={shape}];")
    for u, x, v in graph.edges:
        lines.append(f'  {u} -> {v} [label="{graph.alphabet.names[x]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
