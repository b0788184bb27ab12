"""Concrete graphs and brute-force ground truth.

Builders for the named families, distance-regularity extraction, empirical
intersection numbers, automorphism groups (exact order and motion), exact
distinguishing numbers, halved/folded graphs and adjacency spectra.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path

import networkx as nx
import numpy as np

from .errors import (
    Disconnected,
    DomainError,
    NotAntipodal,
    NotBipartite,
    NotDistanceRegular,
    SizeLimitExceeded,
)
from .params import IntersectionArray
from .spectrum import Spectrum, snap_integral

DEFAULT_MAX_N = 64
SPECTRUM_MAX_N = 512
ENUMERATION_LIMIT = 10 ** 7
_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class ConcreteGraph:
    adjacency: np.ndarray  # bool, symmetric, zero diagonal
    dist: np.ndarray  # int, all-pairs BFS distances
    name: str = ""
    labels: tuple = ()

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def diameter(self) -> int:
        return int(self.dist.max())

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


def from_networkx(g: nx.Graph, name: str = "") -> ConcreteGraph:
    if g.number_of_nodes() == 0:
        raise DomainError("empty graph")
    if nx.number_of_selfloops(g):
        raise DomainError("self-loops are not allowed")
    if not nx.is_connected(g):
        raise Disconnected(f"{name or 'graph'} is disconnected")
    nodes = list(g.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    adj = np.zeros((n, n), dtype=bool)
    for u, v in g.edges():
        adj[index[u], index[v]] = adj[index[v], index[u]] = True
    dist = np.zeros((n, n), dtype=np.int64)
    for u, lengths in nx.all_pairs_shortest_path_length(g):
        for v, L in lengths.items():
            dist[index[u], index[v]] = L
    return ConcreteGraph(adj, dist, name, tuple(nodes))


def _johnson(m: int, d: int) -> nx.Graph:
    g = nx.Graph()
    subsets = [frozenset(s) for s in itertools.combinations(range(m), d)]
    g.add_nodes_from(subsets)
    for a, b in itertools.combinations(subsets, 2):
        if len(a & b) == d - 1:
            g.add_edge(a, b)
    return g


def _hamming(d: int, m: int) -> nx.Graph:
    g = nx.Graph()
    words = list(itertools.product(range(m), repeat=d))
    g.add_nodes_from(words)
    for a, b in itertools.combinations(words, 2):
        if sum(x != y for x, y in zip(a, b)) == 1:
            g.add_edge(a, b)
    return g


def _cocktail_party(m: int) -> nx.Graph:
    g = nx.complete_graph(2 * m)
    g.remove_edges_from((2 * i, 2 * i + 1) for i in range(m))
    return g


def _kmm_minus_matching(m: int) -> nx.Graph:
    g = nx.complete_bipartite_graph(m, m)
    g.remove_edges_from((i, m + i) for i in range(m))
    return g


def read_edge_list(path: str | Path) -> nx.Graph:
    """Undirected edges, one ``u v`` pair of 0-indexed integers per line."""
    g = nx.Graph()
    seen = set()
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise DomainError(f"line {lineno}: expected two integers, got {raw!r}") from None
        if u < 0 or v < 0:
            raise DomainError(f"line {lineno}: vertex indices must be non-negative")
        if u == v:
            raise DomainError(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DomainError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        g.add_edge(u, v)
    if g.number_of_nodes() == 0:
        raise DomainError("edge list is empty")
    # vertices missing from every edge still exist and leave the graph disconnected
    g.add_nodes_from(range(max(g.nodes()) + 1))
    return g


def build_named(name: str, *params: int) -> ConcreteGraph:
    """Build a named graph; ``edge_list`` takes a file path as its parameter."""
    def need(count):
        if len(params) != count:
            raise DomainError(f"{name} takes {count} parameter(s), got {len(params)}")

    if name == "edge_list":
        need(1)
        g = read_edge_list(params[0])
        return from_networkx(nx.convert_node_labels_to_integers(g, ordering="sorted"), Path(params[0]).name)
    params = tuple(int(p) for p in params)
    if name == "johnson":
        need(2)
        m, d = params
        if d < 1 or m < 2 * d:
            raise DomainError(f"johnson needs 1 <= d and m >= 2d, got m={m}, d={d}")
        g = _johnson(m, d)
    elif name == "hamming":
        need(2)
        d, m = params
        if d < 1 or m < 2:
            raise DomainError(f"hamming needs d >= 1, m >= 2, got d={d}, m={m}")
        g = _hamming(d, m)
    elif name == "cocktail_party":
        need(1)
        if params[0] < 2:
            raise DomainError("cocktail_party needs m >= 2")
        g = _cocktail_party(params[0])
    elif name == "k_mm_minus_matching":
        need(1)
        if params[0] < 3:
            raise DomainError("k_mm_minus_matching needs m >= 3")
        g = _kmm_minus_matching(params[0])
    elif name == "cycle":
        need(1)
        if params[0] < 3:
            raise DomainError("cycle needs n >= 3")
        g = nx.cycle_graph(params[0])
    elif name == "complete":
        need(1)
        if params[0] < 2:
            raise DomainError("complete needs n >= 2")
        g = nx.complete_graph(params[0])
    elif name == "path":
        need(1)
        if params[0] < 2:
            raise DomainError("path needs n >= 2")
        g = nx.path_graph(params[0])
    elif name in ("petersen", "heawood", "cube", "icosahedron"):
        need(0)
        g = {"petersen": nx.petersen_graph, "heawood": nx.heawood_graph,
             "cube": nx.cubical_graph, "icosahedron": nx.icosahedral_graph}[name]()
    else:
        raise DomainError(f"unknown graph name {name!r}")
    label = name if not params else f"{name}({','.join(map(str, params))})"
    return from_networkx(g, label)


# --------------------------------------------------------------------------
# distance-regularity and intersection numbers

@dataclass(frozen=True)
class DRCheck:
    array: IntersectionArray | None
    witness: tuple | None = None  # (v, w, i) where a constant fails
    detail: str = ""

    @property
    def is_distance_regular(self) -> bool:
        return self.array is not None


def _distance_masks(g: ConcreteGraph) -> list[np.ndarray]:
    return [(g.dist == i).astype(np.int64) for i in range(g.diameter + 1)]


def check_distance_regular(g: ConcreteGraph) -> DRCheck:
    """Extract {b; c} if b_i, c_i are constant over all pairs at distance i."""
    d = g.diameter
    A = g.adjacency.astype(np.int64)
    masks = _distance_masks(g)
    bs, cs = [], []
    for i in range(d + 1):
        pairs = masks[i].astype(bool)
        # counts[v, w] = |N(w) ∩ N_j(v)|
        for j, store in ((i + 1, bs), (i - 1, cs)):
            if j < 0 or j > d:
                continue
            counts = masks[j] @ A
            vals = counts[pairs]
            if vals.min() != vals.max():
                bad = np.argwhere(pairs & (counts != vals[0]))[0]
                v, w = int(bad[0]), int(bad[1])
                name = f"b_{i}" if j == i + 1 else f"c_{i}"
                return DRCheck(None, (v, w, i),
                               f"{name} is {int(counts[v, w])} at ({v},{w}) but {int(vals[0])} elsewhere")
            store.append(int(vals[0]))
    if d == 0:
        return DRCheck(None, (0, 0, 0), "a single vertex has no intersection array")
    return DRCheck(IntersectionArray(tuple(bs), tuple(cs)))


def empirical_p(g: ConcreteGraph, arr: IntersectionArray | None = None) -> tuple:
    """p[s][i][j] = |N_i(u) ∩ N_j(v)| for dist(u,v) = s, checked over every pair."""
    d = g.diameter
    if arr is not None and arr.d != d:
        raise NotDistanceRegular(f"graph diameter {d} != array diameter {arr.d}")
    masks = _distance_masks(g)
    p = [[[0] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for i in range(d + 1):
        for j in range(d + 1):
            prod = masks[i] @ masks[j]
            for s in range(d + 1):
                vals = prod[masks[s].astype(bool)]
                if vals.min() != vals.max():
                    raise NotDistanceRegular(f"|N_{i}(u) ∩ N_{j}(v)| varies over pairs at distance {s}")
                p[s][i][j] = int(vals[0])
    return tuple(tuple(tuple(r) for r in plane) for plane in p)


# --------------------------------------------------------------------------
# automorphisms

@dataclass(frozen=True)
class AutomorphismData:
    generators: list
    order: int
    motion: int | None
    exact: bool
    element_count_by_degree: dict = field(default_factory=dict)
    base: tuple = ()
    orbit_sizes: tuple = ()

    def to_json(self) -> dict:
        return {"order": self.order, "motion": self.motion, "motion_exact": self.exact,
                "generators": [list(map(int, g)) for g in self.generators],
                "element_count_by_degree": {str(k): v for k, v in sorted(self.element_count_by_degree.items())},
                "base": list(self.base), "orbit_sizes": list(self.orbit_sizes)}


class _Searcher:
    """Distance-preserving bijections found by backtracking over candidate bitmasks.

    On a connected graph a bijection preserving every distance is exactly an
    automorphism, and checking distances to already-mapped vertices prunes hard.
    """

    def __init__(self, g: ConcreteGraph):
        self.n = g.n
        self.dist_np = g.dist
        self.dist = g.dist.tolist()
        d = g.diameter
        self.mask = [[0] * (d + 1) for _ in range(self.n)]
        for v in range(self.n):
            for w, dv in enumerate(self.dist[v]):
                self.mask[v][dv] |= 1 << w

    def initial(self) -> list[int]:
        full = (1 << self.n) - 1
        # a vertex can only go to one with the same distance profile size
        prof = [tuple(sorted(row)) for row in self.dist]
        return [sum(1 << w for w in range(self.n) if prof[w] == prof[x]) & full for x in range(self.n)]

    def assign(self, cand: list[int], x: int, y: int) -> list[int] | None:
        if not (cand[x] >> y) & 1:
            return None
        row = self.dist[x]
        my = self.mask[y]
        out = []
        for z in range(self.n):
            if z == x:
                out.append(1 << y)
                continue
            c = cand[z] & my[row[z]]
            if not c:
                return None
            out.append(c)
        return out

    def extend(self, cand: list[int]) -> list[int] | None:
        """Complete the partial map encoded by singleton candidate sets."""
        best, best_count = -1, self.n + 1
        for z, c in enumerate(cand):
            cnt = c.bit_count()
            if cnt > 1 and cnt < best_count:
                best, best_count = z, cnt
        if best < 0:
            # forced images were never propagated against each other, so check all pairs
            images = [c.bit_length() - 1 for c in cand]
            if len(set(images)) != self.n:
                return None
            idx = np.array(images)
            return images if np.array_equal(self.dist_np[np.ix_(idx, idx)], self.dist_np) else None
        c = cand[best]
        while c:
            low = c & -c
            y = low.bit_length() - 1
            c ^= low
            nxt = self.assign(cand, best, y)
            if nxt is not None:
                found = self.extend(nxt)
                if found is not None:
                    return found
        return None


def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(a ∘ b)[x] = a[b[x]]."""
    return a[b]


def automorphisms(g: ConcreteGraph, max_n: int = DEFAULT_MAX_N,
                  enumeration_limit: int = ENUMERATION_LIMIT) -> AutomorphismData:
    """Automorphism group via a pointwise-stabilizer chain with searched transversals."""
    n = g.n
    if n > max_n:
        raise SizeLimitExceeded(f"n = {n} exceeds the automorphism limit {max_n}")
    s = _Searcher(g)
    dtype = np.uint8 if n <= 256 else np.uint16
    ident = np.arange(n, dtype=dtype)

    # base: keep fixing a vertex while some vertex still has several candidates
    base: list[int] = []
    cand = s.initial()
    cands_at_level = []
    while True:
        free = [x for x in range(n) if cand[x].bit_count() > 1]
        if not free:
            break
        b = min(free, key=lambda x: (-cand[x].bit_count(), x))
        cands_at_level.append(cand)
        base.append(b)
        cand = s.assign(cand, b, b)

    levels = len(base)
    transversals: list[dict[int, np.ndarray]] = [dict() for _ in range(levels)]
    generators: list[np.ndarray] = []
    # deepest level first, so generators fixing more points help shallower orbits
    for lvl in range(levels - 1, -1, -1):
        b = base[lvl]
        level_cand = cands_at_level[lvl]
        trans = {b: ident.copy()}
        gens = [x for x in generators]  # all of these fix base[:lvl]

        def close():
            queue = list(trans)
            while queue:
                w = queue.pop()
                for gen in gens:
                    w2 = int(gen[w])
                    if w2 not in trans:
                        trans[w2] = _compose(gen, trans[w])
                        queue.append(w2)

        close()
        c = level_cand[b]
        while c:
            low = c & -c
            w = low.bit_length() - 1
            c ^= low
            if w in trans:
                continue
            start = s.assign(level_cand, b, w)
            found = s.extend(start) if start is not None else None
            if found is not None:
                perm = np.array(found, dtype=dtype)
                generators.append(perm)
                gens.append(perm)
                trans[w] = perm
                close()
        transversals[lvl] = trans

    orbit_sizes = tuple(len(t) for t in transversals)
    order = 1
    for k in orbit_sizes:
        order *= k

    if order <= enumeration_limit:
        motion, hist = _scan_elements(transversals, ident, n)
        return AutomorphismData(generators, order, motion, True, hist, tuple(base), orbit_sizes)
    # too many elements: words of length <= 2 over generators and transversal elements
    pool = generators + [t for tr in transversals for t in tr.values()]
    best = n
    for a in pool:
        mv = int((a != ident).sum())
        if 0 < mv < best:
            best = mv
    for a, b in itertools.combinations(pool, 2):
        mv = int((_compose(a, b) != ident).sum())
        if 0 < mv < best:
            best = mv
    return AutomorphismData(generators, order, best if order > 1 else None, False, {}, tuple(base), orbit_sizes)


def _scan_elements(transversals, ident, n):
    """Minimal degree and degree histogram over every group element.

    Elements are products u_1 ∘ u_2 ∘ ... ∘ u_L of transversal elements; the
    deepest levels are materialized as one array and the rest iterated.
    """
    levels = len(transversals)
    if levels == 0:
        return None, {0: 1}
    # materialize the suffix G_(i) = U_i ∘ ... ∘ U_L while it stays small
    suffix = ident[None, :]
    split = levels
    for lvl in range(levels - 1, -1, -1):
        size = suffix.shape[0] * len(transversals[lvl])
        if size > _CHUNK and split < levels:
            break
        us = np.stack(list(transversals[lvl].values()))
        suffix = us[:, suffix].reshape(-1, n)
        split = lvl
    hist: dict[int, int] = {}
    best = None
    prefixes = [list(transversals[lvl].values()) for lvl in range(split)]
    for combo in itertools.product(*prefixes):
        pre = ident
        for u in combo:
            pre = _compose(pre, u)
        elems = pre[suffix]
        moved = (elems != ident).sum(axis=1)
        vals, counts = np.unique(moved, return_counts=True)
        for v, c in zip(vals.tolist(), counts.tolist()):
            hist[v] = hist.get(v, 0) + c
            if v > 0 and (best is None or v < best):
                best = v
    return best, hist


def motion_exact(g: ConcreteGraph, max_n: int = DEFAULT_MAX_N) -> int | None:
    data = automorphisms(g, max_n)
    if not data.exact:
        raise SizeLimitExceeded(f"group order {data.order} too large for exact motion")
    return data.motion


@dataclass(frozen=True)
class DistinguishingData:
    table: np.ndarray  # D(u, v)
    dmin: int
    by_distance: dict  # i -> sorted distinct D(u,v) values over pairs at distance i

    @property
    def class_constant(self) -> bool:
        return all(len(v) == 1 for v in self.by_distance.values())


def distinguishing_exact(g: ConcreteGraph) -> DistinguishingData:
    n = g.n
    D = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        D[u] = (g.dist != g.dist[u]).sum(axis=1)
    off = ~np.eye(n, dtype=bool)
    by = {}
    for i in range(1, g.diameter + 1):
        by[i] = sorted(set(D[g.dist == i].tolist()))
    return DistinguishingData(D, int(D[off].min()), by)


# --------------------------------------------------------------------------
# halved and folded graphs

def is_bipartite_graph(g: ConcreteGraph) -> bool:
    parity = g.dist[0] % 2
    u, v = np.nonzero(g.adjacency)
    return bool(np.all(parity[u] != parity[v]))


def halved_graph(g: ConcreteGraph) -> ConcreteGraph:
    if not is_bipartite_graph(g):
        raise NotBipartite(f"{g.name or 'graph'} is not bipartite")
    part = np.flatnonzero(g.dist[0] % 2 == 0)
    sub = g.dist[np.ix_(part, part)] == 2
    h = nx.from_numpy_array(sub.astype(int))
    return from_networkx(h, f"halved {g.name}".strip())


def antipodal_classes(g: ConcreteGraph) -> list[tuple[int, ...]] | None:
    d = g.diameter
    classes = []
    seen = set()
    for v in range(g.n):
        if v in seen:
            continue
        cls = tuple([v] + np.flatnonzero(g.dist[v] == d).tolist())
        for w in cls:
            other = tuple(sorted([w] + np.flatnonzero(g.dist[w] == d).tolist()))
            if other != tuple(sorted(cls)):
                return None
        seen.update(cls)
        classes.append(tuple(sorted(cls)))
    return classes


def folded_graph(g: ConcreteGraph) -> ConcreteGraph:
    classes = antipodal_classes(g)
    if classes is None or g.diameter < 2:
        raise NotAntipodal(f"{g.name or 'graph'} is not antipodal")
    where = {}
    for idx, cls in enumerate(classes):
        for v in cls:
            where[v] = idx
    h = nx.Graph()
    h.add_nodes_from(range(len(classes)))
    for u, v in zip(*np.nonzero(g.adjacency)):
        a, b = where[int(u)], where[int(v)]
        if a != b:
            h.add_edge(a, b)
    return from_networkx(h, f"folded {g.name}".strip())


# --------------------------------------------------------------------------
# spectrum

def adjacency_spectrum(g: ConcreteGraph, tol: float = 1e-6) -> Spectrum:
    if g.n > SPECTRUM_MAX_N:
        raise SizeLimitExceeded(f"n = {g.n} exceeds the spectrum limit {SPECTRUM_MAX_N}")
    vals = np.linalg.eigvalsh(g.adjacency.astype(float))[::-1]
    groups: list[list[float]] = []
    for v in vals:
        if groups and abs(groups[-1][-1] - v) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    means = snap_integral([np.mean(gr) for gr in groups])
    return Spectrum(tuple(float(v) for v in means), tuple(len(gr) for gr in groups))
