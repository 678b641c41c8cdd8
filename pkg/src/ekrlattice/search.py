"""Exact maximum s-intersecting subfamily search inside a design.

Reformulated as maximum clique: vertices are design members and two are
adjacent when their meet has rank at least s, so cliques are exactly the
s-intersecting subfamilies.  The solver is branch and bound with greedy
coloring upper bounds over int bitmasks, seeded with the best star as the
initial incumbent.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from . import families
from .designs import DesignCertificate, star
from .errors import BudgetExceededError
from .families import Element

DEFAULT_VERTEX_BUDGET = 5000
ALL_MAX_CAP = 10**6


@dataclass(frozen=True)
class IntersectionGraph:
    """Adjacency bitmasks over design indices; diagonal bits are set."""

    size: int
    adjacency: tuple[int, ...]


def build_graph(cert: DesignCertificate, s: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> IntersectionGraph:
    """Exact adjacency by pairwise meet-rank computation."""
    if not 1 <= s <= cert.spec.top_rank:
        raise ValueError(f"s must satisfy 1 <= s <= {cert.spec.top_rank}, got {s}")
    members = cert.elements
    n = len(members)
    if n > vertex_budget:
        raise BudgetExceededError(
            f"design has {n} elements, vertex budget is {vertex_budget}",
            context={"design_size": n},
        )
    adj = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if families.meet(members[i], members[j]).rank >= s:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return IntersectionGraph(n, tuple(adj))


def greedy_lower_bound(cert: DesignCertificate, s: int) -> tuple[int, tuple[Element, ...]]:
    """Best star over rank-s centers; always a valid s-intersecting family."""
    best_size, best_members = 0, ()
    for z in families.enumerate_fiber(cert.spec, s):
        members = star(cert.spec, cert.elements, z).members
        if len(members) > best_size:
            best_size, best_members = len(members), members
    return best_size, best_members


@dataclass(frozen=True)
class SearchResult:
    optimum: int
    witness: tuple[Element, ...]
    all_max: tuple[tuple[Element, ...], ...] | None
    all_max_overflow: bool
    nodes: int
    status: str  # proved-optimal | budget-exhausted


class _OutOfBudget(Exception):
    pass


class _Overflow(Exception):
    pass


def _color_sort(candidates: int, adj):
    """Greedy coloring of the candidate set; colors ascend along the order."""
    order, colors = [], []
    color = 0
    work = candidates
    while work:
        color += 1
        taken = 0
        queue = work
        while queue:
            low = queue & -queue
            v = low.bit_length() - 1
            order.append(v)
            colors.append(color)
            taken |= low
            queue &= ~low & ~adj[v]
        work &= ~taken
    return order, colors


class _Solver:
    """Branch and bound over a relabeled graph with a shared incumbent."""

    def __init__(self, adj, node_budget=None):
        self.n = len(adj)
        self.adj = [a & ~(1 << i) for i, a in enumerate(adj)]
        self.node_budget = node_budget
        self.nodes = 0
        self.best_size = 0
        self.best_mask = 0
        self._lock = threading.Lock()
        self._exhausted = False

    def _tick(self, amount=1):
        self.nodes += amount
        if self._exhausted or (self.node_budget is not None and self.nodes > self.node_budget):
            self._exhausted = True
            raise _OutOfBudget

    def _offer(self, size, mask):
        with self._lock:
            if size > self.best_size:
                self.best_size, self.best_mask = size, mask

    def _expand(self, size, mask, candidates):
        self._tick()
        order, colors = _color_sort(candidates, self.adj)
        local = candidates
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] <= self.best_size:
                return
            v = order[i]
            bit = 1 << v
            if not local & bit:
                continue
            rest = local & self.adj[v]
            if rest:
                self._expand(size + 1, mask | bit, rest)
            elif size + 1 > self.best_size:
                self._offer(size + 1, mask | bit)
            local &= ~bit

    def maximize(self, init_size=0, init_mask=0, threads=1):
        """Returns (best size, best mask, proved) growing from the incumbent."""
        self.best_size, self.best_mask = init_size, init_mask
        full = (1 << self.n) - 1
        if not full:
            return self.best_size, self.best_mask, True
        if threads <= 1:
            try:
                self._expand(0, 0, full)
                return self.best_size, self.best_mask, True
            except _OutOfBudget:
                return self.best_size, self.best_mask, False
        # split root branches: clique via its lowest vertex v, candidates above v
        roots = list(range(self.n))
        out_of_budget = []
        errors = []

        def worker(worker_id):
            try:
                for v in roots[worker_id::threads]:
                    higher = full & ~((1 << (v + 1)) - 1)
                    rest = self.adj[v] & higher
                    if rest:
                        self._expand(1, 1 << v, rest)
                    else:
                        self._offer(1, 1 << v)
            except _OutOfBudget:
                out_of_budget.append(worker_id)
            except BaseException as exc:  # surface bugs instead of truncating silently
                errors.append(exc)

        pool = [threading.Thread(target=worker, args=(w,)) for w in range(threads)]
        for th in pool:
            th.start()
        for th in pool:
            th.join()
        if errors:
            raise errors[0]
        return self.best_size, self.best_mask, not out_of_budget

    def exists(self, size, candidates, need):
        """Can the current clique of `size` reach `need` inside candidates?"""
        if size >= need:
            return True
        self._tick()
        order, colors = _color_sort(candidates, self.adj)
        local = candidates
        for i in range(len(order) - 1, -1, -1):
            if size + colors[i] < need:
                return False
            v = order[i]
            bit = 1 << v
            if not local & bit:
                continue
            rest = local & self.adj[v]
            if size + 1 >= need or (rest and self.exists(size + 1, rest, need)):
                return True
            local &= ~bit
        return False

    def enumerate_exact(self, target, cap):
        """All cliques of size exactly target (each is maximum, hence maximal)."""
        out = []

        def recurse(size, mask, candidates):
            if size == target:
                out.append(mask)
                if len(out) > cap:
                    raise _Overflow
                return
            self._tick()
            order, colors = _color_sort(candidates, self.adj)
            local = candidates
            for i in range(len(order) - 1, -1, -1):
                if size + colors[i] < target:
                    return
                v = order[i]
                bit = 1 << v
                if not local & bit:
                    continue
                rest = local & self.adj[v]
                if size + 1 == target:
                    out.append(mask | bit)
                    if len(out) > cap:
                        raise _Overflow
                elif rest:
                    recurse(size + 1, mask | bit, rest)
                local &= ~bit

        full = (1 << self.n) - 1
        try:
            if target == 0:
                return [0], False
            recurse(0, 0, full)
            return out, False
        except _Overflow:
            return None, True

    def lexicographically_least(self, omega):
        """Vertex-greedy least maximum clique; vertex order must be canonical."""
        mask, size = 0, 0
        candidates = (1 << self.n) - 1
        for v in range(self.n):
            if size == omega:
                break
            bit = 1 << v
            if not candidates & bit:
                continue
            if self.exists(size + 1, candidates & self.adj[v], omega):
                mask |= bit
                size += 1
                candidates &= self.adj[v]
            else:
                candidates &= ~bit
        if size != omega:
            raise AssertionError("failed to reconstruct a maximum family")
        return mask


def _mask_to_family(mask, order, members) -> tuple[Element, ...]:
    picked = [members[order[i]] for i in range(len(order)) if (mask >> i) & 1]
    return tuple(sorted(picked))


def max_intersecting(
    cert: DesignCertificate,
    s: int,
    *,
    deterministic: bool = False,
    enumerate_all: bool = False,
    node_budget: int | None = None,
    threads: int = 1,
    order: str = "degree",
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    all_max_cap: int = ALL_MAX_CAP,
) -> SearchResult:
    """Exact maximum s-intersecting subfamily of the design.

    The optimum size is deterministic regardless of thread count and vertex
    ordering; the witness is deterministic (lexicographically least) only
    with `deterministic=True`, which also forces a single thread.
    """
    graph = build_graph(cert, s, vertex_budget)
    members = cert.elements
    n = graph.size
    degrees = [graph.adjacency[i].bit_count() for i in range(n)]
    if order == "degree":
        vertex_order = sorted(range(n), key=lambda i: (-degrees[i], members[i].payload))
    elif order == "canonical":
        vertex_order = sorted(range(n), key=lambda i: members[i].payload)
    else:
        raise ValueError(f"unknown vertex order {order!r}")
    position = {orig: new for new, orig in enumerate(vertex_order)}
    relabeled = [0] * n
    for orig in range(n):
        mask = 0
        probe = graph.adjacency[orig]
        while probe:
            low = probe & -probe
            mask |= 1 << position[low.bit_length() - 1]
            probe ^= low
        relabeled[position[orig]] = mask

    lb_size, lb_members = greedy_lower_bound(cert, s)
    lb_mask = 0
    member_pos = {x: i for i, x in enumerate(members)}
    for x in lb_members:
        lb_mask |= 1 << position[member_pos[x]]

    if deterministic:
        threads = 1
    solver = _Solver(relabeled, node_budget)
    optimum, best_mask, proved = solver.maximize(lb_size, lb_mask, threads=threads)
    status = "proved-optimal" if proved else "budget-exhausted"
    witness = _mask_to_family(best_mask, vertex_order, members)

    all_max = None
    overflow = False
    if proved and deterministic:
        canon_order = sorted(range(n), key=lambda i: members[i].payload)
        canon_pos = {orig: new for new, orig in enumerate(canon_order)}
        canon_adj = [0] * n
        for orig in range(n):
            mask = 0
            probe = graph.adjacency[orig]
            while probe:
                low = probe & -probe
                mask |= 1 << canon_pos[low.bit_length() - 1]
                probe ^= low
            canon_adj[canon_pos[orig]] = mask
        lex_solver = _Solver(canon_adj)
        witness = _mask_to_family(lex_solver.lexicographically_least(optimum), canon_order, members)
    if proved and enumerate_all:
        enum_solver = _Solver(relabeled)
        masks, overflow = enum_solver.enumerate_exact(optimum, all_max_cap)
        solver.nodes += enum_solver.nodes
        if not overflow:
            all_max = tuple(sorted(_mask_to_family(m, vertex_order, members) for m in masks))

    return SearchResult(
        optimum=optimum,
        witness=witness,
        all_max=all_max,
        all_max_overflow=overflow,
        nodes=solver.nodes,
        status=status,
    )
