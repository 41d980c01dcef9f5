"""Exact detection of r-regular subgraphs, with verifiable certificates.

An r-regular subgraph of H is a nonempty set S of distinct edges such that
every vertex covered by S is covered exactly r times (and vertices outside
the covered set are untouched).  find_regular runs a propagating DFS over
edges in colex order; brute_force_regular is the independent oracle that
enumerates all nonempty edge subsets in ascending subset-mask order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from .errors import GuardError, ParseError
from .hypercore import Hypergraph, vertices_of


class SolveStatus(Enum):
    FOUND = "found"
    NONE_EXISTS = "none"
    BUDGET_EXHAUSTED = "budget"


@dataclass(frozen=True)
class Certificate:
    """A concrete r-regular subgraph: edge indices plus the covered vertices."""

    r: int
    edge_indices: tuple[int, ...]
    covered: tuple[int, ...]


@dataclass(frozen=True)
class SolverBudget:
    """Caps on the search; None means unbounded."""

    max_nodes: int | None = None
    max_millis: float | None = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")
        if self.max_millis is not None and self.max_millis <= 0:
            raise ValueError("max_millis must be positive")


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    certificate: Certificate | None
    nodes: int


_UNDEC, _IN, _OUT = 0, 1, 2


class _BudgetHit(Exception):
    pass


class _RegularSearch:
    """DFS with per-vertex degree states and exclusion/inclusion propagation.

    Vertex states are implicit in (deg, rem): untouched (deg 0), active
    (1 <= deg < r), closed at r (deg == r), closed at 0 (deg 0 and rem < r).
    Propagation excludes edges through closed vertices, force-includes the
    remaining candidates of an active vertex that has no slack, and fails on
    deficiency (active vertex that can no longer reach r).  A subsumption
    check prunes branches where an active vertex needs more than another one
    through which all of its candidates pass.
    """

    def __init__(self, n: int, edge_masks, r: int):
        self.n = n
        self.r = r
        self.masks = tuple(edge_masks)
        self.m = len(self.masks)
        self.verts = [vertices_of(mk) for mk in self.masks]
        inc = [0] * n
        for i, vs in enumerate(self.verts):
            bit = 1 << i
            for v in vs:
                inc[v] |= bit
        self.undec = inc
        self.rem = [x.bit_count() for x in inc]
        self.deg = [0] * n
        self.status = [_UNDEC] * self.m
        self.included: list[int] = []
        self.active = 0
        self.nodes = 0
        self.max_nodes: int | None = None
        self.deadline: float | None = None

    # -- primitive state changes, recorded on the trail ----------------

    def _exclude(self, e: int, trail: list, pending: list) -> None:
        self.status[e] = _OUT
        trail.append(-e - 1)
        for v in self.verts[e]:
            self.rem[v] -= 1
            self.undec[v] &= ~(1 << e)
            pending.append(v)

    def _include(self, e: int, trail: list, pending: list) -> None:
        self.status[e] = _IN
        trail.append(e)
        self.included.append(e)
        r = self.r
        for v in self.verts[e]:
            self.rem[v] -= 1
            self.undec[v] &= ~(1 << e)
            old = self.deg[v]
            self.deg[v] = old + 1
            if old == 0:
                self.active += 1
            if old + 1 == r:
                self.active -= 1
            pending.append(v)

    def _undo(self, trail: list) -> None:
        r = self.r
        while trail:
            t = trail.pop()
            if t >= 0:
                e = t
                self.status[e] = _UNDEC
                self.included.pop()
                for v in self.verts[e]:
                    self.rem[v] += 1
                    self.undec[v] |= 1 << e
                    new = self.deg[v]
                    self.deg[v] = new - 1
                    if new == r:
                        self.active += 1
                    if new == 1:
                        self.active -= 1
            else:
                e = -t - 1
                self.status[e] = _UNDEC
                for v in self.verts[e]:
                    self.rem[v] += 1
                    self.undec[v] |= 1 << e

    # -- propagation to fixpoint ---------------------------------------

    def _propagate(self, trail: list, pending: list) -> bool:
        r = self.r
        deg, rem, undec, status = self.deg, self.rem, self.undec, self.status
        while pending:
            v = pending.pop()
            dv = deg[v]
            u = undec[v]
            if dv >= r or (dv == 0 and rem[v] < r):
                if u:
                    mm = u
                    while mm:
                        low = mm & -mm
                        mm ^= low
                        e = low.bit_length() - 1
                        if status[e] == _UNDEC:
                            self._exclude(e, trail, pending)
                continue
            if dv == 0:
                continue
            need = r - dv
            if rem[v] < need:
                return False
            if rem[v] == need and u:
                mm = u
                while mm:
                    low = mm & -mm
                    mm ^= low
                    e = low.bit_length() - 1
                    if status[e] != _UNDEC:
                        continue
                    for w in self.verts[e]:
                        if deg[w] >= r:
                            return False
                    self._include(e, trail, pending)
        return True

    def _subsumed(self) -> bool:
        r = self.r
        deg, undec = self.deg, self.undec
        actives = [v for v in range(self.n) if 1 <= deg[v] < r]
        for u in actives:
            du, uu = deg[u], undec[u]
            for w in actives:
                if du < deg[w] and uu & ~undec[w] == 0:
                    return True
        return False

    def _tick(self) -> None:
        if self.max_nodes is not None and self.nodes >= self.max_nodes:
            raise _BudgetHit
        self.nodes += 1
        if self.deadline is not None and self.nodes & 1023 == 0:
            if time.monotonic() > self.deadline:
                raise _BudgetHit

    def _dfs(self, ptr: int) -> tuple[int, ...] | None:
        status = self.status
        m = self.m
        while ptr < m and status[ptr] != _UNDEC:
            ptr += 1
        if ptr == m:
            return None
        for decision in (_IN, _OUT):
            self._tick()
            trail: list[int] = []
            pending: list[int] = []
            if decision == _IN:
                self._include(ptr, trail, pending)
            else:
                self._exclude(ptr, trail, pending)
            ok = self._propagate(trail, pending)
            if ok and self.included and self.active == 0:
                found = tuple(sorted(self.included))
                self._undo(trail)
                return found
            if ok and not self._subsumed():
                res = self._dfs(ptr + 1)
                if res is not None:
                    self._undo(trail)
                    return res
            self._undo(trail)
        return None

    def solve(self, budget: SolverBudget | None, forced: int | None = None) -> SolveResult:
        if budget is not None:
            self.max_nodes = budget.max_nodes
            if budget.max_millis is not None:
                self.deadline = time.monotonic() + budget.max_millis / 1000.0
        trail: list[int] = []
        pending = list(range(self.n))
        ok = True
        if forced is not None:
            self._include(forced, trail, pending)
        if ok:
            ok = self._propagate(trail, pending)
        if ok and self.included and self.active == 0:
            return self._result(SolveStatus.FOUND, tuple(sorted(self.included)))
        if not ok:
            return self._result(SolveStatus.NONE_EXISTS, None)
        try:
            found = self._dfs(0)
        except _BudgetHit:
            return self._result(SolveStatus.BUDGET_EXHAUSTED, None)
        if found is None:
            return self._result(SolveStatus.NONE_EXISTS, None)
        return self._result(SolveStatus.FOUND, found)

    def _result(self, stat: SolveStatus, found: tuple[int, ...] | None) -> SolveResult:
        cert = None
        if found is not None:
            cov = 0
            for e in found:
                cov |= self.masks[e]
            cert = Certificate(r=self.r, edge_indices=found, covered=vertices_of(cov))
        return SolveResult(status=stat, certificate=cert, nodes=self.nodes)


def _solve_masks(n: int, edge_masks, r: int, budget: SolverBudget | None = None,
                 forced: int | None = None) -> SolveResult:
    """Search over raw masks; `forced` pre-includes one edge (used by the
    extremal module, where the rest of the edge set is already known free)."""
    return _RegularSearch(n, edge_masks, r).solve(budget, forced)


def find_regular(h: Hypergraph, r: int, budget: SolverBudget | None = None) -> SolveResult:
    """Exact search for an r-regular subgraph.

    FOUND comes with a certificate (the first solution in search order:
    include-first DFS over edges in colex order).  NONE_EXISTS is reported
    only when the search completed.  BUDGET_EXHAUSTED reports the node
    count reached; reruns with the same node budget are identical.
    """
    if not isinstance(r, int) or r < 2:
        raise ValueError(f"r must be an integer >= 2, got {r!r}")
    return _solve_masks(h.n, h.edge_masks, r, budget)


def brute_force_regular(h: Hypergraph, r: int) -> Certificate | None:
    """Oracle: scan all nonempty edge subsets in ascending subset-mask order
    and return the first r-regular one.  Guarded to |E| <= 25."""
    if not isinstance(r, int) or r < 2:
        raise ValueError(f"r must be an integer >= 2, got {r!r}")
    m = len(h.edges)
    if m > 25:
        raise GuardError(f"brute_force_regular is limited to 25 edges, got {m}")
    if m == 0:
        return None
    n = h.n
    inc = np.zeros((m, n), dtype=np.uint8)
    for i, e in enumerate(h.edges):
        for v in e:
            inc[i, v] = 1
    low_bits = min(m, 18)
    table = np.zeros((1 << low_bits, n), dtype=np.uint8)
    for i in range(low_bits):
        table[1 << i: 2 << i] = table[: 1 << i] + inc[i]
    rv = np.uint8(r)
    for high in range(1 << (m - low_bits)):
        if high == 0:
            degs = table
        else:
            base = np.zeros(n, dtype=np.uint8)
            hh = high
            j = 0
            while hh:
                if hh & 1:
                    base += inc[low_bits + j]
                hh >>= 1
                j += 1
            degs = table + base
        ok = ((degs == 0) | (degs == rv)).all(axis=1)
        if high == 0:
            ok[0] = False
        hits = np.flatnonzero(ok)
        if hits.size:
            subset = (high << low_bits) | int(hits[0])
            indices = vertices_of(subset)
            cov = 0
            for i in indices:
                cov |= h.edge_masks[i]
            return Certificate(r=r, edge_indices=indices, covered=vertices_of(cov))
    return None


def verify_certificate(h: Hypergraph, cert: Certificate) -> tuple[bool, str]:
    """Recompute the degree vector of the certificate's edges and check it.

    Returns (True, "ok") or (False, reason) with reason one of:
    "empty", "bad-index", "bad-degree", "covered-mismatch".
    """
    if not cert.edge_indices:
        return False, "empty"
    m = len(h.edges)
    seen = set()
    for i in cert.edge_indices:
        if not isinstance(i, int) or i < 0 or i >= m or i in seen:
            return False, "bad-index"
        seen.add(i)
    degs = [0] * h.n
    cov = 0
    for i in cert.edge_indices:
        cov |= h.edge_masks[i]
        for v in h.edges[i]:
            degs[v] += 1
    for v in cert.covered:
        if not isinstance(v, int) or v < 0 or v >= h.n or degs[v] != cert.r:
            return False, "bad-degree"
    if vertices_of(cov) != tuple(sorted(cert.covered)):
        return False, "covered-mismatch"
    return True, "ok"


def serialize_certificate(cert: Certificate) -> str:
    """Three lines: "r m", the edge indices, the covered vertices."""
    lines = [
        f"{cert.r} {len(cert.edge_indices)}",
        " ".join(str(i) for i in cert.edge_indices),
        " ".join(str(v) for v in cert.covered),
    ]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    lines = text.splitlines()
    if len(lines) < 3:
        raise ParseError("certificate needs three lines: header, edges, covered")
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"malformed certificate header {lines[0]!r}")
    try:
        r, m = int(head[0]), int(head[1])
        indices = tuple(int(t) for t in lines[1].split())
        covered = tuple(int(t) for t in lines[2].split())
    except ValueError:
        raise ParseError("non-integer field in certificate") from None
    if len(indices) != m:
        raise ParseError(f"certificate header says {m} edges, found {len(indices)}")
    return Certificate(r=r, edge_indices=indices, covered=covered)
