"""Integer max-flow / min-cut (Dinic) used by the closure reductions.

Capacities stay in machine integers; callers emulate infinite arcs with
``1 + sum of finite capacities`` so that every min cut is finite.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Directed flow network over nodes 0..size-1."""

    def __init__(self, size: int):
        self.size = size
        self.head: list[list[int]] = [[] for _ in range(size)]
        # arcs stored as parallel arrays; arc i^1 is the reverse of arc i
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, capacity: int) -> None:
        if capacity < 0:
            raise ValueError("negative capacity")
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(capacity)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        """Exact max-flow value from s to t (Dinic's algorithm)."""
        flow = 0
        while True:
            level = self._bfs_levels(s, t)
            if level[t] < 0:
                return flow
            it = [0] * self.size
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                flow += pushed

    def _bfs_levels(self, s: int, t: int) -> list[int]:
        level = [-1] * self.size
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _augment(self, s: int, t: int, level: list[int], it: list[int]) -> int:
        """Push one augmenting path along the level graph; 0 when blocked."""
        stack = [s]
        path: list[int] = []
        while stack:
            node = stack[-1]
            if node == t:
                pushed = min(self.cap[i] for i in path)
                for i in path:
                    self.cap[i] -= pushed
                    self.cap[i ^ 1] += pushed
                return pushed
            advanced = False
            while it[node] < len(self.head[node]):
                i = self.head[node][it[node]]
                v = self.to[i]
                if self.cap[i] > 0 and level[v] == level[node] + 1:
                    stack.append(v)
                    path.append(i)
                    advanced = True
                    break
                it[node] += 1
            if not advanced:
                level[node] = -1
                stack.pop()
                if path:
                    path.pop()
                if stack:
                    it[stack[-1]] += 1
        return 0

    def source_side(self, s: int) -> frozenset[int]:
        """Nodes reachable from s in the residual network (a min cut side)."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return frozenset(seen)
