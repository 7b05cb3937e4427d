import numpy as np


class UnionFind:
    """Disjoint sets over ``0..n-1`` with minimum-index roots.

    >>> uf = UnionFind(4)
    >>> uf.union(3, 1); uf.union(1, 2)
    >>> uf.find(2)
    1
    >>> uf.dense_labels().tolist()
    [0, 1, 1, 1]
    """

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry

    def roots(self) -> np.ndarray:
        p = np.array(self.parent, dtype=np.int64)
        while True:
            q = p[p]
            if np.array_equal(q, p):
                return p
            p = q

    def dense_labels(self) -> np.ndarray:
        """Class numbers ``0..c-1`` ordered by each class's minimal member."""
        roots = self.roots()
        if not len(roots):
            return roots
        uniq, inv = np.unique(roots, return_inverse=True)
        return inv.astype(np.int64).reshape(-1)
