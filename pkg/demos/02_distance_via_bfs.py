"""Two independent routes to the same metric.

The rank of a difference and the breadth-first path length in the
adjacency graph agree everywhere.  The BFS route builds its neighbor
steps from outer products and never computes a rank, so the agreement is
a genuine cross-check, not a tautology.
"""

import numpy as np

from bfgeo import Mat, arithmetic_distance, bfs_distances, graph_distance, make_field, space

F4 = make_field(2, 2)
Z = Mat.zeros(F4, 2, 2)
I = Mat.identity(F4, 2)

print(f"rank distance (0, I) = {arithmetic_distance(Z, I)}")
print(f"BFS distance  (0, I) = {graph_distance(Z, I)}")

d0 = bfs_distances(Z)
counts = {int(k): int((d0 == k).sum()) for k in np.unique(d0)}
print(f"sphere sizes around 0 in GF(4)^(2x2): {counts}")
print("(75 neighbors = the number of rank-1 matrices, 180 at distance 2)")

# exhaustive agreement over a whole small space
F2 = make_field(2, 1)
sp = space(F2, 2, 3)
mismatch = 0
for A in sp:
    d = bfs_distances(A)
    for B in sp:
        if d[B.encode()] != arithmetic_distance(A, B):
            mismatch += 1
print(f"\nGF(2)^(2x3): {sp.count * sp.count} pairs checked, {mismatch} disagreements")
