"""Distance-2 structure and exact chromatic numbers on classic graphs.

A 2-distance coloring must separate every pair of vertices at distance at
most two, i.e. it properly colors the square graph.  Moore graphs are the
extremal case: their squares are complete, so chi2 hits degree^2 + 1.
"""

from sparse2dc import chi2_exact, d_star, girth, square, subdivide
from sparse2dc.families import cycle, hoffman_singleton, petersen, star

c5 = cycle(5)
print("C5: square has", square(c5).m, "edges (complete on 5 vertices)")
print("C5: chi2 =", chi2_exact(c5))

pet = petersen()
print("\nPetersen: girth", girth(pet), "| square is complete:",
      square(pet).m == 45)
print("Petersen: chi2 =", chi2_exact(pet))

hs = hoffman_singleton()
print("\nHoffman-Singleton: n =", hs.n, "| 7-regular:",
      all(hs.degree(v) == 7 for v in hs.vertices()), "| girth", girth(hs))
print("Hoffman-Singleton: chi2 =", chi2_exact(hs))

spider = subdivide(star(7), 1)
print("\nSubdivided 7-star: max degree 7, reach of the hub d* =",
      d_star(spider, 0))
print("Subdivided 7-star: chi2 =", chi2_exact(spider),
      "(the degree-plus-one floor)")

print("\nSubdividing stretches the girth multiplicatively:")
for t in (0, 1, 2):
    g = subdivide(cycle(3), t)
    print(f"  triangle with t={t}: girth {girth(g)}")
