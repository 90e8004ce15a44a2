#!/usr/bin/env python3
"""One switching step on a glued pair of icosahedra, spelled out.

Pick two codes i, j of copy 1. The switching sets are the parts, inside
copy 1, of the glued cliques through those codes. Vertices of copy 2 that
were joined to all of one of them get moved over to the other, which is
exactly what changes when the routing of i and j in copy 2 is swapped.
"""

import numpy as np

from neumaier import char_poly, f_pi_construct, make_context
from neumaier.generators import icosahedron
from neumaier.switching import construction_switching_sets, prop33_switch, validate_switching_partition, wqh_switch

g, part = icosahedron()
ctx = make_context([(g, part), (g, part)], [(2, 3, 1, 5, 6, 4)])
before = f_pi_construct(ctx).graph

i, j = 1, 2
c1, c2 = construction_switching_sets(ctx, [1], i, j)
print("C1 =", c1, " C2 =", c2)

p = validate_switching_partition(before, c1, c2)
after = wqh_switch(before, p)
moved = np.argwhere(np.triu(before.adj != after.adj))
print(f"{len(moved)} vertex pairs changed adjacency:", [tuple(map(int, e)) for e in moved])

res = prop33_switch(ctx, [1], i, j)
print("routing before:", ctx.pi.to_json(), " after:", res.pi.to_json())
print("switched graph equals the gluing for the new routing:", res.graph == after)
print("same characteristic polynomial:", char_poly(before) == char_poly(after))

# switching twice on the same (I, i, j) undoes it
back = prop33_switch(ctx.with_pi(res.pi), [1], i, j)
print("involution:", back.graph == before)
