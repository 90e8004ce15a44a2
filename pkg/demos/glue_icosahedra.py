#!/usr/bin/env python3
"""Glue two icosahedra along their antipodal pairs and look at what comes out.

Each icosahedron is edge-regular (12, 5, 2) and its six antipodal pairs are
perfect 1-codes. With a = 2 and lambda + 2 = 4 we need t = 2 copies, and a
single permutation decides which pair of copy 2 joins which pair of copy 1.
Running over all 720 permutations gives only a handful of graphs up to
isomorphism, and they all share one spectrum.
"""

import itertools
from collections import Counter

from neumaier import certify_neumaier, char_poly, classify, f_pi_construct, make_context, spectrum_report
from neumaier.generators import icosahedron

g, part = icosahedron()
print("input:", g, "codes:", part.codes)

outputs = [f_pi_construct(make_context([(g, part), (g, part)], [perm]))
           for perm in itertools.permutations(range(1, 7))]
graphs = [out.graph for out in outputs]

cert = certify_neumaier(outputs[0].graph, spread=outputs[0].spread)
print("parameters of the identity gluing:", cert.params, "strict:", cert.strict)

classes = classify(graphs)
print(f"{len(graphs)} gluings fall into {len(classes)} isomorphism classes")
for c in classes:
    print(f"  {c.count:4d} permutations  ->  {c.canonical_graph6}")

polys = Counter(str(char_poly(graphs[c.representative])) for c in classes)
print("distinct characteristic polynomials among the classes:", len(polys))

print("spectrum:")
for entry in spectrum_report(graphs[0]):
    print(f"  {str(entry.exact):>10}  x{entry.mult}")
