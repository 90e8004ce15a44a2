#!/usr/bin/env python3
"""Small quotients of the triangular grid that keep a perfect code intact.

The Eisenstein integers b + c*omega form the triangular grid, 6-regular with
two common neighbours per edge. The ideal generated by 2 - omega has index 7
and its cosets are perfect 1-codes. Any sublattice inside that ideal gives a
finite quotient where the codes survive, so it can be fed straight into the
gluing construction with t = 1.
"""

from neumaier.generators import CODE_IDEAL, T1, T2, enumerate_code_preserving_quotients
from neumaier.reproduce import build_self
from neumaier.lattice import eisenstein, find_perfect_code_sublattices, lattice_quotient, snf, sublattice

spec = eisenstein()
codes = find_perfect_code_sublattices(spec)
print("index-7 sublattices whose cosets are perfect codes:", [c.hnf for c in codes])

for name, rows in (("T1", T1), ("T2", T2)):
    d, _, _ = snf(rows)
    q = lattice_quotient(spec, sublattice(rows))
    print(f"{name}: Smith diagonal {[d[k][k] for k in range(2)]}, group Z{' + Z'.join(map(str, q.invariants))}")

found = enumerate_code_preserving_quotients(spec, sublattice(CODE_IDEAL), 28)
print(f"order-28 quotients through which the codes descend: {len(found)}")
for cand in found:
    b = build_self(cand.graph, cand.partition)
    print(f"  sublattice {cand.sublattice.hnf}  group {cand.quotient.invariants}  ->  {b.cert.params}, "
          f"strict={b.strict}")
