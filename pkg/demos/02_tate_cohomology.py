#!/usr/bin/env python3
"""Tate cohomology of elementary abelian actions, degree 0 and -1.

Three modules tell the whole story:

* the trivial module Z/2 over (Z/2)^2, where the norm map vanishes and both
  Tate groups survive,
* the free module F2[(Z/2)^2] = (Z/2)^4 under the regular representation,
  which is cohomologically trivial and satisfies the order factorization
  |A| = |A^Q| * |A^Q x Q| * |[A,Q,Q]|,
* the module a nonabelian group carries intrinsically: Z(Phi(G)) under
  conjugation by the Frattini quotient G/Phi(G).
"""

import numpy as np

from frattini import (FinAbGroup, QModule, commutator_submodule, fixed_points,
                      is_cohomologically_trivial, metacyclic_group,
                      MetacyclicParams, module_from_group, norm_map,
                      order_formula_check, semidirect_cyclic, tate_h0,
                      tate_h_minus1)

# --- the trivial module -----------------------------------------------------
Z2 = FinAbGroup(2, (1,))
trivial = QModule.from_matrices(Z2, [[[1]], [[1]]])   # both generators idle
print("trivial Z/2 over (Z/2)^2:")
print("  norm map values:", np.unique(norm_map(trivial)))
print("  H^0 =", tate_h0(trivial), " H^-1 =", tate_h_minus1(trivial))
print("  cohomologically trivial?", is_cohomologically_trivial(trivial))

# --- the free module ---------------------------------------------------------
# Coordinates of (Z/2)^4 indexed by the four elements of the acting group;
# each generator acts by translating the index.
M = FinAbGroup(2, (1, 1, 1, 1))
translate_10 = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
translate_01 = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
free = QModule.from_matrices(M, [translate_10, translate_01])
print("\nfree module (Z/2)^4 over (Z/2)^2:")
print("  fixed submodule size:", len(fixed_points(free)))
print("  commutator chain sizes:",
      [len(c) for c in commutator_submodule(free, 3)])
print("  cohomologically trivial?", is_cohomologically_trivial(free))
f = order_formula_check(free)
print(f"  order formula: {f.carrier_order} = {f.fixed_order} *"
      f" {f.tensor_order} * {f.double_commutator_order} -> {f.status}")

# --- the module of a group ---------------------------------------------------
d8 = metacyclic_group(MetacyclicParams(2, 2, 1, 2, 3))
m = module_from_group(d8)
print("\nZ(Phi(D8)) over D8/Phi(D8):")
print("  carrier size", m.size, " acting rank", m.rank)
print("  H^0 =", tate_h0(m), "  (nonzero, so D8 is an S-group)")

G = semidirect_cyclic(32, 16, 11)
m = module_from_group(G)
print("\nZ(Phi(G)) for G = Z/32 x| Z/16:")
print("  carrier invariants:", m.carrier_invariants())
print("  fixed points:", len(fixed_points(m)), "of", m.size)
print("  H^0 order:", tate_h0(m).order, " H^-1 order:", tate_h_minus1(m).order)
