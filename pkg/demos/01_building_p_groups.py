#!/usr/bin/env python3
"""Build concrete p-groups and read off their structure.

Walks through the constructions the library offers: metacyclic presentations
collected to a pair normal form, semidirect products of cyclic groups, direct
products, and the Heisenberg and wreath families.
"""

from frattini import (MetacyclicParams, abelian_invariants, center, coclass,
                      commutator_subgroup, frattini_subgroup, generator_rank,
                      heisenberg_group, lower_central_series, metacyclic_group,
                      nilpotency_class, quotient, semidirect_cyclic,
                      wreath_cyclic)

# The quaternion group Q8 is metacyclic: a^4 = 1, b^2 = a^2, a^b = a^-1.
q8 = metacyclic_group(MetacyclicParams(p=2, alpha=2, beta=1, gamma=1, r=3))
print("Q8:", q8.order, "elements,", "abelian" if q8.is_abelian() else "nonabelian")
print("  element orders:", sorted(q8.element_order(g) for g in range(8)))
print("  center order:", center(q8).order)
print("  [Q8, Q8] order:", commutator_subgroup(q8).order)

# Changing gamma from 1 to 2 splits the extension: the dihedral group D8.
d8 = metacyclic_group(MetacyclicParams(p=2, alpha=2, beta=1, gamma=2, r=3))
print("\nD8: Frattini subgroup order", frattini_subgroup(d8).order)
print("  generator rank d(G) =", generator_rank(d8))

# The workhorse example: Z/32 x| Z/16 where the twist is x -> 11x.
# |G| = 2^9, nilpotency class 5, coclass 4, and Phi(G) is nonabelian.
G = semidirect_cyclic(32, 16, 11)
phi = frattini_subgroup(G)
print("\nZ/32 x| Z/16 (twist 11):")
print("  order:", G.order)
print("  lower central series orders:", lower_central_series(G).orders())
print("  class:", nilpotency_class(G), " coclass:", coclass(G))
print("  |Phi(G)| =", phi.order, "(abelian)" if phi.is_abelian() else "(nonabelian)")
print("  G/Phi(G) invariants:", abelian_invariants(quotient(G, phi).group))

# Odd-p representatives of maximal nilpotency class.
h27 = heisenberg_group(3)
w81 = wreath_cyclic(3)
print("\nheisenberg(3): order", h27.order, "class", nilpotency_class(h27))
print("wreath Z/3 wr Z/3: order", w81.order, "class", nilpotency_class(w81),
      "coclass", coclass(w81))
