#!/usr/bin/env python3
"""Exhaustive searches for cohomologically trivial effective actions.

For each small abelian p-group M, enumerate Aut(M), grow every elementary
abelian subgroup of rank at least two, and test each action.  The exclusions
(cyclic modules, Z/p^k x Z/p, Z/4 x Z/4) come out empty; (Z/2)^4 and
Z/4 x (Z/2)^2 produce genuine witnesses.
"""

from frattini import FinAbGroup, classify_ct_actions, congruence_solver

print("solutions of r^2 - 1 = 2^(k-1) mod 2^k (the corner congruence):")
for k in range(2, 8):
    print(f"  k={k}: {congruence_solver(k)}")

print("\nexclusion searches (expect zero hits everywhere):")
for p, exponents in [(2, (3,)), (2, (8,)), (3, (3,)), (5, (2,)),
                     (2, (4, 1)), (3, (2, 1)), (2, (2, 2))]:
    M = FinAbGroup(p, exponents)
    report = classify_ct_actions(M, rank_min=2)
    print(f"  {M.describe():>16}: {report.examined:4d} subgroups of rank >= 2,"
          f" {report.hit_count} hits")

print("\npositive witnesses:")
for exponents in [(1, 1, 1, 1), (2, 1, 1)]:
    M = FinAbGroup(2, exponents)
    report = classify_ct_actions(M, rank_min=2)
    ranks = sorted({h.rank for h in report.hits})
    print(f"  {M.describe():>16}: {report.hit_count} hits at ranks {ranks}"
          f" out of {report.examined} subgroups")

# every witness is re-checkable from its generator matrices
M = FinAbGroup(2, (2, 1, 1))
hit = classify_ct_actions(M, rank_min=2).hits[0]
print(f"\na witness action on {M.describe()} (generator matrices):")
for mat in hit.generators:
    print("  ", mat)
print("  order formula status:", hit.formula_status)
