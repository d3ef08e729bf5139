"""frattini: a computational laboratory for Schmid's conjecture on p-groups.

The package builds concrete finite p-groups, computes the Tate cohomology of
Z(Phi(G)) over the Frattini quotient G/Phi(G) to decide the S/NS verdict, and
exhaustively classifies cohomologically trivial effective elementary abelian
actions on small abelian p-groups.
"""

from .abelian import EndoMatrix, FinAbGroup
from .autsearch import (SearchGuardError, classify_ct_actions,
                        congruence_solver, elementary_abelian_subgroups,
                        enumerate_automorphisms, odd_p_sylow_audit,
                        aut_z4z4_structure_audit, order_p_automorphisms,
                        type_homomorphism)
from .catalog import (FamilyDescriptor, build, census, family_sweep,
                      metacyclic_sweep, parse_compact, parse_group_config)
from .classifier import (ClassificationReport, classify, example_group_audit,
                       ns_constraints_audit, reports_markdown_table,
                       verify_family)
from .groups import (MetacyclicParams, PGroup, Series, Subgroup,
                     abelian_invariants, center, centralizer, closure, coclass,
                     commutator_subgroup, cyclic_group, direct_product,
                     elementary_abelian_group, frattini_subgroup,
                     generator_rank, heisenberg_group, lower_central_series,
                     metacyclic_group, nilpotency_class, quotient,
                     semidirect_cyclic, subgroup_center, upper_central_series,
                     wreath_cyclic)
from .tate import (QModule, TateGroup, commutator_submodule, fixed_points,
                   is_cohomologically_trivial, module_from_group, norm_map,
                   order_formula_check, tate_h0, tate_h_minus1)
from .verification import run_suite

__version__ = "0.1.0"
