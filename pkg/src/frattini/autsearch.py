"""Exhaustive search machinery over automorphism groups of abelian p-groups.

The pipeline: enumerate every well-formed endomorphism matrix of a
:class:`FinAbGroup`, keep the bijective ones, list the elements of order p,
grow all elementary abelian subgroups of the automorphism group rank by rank
(deduplicated by literal element-set equality), and test each subgroup's
action for cohomological triviality through :mod:`frattini.tate`.

Since the subgroups come from Aut(M), every action examined is effective by
construction.  Two structural audits back the searches on Z/p^k x Z/p and on
Z/4 x Z/4: they verify the block form of the order-p automorphisms, the
commuting-type table, the p-Sylow description and the explicit norm formulas
that make those modules never cohomologically trivial.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .abelian import (EndoMatrix, FinAbGroup, endomorphism_count,
                      identity_endo, iter_endomorphism_matrices)
from . import tate

ENDO_GUARD = 2**16      # maximum endomorphism candidates per module
PAIR_GUARD = 10**8      # maximum commuting-pair scans per search
GUARD_ENV = "FRATTINI_GUARD_OVERRIDE"


class SearchGuardError(RuntimeError):
    """A search exceeded its combinatorial guard."""


def guard_limit(default: int) -> int:
    """Guards can only be raised, via the FRATTINI_GUARD_OVERRIDE env var."""
    raw = os.environ.get(GUARD_ENV)
    if not raw:
        return default
    try:
        return max(default, int(raw))
    except ValueError:
        return default


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_automorphisms(M: FinAbGroup) -> list[EndoMatrix]:
    """All automorphisms of M, as matrices with cached permutations.

    Bijectivity is decided by image cardinality, which is uniform over
    mixed-exponent modules and needs no normal-form bookkeeping.
    """
    count = endomorphism_count(M)
    if count > guard_limit(ENDO_GUARD):
        raise SearchGuardError(
            f"{M.describe()} has {count} endomorphism candidates "
            f"(guard {guard_limit(ENDO_GUARD)})")
    mats = np.stack(list(iter_endomorphism_matrices(M)))
    imgs = np.einsum("nij,mj->nmi", mats, M.vectors) % M.moduli
    perms = imgs @ M.weights
    bijective = np.all(np.sort(perms, axis=1) == np.arange(M.order), axis=1)
    autos = []
    for keep, mat, perm in zip(bijective, mats, perms):
        if keep:
            endo = EndoMatrix(M, mat, check=False)
            endo._perm = perm
            autos.append(endo)
    return autos


def order_p_automorphisms(M: FinAbGroup, autos=None,
                          include_identity: bool = False) -> list[EndoMatrix]:
    """Automorphisms A with A^p = identity (identity itself optional)."""
    autos = autos if autos is not None else enumerate_automorphisms(M)
    ident = np.arange(M.order)
    out = []
    for a in autos:
        perm = a.permutation()
        cur = perm
        for _ in range(M.p - 1):
            cur = perm[cur]
        if np.array_equal(cur, ident):
            if include_identity or not np.array_equal(perm, ident):
                out.append(a)
    return out


# ---------------------------------------------------------------------------
# the quadratic congruence behind the Z/2^k x Z/2 analysis
# ---------------------------------------------------------------------------

def congruence_solver(k: int) -> list[int]:
    """Brute-force solutions of r^2 - 1 = 2^(k-1) (mod 2^k), 0 <= r < 2^k."""
    if k < 2:
        raise ValueError("need k >= 2")
    mod = 2**k
    target = 2 ** (k - 1)
    return [r for r in range(mod) if (r * r - 1) % mod == target]


def congruence_closed_form(k: int) -> list[int]:
    """The closed-form solution set: empty for k in {2,3}, else 2^(k-2)n +- 1."""
    if k < 2:
        raise ValueError("need k >= 2")
    if k < 4:
        return []
    q = 2 ** (k - 2)
    mod = 2**k
    return sorted({(q - 1) % mod, (q + 1) % mod, (3 * q - 1) % mod,
                   (3 * q + 1) % mod})


def square_root_of_unity_corners(k: int) -> list[int]:
    """Solutions of r^2 = 1 (mod 2^k): the corners {1, -1, 2^(k-1) +- 1}."""
    mod = 2**k
    return sorted({r for r in range(mod) if (r * r) % mod == 1})


# ---------------------------------------------------------------------------
# types of automorphisms of Z/2^k x Z/2
# ---------------------------------------------------------------------------

def type_homomorphism(A: EndoMatrix) -> tuple[int, int]:
    """The type (m, n) of a block automorphism of Z/2^k x Z/2.

    In block form the automorphism is (corner, m*j; n*q, 1) with j the
    inclusion Z/2 -> Z/2^k (multiplication by 2^(k-1)) and q reduction mod 2;
    the type map is a homomorphism onto Z/2 + Z/2.
    """
    M = A.module
    if M.p != 2 or M.rank != 2 or M.exponents[1] != 1 or M.exponents[0] < 2:
        raise tate.ModuleDomainError("type is defined on Z/2^k x Z/2 only")
    k = M.exponents[0]
    a12 = int(A.matrix[0, 1])
    if a12 % 2 ** (k - 1):
        raise tate.ModuleDomainError("matrix violates the block constraint")
    m = (a12 // 2 ** (k - 1)) % 2
    n = int(A.matrix[1, 0]) % 2
    return m, n


def corner(A: EndoMatrix) -> int:
    """The Aut(Z/p^k) component of a block automorphism of Z/p^k x Z/p."""
    return int(A.matrix[0, 0])


def types_commute(t1: tuple[int, int], t2: tuple[int, int]) -> bool:
    """The commuting table for order-two automorphisms, by type."""
    return t1 == (0, 0) or t2 == (0, 0) or t1 == t2


def commuting_type_table_check(k: int) -> dict:
    """Exhaustively compare commutation of order-2 automorphisms with the table."""
    M = FinAbGroup(2, (k, 1))
    autos = enumerate_automorphisms(M)
    invol = order_p_automorphisms(M, autos)
    mismatches = []
    for a, b in itertools.product(invol, repeat=2):
        predicted = types_commute(type_homomorphism(a), type_homomorphism(b))
        actual = a.commutes_with(b)
        if predicted != actual:
            mismatches.append((a.as_lists(), b.as_lists()))
    return {
        "k": k,
        "involutions": len(invol),
        "pairs": len(invol) ** 2,
        "mismatches": mismatches,
        "ok": not mismatches,
    }


# ---------------------------------------------------------------------------
# elementary abelian subgroups of Aut(M)
# ---------------------------------------------------------------------------

@dataclass
class ElementarySubgroup:
    """An elementary abelian p-subgroup of Aut(M), given by generators."""

    rank: int
    generators: tuple[EndoMatrix, ...]
    element_keys: frozenset  # indices into the order-p element list

    def generator_lists(self) -> list[list[list[int]]]:
        return [g.as_lists() for g in self.generators]


def elementary_abelian_subgroups(autos: list[EndoMatrix], rank_min: int = 1,
                                 rank_max: int | None = None) -> list[ElementarySubgroup]:
    """All elementary abelian subgroups of rank >= rank_min of the given group.

    Grows subgroups rank by rank: a rank-(r+1) subgroup is a rank-r subgroup
    extended by a commuting order-p element outside it.  Deduplication is by
    literal element-set equality, not conjugacy, so the output is exhaustive.
    """
    if not autos:
        return []
    M = autos[0].module
    p = M.p
    orderp = order_p_automorphisms(M, autos)
    if not orderp:
        return []
    t = len(orderp)
    if t * t > guard_limit(PAIR_GUARD):
        raise SearchGuardError(f"commuting scan needs {t*t} pairs")
    perms = np.stack([a.permutation() for a in orderp])
    key_to_index = {a.key: i for i, a in enumerate(orderp)}
    # pairwise commutation as python bitmasks
    compose = perms[:, perms]          # compose[i, j] = perms[i] after perms[j]
    commute = np.all(compose == compose.transpose(1, 0, 2), axis=2)
    masks = []
    for i in range(t):
        bits = 0
        for j in np.nonzero(commute[i])[0]:
            bits |= 1 << int(j)
        masks.append(bits)

    key_to_index_perm = {perms[i].tobytes(): i for i in range(t)}
    ident = np.arange(M.order)

    def close_element_set(gen_indices):
        """Indices of all non-identity elements of the generated subgroup."""
        elems: set[int] = set()
        cache = {-1: ident}
        frontier = [-1]
        while frontier:
            nxt = []
            for e in frontier:
                base = cache[e]
                for gi in gen_indices:
                    prod = perms[gi][base]
                    if np.array_equal(prod, ident):
                        continue
                    idx = key_to_index_perm.get(prod.tobytes())
                    if idx is None:
                        raise tate.ModuleDomainError(
                            "closure left the order-p element list")
                    if idx not in elems:
                        elems.add(idx)
                        cache[idx] = prod
                        nxt.append(idx)
            frontier = nxt
        return frozenset(elems)

    # rank-1 subgroups
    seen: dict[frozenset, ElementarySubgroup] = {}
    level: list[ElementarySubgroup] = []
    for i in range(t):
        elems = close_element_set((i,))
        if elems not in seen:
            sub = ElementarySubgroup(1, (orderp[i],), elems)
            seen[elems] = sub
            level.append(sub)
    all_subs = list(level)
    rank = 1
    while level and (rank_max is None or rank < rank_max):
        rank += 1
        nxt: list[ElementarySubgroup] = []
        for sub in level:
            cand = None
            for g in sub.generators:
                gi = key_to_index[g.key]
                cand = masks[gi] if cand is None else cand & masks[gi]
            bits = cand
            while bits:
                low = bits & -bits
                j = low.bit_length() - 1
                bits ^= low
                if j in sub.element_keys:
                    continue
                gens = sub.generators + (orderp[j],)
                elems = close_element_set(
                    tuple(key_to_index[g.key] for g in gens))
                if elems not in seen:
                    new = ElementarySubgroup(rank, gens, elems)
                    seen[elems] = new
                    nxt.append(new)
        all_subs.extend(nxt)
        level = nxt
    result = [s for s in all_subs if s.rank >= rank_min]
    result.sort(key=lambda s: (s.rank, tuple(sorted(s.element_keys))))
    return result


# ---------------------------------------------------------------------------
# the classification search
# ---------------------------------------------------------------------------

@dataclass
class SearchHit:
    """One cohomologically trivial action, with a re-checkable witness."""

    rank: int
    generators: list  # generator matrices as nested int lists
    h0_order: int
    h_minus1_order: int
    formula_status: str

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "generators": self.generators,
            "h0_order": self.h0_order,
            "h_minus1_order": self.h_minus1_order,
            "order_formula": self.formula_status,
        }


@dataclass
class SearchReport:
    """Outcome of classify_ct_actions over one module."""

    p: int
    exponents: tuple[int, ...]
    rank_min: int
    automorphism_count: int
    order_p_count: int
    subgroup_counts: dict
    examined: int
    hits: list
    vanishing_equivalence_violations: int
    guard_note: str = ""

    @property
    def hit_count(self) -> int:
        return len(self.hits)

    def hits_of_rank(self, rank: int) -> list:
        return [h for h in self.hits if h.rank == rank]

    def to_json_dict(self) -> dict:
        return {
            "schema": "frattini.search/1",
            "module": {"p": self.p, "exponents": list(self.exponents)},
            "rank_min": self.rank_min,
            "automorphism_count": self.automorphism_count,
            "order_p_count": self.order_p_count,
            "subgroup_counts": {str(k): v for k, v in
                                sorted(self.subgroup_counts.items())},
            "subgroups_examined": self.examined,
            "hit_count": self.hit_count,
            "hits": [h.to_json_dict() for h in self.hits],
            "vanishing_equivalence_violations":
                self.vanishing_equivalence_violations,
            "guard_note": self.guard_note,
        }


def _evaluate_action(args):
    p, exponents, gen_lists = args
    M = FinAbGroup(p, tuple(exponents))
    mod = tate.QModule.from_matrices(M, gen_lists, check=False)
    h0 = tate.tate_h0(mod)
    hm1 = tate.tate_h_minus1(mod)
    formula = tate.order_formula_check(mod)
    return h0.order, hm1.order, formula.status


def classify_ct_actions(M: FinAbGroup, rank_min: int = 2,
                        jobs: int = 1) -> SearchReport:
    """Exhaustively test every rank >= rank_min elementary abelian subgroup of
    Aut(M) for cohomological triviality of its action on M."""
    autos = enumerate_automorphisms(M)
    orderp_count = len(order_p_automorphisms(M, autos))
    subs = elementary_abelian_subgroups(autos, rank_min=rank_min)
    counts: dict[int, int] = {}
    for s in subs:
        counts[s.rank] = counts.get(s.rank, 0) + 1

    tasks = [(M.p, M.exponents, s.generator_lists()) for s in subs]
    if jobs > 1 and len(tasks) > 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_action, tasks,
                                    chunksize=max(1, len(tasks) // (jobs * 8))))
    else:
        results = [_evaluate_action(t) for t in tasks]

    hits = []
    violations = 0
    for sub, (h0, hm1, formula) in zip(subs, results):
        if (h0 == 1) != (hm1 == 1):
            violations += 1
        if h0 == 1 and hm1 == 1:
            hits.append(SearchHit(sub.rank, sub.generator_lists(),
                                  h0, hm1, formula))
    return SearchReport(
        p=M.p,
        exponents=M.exponents,
        rank_min=rank_min,
        automorphism_count=len(autos),
        order_p_count=orderp_count,
        subgroup_counts=counts,
        examined=len(subs),
        hits=hits,
        vanishing_equivalence_violations=violations,
    )


# ---------------------------------------------------------------------------
# structural audits
# ---------------------------------------------------------------------------

@dataclass
class AuditCheck:
    name: str
    ok: bool
    detail: str = ""


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def odd_p_sylow_audit(p: int, k: int) -> list[AuditCheck]:
    """Structural audit of Aut(Z/p^k x Z/p) for odd p.

    Verifies: the block automorphisms with corner = 1 mod p form the (normal)
    p-Sylow S; A^p = 1 on S iff corner^p = 1; the norm of each order-p element
    is diag(p, 0) for p >= 5 and diag(3 + 3^(k-1)mn, 0) for p = 3; the trace
    image of every rank >= 2 elementary abelian subgroup misses the fixed
    point (p, 0) and lies in p^2 Z/p^k x 0.
    """
    if p % 2 == 0:
        raise ValueError("odd p only")
    M = FinAbGroup(p, (k, 1))
    pk = p**k
    autos = enumerate_automorphisms(M)
    checks = []

    sylow = [a for a in autos
             if corner(a) % p == 1 and int(a.matrix[1, 1]) % p == 1]
    p_part = _p_part(len(autos), p)
    checks.append(AuditCheck(
        "sylow-order", len(sylow) == p_part,
        f"|S| = {len(sylow)}, p-part of |Aut| = {p_part}"))

    sylow_keys = {a.key for a in sylow}
    closed = all((a @ b).key in sylow_keys
                 for a in sylow for b in sylow)
    checks.append(AuditCheck("sylow-closed", closed, "S closed under composition"))

    orderp = order_p_automorphisms(M, autos)
    inside = all(a.key in sylow_keys for a in orderp)
    checks.append(AuditCheck(
        "order-p-inside-sylow", inside,
        "every order-p automorphism lies in S (S is the unique p-Sylow)"))

    ok_iff = True
    for a in sylow:
        lhs = a.power(p).is_identity()
        rhs = pow(corner(a), p, pk) == 1
        ok_iff &= lhs == rhs
    checks.append(AuditCheck(
        "p-th-power-criterion", ok_iff, "A^p = 1 iff corner^p = 1 on S"))

    norm_ok = True
    details = []
    for a in orderp:
        m = int(a.matrix[0, 1]) // p ** (k - 1)
        n = int(a.matrix[1, 0]) % p
        if p >= 5:
            expected_corner = p % pk
        else:
            expected_corner = (3 + 3 ** (k - 1) * m * n) % pk
        expected = np.array([[expected_corner, 0], [0, 0]], dtype=np.int64)
        total = np.zeros((2, 2), dtype=np.int64)
        cur = identity_endo(M)
        for _ in range(p):
            total = total + cur.matrix
            cur = cur @ a
        total = total % M.moduli[:, None]
        if not np.array_equal(total, expected % M.moduli[:, None]):
            norm_ok = False
            details.append(f"corner {corner(a)}: norm {total.tolist()}")
    checks.append(AuditCheck(
        "norm-displayed-form", norm_ok,
        "norm of each order-p element matches diag(p,0) / diag(3+3^(k-1)mn,0)"
        + ("" if norm_ok else f"; offenders {details[:3]}")))

    witness = M.encode((p, 0))
    subs = elementary_abelian_subgroups(autos, rank_min=2)
    image_ok = True
    fixed_ok = True
    contained_ok = True
    for sub in subs:
        mod = tate.QModule.from_matrices(M, [g for g in sub.generators],
                                         check=False)
        norm = tate.norm_map(mod)
        image = set(int(x) for x in np.unique(norm))
        fixed = set(int(x) for x in tate.fixed_points(mod))
        if witness in image:
            image_ok = False
        if witness not in fixed:
            fixed_ok = False
        allowed = {M.encode((p * p * t, 0)) for t in range(max(1, pk // (p * p)))}
        if not image <= allowed:
            contained_ok = False
    checks.append(AuditCheck(
        "fixed-witness", fixed_ok,
        f"(p, 0) fixed by all {len(subs)} rank>=2 subgroups"))
    checks.append(AuditCheck(
        "witness-escapes-image", image_ok, "(p, 0) never lies in the trace image"))
    checks.append(AuditCheck(
        "image-in-p2-layer", contained_ok,
        "trace image inside p^2 Z/p^k x 0 for every rank>=2 subgroup"))
    return checks


def aut_z4z4_structure_audit() -> list[AuditCheck]:
    """Structural audit of Aut(Z/4 x Z/4) and its Sylow 2-subgroup.

    Verifies the restriction-to-socle kernel K = {I + 2B} of order 16, the
    short exact sequence count |Aut| = 96 = 16 * 6, the Sylow subgroup
    S = K u K.sigma of order 32, the commuting and order-two shapes inside S,
    the vanishing trace over rank-2 subgroups of K, the explicit trace form
    2(I+B)(1+sigma) for mixed pairs with its fixed-point witnesses, and the
    vanishing trace over every rank >= 3 subgroup.
    """
    M = FinAbGroup(2, (2, 2))
    autos = enumerate_automorphisms(M)
    checks = [AuditCheck("aut-order", len(autos) == 96, f"|Aut| = {len(autos)}")]

    K = [a for a in autos if np.array_equal(a.matrix % 2, np.eye(2, dtype=np.int64))]
    checks.append(AuditCheck("kernel-order", len(K) == 16, f"|K| = {len(K)}"))
    kernel_ea = all(a.power(2).is_identity() for a in K) and \
        all(a.commutes_with(b) for a in K for b in K)
    checks.append(AuditCheck("kernel-elementary-abelian", kernel_ea,
                             "K is elementary abelian of rank 4"))

    # restriction to the socle 2M = {0,2}^2, recorded as the action mod 2
    def socle_action(a: EndoMatrix) -> bytes:
        return (a.matrix % 2).astype(np.int8).tobytes()

    socle_images = {socle_action(a) for a in autos}
    checks.append(AuditCheck("socle-image-order", len(socle_images) == 6,
                             f"restriction image has order {len(socle_images)}"))

    sigma = EndoMatrix(M, [[0, 1], [1, 0]])
    ident_key = socle_action(identity_endo(M))
    sigma_key = socle_action(sigma)
    S = [a for a in autos if socle_action(a) in (ident_key, sigma_key)]
    checks.append(AuditCheck("sylow-order", len(S) == 32, f"|S| = {len(S)}"))
    k_keys = {a.key for a in K}
    coset = [a for a in S if a.key not in k_keys]
    split_ok = len(coset) == 16 and all(
        any((b @ sigma).key == a.key for b in K) for a in coset)
    checks.append(AuditCheck("sylow-splits", split_ok,
                             "S = K u K.sigma, a semidirect K x| <sigma>"))

    def symmetric_form(mat2: np.ndarray) -> bool:
        # 2B of shape [[a, b], [b, a]]
        return mat2[0, 0] == mat2[1, 1] and mat2[0, 1] == mat2[1, 0]

    commute_shape_ok = True
    for a in K:
        twoB = (a.matrix - np.eye(2, dtype=np.int64)) % 4
        for b in K:
            mixed = b @ sigma
            expected = symmetric_form(twoB)
            if a.commutes_with(mixed) != expected:
                commute_shape_ok = False
    checks.append(AuditCheck(
        "mixed-commuting-shape", commute_shape_ok,
        "I+2B commutes with (I+2B')sigma iff 2B = [[a,b],[b,a]]"))

    order2_shape_ok = True
    for b in K:
        mixed = b @ sigma
        twoB = (b.matrix - np.eye(2, dtype=np.int64)) % 4
        if mixed.power(2).is_identity() != symmetric_form(twoB):
            order2_shape_ok = False
    checks.append(AuditCheck(
        "mixed-order-two-shape", order2_shape_ok,
        "(I+2B')sigma has order two iff 2B' = [[a,b],[b,a]]"))

    # rank-2 subgroups inside K: trace vanishes
    k_rank2_ok = True
    for a, b in itertools.combinations(K, 2):
        if a.is_identity() or b.is_identity() or a.key == b.key:
            continue
        mod = tate.QModule.from_matrices(M, [a, b], check=False)
        if not np.all(tate.norm_map(mod) == 0):
            k_rank2_ok = False
    checks.append(AuditCheck("kernel-rank2-trace-zero", k_rank2_ok,
                             "norm vanishes for every rank-2 subgroup of K"))

    # mixed rank-2 subgroups: trace equals 2(I+B)(1+sigma); residual cases
    # carry a fixed point among (1,1), (1,3) outside the image
    mixed_trace_ok = True
    residual_ok = True
    sigma_mat = sigma.matrix
    eye = np.eye(2, dtype=np.int64)
    for a in K:
        twoB = (a.matrix - eye) % 4
        if a.is_identity() or not symmetric_form(twoB):
            continue
        for b in K:
            mixed = b @ sigma
            twoBp = (b.matrix - eye) % 4
            if not symmetric_form(twoBp):
                continue  # not order two
            # E = <I+2B, (I+2B')sigma>
            mod = tate.QModule.from_matrices(M, [a, mixed], check=False)
            norm = tate.norm_map(mod)
            B_half = twoB // 2
            expected_mat = (2 * (eye + B_half) @ (eye + sigma_mat)) % 4
            expected_perm = EndoMatrix(M, expected_mat, check=False).permutation()
            if not np.array_equal(norm, expected_perm):
                mixed_trace_ok = False
            image = set(int(x) for x in np.unique(norm))
            if image != {0}:
                fixed = set(int(x) for x in tate.fixed_points(mod))
                witnesses = {M.encode((1, 1)), M.encode((1, 3))}
                if not (witnesses & fixed) - image:
                    residual_ok = False
    checks.append(AuditCheck(
        "mixed-trace-form", mixed_trace_ok,
        "norm of <I+2B, (I+2B')sigma> equals 2(I+B)(1+sigma)"))
    checks.append(AuditCheck(
        "residual-fixed-witness", residual_ok,
        "nonzero-trace cases fix (1,1) or (1,3) outside the image"))

    subs = elementary_abelian_subgroups(autos, rank_min=3)
    rank3_ok = True
    for sub in subs:
        mod = tate.QModule.from_matrices(M, list(sub.generators), check=False)
        if not np.all(tate.norm_map(mod) == 0):
            rank3_ok = False
    checks.append(AuditCheck(
        "rank3-trace-zero", rank3_ok,
        f"norm vanishes for all {len(subs)} rank>=3 subgroups"))
    return checks
