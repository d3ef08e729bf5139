"""Tate cohomology in degrees 0 and -1 for elementary abelian actions.

A :class:`QModule` is a finite abelian p-group A together with an action of an
elementary abelian p-group Q of rank r, given by r pairwise commuting
automorphisms of order dividing p (the images of a fixed basis of Q; the
action need not be faithful).  With the norm map N(a) = sum of q.a over all
q in Q,

    H^0(Q; A)  = A^Q / im(N),
    H^-1(Q; A) = ker(N) / [A, Q],

where A^Q is the fixed submodule and [A, Q] is generated by all q.a - a.
For a p-group acting on a finite abelian p-group, the vanishing of two
consecutive Tate groups forces all of them to vanish (Gaschuetz-Uchida), so
cohomological triviality is decided by H^0 = H^-1 = 0 over the full group.

Carriers are normalized on construction: elements are re-indexed 0..m-1 with
an addition table, so every computation below is plain array arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import groups as gp
from .abelian import EndoMatrix, FinAbGroup


class ModuleDomainError(ValueError):
    """Raised when a module construction is applied outside its domain."""


@dataclass(frozen=True)
class TateGroup:
    """Order and abelian invariants of one Tate cohomology group."""

    order: int
    invariants: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return self.order == 1


@dataclass
class OrderFormulaResult:
    """Outcome of the cohomologically-trivial order factorization check."""

    applicable: bool
    holds: bool | None
    carrier_order: int
    fixed_order: int
    tensor_order: int
    double_commutator_order: int

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not-applicable"
        return "pass" if self.holds else "fail"


class QModule:
    """Finite abelian p-group with an elementary abelian action (see module doc)."""

    def __init__(self, p: int, add: np.ndarray, neg: np.ndarray,
                 gen_actions: Sequence[np.ndarray], labels=None, check=True):
        self.p = int(p)
        self.add = np.asarray(add, dtype=np.int64)
        self.neg = np.asarray(neg, dtype=np.int64)
        self.gen_actions = [np.asarray(a, dtype=np.int64) for a in gen_actions]
        self.size = self.add.shape[0]
        self.labels = labels
        self._mulp = None
        if check:
            self._validate()

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_group_subgroup(cls, G: gp.PGroup, A: gp.Subgroup,
                            actor_ids: Sequence[int], check=True) -> "QModule":
        """Conjugation module: carrier A (abelian subgroup of G), actions g^-1 . g."""
        if not A.is_abelian():
            raise ModuleDomainError("carrier subgroup must be abelian")
        ids = A.ids
        index = {int(a): i for i, a in enumerate(ids)}
        lookup = np.full(G.order, -1, dtype=np.int64)
        lookup[ids] = np.arange(len(ids))
        T = G.table
        add = lookup[T[np.ix_(ids, ids)]]
        if add.min() < 0:
            raise ModuleDomainError("carrier is not closed under multiplication")
        neg = lookup[G.inverses[ids]]
        actions = []
        for g in actor_ids:
            conj = T[T[G.inverses[g], ids], g]
            act = lookup[conj]
            if act.min() < 0:
                raise ModuleDomainError("an actor does not normalize the carrier")
            actions.append(act)
        mod = cls(G.p, add, neg, actions, labels=ids, check=check)
        mod.group = G
        mod.carrier = A
        mod.actor_ids = tuple(int(g) for g in actor_ids)
        return mod

    @classmethod
    def from_matrices(cls, M: FinAbGroup, mats: Sequence, check=True) -> "QModule":
        """Matrix-action module on the full coordinate group M."""
        endos = [m if isinstance(m, EndoMatrix) else EndoMatrix(M, m)
                 for m in mats]
        add = M.add_table()
        neg = M.neg_table()
        actions = [e.permutation().copy() for e in endos]
        mod = cls(M.p, add, neg, actions, labels=M.vectors, check=check)
        mod.coordinate_module = M
        mod.endomorphisms = endos
        return mod

    # -- internal checks ------------------------------------------------------

    def _validate(self):
        m = self.size
        ids = np.arange(m)
        if not np.array_equal(self.add[0], ids) or not np.array_equal(self.add[:, 0], ids):
            raise ModuleDomainError("index 0 is not the additive identity")
        if not np.array_equal(self.add, self.add.T):
            raise ModuleDomainError("carrier addition is not commutative")
        if not np.array_equal(self.add[ids, self.neg], np.zeros(m, dtype=np.int64)):
            raise ModuleDomainError("negation table is wrong")
        for a in self.gen_actions:
            if len(np.unique(a)) != m:
                raise ModuleDomainError("a generator action is not bijective")
            if not np.array_equal(a[self.add], self.add[a[:, None], a[None, :]]):
                raise ModuleDomainError("a generator action is not additive")
            power = ids
            for _ in range(self.p):
                power = a[power]
            if not np.array_equal(power, ids):
                raise ModuleDomainError("a generator action has order not dividing p")
        for a, b in itertools.combinations(self.gen_actions, 2):
            if not np.array_equal(a[b], b[a]):
                raise ModuleDomainError("generator actions do not commute")

    # -- basic structure --------------------------------------------------------

    @property
    def rank(self) -> int:
        """Rank of the acting elementary abelian group Q."""
        return len(self.gen_actions)

    def mul_p(self) -> np.ndarray:
        """Multiplication-by-p map on the carrier."""
        if self._mulp is None:
            ids = np.arange(self.size)
            cur = ids
            for _ in range(self.p - 1):
                cur = self.add[cur, ids]
            self._mulp = cur
        return self._mulp

    def action_of(self, exponents: Sequence[int]) -> np.ndarray:
        """Action of the Q-element with the given exponent vector over the basis."""
        perm = np.arange(self.size)
        for a, e in zip(self.gen_actions, exponents):
            for _ in range(int(e) % self.p):
                perm = a[perm]
        return perm

    def q_exponent_tuples(self, h_gens=None) -> list[tuple[int, ...]]:
        """Exponent vectors of the elements of the subgroup H <= Q (all of Q
        when h_gens is None); each abstract element appears exactly once."""
        if h_gens is None:
            return list(itertools.product(range(self.p), repeat=self.rank))
        span = {(0,) * self.rank}
        frontier = [(0,) * self.rank]
        gens = [tuple(int(x) % self.p for x in h) for h in h_gens]
        while frontier:
            nxt = []
            for v in frontier:
                for h in gens:
                    w = tuple((a + b) % self.p for a, b in zip(v, h))
                    if w not in span:
                        span.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(span)

    def subgroup_closure(self, seed) -> np.ndarray:
        """Additive closure of the seed indices (a subgroup of the carrier)."""
        member = np.zeros(self.size, dtype=bool)
        member[0] = True
        seed = np.unique(np.asarray(list(seed) + [0], dtype=np.int64))
        frontier = np.array([0], dtype=np.int64)
        while len(frontier):
            prods = np.unique(self.add[np.ix_(frontier, seed)].ravel())
            new = prods[~member[prods]]
            member[new] = True
            frontier = new
        return np.nonzero(member)[0]

    def carrier_invariants(self, subset=None) -> tuple[int, ...]:
        """Abelian invariants of the carrier (or of a subgroup of it)."""
        subset = np.arange(self.size) if subset is None else np.asarray(subset)
        mulp = self.mul_p()
        cur = subset.copy()
        counts = [int(np.sum(cur == 0))]
        while counts[-1] < len(subset):
            cur = mulp[cur]
            counts.append(int(np.sum(cur == 0)))
        return gp.invariants_from_order_counts(self.p, counts)


# ---------------------------------------------------------------------------
# the cohomology operations
# ---------------------------------------------------------------------------

def fixed_points(M: QModule, h_gens=None) -> np.ndarray:
    """Indices of the fixed submodule A^H; H defaults to all of Q."""
    mask = np.ones(M.size, dtype=bool)
    if h_gens is None:
        actions = M.gen_actions
    else:
        actions = [M.action_of(h) for h in h_gens]
    ids = np.arange(M.size)
    for a in actions:
        mask &= a == ids
    return np.nonzero(mask)[0]


def norm_map(M: QModule, h_gens=None) -> np.ndarray:
    """Value table of the norm (trace) a -> sum over h in H of h.a."""
    acc = None
    for tup in M.q_exponent_tuples(h_gens):
        perm = M.action_of(tup)
        acc = perm.copy() if acc is None else M.add[acc, perm]
    return acc


def commutator_submodule(M: QModule, n: int = 1) -> list[np.ndarray]:
    """Chain [A,Q] >= [A,Q,Q] >= ... (n terms), each as sorted carrier indices.

    [A,Q] is generated by the differences g.a - a with g running over the
    basis of Q only: for a product q = q1 q2, q.a - a telescopes into
    generator differences at shifted arguments.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    chain = []
    current = np.arange(M.size)
    for _ in range(n):
        diffs = []
        for act in M.gen_actions:
            diffs.append(M.add[act[current], M.neg[current]])
        seed = np.unique(np.concatenate(diffs))
        current = M.subgroup_closure(seed)
        chain.append(current)
        if len(current) == 1:
            # the rest of the chain is trivial; pad explicitly
            while len(chain) < n:
                chain.append(current)
            break
    return chain


def _quotient_descriptor(M: QModule, numerator: np.ndarray,
                         denominator: np.ndarray) -> TateGroup:
    """Order and invariants of numerator/denominator (subgroups of the carrier)."""
    den = set(int(x) for x in denominator)
    if not den <= set(int(x) for x in numerator):
        raise ModuleDomainError("denominator is not contained in the numerator")
    order = len(numerator) // len(den)
    den_mask = np.zeros(M.size, dtype=bool)
    den_mask[list(den)] = True
    mulp = M.mul_p()
    cur = np.asarray(numerator).copy()
    counts = [int(np.sum(den_mask[cur]))]
    while counts[-1] < len(numerator):
        cur = mulp[cur]
        counts.append(int(np.sum(den_mask[cur])))
    qcounts = [c // len(den) for c in counts]
    if len(qcounts) == 1:
        qcounts.append(order)
    invariants = gp.invariants_from_order_counts(M.p, qcounts)
    return TateGroup(order, invariants)


def tate_h0(M: QModule, h_gens=None) -> TateGroup:
    """H^0(H; A) = A^H / im(norm)."""
    fixed = fixed_points(M, h_gens)
    image = np.unique(norm_map(M, h_gens))
    return _quotient_descriptor(M, fixed, image)


def tate_h_minus1(M: QModule, h_gens=None) -> TateGroup:
    """H^-1(H; A) = ker(norm) / [A, H]."""
    norm = norm_map(M, h_gens)
    kernel = np.nonzero(norm == 0)[0]
    if h_gens is None:
        commutator = commutator_submodule(M, 1)[0]
    else:
        sub = QModule(M.p, M.add, M.neg, [M.action_of(h) for h in h_gens],
                      check=False)
        commutator = commutator_submodule(sub, 1)[0]
    return _quotient_descriptor(M, kernel, commutator)


def is_cohomologically_trivial(M: QModule) -> bool:
    """Two consecutive vanishing degrees over the whole p-group suffice."""
    return tate_h0(M).is_zero and tate_h_minus1(M).is_zero


def order_formula_check(M: QModule) -> OrderFormulaResult:
    """For cohomologically trivial A: |A| = |A^Q| * |A^Q x Q| * |[A,Q,Q]|.

    The tensor factor is p^(m*d) with m the rank of Q and d the rank of
    A^Q / p A^Q.  When the module is not cohomologically trivial the formula
    hypothesis fails and the result is flagged not-applicable.
    """
    applicable = is_cohomologically_trivial(M)
    fixed = fixed_points(M)
    fixed_order = len(fixed)
    d = len(M.carrier_invariants(fixed))
    tensor_order = M.p ** (M.rank * d)
    chain = commutator_submodule(M, 2)
    double = len(chain[1])
    holds = None
    if applicable:
        holds = M.size == fixed_order * tensor_order * double
    return OrderFormulaResult(applicable, holds, M.size, fixed_order,
                              tensor_order, double)


# ---------------------------------------------------------------------------
# the module attached to a p-group
# ---------------------------------------------------------------------------

def frattini_quotient_basis(G: gp.PGroup, phi: gp.Subgroup) -> list[int]:
    """Representatives in G of a basis of the elementary abelian G/Phi(G)."""
    q = gp.quotient(G, phi, check_normal=False)
    basis = gp._elementary_basis(q.group)
    return [int(q.representatives[b]) for b in basis]


def module_from_group(G: gp.PGroup, phi: gp.Subgroup | None = None,
                      zphi: gp.Subgroup | None = None) -> QModule:
    """The conjugation module Z(Phi(G)) over the Frattini quotient of G.

    Elements of Phi(G) centralize Z(Phi(G)), so conjugation through any coset
    representative is well defined on cosets; this is verified on the
    generators of Phi(G) rather than assumed.
    """
    if G.is_abelian():
        raise ModuleDomainError(
            "the Frattini-center module is defined for nonabelian groups only")
    phi = phi if phi is not None else gp.frattini_subgroup(G)
    zphi = zphi if zphi is not None else gp.subgroup_center(G, phi)
    actors = frattini_quotient_basis(G, phi)
    module = QModule.from_group_subgroup(G, zphi, actors)
    module.phi = phi
    # representative independence: Phi(G) itself must act trivially
    T = G.table
    inv = G.inverses
    probe = phi.ids if phi.order <= 64 else phi.ids[:: max(1, phi.order // 64)]
    for h in probe:
        conj = T[T[inv[h], zphi.ids], h]
        if not np.array_equal(conj, zphi.ids):
            raise ModuleDomainError("Phi(G) fails to centralize Z(Phi(G))")
    return module


def action_kernel_size(M: QModule) -> int:
    """Number of elements of Q acting as the identity on the carrier."""
    ids = np.arange(M.size)
    count = 0
    for tup in M.q_exponent_tuples():
        if np.array_equal(M.action_of(tup), ids):
            count += 1
    return count
