"""Concrete finite p-groups on dense element ids.

A :class:`PGroup` stores its elements as ids ``0 .. order-1`` with ``0`` the
identity.  Multiplication comes from a family-specific normal form; the full
Cayley table is cached whenever the order is at most :data:`TABLE_CAP`, which
turns subgroup closures, centralizers and central series into cheap numpy
array operations.

The constructions provided here are the classical ones: metacyclic groups
collected to pair normal form ``a^i b^j``, semidirect products of two cyclic
groups, direct products, Heisenberg groups (unitriangular 3x3 matrices) and
the regular wreath product ``Z/p wr Z/p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Cache the full Cayley table up to this order; above it only the lazy
# multiplication oracle is available and the heavy operations refuse to run.
TABLE_CAP = 2**12
# The engine supports |G| = p^n with n <= this bound.
MAX_EXPONENT = 13

_SPOT_CHECK_TRIPLES = 64


class GroupConstructionError(ValueError):
    """Construction parameters violate a consistency constraint."""


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int]:
    """Return (p, k) with n = p^k, or raise DomainError."""
    if n < 2:
        raise DomainError(f"{n} is not a prime power")
    for p in range(2, n + 1):
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            if m != 1 or not is_prime(p):
                raise DomainError(f"{n} is not a prime power")
            return p, k
    raise DomainError(f"{n} is not a prime power")


def _as_id_array(ids) -> np.ndarray:
    arr = np.asarray(sorted(set(int(i) for i in ids)), dtype=np.int64)
    return arr


class PGroup:
    """A finite p-group with dense element ids and a multiplication oracle.

    Parameters
    ----------
    p:
        The prime.
    table:
        Full Cayley table ``table[a, b] = a*b`` (preferred), or None.
    mul:
        Scalar multiplication callable, required when no table is given.
    generators:
        Ids known to generate the group.
    """

    def __init__(self, p, order, generators, name, table=None, mul=None, check=True):
        if table is None and mul is None:
            raise GroupConstructionError("need a Cayley table or a mul oracle")
        self.p = int(p)
        self.order = int(order)
        self.name = name
        self.generators = tuple(int(g) for g in generators if int(g) != 0)
        self._table = None
        self._mul_fn = mul
        if table is not None:
            table = np.asarray(table)
            if table.shape != (self.order, self.order):
                raise GroupConstructionError("table shape does not match order")
            self._table = np.ascontiguousarray(table, dtype=np.int32)
        self._inv = None
        self._order_exps = None
        self._is_abelian = None
        if check:
            self._validate()

    # -- construction checks ------------------------------------------------

    def _validate(self):
        if not is_prime(self.p):
            raise GroupConstructionError(f"p={self.p} is not prime")
        n = 0
        m = self.order
        while m % self.p == 0:
            m //= self.p
            n += 1
        if m != 1:
            raise GroupConstructionError(
                f"order {self.order} is not a power of {self.p}")
        if n > MAX_EXPONENT:
            raise GroupConstructionError(
                f"order {self.order} exceeds the supported bound p^{MAX_EXPONENT}")
        self.exponent_of_order = n
        if self._table is not None:
            T = self._table
            if not np.array_equal(T[0], np.arange(self.order)):
                raise GroupConstructionError("id 0 is not a left identity")
            if not np.array_equal(T[:, 0], np.arange(self.order)):
                raise GroupConstructionError("id 0 is not a right identity")
            # rows must be permutations, otherwise inverses cannot exist
            if not np.all(np.sort(T, axis=1) == np.arange(self.order)):
                raise GroupConstructionError("a row of the table is not a permutation")
            self._spot_check_associativity()
            # all element orders must be p-powers; computes the order table too
            self.element_order_exponents()
        closure_size = len(closure(self, self.generators or (0,)).ids)
        if closure_size != self.order:
            raise GroupConstructionError(
                f"generators span {closure_size} of {self.order} elements")

    def _spot_check_associativity(self, triples=_SPOT_CHECK_TRIPLES):
        rng = np.random.default_rng(0xF0)
        a = rng.integers(0, self.order, triples)
        b = rng.integers(0, self.order, triples)
        c = rng.integers(0, self.order, triples)
        T = self._table
        if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
            raise GroupConstructionError("multiplication is not associative")

    # -- elementary operations ----------------------------------------------

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise DomainError(
                f"|{self.name}| = {self.order} exceeds TABLE_CAP; "
                "Cayley-table operations unavailable")
        return self._table

    @property
    def has_table(self) -> bool:
        return self._table is not None

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return int(self._table[a, b])
        return int(self._mul_fn(a, b))

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            if self._table is not None:
                rows, cols = np.nonzero(self._table == 0)
                inv = np.empty(self.order, dtype=np.int64)
                inv[rows] = cols
                self._inv = inv
            else:
                inv = np.empty(self.order, dtype=np.int64)
                for g in range(self.order):
                    x = g
                    prev = 0
                    while x != 0:
                        prev = x
                        x = self.mul(x, g)
                    inv[g] = self.inv_slow_helper(g, prev)
                self._inv = inv
        return self._inv

    def inv_slow_helper(self, g, prev):
        # prev = g^(ord-1) = g^{-1} when the loop walked g, g^2, ..., e
        return prev if g != 0 else 0

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        result, base = 0, g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def commutator(self, g: int, h: int) -> int:
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    def conjugate(self, g: int, h: int) -> int:
        """g^h = h^-1 g h."""
        return self.mul(self.mul(self.inv(h), g), h)

    def element_order_exponents(self) -> np.ndarray:
        """Exponent array k with ord(g) = p^k[g], computed by iterated p-th powers."""
        if self._order_exps is None:
            if self._table is None:
                raise DomainError("order exponents need the Cayley table")
            T = self._table
            cur = np.arange(self.order)
            exps = np.zeros(self.order, dtype=np.int64)
            steps = 0
            while np.any(cur != 0):
                nxt = cur
                for _ in range(self.p - 1):
                    nxt = T[nxt, cur]
                steps += 1
                if steps > MAX_EXPONENT:
                    raise GroupConstructionError(
                        "an element order is not a power of p")
                newly_done = (cur != 0) & (nxt == 0)
                exps[newly_done] = steps
                still = cur != 0
                cur = np.where(still, nxt, 0)
            self._order_exps = exps
        return self._order_exps

    def element_order(self, g: int) -> int:
        return self.p ** int(self.element_order_exponents()[g])

    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            T = self.table
            self._is_abelian = bool(np.array_equal(T, T.T))
        return self._is_abelian

    def subgroup(self, ids, check=True) -> "Subgroup":
        return Subgroup(self, ids, check=check)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), check=False)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order), check=False)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"PGroup({self.name}, order={self.order}, p={self.p})"


class Subgroup:
    """A sorted element-id set closed under the parent's multiplication."""

    def __init__(self, group: PGroup, ids, check=True):
        self.group = group
        self.ids = _as_id_array(ids)
        if len(self.ids) == 0 or self.ids[0] != 0:
            raise DomainError("a subgroup must contain the identity")
        if check:
            self._check_closed()

    def _check_closed(self):
        G = self.group
        if G.has_table:
            sub = G.table[np.ix_(self.ids, self.ids)]
            if not np.all(np.isin(sub, self.ids)):
                raise DomainError("set is not closed under multiplication")
        else:
            S = set(self.ids.tolist())
            for a in self.ids:
                for b in self.ids:
                    if G.mul(int(a), int(b)) not in S:
                        raise DomainError("set is not closed under multiplication")
        k = len(self.ids)
        if self.group.order % k != 0:
            raise DomainError("subgroup size does not divide the group order")

    @property
    def order(self) -> int:
        return len(self.ids)

    def index(self) -> int:
        return self.group.order // self.order

    def member_mask(self) -> np.ndarray:
        mask = np.zeros(self.group.order, dtype=bool)
        mask[self.ids] = True
        return mask

    def contains(self, other: "Subgroup") -> bool:
        return bool(np.all(np.isin(other.ids, self.ids)))

    def __contains__(self, g: int) -> bool:
        i = np.searchsorted(self.ids, g)
        return i < len(self.ids) and self.ids[i] == g

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.group is self.group
                and np.array_equal(other.ids, self.ids))

    def __hash__(self):
        return hash((id(self.group), self.ids.tobytes()))

    def __len__(self):
        return len(self.ids)

    def is_normal(self) -> bool:
        G = self.group
        T = G.table
        inv = G.inverses
        for g in range(G.order):
            conj = T[T[inv[g], self.ids], g]
            if not np.all(np.isin(conj, self.ids)):
                return False
        return True

    def is_abelian(self) -> bool:
        T = self.group.table[np.ix_(self.ids, self.ids)]
        return bool(np.array_equal(T, T.T))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.group.name})"


@dataclass
class Series:
    """An ascending or descending chain of subgroups."""

    terms: list
    kind: str  # "upper-central" | "lower-central"

    def orders(self) -> list[int]:
        return [t.order for t in self.terms]

    def length(self) -> int:
        """Number of strict steps in the chain."""
        return len(self.terms) - 1


@dataclass
class QuotientResult:
    """Quotient group together with the projection and coset representatives."""

    group: PGroup
    project: np.ndarray        # parent id -> quotient id
    representatives: np.ndarray  # quotient id -> parent id


# ---------------------------------------------------------------------------
# subgroup algebra
# ---------------------------------------------------------------------------

def closure(G: PGroup, seed) -> Subgroup:
    """Smallest subgroup of G containing the seed ids (breadth-first products).

    Words in the seed suffice: in a finite group every inverse is a positive
    power, so right-multiplication BFS from the identity reaches the whole
    generated subgroup.
    """
    seed = sorted(set(int(s) for s in seed) | {0})
    if G.has_table:
        T = G.table
        member = np.zeros(G.order, dtype=bool)
        member[0] = True
        frontier = np.array([0], dtype=np.int64)
        seed_arr = np.array(seed, dtype=np.int64)
        while len(frontier):
            prods = T[np.ix_(frontier, seed_arr)].ravel()
            prods = np.unique(prods)
            new = prods[~member[prods]]
            member[new] = True
            frontier = new
        return Subgroup(G, np.nonzero(member)[0], check=False)
    member = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in seed:
                y = G.mul(x, s)
                if y not in member:
                    member.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, member, check=False)


def center(G: PGroup) -> Subgroup:
    T = G.table
    mask = np.all(T == T.T, axis=1)
    return Subgroup(G, np.nonzero(mask)[0], check=False)


def centralizer(G: PGroup, S: Subgroup) -> Subgroup:
    """Elements of G commuting with every element of S."""
    T = G.table
    ids = S.ids if isinstance(S, Subgroup) else _as_id_array(S)
    mask = np.all(T[:, ids] == T[ids, :].T, axis=1)
    return Subgroup(G, np.nonzero(mask)[0], check=False)


def subgroup_center(G: PGroup, S: Subgroup) -> Subgroup:
    """Center of S viewed as a group in its own right (a subgroup of G)."""
    T = G.table[np.ix_(S.ids, S.ids)]
    mask = np.all(T == T.T, axis=1)
    return Subgroup(G, S.ids[mask], check=False)


def normal_closure(G: PGroup, seed) -> Subgroup:
    """Smallest normal subgroup of G containing the seed."""
    T = G.table
    inv = G.inverses
    gens = list(G.generators) or [0]
    current = closure(G, seed)
    while True:
        ids = current.ids
        extra = []
        for g in gens:
            conj = T[T[inv[g], ids], g]
            outside = conj[~np.isin(conj, ids)]
            if len(outside):
                extra.append(outside)
        if not extra:
            return current
        current = closure(G, np.concatenate([ids] + extra))


def commutator_subgroup(G: PGroup, H: Subgroup | None = None,
                        K: Subgroup | None = None) -> Subgroup:
    """Closure of all commutators [h,k] = h^-1 k^-1 h k with h in H, k in K."""
    H = H if H is not None else G.full_subgroup()
    K = K if K is not None else G.full_subgroup()
    T = G.table
    inv = G.inverses
    h = H.ids[:, None]
    k = K.ids[None, :]
    comm = T[T[inv[h], inv[k]], T[h, k]]
    return closure(G, np.unique(comm))


def _commutators_with_generators(G: PGroup, ids: np.ndarray) -> np.ndarray:
    T = G.table
    inv = G.inverses
    out = []
    for g in G.generators or (0,):
        out.append(T[T[inv[ids], inv[g]], T[ids, g]])
    return np.unique(np.concatenate(out)) if out else np.array([0])


def derived_subgroup(G: PGroup) -> Subgroup:
    """[G,G] via the normal closure of generator commutators (fast path)."""
    gens = list(G.generators) or [0]
    seeds = [G.commutator(a, b) for a in gens for b in gens]
    return normal_closure(G, seeds)


def power_subgroup_seed(G: PGroup) -> np.ndarray:
    """The set of p-th powers of all elements (not itself a subgroup)."""
    T = G.table
    cur = np.arange(G.order)
    for _ in range(G.p - 1):
        cur = T[cur, np.arange(G.order)]
    return np.unique(cur)


def frattini_subgroup(G: PGroup) -> Subgroup:
    """Frattini subgroup via the p-group identity Phi(G) = G^p [G,G]."""
    derived = derived_subgroup(G)
    seeds = np.unique(np.concatenate([power_subgroup_seed(G), derived.ids]))
    return closure(G, seeds)


def maximal_subgroups(G: PGroup) -> list[Subgroup]:
    """All maximal subgroups, enumerated as index-p kernels.

    In a p-group every maximal subgroup is normal of index p and contains
    every commutator and every p-th power, so the maximal subgroups are the
    preimages of the hyperplanes of the largest elementary abelian quotient.
    This enumeration never calls :func:`frattini_subgroup`, which makes it an
    independent cross-check for the G^p[G,G] identity.
    """
    p = G.p
    derived = commutator_subgroup(G)
    ab = quotient(G, derived)
    powers = closure(ab.group, power_subgroup_seed(ab.group))
    vq = quotient(ab.group, powers)
    V = vq.group
    d = 0
    m = V.order
    while m > 1:
        m //= p
        d += 1
    basis = _elementary_basis(V)
    coords = _elementary_coordinates(V, basis)
    # nonzero functionals up to scalar: first nonzero coefficient equal to 1
    functionals = []
    for lam in _iter_tuples(p, d):
        nz = [c for c in lam if c]
        if nz and nz[0] == 1:
            functionals.append(lam)
    to_v = vq.project[ab.project]  # parent id -> V id
    result = []
    for lam in functionals:
        vals = (coords @ np.array(lam)) % p
        kernel_v = np.nonzero(vals == 0)[0]
        mask = np.isin(to_v, kernel_v)
        result.append(Subgroup(G, np.nonzero(mask)[0], check=False))
    return result


def all_subgroups(G: PGroup, max_order: int = 64) -> list[Subgroup]:
    """Full subgroup lattice by closure BFS; intended for very small groups."""
    if G.order > max_order:
        raise DomainError(f"subgroup lattice capped at order {max_order}")
    seen = {(0,): G.trivial_subgroup()}
    frontier = [G.trivial_subgroup()]
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(1, G.order):
                if g in H:
                    continue
                K = closure(G, list(H.ids) + [g])
                key = tuple(K.ids.tolist())
                if key not in seen:
                    seen[key] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(seen.values(), key=lambda S: (S.order, tuple(S.ids.tolist())))


def _iter_tuples(p: int, length: int):
    if length == 0:
        yield ()
        return
    for rest in _iter_tuples(p, length - 1):
        for c in range(p):
            yield rest + (c,)


def _elementary_basis(V: PGroup) -> list[int]:
    """Greedy basis of an elementary abelian group (smallest ids first)."""
    basis: list[int] = []
    span = V.trivial_subgroup()
    for g in range(1, V.order):
        if g not in span:
            basis.append(g)
            span = closure(V, basis)
        if span.order == V.order:
            break
    return basis


def _elementary_coordinates(V: PGroup, basis: list[int]) -> np.ndarray:
    """Coordinate matrix of every element of V over the given basis."""
    p = V.p
    d = len(basis)
    coords = np.zeros((V.order, d), dtype=np.int64)
    for tup in _iter_tuples(p, d):
        g = 0
        for b, e in zip(basis, tup):
            g = V.mul(g, V.power(b, e))
        coords[g] = tup
    return coords


# ---------------------------------------------------------------------------
# quotients and series
# ---------------------------------------------------------------------------

def quotient(G: PGroup, N: Subgroup, check_normal: bool = True) -> QuotientResult:
    """Quotient group on cosets of N, with induced multiplication.

    Normality of N is always verified, never assumed.
    """
    if check_normal and not N.is_normal():
        raise DomainError("quotient by a non-normal subgroup")
    T = G.table
    reps = T[:, N.ids].min(axis=1)          # canonical (minimal) coset rep
    ureps = np.unique(reps)                  # identity coset is rep 0, first
    label = np.full(G.order, -1, dtype=np.int64)
    label[ureps] = np.arange(len(ureps))
    qtable = label[reps[T[np.ix_(ureps, ureps)]]]
    project = label[reps]
    gen_labels = sorted(set(int(project[g]) for g in G.generators) - {0})
    Q = PGroup(G.p, len(ureps), gen_labels, f"{G.name}/N{N.order}",
               table=qtable)
    return QuotientResult(Q, project, ureps)


def upper_central_series(G: PGroup) -> Series:
    """1 = Z_0 < Z_1 < ... < Z_c = G via iterated center preimages."""
    terms = [G.trivial_subgroup()]
    while terms[-1].order < G.order:
        q = quotient(G, terms[-1], check_normal=False)
        zq = center(q.group)
        pre = np.nonzero(np.isin(q.project, zq.ids))[0]
        nxt = Subgroup(G, pre, check=False)
        if nxt.order == terms[-1].order:
            raise DomainError("upper central series stabilized below G")
        terms.append(nxt)
    return Series(terms, "upper-central")


def lower_central_series(G: PGroup) -> Series:
    """G = gamma_1 > gamma_2 = [G,G] > ... > 1 via [gamma_i, G]."""
    terms = [G.full_subgroup()]
    current = derived_subgroup(G)
    while True:
        terms.append(current)
        if current.order == 1:
            break
        seeds = _commutators_with_generators(G, current.ids)
        nxt = normal_closure(G, seeds)
        if nxt.order == current.order:
            raise DomainError("lower central series stabilized above 1")
        current = nxt
    return Series(terms, "lower-central")


def nilpotency_class(G: PGroup) -> int:
    return lower_central_series(G).length()


def coclass(G: PGroup) -> int:
    n = 0
    m = G.order
    while m > 1:
        m //= G.p
        n += 1
    return n - nilpotency_class(G)


def generator_rank(G: PGroup) -> int:
    """Burnside-basis rank d(G) = log_p [G : Phi(G)]."""
    phi = frattini_subgroup(G)
    idx = G.order // phi.order
    d = 0
    while idx > 1:
        idx //= G.p
        d += 1
    return d


# ---------------------------------------------------------------------------
# abelian invariants
# ---------------------------------------------------------------------------

def invariants_from_order_counts(p: int, counts: Sequence[int]) -> tuple[int, ...]:
    """Exponent list e_1 >= e_2 >= ... from cumulative order statistics.

    counts[i] = number of elements killed by p^i, i = 0, 1, ...; the exponent
    multiset is the conjugate of the difference sequence of log_p counts.
    """
    logs = []
    for c in counts:
        e = 0
        while p**e < c:
            e += 1
        if p**e != c:
            raise DomainError("order statistics are not p-power cumulative")
        logs.append(e)
    # number of exponents >= i is diffs[i-1]; conjugate the difference sequence
    diffs = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
    rank = diffs[0] if diffs else 0
    exponents = [sum(1 for d in diffs if d >= j + 1) for j in range(rank)]
    return tuple(sorted(exponents, reverse=True))


def abelian_invariants(A: PGroup | Subgroup) -> tuple[int, ...]:
    """Primary-decomposition exponents of an abelian group, from order statistics."""
    if isinstance(A, PGroup):
        if not A.is_abelian():
            raise DomainError("abelian_invariants of a nonabelian group")
        p = A.p
        exps = A.element_order_exponents()
    else:
        if not A.is_abelian():
            raise DomainError("abelian_invariants of a nonabelian subgroup")
        p = A.group.p
        exps = A.group.element_order_exponents()[A.ids]
    if len(exps) == 1:
        return ()
    kmax = int(exps.max())
    counts = [int(np.sum(exps <= i)) for i in range(kmax + 1)]
    return invariants_from_order_counts(p, counts)


def quotient_abelian_invariants(G: PGroup, B: Subgroup, C: Subgroup,
                                require_abelian: bool = True) -> tuple[int, ...]:
    """Invariants of B/C for subgroups C <= B of G with B/C abelian.

    The coset order of xC is the least p-power t with x^t in C, so the order
    statistics of B/C are computable without building the quotient group.
    """
    if not B.contains(C):
        raise DomainError("C is not contained in B")
    if require_abelian:
        T = G.table
        inv = G.inverses
        b = B.ids[:, None]
        k = B.ids[None, :]
        comm = T[T[inv[b], inv[k]], T[b, k]]
        if not np.all(np.isin(comm, C.ids)):
            raise DomainError("B/C is not abelian")
    p = G.p
    cmask = np.zeros(G.order, dtype=bool)
    cmask[C.ids] = True
    T = G.table
    cur = B.ids.copy()
    counts = [int(np.sum(cmask[cur]))]
    while counts[-1] < len(B.ids):
        nxt = cur
        for _ in range(p - 1):
            nxt = T[nxt, cur]
        cur = nxt
        counts.append(int(np.sum(cmask[cur])))
    # normalize to cumulative counts of the quotient (divide by |C| overlap)
    qcounts = [c // C.order for c in counts]
    if len(qcounts) == 1:
        qcounts.append(len(B.ids) // C.order)
    return invariants_from_order_counts(p, qcounts)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetacyclicParams:
    """Parameters (p, alpha, beta, gamma, r) of a metacyclic presentation.

    The presented group is <a, b | a^(p^alpha) = 1, b^(p^beta) = a^(p^gamma),
    a^b = a^r>, of order p^(alpha+beta).  Consistency requires
    r^(p^beta) = 1 (mod p^alpha) and p^gamma (r-1) = 0 (mod p^alpha).
    """

    p: int
    alpha: int
    beta: int
    gamma: int
    r: int

    def validate(self):
        if not is_prime(self.p):
            raise GroupConstructionError(f"p={self.p} is not prime")
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise GroupConstructionError("exponents must be nonnegative")
        if self.gamma > self.alpha:
            raise GroupConstructionError("gamma must be at most alpha")
        pa = self.p ** self.alpha
        r = self.r % pa
        if pow(r, self.p ** self.beta, pa) != 1 % pa:
            raise GroupConstructionError(
                f"r={self.r} violates r^(p^beta) = 1 mod p^alpha")
        if (self.p ** self.gamma * (r - 1)) % pa != 0:
            raise GroupConstructionError(
                f"r={self.r} violates p^gamma (r-1) = 0 mod p^alpha")
        if self.alpha + self.beta > MAX_EXPONENT:
            raise GroupConstructionError("group order exceeds the engine bound")

    @property
    def order(self) -> int:
        return self.p ** (self.alpha + self.beta)

    def is_abelian(self) -> bool:
        return self.r % (self.p ** self.alpha) == 1 % self.p ** self.alpha


def metacyclic_group(params: MetacyclicParams, check=True) -> PGroup:
    """Metacyclic group in pair normal form a^i b^j, id = i * p^beta + j."""
    params.validate()
    p, alpha, beta, gamma, r = (params.p, params.alpha, params.beta,
                                params.gamma, params.r)
    pa, pb = p**alpha, p**beta
    order = pa * pb
    r = r % pa
    rpow = np.array([pow(r, j, pa) for j in range(pb)], dtype=np.int64)
    pg = p**gamma
    ids = np.arange(order, dtype=np.int64)
    i_of = ids // pb
    j_of = ids % pb

    table = np.empty((order, order), dtype=np.int32)
    block = max(1, (1 << 22) // order)
    for start in range(0, order, block):
        rows = ids[start:start + block]
        i1 = i_of[rows][:, None]
        j1 = j_of[rows][:, None]
        i2 = i_of[None, :]
        j2 = j_of[None, :]
        jsum = j1 + j2
        inew = (i1 + rpow[j1] * i2 + pg * (jsum // pb)) % pa
        table[start:start + block] = inew * pb + (jsum % pb)

    gens = []
    if alpha > 0:
        gens.append(pb)   # a = (1, 0)
    if beta > 0:
        gens.append(1)    # b = (0, 1)
    name = f"metacyclic(p={p},alpha={alpha},beta={beta},gamma={gamma},r={params.r % pa})"
    G = PGroup(p, order, gens, name, table=table, check=check)
    G.metacyclic_params = params
    return G


def metacyclic_pair(G: PGroup, gid: int) -> tuple[int, int]:
    """Decode a metacyclic element id back to its (i, j) normal form."""
    params = G.metacyclic_params
    pb = params.p ** params.beta
    return gid // pb, gid % pb


def semidirect_cyclic(m: int, n: int, r: int, check=True) -> PGroup:
    """Split extension Z/m x| Z/n where the generator of Z/n acts as x -> r x."""
    try:
        pm, am = prime_power(m) if m > 1 else (None, 0)
        pn, an = prime_power(n) if n > 1 else (None, 0)
    except DomainError as exc:
        raise GroupConstructionError(str(exc)) from None
    if m > 1 and n > 1 and pm != pn:
        raise GroupConstructionError("orders must be powers of the same prime")
    if m == 1 and n == 1:
        raise GroupConstructionError("the trivial group is not a p-group here")
    p = pm if m > 1 else pn
    if pow(r, n, m) != 1 % m:
        raise GroupConstructionError(
            f"the order of r={r} mod {m} does not divide n={n}")
    params = MetacyclicParams(p, am, an, am, r % m if m > 1 else 0)
    G = metacyclic_group(params, check=check)
    G.name = f"Z/{m} x| Z/{n} (r={r % m if m > 1 else 0})"
    return G


def cyclic_group(p: int, e: int, check=True) -> PGroup:
    order = p**e
    ids = np.arange(order)
    table = (ids[:, None] + ids[None, :]) % order
    gens = [1] if e > 0 else []
    return PGroup(p, order, gens, f"Z/{order}", table=table, check=check)


def elementary_abelian_group(p: int, rank: int, check=True) -> PGroup:
    order = p**rank
    ids = np.arange(order)
    table = np.zeros((order, order), dtype=np.int64)
    for t in range(rank):
        w = p**t
        dig = (ids // w) % p
        table += w * ((dig[:, None] + dig[None, :]) % p)
    gens = [p**t for t in range(rank)]
    return PGroup(p, order, gens, f"(Z/{p})^{rank}", table=table, check=check)


def direct_product(groups: Sequence[PGroup], check=True) -> PGroup:
    """Direct product with mixed-radix ids, leftmost factor most significant."""
    if not groups:
        raise GroupConstructionError("empty product")
    p = groups[0].p
    if any(g.p != p for g in groups):
        raise GroupConstructionError("all factors must share one prime")
    G = groups[0]
    table = G.table.astype(np.int64)
    order = G.order
    gens = [list(G.generators)]
    names = [G.name]
    for H in groups[1:]:
        th = H.table.astype(np.int64)
        n2 = H.order
        table = (table[:, None, :, None] * n2 + th[None, :, None, :]).reshape(
            order * n2, order * n2)
        gens = [[g * n2 for g in gg] for gg in gens]
        gens.append(list(H.generators))
        order *= n2
        names.append(H.name)
    flat = [g for gg in gens for g in gg]
    return PGroup(p, order, flat, " x ".join(names), table=table, check=check)


def heisenberg_group(p: int, check=True) -> PGroup:
    """Upper unitriangular 3x3 matrices over Z/p; elements (x, y, z)."""
    order = p**3
    ids = np.arange(order)
    x = ids // (p * p)
    y = (ids // p) % p
    z = ids % p
    x1, y1, z1 = x[:, None], y[:, None], z[:, None]
    x2, y2, z2 = x[None, :], y[None, :], z[None, :]
    xs = (x1 + x2) % p
    ys = (y1 + y2) % p
    zs = (z1 + z2 + x1 * y2) % p
    table = (xs * p + ys) * p + zs
    a = p * p      # (1,0,0)
    b = p          # (0,1,0)
    return PGroup(p, order, [a, b], f"heisenberg({p})", table=table, check=check)


def wreath_cyclic(p: int, check=True) -> PGroup:
    """Regular wreath product Z/p wr Z/p: (Z/p)^p with a cyclic coordinate shift."""
    base = p**p
    order = base * p
    ids = np.arange(order)
    v_of = ids // p
    s_of = ids % p
    digits = np.array([[(v // p**t) % p for t in range(p)] for v in range(base)],
                      dtype=np.int64)
    weights = np.array([p**t for t in range(p)], dtype=np.int64)
    # shifted[s, v] = sigma^s(v), where sigma moves coordinate t to t+1
    shifted = np.empty((p, base), dtype=np.int64)
    for s in range(p):
        rolled = np.roll(digits, s, axis=1)
        shifted[s] = rolled @ weights
    table = np.empty((order, order), dtype=np.int64)
    for g in range(order):
        v1, s1 = v_of[g], s_of[g]
        vsum = digits[v1][None, :] + digits[shifted[s1, v_of]]
        vnew = (vsum % p) @ weights
        table[g] = vnew * p + (s1 + s_of) % p
    a = p        # v = (1,0,...,0), s = 0
    b = 1        # v = 0, s = 1
    return PGroup(p, order, [a, b], f"Z/{p} wr Z/{p}", table=table, check=check)


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def check_associativity(G: PGroup, exhaustive: bool | None = None) -> bool:
    """Associativity audit. Exhaustive up to 2^9 by default, sampled above."""
    T = G.table
    n = G.order
    if exhaustive is None:
        exhaustive = n <= 2**9
    if exhaustive:
        for a in range(n):
            # (a*b)*c as T[T[a, :], :] against a*(b*c) as T[a][T]
            if not np.array_equal(T[T[a, :], :], T[a][T]):
                return False
        return True
    rng = np.random.default_rng(0xACC)
    a = rng.integers(0, n, 4096)
    b = rng.integers(0, n, 4096)
    c = rng.integers(0, n, 4096)
    return bool(np.array_equal(T[T[a, b], c], T[a, T[b, c]]))
