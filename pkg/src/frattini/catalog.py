"""Constructors and parameter sweeps for the named p-group families.

A :class:`FamilyDescriptor` is a plain, picklable recipe for one group:
dihedral, quaternion and semidihedral groups (metacyclic special cases),
modular maximal-cyclic groups, general metacyclic groups, split semidirect
products of two cyclic groups, direct products, the Heisenberg group of order
p^3 and the regular wreath product Z/p wr Z/p.

Descriptors parse from a plain-text key=value config and from a compact
string form like ``dihedral(16)`` or ``metacyclic(2,5,4,5,11)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import groups as gp

FAMILIES = (
    "cyclic", "elementary-abelian", "dihedral", "quaternion", "semidihedral",
    "modular-maximal-cyclic", "metacyclic", "semidirect-cyclic",
    "direct-product", "heisenberg-p3", "wreath-p-p",
)


class DescriptorError(gp.GroupConstructionError):
    """A family descriptor is malformed or violates its existence constraints."""


@dataclass(frozen=True)
class FamilyDescriptor:
    family: str
    p: int | None = None
    order: int | None = None
    rank: int | None = None
    alpha: int | None = None
    beta: int | None = None
    gamma: int | None = None
    r: int | None = None
    m: int | None = None
    n: int | None = None
    components: tuple["FamilyDescriptor", ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DescriptorError(f"unknown family {self.family!r}")

    def compact(self) -> str:
        f = self.family
        if f == "cyclic":
            return f"cyclic({self.order})"
        if f == "elementary-abelian":
            return f"elementary-abelian({self.p},{self.rank})"
        if f in ("dihedral", "quaternion", "semidihedral"):
            return f"{f}({self.order})"
        if f == "modular-maximal-cyclic":
            return f"modular-maximal-cyclic({self.order})"
        if f == "metacyclic":
            return (f"metacyclic({self.p},{self.alpha},{self.beta},"
                    f"{self.gamma},{self.r})")
        if f == "semidirect-cyclic":
            return f"semidirect-cyclic({self.m},{self.n},{self.r})"
        if f == "heisenberg-p3":
            return f"heisenberg-p3({self.p})"
        if f == "wreath-p-p":
            return f"wreath-p-p({self.p})"
        inner = ", ".join(c.compact() for c in self.components)
        return f"direct-product({inner})"

    def __str__(self):
        return self.compact()


def _order_exponent(order: int, p: int) -> int:
    n = 0
    m = order
    while m % p == 0:
        m //= p
        n += 1
    if m != 1:
        raise DescriptorError(f"{order} is not a power of {p}")
    return n


def build(desc: FamilyDescriptor, check: bool = True) -> gp.PGroup:
    """Construct the group a descriptor names."""
    f = desc.family
    if f == "cyclic":
        p, e = gp.prime_power(desc.order)
        return gp.cyclic_group(p, e, check=check)
    if f == "elementary-abelian":
        return gp.elementary_abelian_group(desc.p, desc.rank, check=check)
    if f == "dihedral":
        n = _order_exponent(desc.order, 2)
        if n < 3:
            raise DescriptorError("dihedral groups here start at order 8")
        params = gp.MetacyclicParams(2, n - 1, 1, n - 1, 2 ** (n - 1) - 1)
    elif f == "quaternion":
        n = _order_exponent(desc.order, 2)
        if n < 3:
            raise DescriptorError("quaternion groups start at order 8")
        params = gp.MetacyclicParams(2, n - 1, 1, n - 2, 2 ** (n - 1) - 1)
    elif f == "semidihedral":
        n = _order_exponent(desc.order, 2)
        if n < 4:
            raise DescriptorError("semidihedral groups start at order 16")
        params = gp.MetacyclicParams(2, n - 1, 1, n - 1, 2 ** (n - 2) - 1)
    elif f == "modular-maximal-cyclic":
        p = desc.p if desc.p else 2
        n = _order_exponent(desc.order, p)
        if n < 4 and p == 2:
            raise DescriptorError("the modular 2-group family starts at order 16")
        if n < 3:
            raise DescriptorError("modular groups need order at least p^3")
        params = gp.MetacyclicParams(p, n - 1, 1, n - 1, p ** (n - 2) + 1)
    elif f == "metacyclic":
        params = gp.MetacyclicParams(desc.p, desc.alpha, desc.beta,
                                     desc.gamma, desc.r)
    elif f == "semidirect-cyclic":
        G = gp.semidirect_cyclic(desc.m, desc.n, desc.r, check=check)
        return G
    elif f == "heisenberg-p3":
        return gp.heisenberg_group(desc.p, check=check)
    elif f == "wreath-p-p":
        return gp.wreath_cyclic(desc.p, check=check)
    elif f == "direct-product":
        if not desc.components:
            raise DescriptorError("direct-product needs components")
        parts = [build(c, check=check) for c in desc.components]
        G = gp.direct_product(parts, check=check)
        return G
    else:  # pragma: no cover
        raise DescriptorError(f"unhandled family {f}")
    G = gp.metacyclic_group(params, check=check)
    G.name = f"{desc.compact()}"
    return G


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

def metacyclic_sweep(p: int, max_order: int, nonabelian_only: bool = True):
    """All valid metacyclic parameter tuples with p^(alpha+beta) <= max_order.

    Deterministic order: alpha, beta, gamma, r ascending.  Validity means the
    two consistency congruences; distinct tuples may present isomorphic
    groups, which is fine for verification sweeps.
    """
    max_n = _order_exponent(max_order, p)
    for alpha in range(1, max_n):
        pa = p**alpha
        for beta in range(1, max_n - alpha + 1):
            rs = [r for r in range(pa) if pow(r, p**beta, pa) == 1 % pa]
            for gamma in range(0, alpha + 1):
                pg = p**gamma
                for r in rs:
                    if (pg * (r - 1)) % pa:
                        continue
                    if nonabelian_only and r % pa == 1 % pa:
                        continue
                    yield FamilyDescriptor("metacyclic", p=p, alpha=alpha,
                                           beta=beta, gamma=gamma, r=r)


def family_sweep(family: str, max_order: int, p: int = 2):
    """Deterministic enumeration of one family's descriptors up to max_order."""
    if family == "metacyclic":
        yield from metacyclic_sweep(p, max_order)
        return
    if family in ("dihedral", "quaternion"):
        start = 3
    elif family in ("semidihedral", "modular-maximal-cyclic"):
        start = 4
    else:
        raise DescriptorError(f"no sweep for family {family!r}")
    n = start
    while 2**n <= max_order:
        yield FamilyDescriptor(family, order=2**n)
        n += 1


_COFACTORS = (
    FamilyDescriptor("cyclic", order=2),
    FamilyDescriptor("cyclic", order=4),
    FamilyDescriptor("cyclic", order=8),
    FamilyDescriptor("elementary-abelian", p=2, rank=2),
    FamilyDescriptor("direct-product", components=(
        FamilyDescriptor("cyclic", order=4),
        FamilyDescriptor("cyclic", order=2),
    )),
)


def census(max_order: int, p: int = 2):
    """The catalog's deterministic census of nonabelian p-groups.

    For p = 2: every named family swept to max_order, every valid metacyclic
    tuple, the two odd-order representatives' analogues (wreath and Heisenberg
    at p = 2 coincide with D8), and direct products of a smaller nonabelian
    catalog group with small abelian cofactors.  For odd p: Heisenberg,
    wreath, modular and the metacyclic sweep.
    """
    seen: set[FamilyDescriptor] = set()

    def emit(desc):
        if desc not in seen:
            seen.add(desc)
            yield desc

    if p == 2:
        base_families = ("dihedral", "quaternion", "semidihedral",
                         "modular-maximal-cyclic")
        for fam in base_families:
            for desc in family_sweep(fam, max_order):
                yield from emit(desc)
        for desc in metacyclic_sweep(2, max_order):
            yield from emit(desc)
        yield from emit(FamilyDescriptor("wreath-p-p", p=2))
        # nonabelian base x abelian cofactor, capped at max_order
        bases = [d for fam in base_families
                 for d in family_sweep(fam, max_order // 2)]
        for base in bases:
            for cof in _COFACTORS:
                cof_order = _descriptor_order(cof)
                if base.order * cof_order <= max_order:
                    yield from emit(FamilyDescriptor(
                        "direct-product", components=(base, cof)))
    else:
        yield from emit(FamilyDescriptor("heisenberg-p3", p=p))
        if p**(p + 1) <= max_order:
            yield from emit(FamilyDescriptor("wreath-p-p", p=p))
        n = 3
        while p**n <= max_order:
            yield from emit(FamilyDescriptor("modular-maximal-cyclic",
                                             p=p, order=p**n))
            n += 1
        for desc in metacyclic_sweep(p, max_order):
            yield from emit(desc)


def _descriptor_order(desc: FamilyDescriptor) -> int:
    if desc.family == "cyclic":
        return desc.order
    if desc.family == "elementary-abelian":
        return desc.p ** desc.rank
    if desc.family == "direct-product":
        out = 1
        for c in desc.components:
            out *= _descriptor_order(c)
        return out
    if desc.family == "metacyclic":
        return desc.p ** (desc.alpha + desc.beta)
    if desc.family == "semidirect-cyclic":
        return desc.m * desc.n
    if desc.family == "heisenberg-p3":
        return desc.p ** 3
    if desc.family == "wreath-p-p":
        return desc.p ** (desc.p + 1)
    return desc.order


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_compact(text: str) -> FamilyDescriptor:
    """Parse the compact form, e.g. dihedral(16) or metacyclic(2,5,4,5,11)."""
    text = text.strip()
    if "(" not in text or not text.endswith(")"):
        raise DescriptorError(f"cannot parse descriptor {text!r}")
    name, _, inner = text.partition("(")
    name = name.strip()
    inner = inner[:-1].strip()
    if name == "direct-product":
        comps = tuple(parse_compact(part) for part in _split_args(inner))
        return FamilyDescriptor("direct-product", components=comps)
    args = [int(a) for a in inner.split(",")] if inner else []
    return _descriptor_from_args(name, args)


def _split_args(inner: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in inner:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _descriptor_from_args(name: str, args: list[int]) -> FamilyDescriptor:
    if name == "cyclic" and len(args) == 1:
        return FamilyDescriptor("cyclic", order=args[0])
    if name == "elementary-abelian" and len(args) == 2:
        return FamilyDescriptor("elementary-abelian", p=args[0], rank=args[1])
    if name in ("dihedral", "quaternion", "semidihedral") and len(args) == 1:
        return FamilyDescriptor(name, order=args[0])
    if name == "modular-maximal-cyclic" and len(args) in (1, 2):
        if len(args) == 1:
            return FamilyDescriptor(name, order=args[0], p=2)
        return FamilyDescriptor(name, p=args[0], order=args[1])
    if name == "metacyclic" and len(args) == 5:
        return FamilyDescriptor("metacyclic", p=args[0], alpha=args[1],
                                beta=args[2], gamma=args[3], r=args[4])
    if name == "semidirect-cyclic" and len(args) == 3:
        return FamilyDescriptor("semidirect-cyclic", m=args[0], n=args[1],
                                r=args[2])
    if name == "heisenberg-p3" and len(args) == 1:
        return FamilyDescriptor("heisenberg-p3", p=args[0])
    if name == "wreath-p-p" and len(args) == 1:
        return FamilyDescriptor("wreath-p-p", p=args[0])
    raise DescriptorError(f"cannot parse {name!r} with arguments {args}")


def parse_group_config(text: str) -> FamilyDescriptor:
    """Parse a plain-text key=value group spec.

    Keys: family (required), p, order, rank, alpha, beta, gamma, r, m, n,
    components (comma-separated compact descriptors).  Lines starting with
    '#' are comments.
    """
    entries: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DescriptorError(f"expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        entries[key.strip().lower()] = value.strip()
    if "family" not in entries:
        raise DescriptorError("config is missing the family key")
    family = entries.pop("family")
    if family == "direct-product":
        comps = tuple(parse_compact(part)
                      for part in _split_args(entries.pop("components", "")))
        if not comps:
            raise DescriptorError("direct-product config needs components")
        return FamilyDescriptor("direct-product", components=comps)
    ints = {}
    for key, value in entries.items():
        if key not in ("p", "order", "rank", "alpha", "beta", "gamma",
                       "r", "m", "n"):
            raise DescriptorError(f"unknown config key {key!r}")
        ints[key] = int(value)
    try:
        return FamilyDescriptor(family, **ints)
    except TypeError as exc:
        raise DescriptorError(str(exc)) from None
