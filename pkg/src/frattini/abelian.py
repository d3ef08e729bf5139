"""Finite abelian p-groups as coordinate modules, and their endomorphisms.

A :class:`FinAbGroup` with exponents ``e_1 >= e_2 >= ... >= e_s`` has elements
``(x_1, ..., x_s)`` with ``x_i`` taken mod ``p^(e_i)``.  An endomorphism is an
integer matrix ``a`` where entry ``a[i, j]`` maps coordinate ``j`` into factor
``i``; well-definedness forces ``a[i, j] = 0 mod p^(e_i - e_j)`` whenever
``e_i > e_j``.  Composition is matrix product followed by the row reductions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class ModuleShapeError(ValueError):
    """The module does not have the shape an operation requires."""


@dataclass(frozen=True)
class FinAbGroup:
    """Direct sum of cyclic p-groups Z/p^(e_1) x ... x Z/p^(e_s)."""

    p: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 1 for e in exps):
            raise ModuleShapeError("exponents must be positive")
        if list(exps) != sorted(exps, reverse=True):
            raise ModuleShapeError("exponents must be nonincreasing")
        object.__setattr__(self, "exponents", exps)

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array([self.p**e for e in self.exponents], dtype=np.int64)

    @cached_property
    def order(self) -> int:
        return int(np.prod(self.moduli))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @cached_property
    def weights(self) -> np.ndarray:
        """Mixed-radix weights so that id = sum(weights * vector)."""
        w = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            w[i] = w[i + 1] * self.moduli[i + 1]
        return w

    @cached_property
    def vectors(self) -> np.ndarray:
        """All elements as coordinate rows, indexed by element id."""
        grids = np.meshgrid(*[np.arange(m) for m in self.moduli], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)

    def encode(self, vec) -> int:
        v = np.asarray(vec, dtype=np.int64) % self.moduli
        return int(v @ self.weights)

    def encode_many(self, vecs: np.ndarray) -> np.ndarray:
        return (vecs % self.moduli) @ self.weights

    def decode(self, idx: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.vectors[idx])

    def add_table(self) -> np.ndarray:
        v = self.vectors
        out = np.zeros((self.order, self.order), dtype=np.int64)
        for t in range(self.rank):
            col = v[:, t]
            out += self.weights[t] * ((col[:, None] + col[None, :]) % self.moduli[t])
        return out

    def neg_table(self) -> np.ndarray:
        return self.encode_many((-self.vectors) % self.moduli)

    def describe(self) -> str:
        return " x ".join(f"Z/{self.p**e}" for e in self.exponents)


def entry_step(M: FinAbGroup, i: int, j: int) -> int:
    """Divisibility constraint on entry (i, j): must be a multiple of this."""
    gap = M.exponents[i] - M.exponents[j]
    return M.p ** max(0, gap)


class EndoMatrix:
    """Endomorphism of a FinAbGroup as a congruence-constrained matrix."""

    __slots__ = ("module", "matrix", "_perm", "_key")

    def __init__(self, module: FinAbGroup, matrix, check: bool = True):
        self.module = module
        mat = np.asarray(matrix, dtype=np.int64) % module.moduli[:, None]
        self.matrix = mat
        self._perm = None
        self._key = None
        if check:
            s = module.rank
            if mat.shape != (s, s):
                raise ModuleShapeError("matrix shape does not match the module")
            for i in range(s):
                for j in range(s):
                    if mat[i, j] % entry_step(module, i, j):
                        raise ModuleShapeError(
                            f"entry ({i},{j}) violates the divisibility constraint")

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.matrix.tobytes()
        return self._key

    def permutation(self) -> np.ndarray:
        """Value table on element ids (a permutation iff bijective)."""
        if self._perm is None:
            M = self.module
            imgs = (M.vectors @ self.matrix.T) % M.moduli
            self._perm = imgs @ M.weights
        return self._perm

    def apply(self, vec) -> tuple[int, ...]:
        v = np.asarray(vec, dtype=np.int64)
        out = (self.matrix @ v) % self.module.moduli
        return tuple(int(x) for x in out)

    def is_bijective(self) -> bool:
        perm = self.permutation()
        return len(np.unique(perm)) == self.module.order

    def __matmul__(self, other: "EndoMatrix") -> "EndoMatrix":
        if other.module != self.module:
            raise ModuleShapeError("modules differ")
        return EndoMatrix(self.module, self.matrix @ other.matrix, check=False)

    def power(self, k: int) -> "EndoMatrix":
        result = identity_endo(self.module)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.matrix, identity_endo(self.module).matrix))

    def commutes_with(self, other: "EndoMatrix") -> bool:
        return (self @ other).key == (other @ self).key

    def as_lists(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.matrix]

    def __eq__(self, other):
        return isinstance(other, EndoMatrix) and self.module == other.module \
            and self.key == other.key

    def __hash__(self):
        return hash((self.module, self.key))

    def __repr__(self):
        return f"EndoMatrix({self.module.describe()}, {self.as_lists()})"


def identity_endo(M: FinAbGroup) -> EndoMatrix:
    return EndoMatrix(M, np.eye(M.rank, dtype=np.int64), check=False)


def endomorphism_value_lists(M: FinAbGroup) -> list[list[int]]:
    """Allowed values per matrix entry, row-major; product = candidate count."""
    values = []
    for i in range(M.rank):
        for j in range(M.rank):
            step = entry_step(M, i, j)
            values.append(list(range(0, int(M.moduli[i]), step)))
    return values


def endomorphism_count(M: FinAbGroup) -> int:
    count = 1
    for i in range(M.rank):
        for j in range(M.rank):
            count *= M.p ** min(M.exponents[i], M.exponents[j])
    return count


def iter_endomorphism_matrices(M: FinAbGroup):
    """All well-formed matrices, in deterministic lexicographic order."""
    s = M.rank
    for combo in itertools.product(*endomorphism_value_lists(M)):
        yield np.array(combo, dtype=np.int64).reshape(s, s)
