"""The dual group of Dirichlet characters mod a prime q.

For prime q the group (Z/qZ)* is cyclic of order q-1, so every character is
chi_a(g^k) = e^{2 pi i a k / (q-1)} for a fixed primitive root g and an index
a in {0, ..., q-2}.  All evaluation is one integer multiplication mod q-1
followed by a root-of-unity table lookup; no floating-point phase ever
accumulates.  The root table is built so that entry q-1-k is the exact
bitwise conjugate of entry k, which makes conjugate characters evaluate to
exact conjugates.

Groups are immutable after construction; parallel iteration over the
character index range is the intended parallelism axis everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import DiscreteLogTable, build_dlog

__all__ = [
    "CharacterGroup",
    "Character",
    "EligibleSet",
    "eligible",
    "orthogonality_sum",
]

# Index-matrix chunks are capped so order * chunk stays modest in memory.
_MATRIX_CELL_BUDGET = 4_000_000


class CharacterGroup:
    """All q-1 Dirichlet characters mod the odd prime q."""

    def __init__(self, q: int):
        self.dlog: DiscreteLogTable = build_dlog(q)  # validates q
        self.q = q
        self.order = q - 1
        self.root_table = self._build_roots(self.order)

    @staticmethod
    def _build_roots(order: int) -> np.ndarray:
        roots = np.empty(order, dtype=np.complex128)
        half = order // 2
        k = np.arange(half + 1)
        roots[: half + 1] = np.exp(2j * np.pi * k / order)
        roots[0] = 1.0
        if order % 2 == 0:
            roots[half] = -1.0
        # mirror the upper half so conjugate indices are exact conjugates
        if half + 1 < order:
            roots[half + 1 :] = np.conj(roots[1 : order - half][::-1])
        roots.setflags(write=False)
        return roots

    def character(self, index: int) -> "Character":
        return Character(self, index % self.order)

    @property
    def principal(self) -> "Character":
        return Character(self, 0)

    def characters(self):
        return (Character(self, a) for a in range(self.order))

    # -- evaluation ---------------------------------------------------------

    def value(self, index: int, n: int) -> complex:
        """chi_index(n) as an exact root of unity (0 when q | n)."""
        r = n % self.q
        if r == 0:
            return 0j
        e = (index * int(self.dlog.dlog[r])) % self.order
        return complex(self.root_table[e])

    def value_row(self, index: int, ns: np.ndarray) -> np.ndarray:
        """chi_index over an integer array."""
        ns = np.asarray(ns, dtype=np.int64)
        r = ns % self.q
        out = np.zeros(len(ns), dtype=np.complex128)
        nz = r != 0
        e = (index * self.dlog.dlog[r[nz]]) % self.order
        out[nz] = self.root_table[e]
        return out

    def values_matrix(self, ns: np.ndarray) -> np.ndarray:
        """Matrix M[k, i] = chi_k(ns[i]) over every character index k."""
        ns = np.asarray(ns, dtype=np.int64)
        r = ns % self.q
        out = np.zeros((self.order, len(ns)), dtype=np.complex128)
        nz = r != 0
        d = self.dlog.dlog[r[nz]]
        idx = (np.arange(self.order, dtype=np.int64)[:, None] * d[None, :]) % self.order
        out[:, nz] = self.root_table[idx]
        return out

    def matrix_chunk(self) -> int:
        """Column budget for chunked whole-group evaluation."""
        return max(1, _MATRIX_CELL_BUDGET // self.order)

    def __repr__(self) -> str:  # pragma: no cover
        return f"CharacterGroup(q={self.q}, g={self.dlog.g})"


class Character:
    """One Dirichlet character mod q, identified by its index in the dual group."""

    __slots__ = ("group", "index")

    def __init__(self, group: CharacterGroup, index: int):
        self.group = group
        self.index = index % group.order

    def __call__(self, n: int) -> complex:
        return self.group.value(self.index, n)

    def values(self, ns: np.ndarray) -> np.ndarray:
        return self.group.value_row(self.index, ns)

    @property
    def is_principal(self) -> bool:
        return self.index == 0

    def order(self) -> int:
        """Multiplicative order: (q-1)/gcd(index, q-1)."""
        return self.group.order // math.gcd(self.index, self.group.order)

    def power(self, j: int) -> "Character":
        if j < 0:
            raise ValueError(f"power needs j >= 0, got {j}")
        return Character(self.group, (self.index * j) % self.group.order)

    def conjugate(self) -> "Character":
        return Character(self.group, (-self.index) % self.group.order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Character)
            and other.group.q == self.group.q
            and other.index == self.index
        )

    def __hash__(self) -> int:
        return hash((self.group.q, self.index))

    def __repr__(self) -> str:  # pragma: no cover
        return f"Character(q={self.group.q}, index={self.index})"


@dataclass(frozen=True)
class EligibleSet:
    """Character indices whose order exceeds ell, so chi^j is non-principal
    for every j in {1, ..., ell}."""

    q: int
    ell: int
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


def eligible(group: CharacterGroup, ell: int) -> EligibleSet:
    """Characters with ord(chi) > ell.  Empty (not an error) when ell >= q-1."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    order = group.order
    members = tuple(
        a for a in range(order) if order // math.gcd(a, order) > ell
    )
    return EligibleSet(group.q, ell, members)


def orthogonality_sum(group: CharacterGroup, m: int, n: int) -> complex:
    """sum over all characters of chi(m) * conj(chi(n)).

    Equals phi(q) when m = n (mod q) and (n, q) = 1, and 0 otherwise; the
    harness checks the numerical result to 1e-9 * phi(q).
    """
    q = group.q
    if m % q == 0 or n % q == 0:
        return 0j
    dm = group.dlog.of(m)
    dn = group.dlog.of(n)
    diff = (dm - dn) % group.order
    idx = (np.arange(group.order, dtype=np.int64) * diff) % group.order
    vals = group.root_table[idx]
    return complex(math.fsum(vals.real.tolist()), math.fsum(vals.imag.tolist()))
