"""Block combinatorics of the flag and dimension counts for P, Q_u and q_u."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, NamedTuple

from .errors import LengthMismatch


@dataclass(frozen=True)
class Triple:
    a1: int
    a2: int
    a3: int

    def __post_init__(self):
        for v in (self.a1, self.a2, self.a3):
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"triple entries must be positive integers, got {self.astuple()}")

    @classmethod
    def of(cls, a) -> "Triple":
        if isinstance(a, Triple):
            return a
        a = tuple(int(v) for v in a)
        if len(a) != 3:
            raise ValueError(f"a triple needs exactly three entries, got {a}")
        return cls(*a)

    def astuple(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    def __iter__(self):
        return iter(self.astuple())

    def __getitem__(self, k):
        return self.astuple()[k]

    @property
    def t(self) -> int:
        return self.a1 + self.a2 + self.a3

    @property
    def b(self) -> tuple[int, int, int, int]:
        """Block boundaries (b_0, b_1, b_2, b_3) = (0, a1, a1+a2, t)."""
        return (0, self.a1, self.a1 + self.a2, self.t)

    def reverse(self) -> "Triple":
        return Triple(self.a3, self.a2, self.a1)

    def __le__(self, other: "Triple") -> bool:
        other = Triple.of(other)
        return all(x <= y for x, y in zip(self, other))

    def block_of(self, i: int) -> int:
        """Coarse block (1, 2 or 3) containing the 1-based vertex i."""
        b = self.b
        for k in (1, 2, 3):
            if b[k - 1] < i <= b[k]:
                return k
        raise ValueError(f"vertex {i} outside 1..{self.t}")

    def __str__(self):
        return "({}, {}, {})".format(*self)


@dataclass(frozen=True)
class DimVector:
    """A flag dimension vector: every entry at least one."""

    entries: tuple[int, ...]

    def __post_init__(self):
        ent = tuple(int(v) for v in self.entries)
        object.__setattr__(self, "entries", ent)
        if not ent or any(v < 1 for v in ent):
            raise ValueError(f"dimension vector entries must be >= 1, got {ent}")

    @classmethod
    def of(cls, d) -> "DimVector":
        return d if isinstance(d, DimVector) else cls(tuple(d))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    @property
    def n(self) -> int:
        return sum(self.entries)

    def reverse(self) -> "DimVector":
        return DimVector(self.entries[::-1])


class BlockData(NamedTuple):
    b: tuple[int, int, int, int]
    e: tuple[int, ...]
    r: tuple[int, int, int]
    n: int


def _entries(d) -> tuple[int, ...]:
    return tuple(d.entries) if isinstance(d, DimVector) else tuple(int(v) for v in d)


def block_data(a, d, *, allow_zero: bool = False) -> BlockData:
    """Flag dimensions e_i and coarse block sizes r for the pair (a, d).

    With ``allow_zero`` the vector may contain zeros (Δ-dimension vectors);
    the group-side contract otherwise requires every entry to be positive.
    """
    a = Triple.of(a)
    if allow_zero:
        ent = _entries(d)
        if any(v < 0 for v in ent):
            raise ValueError(f"negative entry in {ent}")
    else:
        ent = DimVector.of(d).entries
    if len(ent) != a.t:
        raise LengthMismatch(f"d has length {len(ent)} but a={a} needs t={a.t}")
    e = tuple(accumulate(ent))
    b = a.b
    n = e[-1]
    e_at = lambda k: 0 if k == 0 else e[k - 1]
    r = (e_at(b[1]), e_at(b[2]) - e_at(b[1]), n - e_at(b[2]))
    return BlockData(b=b, e=e, r=r, n=n)


def dim_parabolic(d: Iterable[int]) -> int:
    ent = _entries(d)
    n = sum(ent)
    # sum_{i<=j} d_i d_j = (n^2 + sum d_i^2) / 2
    return (n * n + sum(v * v for v in ent)) // 2


class DimsReport(NamedTuple):
    dimP: int
    dimQu: int
    dimP_mod_Qu: int
    dim_qu: int
    dim_qu_derived: int
    dim_qu_mod_derived: int


def dim_nilradical(r) -> int:
    r1, r2, r3 = r
    return r1 * r2 + r1 * r3 + r2 * r3


def dims_report(a, d) -> DimsReport:
    bd = block_data(a, d)
    r1, r2, r3 = bd.r
    dimP = dim_parabolic(d)
    dimQu = dim_nilradical(bd.r)
    return DimsReport(
        dimP=dimP,
        dimQu=dimQu,
        dimP_mod_Qu=dimP - dimQu,
        dim_qu=dimQu,
        dim_qu_derived=r1 * r3,
        dim_qu_mod_derived=r1 * r2 + r2 * r3,
    )
