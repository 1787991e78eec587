"""The quiver Q(a), the two defining relations of A(a), and standard modules.

Paths are stored right to left: in ``("beta3", "alpha4", "alpha3")`` the
arrow alpha3 is applied first.  Evaluating a path in a representation is the
matrix product in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .combinatorics import Triple
from .errors import IndexOutOfRange


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    kind: str  # "alpha" or "beta"


@dataclass(frozen=True)
class Relation:
    """lhs = rhs, with rhs None meaning lhs = 0."""

    lhs: tuple[str, ...]
    rhs: Optional[tuple[str, ...]]


def alpha(i: int) -> str:
    return f"alpha{i}"


def beta(i: int) -> str:
    return f"beta{i}"


def alpha_chain(start: int, stop: int) -> tuple[str, ...]:
    """alpha_{stop-1} ... alpha_{start}: the path start -> stop, right to left."""
    return tuple(alpha(i) for i in range(stop - 1, start - 1, -1))


@dataclass(frozen=True)
class QuiverPresentation:
    a: Triple
    t: int
    arrows: tuple[Arrow, ...]
    relation_ideal: tuple[Relation, Relation]

    @property
    def b(self):
        return self.a.b

    @property
    def vertices(self) -> range:
        return range(1, self.t + 1)

    @property
    def alpha_arrows(self) -> tuple[Arrow, ...]:
        return tuple(x for x in self.arrows if x.kind == "alpha")

    @property
    def beta_arrows(self) -> tuple[Arrow, ...]:
        return tuple(x for x in self.arrows if x.kind == "beta")

    def arrow(self, name: str) -> Arrow:
        return self._by_name[name]

    @property
    def _by_name(self):
        return {x.name: x for x in self.arrows}

    def path_endpoints(self, path: tuple[str, ...]) -> tuple[int, int]:
        """(source, target) of a right-to-left path; raises on a broken path."""
        arrs = [self.arrow(n) for n in reversed(path)]
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise ValueError(f"path {path} is not composable at {x.name} -> {y.name}")
        return arrs[0].source, arrs[-1].target

    def to_dot(self) -> str:
        lines = [f'digraph "Q{self.a.astuple()}" {{', "  rankdir=LR;"]
        for v in self.vertices:
            lines.append(f'  {v} [label="{v}"];')
        for x in self.arrows:
            style = "solid" if x.kind == "alpha" else "dashed"
            label = "α" + x.name[5:] if x.kind == "alpha" else "β" + x.name[4:]
            lines.append(f'  {x.source} -> {x.target} [label="{label}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "t": self.t,
            "arrows": [
                {"name": x.name, "source": x.source, "target": x.target, "kind": x.kind} for x in self.arrows
            ],
            "relations": [
                {"lhs": list(r.lhs), "rhs": None if r.rhs is None else list(r.rhs)} for r in self.relation_ideal
            ],
        }


@lru_cache(maxsize=None)
def _build(a: Triple) -> QuiverPresentation:
    t = a.t
    _, b1, b2, b3 = a.b
    arrows = [Arrow(alpha(i), i, i + 1, "alpha") for i in range(1, t)]
    arrows.append(Arrow(beta(b1), b2, b1, "beta"))
    arrows.append(Arrow(beta(b2), b3, b2, "beta"))
    rel1 = Relation((beta(b1),) + alpha_chain(b1, b2), None)
    rel2 = Relation(alpha_chain(b1, b2) + (beta(b1),), (beta(b2),) + alpha_chain(b2, b3))
    Q = QuiverPresentation(a=a, t=t, arrows=tuple(arrows), relation_ideal=(rel1, rel2))
    assert Q.path_endpoints(rel1.lhs) == (b1, b1)
    assert Q.path_endpoints(rel2.lhs) == (b2, b2) == Q.path_endpoints(rel2.rhs)
    return Q


def build_quiver(a) -> QuiverPresentation:
    return _build(Triple.of(a))


def standard_module(a, i: int, field):
    """Δ(i): k at vertices j >= i, identities along alpha, both betas zero."""
    from .representations import Representation

    Q = build_quiver(a)
    if not 1 <= i <= Q.t:
        raise IndexOutOfRange(f"vertex {i} outside 1..{Q.t}")
    dims = tuple(int(j >= i) for j in Q.vertices)
    mats = {}
    for x in Q.arrows:
        m, n = dims[x.target - 1], dims[x.source - 1]
        mats[x.name] = field.eye(1) if (x.kind == "alpha" and m == n == 1) else field.zeros(m, n)
    return Representation(Q, field, dims, mats)
