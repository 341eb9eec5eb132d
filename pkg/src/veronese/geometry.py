"""Fat points at coordinate vertices and Stanley-Reisner ideals of simplicial complexes."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import InvalidSpecError
from .linalg import DEFAULT_PRIME
from .oracle import CWLReport, is_componentwise_linear
from .ring import (
    MonomialIdeal,
    RingCtx,
    alexander_dual,
    intersect,
    veronese_power,
)


@dataclass(frozen=True)
class FatPointScheme:
    """Points P_0..P_s with multiplicities in P^{n_1} x ... x P^{n_r}.

    The ring has one block of n_i + 1 coordinates per factor; point j sits
    at the vertex whose only nonzero coordinate in every block is x_{i,j}.
    """

    ring: RingCtx
    mults: tuple

    def __post_init__(self):
        mults = tuple(int(m) for m in self.mults)
        if not mults:
            raise InvalidSpecError("a fat point scheme needs at least one point")
        if min(mults) < 1:
            raise InvalidSpecError("multiplicities must be positive")
        if len(mults) > min(self.ring.blocks):
            raise InvalidSpecError(
                f"{len(mults)} points do not fit at coordinate vertices of blocks {self.ring.blocks}")
        object.__setattr__(self, "mults", mults)

    @classmethod
    def in_product(cls, dims, mults) -> "FatPointScheme":
        """Scheme in P^{dims[0]} x ... using the standard multiprojective ring."""
        return cls(RingCtx.multiprojective(dims), tuple(mults))


def point_support(ring: RingCtx, j: int) -> list:
    """1-based indices of every variable except x_{i,j} in each block."""
    out = []
    for block in ring.block_slices():
        out.extend(k + 1 for pos, k in enumerate(range(block.start, block.stop)) if pos != j)
    return out


def fat_points_ideal(scheme: FatPointScheme) -> MonomialIdeal:
    ring = scheme.ring
    parts = [veronese_power(ring, point_support(ring, j), a) for j, a in enumerate(scheme.mults)]
    return reduce(intersect, parts)


def non_general_fixture() -> MonomialIdeal:
    """(x0 x1, y0 y1) in P^1 x P^1: four points that are not in general position."""
    ring = RingCtx(("x0", "x1", "y0", "y1"), (2, 2))
    return MonomialIdeal.from_strings(ring, ["x0*x1", "y0*y1"])


@dataclass(frozen=True)
class SimplicialComplexSpec:
    """A complex on vertices 1..n given by its minimal nonfaces."""

    n: int
    nonfaces: tuple

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpecError("vertex count must be positive")
        faces = []
        for F in self.nonfaces:
            F = frozenset(int(v) for v in F)
            if not F:
                raise InvalidSpecError("the empty set cannot be a nonface")
            bad = [v for v in F if not 1 <= v <= self.n]
            if bad:
                raise InvalidSpecError(f"vertex {bad[0]} outside 1..{self.n}")
            faces.append(F)
        if len(set(faces)) != len(faces):
            raise InvalidSpecError("repeated nonface")
        for F in faces:
            for G in faces:
                if F < G:
                    raise InvalidSpecError(f"nonfaces {sorted(F)} and {sorted(G)} are comparable")
        object.__setattr__(self, "nonfaces", tuple(sorted(faces, key=lambda F: (len(F), sorted(F)))))

    @property
    def ring(self) -> RingCtx:
        return RingCtx.standard(self.n)


def stanley_reisner_ideal(spec: SimplicialComplexSpec) -> MonomialIdeal:
    ring = spec.ring
    gens = [tuple(1 if k + 1 in F else 0 for k in range(spec.n)) for F in spec.nonfaces]
    return MonomialIdeal(ring, tuple(gens))


def is_sequentially_cm(spec: SimplicialComplexSpec, field_char: int = DEFAULT_PRIME) -> CWLReport:
    """Componentwise linearity of the Alexander dual of the Stanley-Reisner ideal."""
    return is_componentwise_linear(alexander_dual(stanley_reisner_ideal(spec)), field_char)
