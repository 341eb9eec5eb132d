"""Graded Betti tables."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .errors import InvalidCoarseningError

GRADINGS = ("fine", "block", "total")


def _degree_total(deg) -> int:
    return deg if isinstance(deg, int) else sum(deg)


@dataclass(frozen=True)
class BettiTable:
    """Nonzero Betti numbers beta_{i, deg}.

    ``deg`` is an int for total grading and a tuple for fine (one entry per
    variable) or block grading.  ``blocks`` records the block sizes of the
    ring a fine table came from, so it can be coarsened later.
    """

    grading: str
    entries: dict = field(default_factory=dict)
    blocks: tuple = ()

    def __post_init__(self):
        if self.grading not in GRADINGS:
            raise ValueError(f"unknown grading {self.grading!r}")
        clean = {}
        for (i, deg), v in self.entries.items():
            v = int(v)
            if v < 0:
                raise ValueError("Betti numbers are nonnegative")
            if v:
                deg = int(deg) if self.grading == "total" else tuple(int(x) for x in deg)
                clean[(int(i), deg)] = v
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.grading == other.grading and self.entries == other.entries

    def __hash__(self):
        return hash((self.grading, frozenset(self.entries.items())))

    def __getitem__(self, key) -> int:
        return self.entries.get(key, 0)

    def __add__(self, other: "BettiTable") -> "BettiTable":
        if self.grading != other.grading:
            raise ValueError("cannot add tables with different gradings")
        out = defaultdict(int, self.entries)
        for k, v in other.entries.items():
            out[k] += v
        return BettiTable(self.grading, dict(out), self.blocks or other.blocks)

    def shifted(self, steps: int = 1) -> "BettiTable":
        """Move every entry ``steps`` homological positions to the right."""
        return BettiTable(self.grading, {(i + steps, d): v for (i, d), v in self.entries.items()}, self.blocks)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    @property
    def regularity(self) -> int | None:
        if not self.entries:
            return None
        return max(_degree_total(d) - i for i, d in self.entries)

    @property
    def pdim(self) -> int | None:
        if not self.entries:
            return None
        return max(i for i, _ in self.entries)

    def column(self, i: int) -> dict:
        return {d: v for (k, d), v in self.entries.items() if k == i}

    def min_shift(self, i: int) -> int | None:
        col = self.column(i)
        return min(map(_degree_total, col)) if col else None

    def max_shift(self, i: int) -> int | None:
        col = self.column(i)
        return max(map(_degree_total, col)) if col else None

    def total(self) -> "BettiTable":
        return coarsen(self, "total")

    def triples(self) -> list:
        """Sorted (i, degree, rank) triples; degrees are lists for tuple gradings."""
        out = []
        for (i, d), v in sorted(self.entries.items(), key=lambda kv: (kv[0][0], _sort_deg(kv[0][1]))):
            out.append((i, d if isinstance(d, int) else list(d), v))
        return out

    def format(self) -> str:
        """Macaulay2-style diagram: rows are j - i, columns are i (total grading)."""
        t = self.total()
        if t.is_empty:
            return "(zero table)"
        cols = range(t.pdim + 1)
        rows = sorted({d - i for i, d in t.entries})
        width = max(len(str(v)) for v in t.entries.values()) + 1
        lines = ["     " + "".join(f"{i:>{width}}" for i in cols)]
        for r in rows:
            cells = "".join(f"{(t[(i, i + r)] or '.'):>{width}}" for i in cols)
            lines.append(f"{r:>3}: {cells}")
        return "\n".join(lines)


def _sort_deg(d):
    return (d,) if isinstance(d, int) else (sum(d),) + tuple(d)


def coarsen(table: BettiTable, target: str, blocks=None) -> BettiTable:
    """Sum fine entries onto a coarser grading (block or total)."""
    rank = {g: k for k, g in enumerate(GRADINGS)}
    if target not in rank:
        raise InvalidCoarseningError(f"unknown grading {target!r}")
    if rank[target] < rank[table.grading]:
        raise InvalidCoarseningError(f"cannot refine a {table.grading} table to {target}")
    if target == table.grading:
        return table
    if target == "total":
        proj = _degree_total
    else:
        sizes = tuple(blocks) if blocks is not None else table.blocks
        if not sizes:
            raise InvalidCoarseningError("block coarsening needs block sizes")

        def proj(d):
            out, start = [], 0
            for size in sizes:
                out.append(sum(d[start:start + size]))
                start += size
            return tuple(out)
    acc = defaultdict(int)
    for (i, d), v in table.entries.items():
        acc[(i, proj(d))] += v
    return BettiTable(target, dict(acc), table.blocks)
