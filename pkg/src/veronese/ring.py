"""Exact monomial and monomial-ideal arithmetic.

Monomials are plain tuples of nonnegative exponents indexed by the ring's
variable order.  Index *sets* that name variables (supports of Veronese
components, nonfaces, ...) are 1-based throughout the public API, so that
``{1, 2, 3}`` means ``x1, x2, x3``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InvalidSpecError,
    PreconditionError,
    RingMismatchError,
    SquarefreeRequiredError,
)

Monomial = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class RingCtx:
    """Polynomial ring with named variables split into grading blocks."""

    var_names: tuple
    blocks: tuple = ()

    def __post_init__(self):
        names = tuple(self.var_names)
        blocks = tuple(self.blocks) if self.blocks else (len(names),)
        if not names:
            raise InvalidSpecError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise InvalidSpecError("variable names must be distinct")
        if any(int(b) < 1 for b in blocks) or sum(blocks) != len(names):
            raise InvalidSpecError(
                f"block sizes {blocks} must be positive and sum to {len(names)}")
        object.__setattr__(self, "var_names", names)
        object.__setattr__(self, "blocks", tuple(int(b) for b in blocks))

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "RingCtx":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @classmethod
    def multiprojective(cls, dims: Sequence[int]) -> "RingCtx":
        """Coordinate ring of P^{n_1} x ... x P^{n_r}; block i holds x{i}0..x{i}{n_i}."""
        if not dims or any(d < 1 for d in dims):
            raise InvalidSpecError("projective dimensions must be positive")
        names = [f"x{i}{j}" for i, d in enumerate(dims, 1) for j in range(d + 1)]
        return cls(tuple(names), tuple(d + 1 for d in dims))

    @property
    def n(self) -> int:
        return len(self.var_names)

    @property
    def r(self) -> int:
        return len(self.blocks)

    def block_slices(self):
        start = 0
        for size in self.blocks:
            yield slice(start, start + size)
            start += size

    def block_degree(self, m: Monomial) -> tuple:
        return tuple(sum(m[s]) for s in self.block_slices())

    def extended(self, extra: int) -> "RingCtx":
        """Same ring with ``extra`` fresh variables appended to the last block."""
        names = list(self.var_names)
        k = 1
        while len(names) < self.n + extra:
            cand = f"u{k}"
            if cand not in names:
                names.append(cand)
            k += 1
        blocks = self.blocks[:-1] + (self.blocks[-1] + extra,)
        return RingCtx(tuple(names), blocks)

    def one(self) -> Monomial:
        return (0,) * self.n

    def var(self, index: int) -> Monomial:
        """The variable with 1-based ``index``."""
        self.check_index(index)
        return tuple(1 if k == index - 1 else 0 for k in range(self.n))

    def check_index(self, index: int) -> None:
        if not 1 <= index <= self.n:
            raise InvalidSpecError(f"variable index {index} outside [1, {self.n}]")

    def format(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.var_names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> Monomial:
        """Inverse of :meth:`format`; accepts ``*`` or whitespace separators."""
        exps = [0] * self.n
        text = text.strip()
        if text == "1":
            return tuple(exps)
        lookup = {name: k for k, name in enumerate(self.var_names)}
        for token in re.split(r"[*\s]+", text):
            if not token:
                continue
            name, _, power = token.partition("^")
            if name not in lookup:
                raise InvalidSpecError(f"unknown variable {name!r}")
            exps[lookup[name]] += int(power) if power else 1
        return tuple(exps)


# -- monomial helpers ------------------------------------------------------

def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def support(m: Monomial) -> frozenset:
    """1-based indices of the variables dividing m."""
    return frozenset(k + 1 for k, e in enumerate(m) if e)


def revlex_key(m: Monomial) -> tuple:
    """Ascending sort on this key lists equal-degree monomials in descending revlex."""
    return tuple(reversed(m))


def canonical_key(m: Monomial) -> tuple:
    return (sum(m),) + revlex_key(m)


@lru_cache(maxsize=None)
def _monomials_of_degree(n: int, d: int) -> np.ndarray:
    rows = []
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        row = []
        for b in bars:
            row.append(b - prev - 1)
            prev = b
        row.append(d + n - 2 - prev)
        rows.append(row)
    out = np.array(rows, dtype=np.int64).reshape(-1, n)
    out.setflags(write=False)
    return out


def monomials_of_degree(n: int, d: int, variables: Iterable[int] | None = None) -> np.ndarray:
    """All degree-d exponent vectors of length n, optionally supported on 1-based ``variables``."""
    if d < 0:
        return np.zeros((0, n), dtype=np.int64)
    if variables is None:
        return _monomials_of_degree(n, d)
    cols = sorted(variables)
    sub = _monomials_of_degree(len(cols), d)
    out = np.zeros((len(sub), n), dtype=np.int64)
    out[:, [c - 1 for c in cols]] = sub
    return out


def minimalize(gens, n: int) -> tuple:
    """Minimal generators of the ideal spanned by ``gens``, in canonical order."""
    arr = np.asarray(list(gens) if not isinstance(gens, np.ndarray) else gens, dtype=np.int64)
    if arr.size == 0:
        return ()
    arr = np.unique(arr.reshape(-1, n), axis=0)
    degs = arr.sum(axis=1)
    kept = np.zeros((0, n), dtype=np.int64)
    for d in np.unique(degs):
        level = arr[degs == d]
        if len(kept):
            keep = np.ones(len(level), dtype=bool)
            step = max(1, 2_000_000 // (len(kept) * n))
            for s in range(0, len(level), step):
                chunk = level[s:s + step]
                keep[s:s + step] = ~(chunk[:, None, :] >= kept[None, :, :]).all(axis=2).any(axis=1)
            level = level[keep]
        kept = np.concatenate([kept, level])
    return tuple(sorted((tuple(int(e) for e in row) for row in kept), key=canonical_key))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored by its minimal generators in canonical order.

    Canonical order is total degree ascending, then descending reverse-lex.
    The zero ideal has no generators; the unit ideal has the single
    generator ``1``.
    """

    ring: RingCtx
    gens: tuple = field(default=())

    def __post_init__(self):
        n = self.ring.n
        gens = [tuple(int(e) for e in g) for g in self.gens]
        for g in gens:
            if len(g) != n or any(e < 0 for e in g):
                raise InvalidSpecError(f"bad exponent vector {g} for {n} variables")
        object.__setattr__(self, "gens", minimalize(gens, n))

    @classmethod
    def from_strings(cls, ring: RingCtx, texts: Iterable[str]) -> "MonomialIdeal":
        return cls(ring, tuple(ring.parse(t) for t in texts))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def min_gen_degree(self) -> int | None:
        return sum(self.gens[0]) if self.gens else None

    @property
    def max_gen_degree(self) -> int | None:
        return sum(self.gens[-1]) if self.gens else None

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    @property
    def is_equigenerated(self) -> bool:
        return bool(self.gens) and self.min_gen_degree == self.max_gen_degree

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def gens_array(self) -> np.ndarray:
        return np.array(self.gens, dtype=np.int64).reshape(-1, self.ring.n)

    def in_ring(self, ring: RingCtx) -> "MonomialIdeal":
        """Same generators viewed in a ring with more (trailing) variables."""
        extra = ring.n - self.ring.n
        if extra < 0 or ring.var_names[:self.ring.n] != self.ring.var_names:
            raise RingMismatchError("target ring does not extend this ring")
        return MonomialIdeal(ring, tuple(g + (0,) * extra for g in self.gens))

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(self.ring.format(g) for g in self.gens) + ")"


def _same_ring(*ideals: MonomialIdeal) -> RingCtx:
    ring = ideals[0].ring
    for other in ideals[1:]:
        if other.ring != ring:
            raise RingMismatchError("ideals live in different rings")
    return ring


def variable_ideal(ring: RingCtx, J: Iterable[int]) -> MonomialIdeal:
    """m_J for a set J of 1-based variable indices."""
    return MonomialIdeal(ring, tuple(ring.var(j) for j in J))


def veronese_power(ring: RingCtx, J: Iterable[int], a: int) -> MonomialIdeal:
    """m_J^a: every degree-a monomial in the variables of J."""
    J = sorted(set(J))
    for j in J:
        ring.check_index(j)
    if not J:
        raise InvalidSpecError("Veronese support must be nonempty")
    if a < 1:
        raise InvalidSpecError("Veronese power must be positive")
    return MonomialIdeal(ring, monomials_of_degree(ring.n, a, J))


@dataclass(frozen=True)
class VeroneseSpec:
    """Components (J_i, a_i) of an intersection of Veronese ideals."""

    ring: RingCtx
    components: tuple

    def __post_init__(self):
        comps = []
        for comp in self.components:
            supp, power = comp
            supp = frozenset(int(j) for j in supp)
            if not supp:
                raise InvalidSpecError("empty support in Veronese component")
            for j in supp:
                self.ring.check_index(j)
            if int(power) < 1:
                raise InvalidSpecError(f"power {power} must be a positive integer")
            comps.append((supp, int(power)))
        if not comps:
            raise InvalidSpecError("a Veronese spec needs at least one component")
        object.__setattr__(self, "components", tuple(comps))

    @property
    def s(self) -> int:
        return len(self.components)


def veronese_ideal(spec: VeroneseSpec) -> MonomialIdeal:
    parts = [veronese_power(spec.ring, J, a) for J, a in spec.components]
    return reduce(intersect, parts)


def intersect(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(A, B)
    if A.is_zero or B.is_zero:
        return MonomialIdeal(ring)
    lcms = np.maximum(A.gens_array()[:, None, :], B.gens_array()[None, :, :])
    return MonomialIdeal(ring, lcms.reshape(-1, ring.n))


def ideal_sum(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(A, B)
    return MonomialIdeal(ring, A.gens + B.gens)


def multiply(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(A, B)
    if A.is_zero or B.is_zero:
        return MonomialIdeal(ring)
    prods = A.gens_array()[:, None, :] + B.gens_array()[None, :, :]
    return MonomialIdeal(ring, prods.reshape(-1, ring.n))


def power(A: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 1:
        raise PreconditionError("power exponent must be a positive integer")
    out = A
    for _ in range(k - 1):
        out = multiply(out, A)
    return out


def colon_by_monomial(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    m = tuple(m)
    if len(m) != I.ring.n:
        raise RingMismatchError("monomial has the wrong number of variables")
    return MonomialIdeal(I.ring, tuple(tuple(max(u - e, 0) for u, e in zip(g, m)) for g in I.gens))


def degree_component(I: MonomialIdeal, d: int) -> MonomialIdeal:
    """(I_d): the ideal generated by the degree-d monomials of I."""
    n = I.ring.n
    pieces = []
    for g in I.gens:
        k = d - sum(g)
        if k >= 0:
            pieces.append(monomials_of_degree(n, k) + np.asarray(g, dtype=np.int64))
    if not pieces:
        return MonomialIdeal(I.ring)
    return MonomialIdeal(I.ring, np.concatenate(pieces))


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    if not I.is_squarefree:
        raise SquarefreeRequiredError("Alexander duality needs squarefree generators")
    ring = I.ring
    out = MonomialIdeal(ring, (ring.one(),))
    for g in I.gens:
        out = intersect(out, variable_ideal(ring, support(g)))
    return out


def support_codim(I: MonomialIdeal) -> int:
    """Height of I: the smallest set of variables meeting every generator's support."""
    if I.is_zero:
        raise PreconditionError("codimension of the zero ideal is undefined here")
    supports = [support(g) for g in I.gens]
    if any(not s for s in supports):
        raise PreconditionError("the unit ideal has no finite codimension")
    used = sorted(set().union(*supports))
    for size in range(1, len(used) + 1):
        for cover in itertools.combinations(used, size):
            cover = set(cover)
            if all(s & cover for s in supports):
                return size
    raise AssertionError("unreachable: the full support always covers")
