"""Brute-force multigraded Betti numbers and the invariants derived from them.

Two exact routes compute the same groups Tor_i(I, k)_mu:

* ``"taylor"``: the Taylor complex tensored with k, sliced by multidegree.
  In multidegree mu its basis is the generator subsets S with lcm(S) = mu,
  and a face survives the boundary only if dropping it keeps the lcm.
* ``"koszul"``: the upper Koszul simplicial complex
  K^mu = {F subset of supp(mu) : mu / x^F in I}, with
  beta_{i,mu}(I) = dim reduced H_{i-1}(K^mu).  The nerve lemma identifies
  this with the Taylor slice, but it lives on at most n vertices instead of
  2^|G(I)| subsets, so it scales to ideals with many generators.

Both are independent of every closed-form formula in :mod:`veronese.formulas`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .betti import BettiTable, coarsen
from .errors import CapacityError, PreconditionError
from .linalg import DEFAULT_PRIME, rank
from .ring import MonomialIdeal, degree_component, minimalize, support_codim

SUBSET_CAP = 22
AUTO_TAYLOR_LIMIT = 10
KOSZUL_CELL_CAP = 200_000_000


# -- Taylor route ------------------------------------------------------------

def _boundary_rank(cols_by_size, index_by_size, s, field_char):
    """Rank of the boundary from size-s subsets to size-(s-1) subsets."""
    cols = cols_by_size.get(s, [])
    rows = index_by_size.get(s - 1, {})
    if not cols or not rows:
        return 0
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for c, mask in enumerate(cols):
        pos = 0
        bits = mask
        while bits:
            low = bits & -bits
            face = mask ^ low
            row = rows.get(face)
            if row is not None:
                M[row, c] = -1 if pos % 2 else 1
            pos += 1
            bits ^= low
    return rank(M, field_char)


def _taylor_fine(I: MonomialIdeal, field_char: int, subset_cap: int) -> dict:
    G = I.gens_array()
    m, n = G.shape
    if m > subset_cap:
        raise CapacityError(f"{m} generators exceed the Taylor subset cap {subset_cap}", size=m)
    L = np.zeros((1 << m, n), dtype=np.int64)
    for b in range(m):
        L[1 << b: 1 << (b + 1)] = np.maximum(L[: 1 << b], G[b])
    radix = L.max(axis=0) + 1
    weights = np.concatenate([[1], np.cumprod(radix[::-1])[:-1]])[::-1]
    keys = L @ weights
    order = np.argsort(keys[1:], kind="stable") + 1
    sorted_keys = keys[order]
    bounds = np.flatnonzero(np.diff(sorted_keys)) + 1
    entries = {}
    for group in np.split(order, bounds):
        masks = [int(x) for x in group]
        mu = tuple(int(e) for e in L[masks[0]])
        cols_by_size = {}
        for mask in masks:
            cols_by_size.setdefault(mask.bit_count(), []).append(mask)
        index_by_size = {s: {mk: k for k, mk in enumerate(v)} for s, v in cols_by_size.items()}
        ranks = {s: _boundary_rank(cols_by_size, index_by_size, s, field_char)
                 for s in range(2, max(cols_by_size) + 2)}
        for s, cols in cols_by_size.items():
            h = len(cols) - ranks.get(s, 0) - ranks.get(s + 1, 0)
            if h:
                entries[(s - 1, mu)] = h
    return entries


# -- Koszul route ------------------------------------------------------------

@lru_cache(maxsize=200_000)
def _koszul_homology(n: int, pattern: bytes, field_char: int) -> tuple:
    """((i, dim reduced H_{i-1}), ...) for the complex whose face masks are set in ``pattern``."""
    present = np.unpackbits(np.frombuffer(pattern, dtype=np.uint8), count=1 << n).astype(bool)
    faces = np.flatnonzero(present)
    by_size = {}
    for f in faces:
        by_size.setdefault(int(f).bit_count(), []).append(int(f))
    index_by_size = {s: {f: k for k, f in enumerate(v)} for s, v in by_size.items()}
    top = max(by_size)
    ranks = {s: _boundary_rank(by_size, index_by_size, s, field_char) for s in range(1, top + 1)}
    out = []
    for s, fs in sorted(by_size.items()):
        h = len(fs) - ranks.get(s, 0) - ranks.get(s + 1, 0)
        if h:
            out.append((s, h))
    return tuple(out)


def _koszul_fine(I: MonomialIdeal, field_char: int) -> dict:
    G = I.gens_array()
    n = I.ring.n
    shape = tuple(int(e) + 1 for e in G.max(axis=0))
    cells = math.prod(shape) << n
    if cells > KOSZUL_CELL_CAP:
        raise CapacityError(f"Koszul slicing needs {cells} cells (cap {KOSZUL_CELL_CAP})", size=cells)
    member = np.zeros(shape, dtype=bool)
    member[tuple(G.T)] = True
    for ax in range(n):
        member = np.logical_or.accumulate(member, axis=ax)
    # faces[F][mu] is True iff mu - F lies in I
    faces = np.zeros((1 << n,) + shape, dtype=bool)
    for F in range(1 << n):
        dst, src = [], []
        for j in range(n):
            if F >> j & 1:
                dst.append(slice(1, None))
                src.append(slice(None, -1))
            else:
                dst.append(slice(None))
                src.append(slice(None))
        faces[(F,) + tuple(dst)] = member[tuple(src)]
    # cones are acyclic: keep only mu whose complex is a cone over no vertex
    cand = member.copy()
    for j in range(n):
        bit = 1 << j
        lo = [F for F in range(1 << n) if not F & bit]
        hi = [F | bit for F in lo]
        cand &= (faces[lo] & ~faces[hi]).any(axis=0)
    mus = np.argwhere(cand)
    if not len(mus):
        return {}
    patterns = np.packbits(faces[:, cand].T, axis=1)
    uniq, inverse = np.unique(patterns, axis=0, return_inverse=True)
    homology = [_koszul_homology(n, u.tobytes(), field_char) for u in uniq]
    entries = {}
    for mu, k in zip(mus, inverse.reshape(-1)):
        for i, h in homology[k]:
            entries[(i, tuple(int(e) for e in mu))] = h
    return entries


@lru_cache(maxsize=4096)
def _fine_entries(I: MonomialIdeal, field_char: int, method: str, subset_cap: int) -> tuple:
    if I.is_zero:
        return ()
    if method == "auto":
        method = "taylor" if len(I.gens) <= min(AUTO_TAYLOR_LIMIT, subset_cap) else "koszul"
    if method == "taylor":
        entries = _taylor_fine(I, field_char, subset_cap)
    elif method == "koszul":
        entries = _koszul_fine(I, field_char)
    else:
        raise ValueError(f"unknown method {method!r}")
    return tuple(sorted(entries.items()))


def taylor_betti(I: MonomialIdeal, field_char: int = DEFAULT_PRIME, method: str = "auto",
                 subset_cap: int = SUBSET_CAP) -> BettiTable:
    """Fine-graded Betti table of I over GF(field_char), or over Q when ``field_char == 0``.

    ``method`` is ``"taylor"``, ``"koszul"`` or ``"auto"`` (Taylor for small
    generator counts, Koszul otherwise).  The Taylor route raises
    :class:`CapacityError` above ``subset_cap`` generators.
    """
    return BettiTable("fine", dict(_fine_entries(I, field_char, method, subset_cap)), I.ring.blocks)


def betti_table(I: MonomialIdeal, grading: str = "total", field_char: int = DEFAULT_PRIME,
                method: str = "auto") -> BettiTable:
    return coarsen(taylor_betti(I, field_char, method), grading, I.ring.blocks)


def euler_characteristic_by_subsets(I: MonomialIdeal) -> dict:
    """sum_S (-1)^{|S|-1} over nonempty generator subsets with lcm(S) = mu, keyed by mu."""
    out = {}
    gens = I.gens
    for size in range(1, len(gens) + 1):
        sign = 1 if size % 2 else -1
        for S in itertools.combinations(gens, size):
            mu = tuple(max(col) for col in zip(*S))
            out[mu] = out.get(mu, 0) + sign
    return {k: v for k, v in out.items() if v}


# -- linearity decisions -----------------------------------------------------

def has_linear_resolution(I: MonomialIdeal, field_char: int = DEFAULT_PRIME) -> bool:
    if I.is_zero:
        raise PreconditionError("the zero ideal has no resolution to test")
    if not I.is_equigenerated:
        return False
    d = I.min_gen_degree
    table = betti_table(I, "total", field_char)
    return all(j == i + d for i, j in table.entries)


@dataclass
class CWLReport:
    verdict: bool
    regularity: int
    degrees: dict = field(default_factory=dict)
    failing_degree: int | None = None

    def __bool__(self):
        return self.verdict


def is_componentwise_linear(I: MonomialIdeal, field_char: int = DEFAULT_PRIME) -> CWLReport:
    """Test (I_d) for d from the least generator degree through reg(I).

    Components above the regularity always have linear resolutions, so the
    finite range is decisive.
    """
    if I.is_zero:
        raise PreconditionError("componentwise linearity of the zero ideal is not tested")
    reg = betti_table(I, "total", field_char).regularity
    report = CWLReport(True, reg)
    for d in range(I.min_gen_degree, reg + 1):
        try:
            ok = has_linear_resolution(degree_component(I, d), field_char)
        except CapacityError as exc:
            raise CapacityError(f"degree {d} component: {exc}", size=exc.size, degree=d) from exc
        report.degrees[d] = ok
        if not ok:
            report.verdict = False
            report.failing_degree = d
            break
    return report


# -- Hilbert series and multiplicity ------------------------------------------

def _poly_add(p, q):
    out = [0] * max(len(p), len(q))
    for k, c in enumerate(p):
        out[k] += c
    for k, c in enumerate(q):
        out[k] += c
    return _trim(out)


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return _trim(out)


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def hilbert_numerator_inclusion_exclusion(I: MonomialIdeal, subset_cap: int = SUBSET_CAP) -> list:
    """K(t) = sum over generator subsets S of (-1)^|S| t^deg(lcm S)."""
    G = I.gens_array()
    m = len(G)
    if m > subset_cap:
        raise CapacityError(f"{m} generators exceed the subset cap {subset_cap}", size=m)
    L = np.zeros((1 << m, I.ring.n), dtype=np.int64)
    sign = np.ones(1 << m, dtype=np.int64)
    for b in range(m):
        L[1 << b: 1 << (b + 1)] = np.maximum(L[: 1 << b], G[b])
        sign[1 << b: 1 << (b + 1)] = -sign[: 1 << b]
    degs = L.sum(axis=1)
    coeffs = np.zeros(int(degs.max()) + 1, dtype=np.int64)
    np.add.at(coeffs, degs, sign)
    return _trim(int(c) for c in coeffs)


@lru_cache(maxsize=100_000)
def _hilbert_pivot(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    n = len(gens[0])
    counts = [sum(1 for g in gens if g[j]) for j in range(n)]
    j = max(range(n), key=lambda k: counts[k])
    if counts[j] <= 1:
        out = [1]
        for g in gens:
            out = _poly_mul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return tuple(out)
    x = tuple(1 if k == j else 0 for k in range(n))
    plus = minimalize([g for g in gens if not g[j]] + [x], n)
    colon = minimalize([tuple(max(e - (k == j), 0) for k, e in enumerate(g)) for g in gens], n)
    # K(I) = K(I + (x)) + t * K(I : x)
    return tuple(_poly_add(list(_hilbert_pivot(plus)), [0] + list(_hilbert_pivot(colon))))


def hilbert_numerator_recursive(I: MonomialIdeal) -> list:
    """K(t) by pivoting on the variable shared by the most generators."""
    return _trim(_hilbert_pivot(I.gens))


def hilbert_numerator(I: MonomialIdeal, method: str = "recursion") -> list:
    """Coefficients of K(t), where HS(R/I) = K(t) / (1 - t)^n."""
    if method == "recursion":
        return hilbert_numerator_recursive(I)
    if method == "inclusion_exclusion":
        return hilbert_numerator_inclusion_exclusion(I)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class HilbertSummary:
    numerator: tuple
    codim: int
    multiplicity: int


def divide_by_one_minus_t(p: list) -> list:
    """Exact quotient of p by (1 - t); raises if (1 - t) does not divide p."""
    q, acc = [], 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    if acc + p[-1] != 0:
        raise ArithmeticError("(1 - t) does not divide the numerator")
    return q or [0]


def multiplicity(I: MonomialIdeal) -> HilbertSummary:
    if I.is_zero or I.is_unit:
        raise PreconditionError("multiplicity needs a proper nonzero ideal")
    c = support_codim(I)
    K = hilbert_numerator(I)
    Q = K
    for _ in range(c):
        Q = divide_by_one_minus_t(Q)
    e = sum(Q)
    if e <= 0:
        raise ArithmeticError(f"nonpositive multiplicity {e}")
    return HilbertSummary(tuple(K), c, e)


@dataclass(frozen=True)
class MultiplicityBound:
    e: int
    c: int
    max_shifts: tuple
    bound: Fraction
    holds: bool


def multiplicity_upper_bound_check(I: MonomialIdeal, field_char: int = DEFAULT_PRIME) -> MultiplicityBound:
    """Compare e(R/I) with prod(M_1..M_c) / c!, M_i the largest shift in step i of R/I."""
    summary = multiplicity(I)
    c = summary.codim
    table = betti_table(I, "total", field_char)
    if table.pdim + 1 < c:
        raise PreconditionError("projective dimension below codimension")
    shifts = tuple(table.max_shift(i - 1) for i in range(1, c + 1))
    bound = Fraction(math.prod(shifts), math.factorial(c))
    return MultiplicityBound(summary.multiplicity, c, shifts, bound, summary.multiplicity <= bound)


def quotient_pdim(I: MonomialIdeal, field_char: int = DEFAULT_PRIME) -> int:
    """Projective dimension of R/I."""
    return betti_table(I, "total", field_char).pdim + 1
