"""Closed-form Betti numbers for Veronese intersections and the U + V splitting behind them."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .betti import BettiTable
from .errors import PreconditionError
from .linalg import DEFAULT_PRIME
from .oracle import betti_table
from .ring import (
    MonomialIdeal,
    RingCtx,
    ideal_sum,
    intersect,
    multiply,
    veronese_power,
)


def binom(n: int, k: int) -> int:
    """Binomial coefficient with C(n, 0) = 1 for every n and 0 whenever k < 0 or 0 <= n < k.

    For n < 0 < k the value is taken to be 0.
    """
    if k < 0:
        return 0
    if k == 0:
        return 1
    if n < 0:
        return 0
    return math.comb(n, k)


def _table(rows: dict) -> BettiTable:
    return BettiTable("total", rows)


def betti_power_formula(J_size: int, a: int) -> BettiTable:
    """Betti numbers of m_J^a: beta_{i,i+a} = C(a+|J|-1, a+i) C(a+i-1, i)."""
    if J_size < 1 or a < 1:
        raise PreconditionError("need |J| >= 1 and a >= 1")
    return _table({(i, i + a): binom(a + J_size - 1, a + i) * binom(a + i - 1, i)
                   for i in range(J_size)})


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def betti_disjoint_product_formula(sizes, powers) -> BettiTable:
    """Betti numbers of m_{J_1}^{a_1} ... m_{J_s}^{a_s} for pairwise disjoint J_i.

    The table is the convolution of the single-power tables; it is linear in
    degree a_1 + ... + a_s.
    """
    sizes, powers = list(sizes), list(powers)
    if len(sizes) != len(powers) or not sizes:
        raise PreconditionError("sizes and powers must be nonempty and of equal length")
    if min(sizes) < 1 or min(powers) < 1:
        raise PreconditionError("sizes and powers must be positive")
    a = sum(powers)
    rows = {}
    for i in range(sum(sizes)):
        total = 0
        for parts in _compositions(i, len(sizes)):
            term = 1
            for size, p, ij in zip(sizes, powers, parts):
                term *= binom(p + size - 1, p + ij) * binom(p + ij - 1, ij)
                if not term:
                    break
            total += term
        rows[(i, i + a)] = total
    return _table(rows)


def betti_U_formula(A_size: int, C_size: int, a: int, b: int) -> BettiTable:
    """Betti numbers of U = m_C^a + m_A m_C^{a-1} + ... + m_A^{a-b} m_C^b."""
    if A_size < 1 or C_size < 1 or not a >= b >= 1:
        raise PreconditionError("need |A|, |C| >= 1 and a >= b >= 1")
    rows = {}
    for i in range(A_size + C_size):
        value = binom(C_size + a - 1, a + i) * binom(a + i - 1, i)
        for j in range(1, a - b + 1):
            for k in range(A_size):
                value += (binom(k + j - 1, j - 1) * binom(C_size + a - j - 1, a - j)
                          * binom(C_size + k, i))
        rows[(i, i + a)] = value
    return _table(rows)


def _five_binomial_row(A_size, B_size, C_size, a, b, i):
    total = 0
    for i1, i2, i3 in _compositions(i, 3):
        total += (binom(B_size, 1 + i1)
                  * binom(A_size + a - b, a - b + 1 + i2) * binom(a - b + i2, i2)
                  * binom(C_size + b - 2, b - 1 + i3) * binom(b + i3 - 2, i3))
    return total


def betti_V_formula(A_size: int, B_size: int, C_size: int, a: int, b: int) -> BettiTable:
    """Betti numbers of V = m_B m_A^{a-b+1} m_C^{b-1} + ... + m_B^b m_A^a.

    Row a+1 is a five-binomial convolution and rows a+j (2 <= j <= b) are
    double sums.  With b = 1, V is the product m_B m_A^a of disjoint
    Veronese ideals and its table comes straight from the product formula.
    """
    if min(A_size, B_size, C_size) < 1 or not a >= b >= 1:
        raise PreconditionError("need |A|, |B|, |C| >= 1 and a >= b >= 1")
    if b == 1:
        return betti_disjoint_product_formula([B_size, A_size], [1, a])
    top = A_size + B_size + C_size
    rows = {(i, i + a + 1): _five_binomial_row(A_size, B_size, C_size, a, b, i)
            for i in range(top)}
    for j in range(2, b + 1):
        for i in range(top):
            value = 0
            for k1 in range(A_size):
                for k2 in range(B_size):
                    value += (binom(C_size + b - j - 1, b - j)
                              * binom(k1 + a - b + j - 1, a - b + j - 1)
                              * binom(k2 + j - 1, j - 1)
                              * binom(C_size + k1 + k2, i))
            rows[(i, i + a + j)] = value
    return _table(rows)


# -- two Veronese ideals -----------------------------------------------------------

CASE_TAGS = ("disjoint", "J_inside_K", "K_inside_J", "general")


@dataclass(frozen=True)
class TwoVeroneseCase:
    """m_J^a cap m_K^b normalized so that a >= b, with A = J - K, B = K - J, C = J & K."""

    tag: str
    J: frozenset
    K: frozenset
    a: int
    b: int

    @property
    def A(self) -> frozenset:
        return self.J - self.K

    @property
    def B(self) -> frozenset:
        return self.K - self.J

    @property
    def C(self) -> frozenset:
        return self.J & self.K


def classify_two_veronese(J, K, a: int, b: int) -> TwoVeroneseCase:
    J, K = frozenset(J), frozenset(K)
    if not J or not K:
        raise PreconditionError("supports must be nonempty")
    if a < 1 or b < 1:
        raise PreconditionError("powers must be positive")
    if a < b:
        J, K, a, b = K, J, b, a
    if not J & K:
        tag = "disjoint"
    elif J <= K:
        tag = "J_inside_K"
    elif K <= J:
        tag = "K_inside_J"
    else:
        tag = "general"
    return TwoVeroneseCase(tag, J, K, a, b)


def overlap_table(A_size: int, B_size: int, C_size: int, a: int, b: int) -> BettiTable:
    """Table of U cap V = m_B m_A^{a-b+1} m_C^b."""
    return betti_disjoint_product_formula([B_size, A_size, C_size], [1, a - b + 1, b])


def resolution_rows(A_size: int, B_size: int, C_size: int, a: int, b: int) -> dict:
    """Rows a, a+1, ..., a+b of the general-case table, keyed by row offset j - i.

    Row a is U's, row a+1 is V's first row plus the overlap shifted one step,
    and the remaining rows are V's.
    """
    U = betti_U_formula(A_size, C_size, a, b)
    V = betti_V_formula(A_size, B_size, C_size, a, b)
    W = overlap_table(A_size, B_size, C_size, a, b).shifted(1)

    def row(t, r):
        return {(i, d): v for (i, d), v in t.entries.items() if d - i == r}

    out = {a: row(U, a), a + 1: {**row(V, a + 1)}}
    for k, v in row(W, a + 1).items():
        out[a + 1][k] = out[a + 1].get(k, 0) + v
    for j in range(2, b + 1):
        out[a + j] = row(V, a + j)
    return out


def betti_two_veronese(J, K, a: int, b: int) -> BettiTable:
    """Total-graded Betti table of m_J^a cap m_K^b by the closed forms."""
    case = classify_two_veronese(J, K, a, b)
    a, b = case.a, case.b
    if case.tag == "disjoint":
        return betti_disjoint_product_formula([len(case.J), len(case.K)], [a, b])
    if case.tag == "J_inside_K":
        return betti_power_formula(len(case.J), a)
    if case.tag == "K_inside_J":
        return betti_U_formula(len(case.A), len(case.C), a, b)
    rows = resolution_rows(len(case.A), len(case.B), len(case.C), a, b)
    return _table({k: v for r in rows.values() for k, v in r.items()})


def betti_two_fat_points(blocks, a: int, b: int) -> BettiTable:
    """Total-graded table of two fat points of multiplicities a >= b in general position.

    ``blocks`` are the projective dimensions n_1..n_r; with N their sum the
    ideal is a general-case intersection with |A| = |B| = r and |C| = N - r.
    """
    blocks = list(blocks)
    if not blocks or min(blocks) < 1:
        raise PreconditionError("every block dimension must be at least 1")
    if a < b:
        a, b = b, a
    if b < 1:
        raise PreconditionError("multiplicities must be positive")
    r = len(blocks)
    c = sum(blocks) - r
    top = 2 * r + c
    rows = {}
    for i in range(top):
        value = binom(c + a - 1, a + i) * binom(a + i - 1, i)
        for j in range(1, a - b + 1):
            for k in range(r):
                value += binom(k + j - 1, j - 1) * binom(c + a - j - 1, a - j) * binom(c + k, i)
        rows[(i, i + a)] = value

        value = _five_binomial_row(r, r, c, a, b, i)
        for i1, i2, i3 in _compositions(i - 1, 3) if i >= 1 else ():
            value += (binom(r, 1 + i1)
                      * binom(r + a - b, a - b + 1 + i2) * binom(a - b + i2, i2)
                      * binom(c + b - 1, b + i3) * binom(b + i3 - 1, i3))
        rows[(i, i + a + 1)] = value

        for j in range(2, b + 1):
            value = 0
            for k1 in range(r):
                for k2 in range(r):
                    value += (binom(c + b - j - 1, b - j)
                              * binom(k1 + a - b + j - 1, a - b + j - 1)
                              * binom(k2 + j - 1, j - 1)
                              * binom(c + k1 + k2, i))
            rows[(i, i + a + j)] = value
    return _table(rows)


# -- the splitting -------------------------------------------------------------------

@dataclass
class SplitPair:
    """I = U + V together with the map w -> (phi(w), psi(w)) on G(U cap V)."""

    U: MonomialIdeal
    V: MonomialIdeal
    phi_psi: dict = field(default_factory=dict)

    @property
    def overlap(self) -> MonomialIdeal:
        return intersect(self.U, self.V)


def _product(ring: RingCtx, factors) -> MonomialIdeal:
    """Product of m_S^p over (S, p) pairs with p >= 0."""
    unit = MonomialIdeal(ring, (ring.one(),))
    return reduce(multiply, [veronese_power(ring, S, p) for S, p in factors if p > 0], unit)


def _drop_last(m, block):
    """Divide m by its variable of largest ring index among ``block`` (0-based positions)."""
    k = max(j for j in block if m[j] > 0)
    out = list(m)
    out[k] -= 1
    return tuple(out)


def build_UV_split(ring: RingCtx, J, K, a: int, b: int) -> SplitPair:
    """The splitting of m_J^a cap m_K^b (general case) into U and V.

    For w = y * m1 * m2 with y in B, m1 supported on A and m2 on C:
    phi(w) = (m1 / x_max) m2 and psi(w) = y m1 (m2 / z_max), where max is the
    largest ring index present in the respective factor.
    """
    case = classify_two_veronese(J, K, a, b)
    if case.tag != "general":
        raise PreconditionError(f"splitting needs A, B and C all nonempty (got {case.tag})")
    a, b = case.a, case.b
    A, B, C = case.A, case.B, case.C
    U = reduce(ideal_sum, [_product(ring, [(A, t), (C, a - t)]) for t in range(a - b + 1)])
    V = reduce(ideal_sum, [_product(ring, [(B, l), (A, a - b + l), (C, b - l)])
                           for l in range(1, b + 1)])
    W = intersect(U, V)
    expected = _product(ring, [(B, 1), (A, a - b + 1), (C, b)])
    if W != expected:
        raise AssertionError("U cap V differs from m_B m_A^(a-b+1) m_C^b")
    a_pos = sorted(j - 1 for j in A)
    c_pos = sorted(j - 1 for j in C)
    b_pos = {j - 1 for j in B}
    phi_psi = {}
    for w in W.gens:
        without_y = tuple(0 if k in b_pos else e for k, e in enumerate(w))
        phi_psi[w] = (_drop_last(without_y, a_pos), _drop_last(w, c_pos))
    return SplitPair(U, V, phi_psi)


@dataclass
class SplitReport:
    verdict: bool
    failed_condition: str | None = None
    method: str = "subsets"
    detail: str = ""

    def __bool__(self):
        return self.verdict


def _lcm_closure_failures(W: np.ndarray, images: np.ndarray) -> bool:
    """True if some subset S of W has lcm(images of S) == lcm(S).

    Such an S exists iff it exists among the sets S_mu = {w : w | mu} for mu in
    the lcm lattice of W, and every lattice element divides lcm(W), so the
    search runs over that divisor box.
    """
    top = W.max(axis=0)
    axes = [np.arange(e + 1) for e in top]
    box = np.array(list(itertools.product(*axes)), dtype=np.int64)
    for start in range(0, len(box), 4096):
        mus = box[start:start + 4096]
        below = (W[None, :, :] <= mus[:, None, :]).all(axis=2)          # [mu, w]
        has = below.any(axis=1)
        masked = np.where(below[:, :, None], W[None, :, :], 0)
        closed = (masked.max(axis=1) == mus).all(axis=1) & has
        img = np.where(below[:, :, None], images[None, :, :], 0).max(axis=1)
        if ((img == mus).all(axis=1) & closed).any():
            return True
    return False


def verify_splitting(I: MonomialIdeal, pair: SplitPair, split_cap: int = 16) -> SplitReport:
    """Check the three splitting conditions for I = U + V.

    Condition (iii) runs over all nonempty subsets of G(U cap V) when there are
    at most ``split_cap`` of them, and otherwise over the lcm lattice, which is
    an equivalent and still exhaustive test.
    """
    gu, gv = set(pair.U.gens), set(pair.V.gens)
    if gu & gv or gu | gv != set(I.gens):
        return SplitReport(False, "i", detail="G(I) is not the disjoint union of G(U) and G(V)")
    W = pair.overlap.gens
    if set(pair.phi_psi) != set(W):
        return SplitReport(False, "ii", detail="map is not defined exactly on G(U cap V)")
    for w in W:
        phi, psi = pair.phi_psi[w]
        if phi not in gu or psi not in gv or tuple(map(max, phi, psi)) != w:
            return SplitReport(False, "ii", detail=f"lcm(phi(w), psi(w)) != w for w = {w}")
    if not W:
        return SplitReport(True)
    if len(W) <= split_cap:
        for size in range(1, len(W) + 1):
            for S in itertools.combinations(W, size):
                mu = tuple(map(max, *S)) if size > 1 else S[0]
                for side in (0, 1):
                    imgs = [pair.phi_psi[w][side] for w in S]
                    if (tuple(map(max, *imgs)) if size > 1 else imgs[0]) == mu:
                        return SplitReport(False, "iii", detail=f"subset {S}")
        return SplitReport(True, method="subsets")
    arr = np.array(W, dtype=np.int64)
    for side in (0, 1):
        images = np.array([pair.phi_psi[w][side] for w in W], dtype=np.int64)
        if _lcm_closure_failures(arr, images):
            return SplitReport(False, "iii", method="lcm-lattice")
    return SplitReport(True, method="lcm-lattice")


def ekf_identity_check(I: MonomialIdeal, pair: SplitPair, field_char: int = DEFAULT_PRIME) -> bool:
    """beta(I) == beta(U) + beta(V) + beta(U cap V) shifted one step, over total grading."""
    if pair.U.is_zero or pair.V.is_zero:
        raise PreconditionError("both parts of a splitting must be nonzero")
    lhs = betti_table(I, "total", field_char)
    rhs = (betti_table(pair.U, "total", field_char) + betti_table(pair.V, "total", field_char)
           + betti_table(pair.overlap, "total", field_char).shifted(1))
    return lhs == rhs
