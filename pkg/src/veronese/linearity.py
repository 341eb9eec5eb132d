"""Term orders, linear quotients and the polymatroidal exchange property."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cmp_to_key, reduce

import numpy as np

from .errors import DegreeMismatchError, InvalidOrderError, PreconditionError
from .ring import (
    MonomialIdeal,
    RingCtx,
    degree_component,
    intersect,
    minimalize,
    veronese_power,
)

EXHAUSTIVE_CAP = 8


class OrderDirection(enum.Enum):
    DESCENDING_REVLEX = "descending_revlex"
    ASCENDING_REVLEX = "ascending_revlex"
    DESCENDING_LEX = "descending_lex"


def compare(m1, m2, direction: OrderDirection = OrderDirection.DESCENDING_REVLEX) -> int:
    """Return 1, 0 or -1 as m1 is greater than, equal to or less than m2.

    Both revlex directions compare with the same reverse-lex order (the
    monomial lighter in the last variables is greater); they differ only in
    how :func:`sort_monomials` lists them.
    """
    if direction is OrderDirection.DESCENDING_LEX:
        for x, y in zip(m1, m2):
            if x != y:
                return 1 if x > y else -1
        return 0
    if sum(m1) != sum(m2):
        raise DegreeMismatchError("reverse-lex comparison needs equal degrees")
    for x, y in zip(reversed(m1), reversed(m2)):
        if x != y:
            return 1 if x < y else -1
    return 0


def sort_monomials(gens, direction: OrderDirection, degree_major: bool = True) -> list:
    """List ``gens`` by ascending degree, each degree in the given direction."""
    descending = direction is not OrderDirection.ASCENDING_REVLEX

    def cmp(a, b):
        if degree_major and sum(a) != sum(b):
            return -1 if sum(a) < sum(b) else 1
        c = compare(a, b, direction)
        return -c if descending else c

    return sorted(gens, key=cmp_to_key(cmp))


# -- linear quotients ------------------------------------------------------------

@dataclass
class QuotientCertificate:
    ordered_gens: list
    colon_gens_per_step: list = field(default_factory=list)
    verdict: bool = True
    failing_index: int | None = None

    def __bool__(self):
        return self.verdict


def _colon_by_variables(prefix: np.ndarray, u: np.ndarray):
    """Return the variable indices generating prefix : u, or None if it is not so generated."""
    colon = np.maximum(prefix - u, 0)
    degs = colon.sum(axis=1)
    if (degs == 0).any():
        return None
    linear = np.zeros(colon.shape[1], dtype=bool)
    linear[np.argmax(colon[degs == 1], axis=1)] = True
    if not (colon[:, linear] > 0).any(axis=1).all():
        return None
    return np.flatnonzero(linear)


def linear_quotients_in_order(gens) -> QuotientCertificate:
    """Check whether (u_1..u_{i-1}) : u_i is generated by variables for every i >= 2.

    The certificate stores the minimal colon generators of each step up to the
    first failing step (1-based ``failing_index``).
    """
    gens = [tuple(g) for g in gens]
    degs = [sum(g) for g in gens]
    if any(a > b for a, b in zip(degs, degs[1:])):
        raise InvalidOrderError("generator degrees must be nondecreasing along the order")
    cert = QuotientCertificate(gens)
    if len(gens) < 2:
        return cert
    n = len(gens[0])
    arr = np.array(gens, dtype=np.int64)
    for i in range(1, len(gens)):
        vars_ = _colon_by_variables(arr[:i], arr[i])
        if vars_ is None:
            colon = minimalize(np.maximum(arr[:i] - arr[i], 0), n)
            cert.colon_gens_per_step.append(list(colon))
            cert.verdict = False
            cert.failing_index = i + 1
            return cert
        cert.colon_gens_per_step.append(
            [tuple(1 if k == j else 0 for k in range(n)) for j in vars_])
    return cert


def _first_passing_order(gens):
    """Depth-first search over degree-respecting orders, pruning failing prefixes.

    A prefix whose last colon is not generated by variables cannot be
    completed, so this visits the same candidates as full enumeration would,
    in the same order, and returns the first passing one (or None).
    """
    arr = np.array(gens, dtype=np.int64)
    degs = arr.sum(axis=1)
    used = np.zeros(len(gens), dtype=bool)
    order = []

    def extend():
        if len(order) == len(gens):
            return True
        level = degs[~used].min()
        for k in range(len(gens)):
            if used[k] or degs[k] != level:
                continue
            if order and _colon_by_variables(arr[order], arr[k]) is None:
                continue
            used[k] = True
            order.append(k)
            if extend():
                return True
            order.pop()
            used[k] = False
        return False

    return [gens[k] for k in order] if extend() else None


def search_linear_quotients(I: MonomialIdeal, exhaustive_cap: int = EXHAUSTIVE_CAP):
    """First passing certificate among the standard orders, then (small ideals) all orders.

    Returns None when no order was found; with more than ``exhaustive_cap``
    generators that only means the search was inconclusive, see
    :func:`linear_quotients_status`.
    """
    if I.is_zero:
        raise PreconditionError("linear quotients of the zero ideal are not defined")
    for direction in OrderDirection:
        cert = linear_quotients_in_order(sort_monomials(I.gens, direction))
        if cert.verdict:
            return cert
    if len(I.gens) <= exhaustive_cap:
        order = _first_passing_order(list(I.gens))
        if order is not None:
            return linear_quotients_in_order(order)
    return None


def linear_quotients_status(I: MonomialIdeal, exhaustive_cap: int = EXHAUSTIVE_CAP):
    """("found" | "none" | "undetermined", certificate or None)."""
    cert = search_linear_quotients(I, exhaustive_cap)
    if cert is not None:
        return "found", cert
    return ("none" if len(I.gens) <= exhaustive_cap else "undetermined"), None


# -- polymatroidal exchange ----------------------------------------------------

@dataclass(frozen=True)
class ExchangeWitness:
    """A failure of the exchange property: no allowed j puts x_j u / x_i back in I.

    ``i`` and the ``j`` values in ``tried`` are 1-based variable indices;
    ``tried`` lists every candidate (j, x_j u / x_i) that was rejected.
    """

    u: tuple
    v: tuple
    i: int
    tried: tuple
    verdict: bool = False


@dataclass
class PolymatroidReport:
    verdict: bool
    reason: str = ""
    witness: ExchangeWitness | None = None

    def __bool__(self):
        return self.verdict


def exchange_candidates(I: MonomialIdeal, u, v, i: int) -> list:
    """(j, x_j u / x_i, member?) for every j with u_j < v_j; ``i`` is 1-based."""
    gens = set(I.gens)
    out = []
    for j in range(len(u)):
        if u[j] < v[j]:
            w = list(u)
            w[i - 1] -= 1
            w[j] += 1
            w = tuple(w)
            # same degree as the generators, so membership is equality with one
            out.append((j + 1, w, w in gens))
    return out


def is_polymatroidal(I: MonomialIdeal) -> PolymatroidReport:
    """Exhaustive exchange-property check over ordered generator pairs.

    The first failure in canonical (u, v, i) order is reported as witness.
    """
    if I.is_zero:
        return PolymatroidReport(True, "zero ideal")
    if not I.is_equigenerated:
        return PolymatroidReport(False, "generators are not all of one degree")
    gens = I.gens
    n = I.ring.n
    arr = np.array(gens, dtype=np.int64)
    lookup = set(gens)
    eye = np.eye(n, dtype=np.int64)
    for u_idx, u in enumerate(gens):
        # swap[i, j]: x_j u / x_i lies in I
        swap = np.zeros((n, n), dtype=bool)
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if j != i:
                        swap[i, j] = tuple(arr[u_idx] - eye[i] + eye[j]) in lookup
        diff = arr[u_idx] - arr
        below = (diff < 0).astype(np.int64)
        rescued = (below @ swap.T.astype(np.int64)) > 0  # [v, i]
        failing = (diff > 0) & ~rescued
        if failing.any():
            v_idx, i = map(int, np.argwhere(failing)[0])
            v = gens[v_idx]
            tried = tuple((j, w) for j, w, _ in exchange_candidates(I, u, v, i + 1))
            return PolymatroidReport(False, "exchange property fails",
                                     ExchangeWitness(u, v, i + 1, tried))
    return PolymatroidReport(True, "exchange property holds")


def exchange_witness(I: MonomialIdeal, u, v, i: int) -> ExchangeWitness | None:
    """The witness for (u, v, i) if the exchange fails there, else None (``i`` is 1-based)."""
    if not u[i - 1] > v[i - 1]:
        raise PreconditionError("the exchange index needs exp_u(i) > exp_v(i)")
    cands = exchange_candidates(I, u, v, i)
    if any(member for _, _, member in cands):
        return None
    return ExchangeWitness(tuple(u), tuple(v), i, tuple((j, w) for j, w, _ in cands))


def replay_witness(I: MonomialIdeal, witness: ExchangeWitness) -> bool:
    """True iff every candidate swap recorded by the witness really lies outside I."""
    u, v, i = witness.u, witness.v, witness.i
    if not u[i - 1] > v[i - 1]:
        return False
    cands = exchange_candidates(I, u, v, i)
    return not any(member for _, _, member in cands) and \
        tuple((j, w) for j, w, _ in cands) == witness.tried


# -- prescribed generator orders -------------------------------------------------

def _ascending_revlex_key(perm):
    """Sort key listing equal-degree monomials in ascending revlex after relabeling by ``perm``."""
    def key(m):
        return tuple(-m[k] for k in reversed(perm))
    return key


def _descending_revlex_key(perm):
    def key(m):
        return tuple(m[k] for k in reversed(perm))
    return key


def _stratified(gens, front, tail, descending=False):
    """Order by degree in ``tail`` variables, then revlex with ``front`` before ``tail``.

    ``front`` and ``tail`` are 0-based positions.
    """
    perm = list(front) + list(tail)
    within = _descending_revlex_key(perm) if descending else _ascending_revlex_key(perm)
    return sorted(gens, key=lambda m: (sum(m[k] for k in tail), within(m)))


def paper_order_two_veronese(ring: RingCtx, J, K, a: int, b: int, d: int) -> list:
    """Generators of ((m_J^a cap m_K^b)_{alpha+d}) in the prescribed linear-quotient order.

    With H the variables outside J and K: first the generators free of H in
    ascending revlex, then those of H-degree 1, and so on, each stratum in
    ascending revlex with the H variables placed last.
    """
    I = intersect(veronese_power(ring, J, a), veronese_power(ring, K, b))
    if d < 0:
        return []
    comp = degree_component(I, I.min_gen_degree + d)
    union = sorted({j - 1 for j in set(J) | set(K)})
    rest = [k for k in range(ring.n) if k not in union]
    return _stratified(comp.gens, union, rest)


def _three_order_full_support(gens, J, K, L, n_vars):
    """Order for three distinct sets whose union is every variable in play (0-based sets)."""
    universe = J | K | L
    pairs = [(J, K, L), (J, L, K), (K, L, J)]
    proper = next(((P, Q, T) for P, Q, T in pairs if (P | Q) != universe), None)
    if proper is None:
        front = sorted(universe)
        return _stratified(gens, front, [])
    P, Q, T = proper
    head = sorted((P | Q) - T)
    h1 = sorted(T & (P | Q))
    h2 = sorted(T - (P | Q))
    return _stratified(gens, head + h1, h2)


def paper_order_three_veronese(ring: RingCtx, J, K, L, a: int, b: int, c: int, d: int) -> list:
    """Generators of ((m_J^a cap m_K^b cap m_L^c)_{alpha+d}) in a linear-quotient order.

    ``alpha`` is the least generator degree of the triple intersection.
    Repeated sets collapse to one component with the larger power.  For three
    distinct sets, a pair P, Q whose union misses part of the third set T is
    chosen; T is moved to the end of the variable order and the generators are
    grouped by degree in T minus (P union Q), each group in ascending revlex.
    Variables outside all three sets are appended last, stratum by stratum
    in descending revlex.
    """
    comps = {}
    for S, p in ((J, a), (K, b), (L, c)):
        S = frozenset(S)
        comps[S] = max(comps.get(S, 0), p)
    I = reduce(intersect, [veronese_power(ring, S, p) for S, p in comps.items()])
    if d < 0 or I.is_zero:
        return []
    if len(comps) < 3:
        (S1, p1), (S2, p2) = (list(comps.items()) * 2)[:2]
        full = paper_order_two_veronese(ring, S1, S2, p1, p2, 0)
        base = sum(full[0]) if full else I.min_gen_degree
        return paper_order_two_veronese(ring, S1, S2, p1, p2, I.min_gen_degree + d - base)
    target = I.min_gen_degree + d
    comp = degree_component(I, target)
    sets = [frozenset(j - 1 for j in S) for S in comps]
    universe = frozenset().union(*sets)
    outside = [k for k in range(ring.n) if k not in universe]
    if not outside:
        return _three_order_full_support(comp.gens, *sets, ring.n)
    inner = [k for k in range(ring.n) if k in universe]
    strata = {}
    for m in comp.gens:
        strata.setdefault(sum(m[k] for k in outside), []).append(m)
    ordered = _three_order_full_support(strata.pop(0, []), *sets, ring.n)
    for t in sorted(strata):
        ordered.extend(sorted(strata[t], key=_descending_revlex_key(inner + outside)))
    return ordered
