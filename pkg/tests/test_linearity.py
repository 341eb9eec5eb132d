import itertools
import random

import pytest
from hypothesis import given, strategies as st

from veronese import (
    DegreeMismatchError,
    InvalidOrderError,
    MonomialIdeal,
    OrderDirection,
    RingCtx,
    VeroneseSpec,
    compare,
    degree_component,
    is_componentwise_linear,
    is_polymatroidal,
    linear_quotients_in_order,
    linear_quotients_status,
    paper_order_three_veronese,
    paper_order_two_veronese,
    search_linear_quotients,
    sort_monomials,
    veronese_ideal,
)
from veronese.linearity import exchange_witness, replay_witness
from veronese.ring import intersect, veronese_power

from conftest import monomial_ideals

DESC, ASC, LEX = OrderDirection.DESCENDING_REVLEX, OrderDirection.ASCENDING_REVLEX, OrderDirection.DESCENDING_LEX
R2, R3, R4, R5, R6 = (RingCtx.standard(n) for n in (2, 3, 4, 5, 6))


def ideal(ring, *texts):
    return MonomialIdeal.from_strings(ring, texts)


def veronese(ring, *comps):
    return veronese_ideal(VeroneseSpec(ring, tuple((frozenset(J), a) for J, a in comps)))


class TestCompare:
    def test_last_variable_light_wins(self):
        assert compare(R3.parse("x1*x2"), R3.parse("x3^2"), DESC) == 1
        assert compare(R3.parse("x3^2"), R3.parse("x1*x2"), DESC) == -1

    def test_equal(self):
        m = R3.parse("x1*x3")
        assert compare(m, m, DESC) == compare(m, m, LEX) == 0

    def test_sorting(self):
        gens = [R2.parse(t) for t in ("x2^2", "x1^2", "x1*x2")]
        assert sort_monomials(gens, DESC) == [(2, 0), (1, 1), (0, 2)]
        assert sort_monomials(gens, ASC) == [(0, 2), (1, 1), (2, 0)]

    def test_revlex_and_lex_differ(self):
        a, b = R3.parse("x1*x3"), R3.parse("x2^2")
        assert compare(a, b, LEX) == 1
        assert compare(a, b, DESC) == -1

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            compare((1, 0), (1, 1), DESC)

    @given(st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=2, max_size=6, unique_by=tuple))
    def test_revlex_is_a_strict_total_order(self, exps):
        ms = [tuple(e) for e in exps]
        d = max(map(sum, ms))
        ms = [m[:2] + (m[2] + d - sum(m),) for m in ms]
        ms = list(dict.fromkeys(ms))
        for a, b in itertools.combinations(ms, 2):
            assert compare(a, b, DESC) == -compare(b, a, DESC) != 0
        for a, b, c in itertools.permutations(ms, 3):
            if compare(a, b, DESC) > 0 and compare(b, c, DESC) > 0:
                assert compare(a, c, DESC) > 0


class TestLinearQuotients:
    def test_square_of_two_variables(self):
        cert = linear_quotients_in_order([(2, 0), (1, 1), (0, 2)])
        assert cert.verdict
        assert cert.colon_gens_per_step == [[(1, 0)], [(1, 0)]]

    def test_complete_intersection_fails(self):
        cert = linear_quotients_in_order([R4.parse("x1*x3"), R4.parse("x2*x4")])
        assert not cert.verdict and cert.failing_index == 2
        assert cert.colon_gens_per_step == [[R4.parse("x1*x3")]]

    def test_single_generator(self):
        assert linear_quotients_in_order([(1, 2)]).verdict

    def test_decreasing_degrees_rejected(self):
        with pytest.raises(InvalidOrderError):
            linear_quotients_in_order([(2, 0), (1, 0)])

    def test_search_examples(self):
        cert = search_linear_quotients(veronese_power(R2, {1, 2}, 2))
        assert cert.ordered_gens == sort_monomials(cert.ordered_gens, DESC)
        assert search_linear_quotients(ideal(R4, "x1*x3", "x2*x4")) is None
        assert linear_quotients_status(ideal(R4, "x1*x3", "x2*x4"))[0] == "none"
        assert search_linear_quotients(ideal(R4, "x1*x2^3")).verdict

    def test_undetermined_above_cap(self):
        I = ideal(R6, *[f"x{i}*x{i + 3}" for i in (1, 2, 3)])
        assert linear_quotients_status(I, exhaustive_cap=2)[0] == "undetermined"
        assert linear_quotients_status(I)[0] == "none"

    @given(monomial_ideals(max_gens=4))
    def test_certificate_implies_cwl(self, I):
        cert = search_linear_quotients(I)
        if cert is not None:
            assert is_componentwise_linear(I)

    @given(monomial_ideals(max_gens=6))
    def test_certificate_colons_are_variables(self, I):
        cert = search_linear_quotients(I)
        if cert is not None:
            assert sorted(cert.ordered_gens) == sorted(I.gens)
            assert all(sum(c) == 1 for step in cert.colon_gens_per_step for c in step)


class TestPolymatroidal:
    def test_non_polymatroidal_component(self):
        I3 = degree_component(veronese(R5, ({1, 2, 3}, 2), ({2, 3, 5}, 2)), 3)
        rep = is_polymatroidal(I3)
        assert not rep.verdict
        assert replay_witness(I3, rep.witness)
        w = exchange_witness(I3, R5.parse("x3^2*x4"), R5.parse("x1*x3*x5"), 3)
        assert w is not None and replay_witness(I3, w)
        assert [j for j, _ in w.tried] == [1, 5]

    def test_exchange_succeeds_somewhere(self):
        I = veronese_power(R3, {1, 2, 3}, 2)
        assert exchange_witness(I, R3.parse("x1^2"), R3.parse("x2^2"), 1) is None

    @pytest.mark.parametrize("r, a", [(1, 1), (2, 3), (3, 2), (4, 2)])
    def test_powers_of_variable_ideals(self, r, a):
        assert is_polymatroidal(veronese_power(RingCtx.standard(r), range(1, r + 1), a))

    def test_components_of_three_pairwise_covering_sets(self):
        I = veronese(R6, ({1, 2, 4, 6}, 3), ({1, 3, 5, 6}, 4), ({2, 3, 4, 5, 6}, 2))
        for d in range(I.min_gen_degree, I.min_gen_degree + 3):
            assert is_polymatroidal(degree_component(I, d))

    def test_mixed_degrees(self):
        rep = is_polymatroidal(ideal(R2, "x1", "x2^2"))
        assert not rep and rep.witness is None

    @given(monomial_ideals(max_n=4, max_gens=6))
    def test_polymatroidal_means_revlex_quotients(self, I):
        if is_polymatroidal(I):
            assert linear_quotients_in_order(sort_monomials(I.gens, DESC)).verdict
            assert linear_quotients_in_order(sort_monomials(I.gens, ASC)).verdict

    @given(monomial_ideals(max_n=4, max_gens=6))
    def test_witnesses_replay(self, I):
        rep = is_polymatroidal(I)
        if rep.witness is not None:
            assert replay_witness(I, rep.witness)


class TestPrescribedOrders:
    def test_two_sets_example(self):
        order = paper_order_two_veronese(R5, {1, 2, 3}, {2, 3, 5}, 2, 2, 1)
        I = intersect(veronese_power(R5, {1, 2, 3}, 2), veronese_power(R5, {2, 3, 5}, 2))
        assert sorted(order) == sorted(degree_component(I, I.min_gen_degree + 1).gens)
        assert linear_quotients_in_order(order).verdict
        # generators free of x4 come first
        first_with_x4 = next(k for k, m in enumerate(order) if m[3])
        assert all(m[3] == 0 for m in order[:first_with_x4])
        assert all(m[3] > 0 for m in order[first_with_x4:])

    def test_full_union_is_ascending_revlex(self):
        order = paper_order_two_veronese(R4, {1, 2, 3}, {2, 3, 4}, 2, 1, 1)
        assert order == sort_monomials(order, ASC)

    def test_degree_zero_offset(self):
        order = paper_order_two_veronese(R5, {1, 2}, {2, 3}, 1, 1, 0)
        assert order == sort_monomials(order, ASC)
        I = intersect(veronese_power(R5, {1, 2}, 1), veronese_power(R5, {2, 3}, 1))
        assert order == list(degree_component(I, I.min_gen_degree).gens) == [R5.var(2)]

    def test_negative_offset_is_empty(self):
        assert paper_order_two_veronese(R3, {1}, {2}, 1, 1, -1) == []

    @pytest.mark.parametrize("d", [0, 1, 2])
    def test_three_sets_example(self, d):
        order = paper_order_three_veronese(R6, {1, 4, 5}, {1, 2, 6}, {1, 3, 5}, 1, 1, 1, d)
        assert linear_quotients_in_order(order).verdict

    def test_pairwise_covering_sets_give_ascending_revlex(self):
        order = paper_order_three_veronese(R4, {1, 2, 3}, {2, 3, 4}, {1, 3, 4}, 1, 2, 1, 1)
        assert order == sort_monomials(order, ASC)
        assert linear_quotients_in_order(order).verdict

    def test_duplicate_sets_reduce_to_two(self):
        three = paper_order_three_veronese(R5, {1, 2}, {1, 2}, {2, 3, 4}, 1, 2, 1, 1)
        two = paper_order_two_veronese(R5, {1, 2}, {2, 3, 4}, 2, 1, 1)
        assert three == two

    def test_random_orders_pass(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(2, 6)
            R = RingCtx.standard(n)
            sets = [set(rng.sample(range(1, n + 1), rng.randint(1, n))) for _ in range(3)]
            powers = [rng.randint(1, 3) for _ in range(3)]
            for d in range(3):
                assert linear_quotients_in_order(
                    paper_order_two_veronese(R, sets[0], sets[1], *powers[:2], d)).verdict
                assert linear_quotients_in_order(
                    paper_order_three_veronese(R, *sets, *powers, d)).verdict
