"""Named ideals shared by the acceptance suite."""
from veronese import (
    FatPointScheme,
    MonomialIdeal,
    RingCtx,
    SimplicialComplexSpec,
    VeroneseSpec,
    alexander_dual,
    degree_component,
    fat_points_ideal,
    non_general_fixture,
    stanley_reisner_ideal,
    veronese_ideal,
)


def veronese(n, *comps):
    return veronese_ideal(VeroneseSpec(RingCtx.standard(n), tuple((frozenset(J), a) for J, a in comps)))


EXAMPLE_COMPLEX = SimplicialComplexSpec(6, ({1, 4, 5}, {1, 2, 6}, {1, 3, 5}))
THREE_LINEAR = veronese(5, ({1, 2, 3}, 1), ({1, 4, 5}, 1), ({2, 3, 5}, 1))
TWO_MIXED = veronese(5, ({1, 2}, 3), ({2, 3, 4, 5}, 2))
FOUR_CYCLE = veronese(4, ({1, 2}, 1), ({2, 3}, 1), ({3, 4}, 1), ({1, 4}, 1))
NOT_POLYMATROIDAL = veronese(5, ({1, 2, 3}, 2), ({2, 3, 5}, 2))


def four_cycle_extension(powers):
    """The four-cycle intersection further cut by (x5)^{a5} ... (x_s)^{a_s}."""
    n = 4 + len(powers)
    comps = [({1, 2}, 1), ({2, 3}, 1), ({3, 4}, 1), ({1, 4}, 1)]
    comps += [({5 + k}, a) for k, a in enumerate(powers)]
    return veronese(n, *comps)


def fixtures() -> dict:
    sr = stanley_reisner_ideal(EXAMPLE_COMPLEX)
    return {
        "three linear components": THREE_LINEAR,
        "two components, mixed degrees": TWO_MIXED,
        "four-cycle": FOUR_CYCLE,
        "four-cycle times x5^2 x6": four_cycle_extension([2, 1]),
        "non-polymatroidal pair": NOT_POLYMATROIDAL,
        "degree-3 part of the non-polymatroidal pair": degree_component(NOT_POLYMATROIDAL, 3),
        "four points in P1 x P1": non_general_fixture(),
        "Stanley-Reisner ideal of the six-vertex complex": sr,
        "its Alexander dual": alexander_dual(sr),
        "two fat points in P1 x P2": fat_points_ideal(FatPointScheme.in_product([1, 2], [2, 1])),
        "three points in P2 x P2": fat_points_ideal(FatPointScheme.in_product([2, 2], [1, 2, 1])),
        "general two-set case": veronese(4, ({1, 2, 3}, 2), ({2, 3, 4}, 1)),
        "square of three variables": veronese(3, ({1, 2, 3}, 2)),
        "covering triple": veronese(5, ({1, 2, 4}, 2), ({1, 3, 5}, 1), ({2, 3, 4, 5}, 1)),
        "principal": MonomialIdeal.from_strings(RingCtx.standard(3), ["x1^2*x3"]),
    }
