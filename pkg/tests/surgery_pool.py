"""Non-contractible cycles (chorded ones included) on small surfaces, picked by the face oracle."""

from functools import lru_cache

from surfdom import generators as gen
from surfdom.topology import shortest_noncontractible_cycle

from oracles import cycle_topology, simple_cycles

POOL_SPECS = [
    ("projective_quotient", 1), ("projective_quotient", 2), ("projective_quotient", 3),
    ("torus_grid", 4, 5, 1), ("torus_grid", 5, 5, 0), ("torus_grid", 6, 4, 2), ("torus_grid", 3, 7, 0),
    ("klein_grid", 4, 5), ("klein_grid", 5, 5), ("klein_grid", 3, 6), ("klein_grid", 6, 3),
]


@lru_cache(maxsize=None)
def pool(spec, max_len=5):
    g = gen.generate(spec[0], *spec[1:])
    G = g.graph
    cycles = [c for c in simple_cycles(G, max_len) if not cycle_topology(G, c)["contractible"]]
    for key in ("generator_cycle", "meridian"):
        if key in g.landmarks:
            cycles.append(tuple(g.landmarks[key]))
    cycles.append(shortest_noncontractible_cycle(G).cyclic)
    return G, cycles


def expected_cases(orientable: bool, g: int, one_sided: bool, outs) -> set[int]:
    """Surface-case numbers consistent with the input surface and the (orientable, genus) of each output."""
    ok = set()
    if orientable:
        if len(outs) == 1 and outs[0] == (True, g - 1):
            ok.add(1)
        if len(outs) == 2 and all(o and k >= 1 for o, k in outs) and sum(k for _, k in outs) == g:
            ok.add(2)
        return ok
    if one_sided:
        if g >= 2 and outs == [(False, g - 1)]:
            ok.add(3)
        if g % 2 == 1 and outs == [(True, (g - 1) // 2)]:
            ok.add(4)
        return ok
    if len(outs) == 1:
        if g - 2 >= 1 and outs == [(False, g - 2)]:
            ok.add(5)
        if g % 2 == 0 and outs == [(True, (g - 2) // 2)]:
            ok.add(6)
        return ok
    if all(not o and k >= 1 for o, k in outs) and sum(k for _, k in outs) == g:
        ok.add(7)
    kinds = sorted(outs)
    if (kinds[0][0] is False and kinds[1][0] is True and kinds[0][1] >= 1 and kinds[1][1] >= 1
            and 2 * kinds[1][1] + kinds[0][1] == g):
        ok.add(8)
    return ok


# separating, non-contractible (two Moebius bands); found by the exhaustive search in oracles
SEPARATING = [
    (("klein_grid", 3, 3), (0, 6, 5, 3, 2, 7, 4, 1, 8)),
    (("klein_grid", 3, 4), (0, 4, 8, 11, 10, 2, 5, 6, 9)),
    (("klein_grid", 4, 4), (0, 5, 10, 15, 14, 2, 7, 11, 12)),
]
