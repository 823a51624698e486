import random

from crystalkit.graph_ops import CrystalGraph


def random_crystal_digraph(rng: random.Random, n_nodes: int, n_colors: int, p: float) -> CrystalGraph:
    """Random colored digraph with crystal-shaped edges.

    Each color is a random partial injection (an element has at most one
    lowering image and at most one raising preimage per color), with every
    slot recorded so head computations are sound.  Labels are dummies: the
    head only reads edges.
    """
    g = CrystalGraph(range(n_colors))
    keys = [f'{{"v":{q}}}' for q in range(n_nodes)]
    zero = (0,) * n_colors
    for k in keys:
        g.add_raw_node(k, zero, zero, zero)
    for i in range(n_colors):
        sources = [q for q in range(n_nodes) if rng.random() < p]
        targets = rng.sample(range(n_nodes), len(sources))
        for s, t in zip(sources, targets):
            g.record_f(keys[s], i, keys[t])
    for k in keys:
        for i in range(n_colors):
            from crystalkit.graph_ops import MISSING

            if g.e_record(k, i) is MISSING:
                g.record_e(k, i, None)
            if g.f_record(k, i) is MISSING:
                g.record_f(k, i, None)
    return g
