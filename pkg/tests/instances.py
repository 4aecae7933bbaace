"""Random instance generators shared by the lemma tests and the acceptance suite."""

import oracles
from unfriendly.coloring import flip_candidates
from unfriendly.graph import PartialColoring
from unfriendly.solvers import reoptimize


def maximal_outside(g, c, d):
    """Brute-force strong maximality over the finite vertices outside ``d``."""
    cand = [v for v in range(g.n) if v not in d and g.is_finite(v) and v not in c.frozen]
    return oracles.improving_flip(g, c.colors, cand) is None


def random_repair_instance(rng):
    n = rng.randint(2, 10)
    g = oracles.random_labels(rng, oracles.random_connected(rng, n, rng.uniform(0.1, 0.6)))
    d = set(rng.sample(range(n), rng.randint(1, n - 1)))
    c = PartialColoring.total([rng.randint(0, 1) for _ in range(n)])
    c = reoptimize(g, c, [v for v in range(n) if v not in d and g.is_finite(v)])
    return g, d, c


def random_stitch_instance(rng):
    n = rng.randint(3, 12)
    g = oracles.random_labels(rng, oracles.random_connected(rng, n, rng.uniform(0.1, 0.4)))
    a = set(rng.sample(range(n), rng.randint(1, n)))
    blocks, owner = [], {}
    for v in rng.sample(sorted(a), len(a)):
        if rng.random() < 0.4 or len(blocks) >= 3:
            continue
        clash = {owner[u] for u in g.adj[v] if u in owner}
        if len(clash) > 1:
            continue
        if clash:
            i = clash.pop()
        elif rng.random() < 0.5 or not blocks:
            blocks.append(set())
            i = len(blocks) - 1
        else:
            i = rng.randrange(len(blocks))
            if any(owner.get(u, i) != i for u in g.adj[v]):
                continue
        blocks[i].add(v)
        owner[v] = i
    blocks = [b for b in blocks if b]
    c = PartialColoring.total([rng.randint(0, 1) for _ in range(n)])
    for b in blocks:
        c = reoptimize(g, c, flip_candidates(g, c, b))
    return g, c, a, blocks
