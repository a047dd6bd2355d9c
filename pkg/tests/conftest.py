"""Shared fixtures and independent oracles for the test suite.

The oracles here recompute quantities from first principles (subset
scans, pairwise definition checks, vertex enumeration) so library results
are validated against code that shares none of the implementation path.
"""

from itertools import combinations, product

import pytest

import netfuncap as nf


@pytest.fixture
def diamond():
    spec, f = nf.builtin_example("diamond")
    return nf.compile_network(spec), f


@pytest.fixture
def butterfly():
    spec, f = nf.builtin_example("N2")
    return nf.compile_network(spec), f


@pytest.fixture
def line3():
    spec, f = nf.builtin_example("N3")
    return nf.compile_network(spec), f


@pytest.fixture
def single_edge():
    spec, _ = nf.builtin_example("single_edge")
    return nf.compile_network(spec), nf.identity(1, 2)


# -- oracles --------------------------------------------------------------


def oracle_separated(net, removed):
    """Separated source indices by a fresh DFS, independent of the library."""
    removed = set(removed)
    adjacency = {}
    for e, (t, h) in enumerate(net.edges):
        if e not in removed:
            adjacency.setdefault(t, []).append(h)

    def reaches(v):
        stack, seen = [v], {v}
        while stack:
            u = stack.pop()
            if u == net.receiver:
                return True
            for w in adjacency.get(u, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    return frozenset(
        i + 1 for i, s in enumerate(net.sources) if not reaches(s)
    )


def oracle_all_cuts(net):
    """Every cut by subset scan: all edge subsets separating some source."""
    cuts = {}
    for r in range(1, net.num_edges + 1):
        for subset in combinations(range(net.num_edges), r):
            sep = oracle_separated(net, subset)
            if sep:
                cuts[frozenset(subset)] = sep
    return cuts


def oracle_minimal_cuts(net):
    """Minimal cuts: no proper subset separating the same source set."""
    cuts = oracle_all_cuts(net)
    minimal = {}
    for edges, sep in cuts.items():
        if not any(
            other < edges and cuts[other] == sep
            for other in cuts
            if len(other) < len(edges)
        ):
            minimal[edges] = sep
    return minimal


def oracle_min_edge_cut(net, wanted):
    """Smallest subset disconnecting all wanted sources, by subset scan."""
    wanted = set(wanted)
    for r in range(net.num_edges + 1):
        for subset in combinations(range(net.num_edges), r):
            if wanted <= oracle_separated(net, subset):
                return r
    raise AssertionError("receiver in-edges always disconnect everything")


def oracle_footprint_classes(f, index_set):
    """Class count by the pairwise definition of interchangeability."""
    q, s = f.alphabet_size, f.arity
    inside = sorted(index_set)
    outside = [i for i in range(1, s + 1) if i not in index_set]

    def equivalent(a, b):
        for rest in product(range(q), repeat=len(outside)):
            x, y = [0] * s, [0] * s
            for val, i in zip(a, inside):
                x[i - 1] = val
            for val, i in zip(b, inside):
                y[i - 1] = val
            for val, i in zip(rest, outside):
                x[i - 1] = val
                y[i - 1] = val
            if f.evaluate(tuple(x)) != f.evaluate(tuple(y)):
                return False
        return True

    classes = []
    for a in product(range(q), repeat=len(inside)):
        for cls in classes:
            if equivalent(a, cls[0]):
                cls.append(a)
                break
        else:
            classes.append([a])
    return classes


def oracle_lp_vertex_max(c, rows, rhs):
    """LP maximum by exhaustive vertex enumeration (small systems only)."""
    import numpy as np

    c = np.asarray(c, dtype=float)
    n = len(c)
    constraints = [(np.asarray(r, dtype=float), b) for r, b in zip(rows, rhs)]
    for j in range(n):
        row = np.zeros(n)
        row[j] = -1.0
        constraints.append((row, 0.0))
    best = None
    for combo in combinations(range(len(constraints)), n):
        A = np.vstack([constraints[i][0] for i in combo])
        b = np.array([constraints[i][1] for i in combo])
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        x = np.linalg.solve(A, b)
        feasible = all(
            float(row @ x) <= bound + 1e-9 for row, bound in constraints
        )
        if feasible:
            value = float(c @ x)
            if best is None or value > best:
                best = value
    return best


def random_dag(rng, max_edges=10, max_sources=3, q=2):
    """Small random valid network, for sweep tests."""
    while True:
        s = rng.randint(1, max_sources)
        relays = rng.randint(0, 2)
        names = [f"s{i}" for i in range(1, s + 1)]
        names += [f"v{i}" for i in range(1, relays + 1)]
        order = names + ["rho"]
        edges = []
        for i, tail in enumerate(order[:-1]):
            # forward edges only, so acyclicity is free
            choices = order[i + 1 :]
            for head in rng.sample(choices, rng.randint(1, min(2, len(choices)))):
                edges.append((tail, head))
        if len(edges) > max_edges:
            continue
        spec = nf.NetworkSpec(
            nodes=order,
            edges=edges,
            sources=names[:s],
            receiver="rho",
            alphabet_size=q,
        )
        try:
            return nf.compile_network(spec)
        except nf.errors.NetfuncapError:
            continue
