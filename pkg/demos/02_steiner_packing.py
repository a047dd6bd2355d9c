"""Fractional Steiner tree packings, solved by the deterministic simplex.

Each Steiner tree routes every source to the receiver along exactly one
out-edge per node; the packing LP shares each unit-capacity edge among
the trees.  The packing value multiplies the worst single-cut rate in
the general routing lower bound.
"""

import netfuncap as nf

for name in ("N2", "N3", "diamond"):
    spec, f = nf.builtin_example(name)
    net = nf.compile_network(spec)
    packing = nf.steiner_packing(net)
    print(f"=== {name}: {len(packing.trees)} Steiner trees, "
          f"packing value {packing.value:.4f} ===")
    for tree, weight in zip(packing.trees, packing.weights):
        if weight > 1e-12:
            print(f"  weight {weight:.4f} on edges {sorted(tree)}")
    general = nf.lower_bound_general(net, f)
    weighted = nf.lower_bound_weighted(net, f=f)
    print(f"routing lower bound: {general:.6f}")
    print(f"rate-weighted variant: {weighted:.6f}")
    print()
