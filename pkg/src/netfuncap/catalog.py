"""Builtin example networks with their default target functions.

All examples default to the arithmetic sum over bits unless overridden at
the call site.  Node ids are plain strings; edge order is part of each
example's identity (codes constructed for them address edges by index).
"""

from __future__ import annotations

from .errors import UnknownExample
from .functions import TargetFunction, arithmetic_sum
from .network import NetworkSpec


def single_edge_spec(q: int = 2) -> NetworkSpec:
    """Smallest legal network: one source, one edge into the receiver."""
    return NetworkSpec(
        nodes=("s1", "rho"),
        edges=(("s1", "rho"),),
        sources=("s1",),
        receiver="rho",
        alphabet_size=q,
    )


def line_spec(s: int, q: int = 2) -> NetworkSpec:
    """Chain of s sources feeding the receiver: s1 -> s2 -> ... -> rho."""
    if s < 1:
        raise UnknownExample(f"line needs at least one source, got {s}")
    names = tuple(f"s{i}" for i in range(1, s + 1))
    edges = [(names[i], names[i + 1]) for i in range(s - 1)]
    edges.append((names[-1], "rho"))
    return NetworkSpec(
        nodes=names + ("rho",),
        edges=tuple(edges),
        sources=names,
        receiver="rho",
        alphabet_size=q,
    )


def n3_spec(q: int = 2) -> NetworkSpec:
    """Three-source line network."""
    return line_spec(3, q)


def diamond_spec(q: int = 2) -> NetworkSpec:
    """Three sources; the third feeds the other two, which feed the receiver.

    The only network here whose computing capacity for the arithmetic sum
    sits strictly below the cut-set bound.
    """
    return NetworkSpec(
        nodes=("s1", "s2", "s3", "rho"),
        edges=(("s3", "s1"), ("s3", "s2"), ("s1", "rho"), ("s2", "rho")),
        sources=("s1", "s2", "s3"),
        receiver="rho",
        alphabet_size=q,
    )


def reverse_butterfly_spec(q: int = 2) -> NetworkSpec:
    """Two-source reverse butterfly (edge-reversal of the butterfly).

    Topology: s1 -> n1, s1 -> n4, s2 -> n2, s2 -> n4, n4 -> n3, n3 -> n1,
    n3 -> n2, n1 -> rho, n2 -> rho.  Reproduces min |C| = 2, a maximal
    footprint of 3 for the binary arithmetic sum, and a fractional tree
    packing of 3/2.
    """
    return NetworkSpec(
        nodes=("s1", "s2", "n1", "n2", "n3", "n4", "rho"),
        edges=(
            ("s1", "n1"),
            ("s1", "n4"),
            ("s2", "n2"),
            ("s2", "n4"),
            ("n4", "n3"),
            ("n3", "n1"),
            ("n3", "n2"),
            ("n1", "rho"),
            ("n2", "rho"),
        ),
        sources=("s1", "s2"),
        receiver="rho",
        alphabet_size=q,
    )


def n2_spec(q: int = 2) -> NetworkSpec:
    return reverse_butterfly_spec(q)


def relay_gap_spec(M: int, L: int) -> NetworkSpec:
    """Gap family: M sources with direct receiver edges plus an L-wide relay.

    Each source also has L parallel edges into the relay s0, and s0 has L
    parallel edges into the receiver; alphabet is binary.  Edge count is
    M + M*L + L.
    """
    if M < 1 or L < 1:
        raise UnknownExample("relay gap family needs M >= 1 and L >= 1")
    names = tuple(f"s{i}" for i in range(1, M + 1))
    edges = [(name, "rho") for name in names]
    for name in names:
        edges.extend((name, "s0") for _ in range(L))
    edges.extend(("s0", "rho") for _ in range(L))
    return NetworkSpec(
        nodes=names + ("s0", "rho"),
        edges=tuple(edges),
        sources=names,
        receiver="rho",
        alphabet_size=2,
    )


build_NML = relay_gap_spec


def builtin_example(name: str, params: dict | None = None):
    """Resolve an example name to (NetworkSpec, default TargetFunction).

    Known names: N2, N3, diamond, NML (params M, L), line (param s),
    single_edge.  The default function is the arithmetic sum over the
    example's alphabet.
    """
    params = dict(params or {})
    q = int(params.pop("q", 2))
    key = name.strip()
    lowered = key.lower()
    if lowered == "n2":
        spec = n2_spec(q)
    elif lowered == "n3":
        spec = n3_spec(q)
    elif lowered == "diamond":
        spec = diamond_spec(q)
    elif lowered == "single_edge":
        spec = single_edge_spec(q)
    elif lowered == "line":
        spec = line_spec(int(params.pop("s", 3)), q)
    elif lowered == "nml":
        spec = relay_gap_spec(int(params.pop("M", 2)), int(params.pop("L", 1)))
    else:
        raise UnknownExample(name)
    if params:
        raise UnknownExample(f"unused parameters for {name}: {sorted(params)}")
    fn: TargetFunction = arithmetic_sum(len(spec.sources), spec.alphabet_size)
    return spec, fn
