"""Explicit (k, n) network codes: verification and constructions.

A code fixes, per edge, a total encoding map from the tail's received
vectors (and its message block when the tail is a source) to the n-symbol
vector the edge carries, plus one decoding map at the receiver.  The
verifier is exhaustive: it propagates every message assignment through
the network in topological order and compares the decoder output
componentwise against the target function.

Encoders are stored as total callables rather than dict tables: the
constructions below stay usable at block lengths where a materialized
table would not fit (the diamond construction at k = 16 has per-edge
domains around 2**37), while ``code_to_document`` still renders explicit
tables for any in-budget code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .catalog import diamond_spec, reverse_butterfly_spec
from .errors import (
    BlockTooSmall,
    BudgetExceeded,
    IncompatibleEmbedding,
    NotTree,
    OddK,
    RateInfeasible,
    ValidationError,
)
from .functions import TargetFunction, footprint, log_base
from .network import Network, classify_cut, compile_network, is_multi_edge_tree

DEFAULT_GENERATOR_BUDGET = 2**22
DEFAULT_SEARCH_BUDGET = 10**6
DEFAULT_TABLE_BUDGET = 2**18


@dataclass(frozen=True)
class NetworkCode:
    """Per-edge encoders and a receiver decoder for block lengths (k, n).

    encoders[e] is a callable (in_vectors, message) -> vector where
    in_vectors lists the tail's in-edge vectors in edge-index order and
    message is the tail's block (None for non-sources).  decoder maps the
    tuple of receiver in-edge vectors to a k-tuple of function values.
    """

    k: int
    n: int
    alphabet_size: int
    encoders: dict
    decoder: object

    @property
    def rate(self) -> float:
        return self.k / self.n


@dataclass(frozen=True)
class VerificationOutcome:
    """Result of exhaustively checking the decoding condition."""

    ok: bool
    counterexample: tuple | None
    checked_count: int

    def __bool__(self):
        return self.ok


class Infeasible:
    """Search outcome: the whole encoder space admits no solution."""

    def __repr__(self):
        return "Infeasible"


class BudgetExhausted:
    """Search outcome: gave up before exhausting the encoder space."""

    def __repr__(self):
        return "BudgetExhausted"


INFEASIBLE = Infeasible()
BUDGET_EXHAUSTED = BudgetExhausted()


# -- helpers -------------------------------------------------------------

def _int_to_digits(value: int, base: int, length: int) -> tuple:
    """Base-``base`` digits of value, most significant first."""
    digits = [0] * length
    for pos in range(length - 1, -1, -1):
        digits[pos] = value % base
        value //= base
    return tuple(digits)


def _digits_to_int(digits, base: int) -> int:
    value = 0
    for d in digits:
        value = value * base + d
    return value


def _ceil_log(base: int, lower: int) -> int:
    """Smallest m with base**m >= lower, in exact integer arithmetic."""
    m, power = 0, 1
    while power < lower:
        power *= base
        m += 1
    return m


def all_vectors(q: int, n: int):
    return product(range(q), repeat=n)


# -- verification ---------------------------------------------------------

def verify_code(
    net: Network,
    f: TargetFunction,
    code: NetworkCode,
    generator_budget: int | None = None,
) -> VerificationOutcome:
    """Exhaustively check the componentwise decoding condition.

    Iterates message generators in lexicographic order (source 1's block
    most significant) and reports the first failing one.
    """
    q, k, s = net.alphabet_size, code.k, net.num_sources
    if f.arity != s:
        raise ValidationError("function arity must match the source count")
    budget = DEFAULT_GENERATOR_BUDGET if generator_budget is None else generator_budget
    total = q ** (k * s)
    if total > budget:
        raise BudgetExceeded(f"q**(k*s) = {total} exceeds budget {budget}")

    topo_edges = net.topo_sorted_edges()
    blocks = list(all_vectors(q, k))
    rho_in = net.in_edges(net.receiver)
    checked = 0
    for combo in product(blocks, repeat=s):
        checked += 1
        messages = dict(zip(net.sources, combo))
        z = {}
        for e in topo_edges:
            tail = net.tail(e)
            in_vecs = tuple(z[e2] for e2 in net.in_edges(tail))
            z[e] = code.encoders[e](in_vecs, messages.get(tail))
        got = code.decoder(tuple(z[e] for e in rho_in))
        expected = tuple(
            f.evaluate(tuple(combo[i][j] for i in range(s))) for j in range(k)
        )
        if tuple(got) != expected:
            return VerificationOutcome(False, combo, checked)
    return VerificationOutcome(True, None, checked)


# -- multi-edge tree construction ------------------------------------------

def tree_rate_bound(net: Network, f: TargetFunction) -> float:
    """Achievable-rate bound for multi-edge trees via per-node out-cuts.

    Minimum over non-receiver nodes v of |out(v)| / log_q R(v), where R(v)
    is the footprint size for the sources separated by v's out-edge cut.
    For multi-edge trees this meets the cut-set upper bound.
    """
    if not is_multi_edge_tree(net):
        raise NotTree("network is not a multi-edge tree")
    q = net.alphabet_size
    best = None
    for v in range(net.num_nodes):
        if v == net.receiver:
            continue
        cut = classify_cut(net, net.out_edges(v))
        size = footprint(f, cut.separated).class_count
        value = len(net.out_edges(v)) / log_base(size, q)
        if best is None or value < best:
            best = value
    return best


def _node_cut_info(net: Network, f: TargetFunction, v: int):
    """(sorted separated indices, FootprintResult) for node v's out-cut."""
    cut = classify_cut(net, net.out_edges(v))
    idx = tuple(sorted(cut.separated))
    return idx, footprint(f, idx)


def tree_code(net: Network, f: TargetFunction, k: int, n: int) -> NetworkCode:
    """Equivalence-class relay code on a multi-edge tree.

    Every non-receiver node forwards, across the n*|out(v)| symbols of its
    out-edge bundle, the packed index of the k-tuple of classes of its
    separated sources' assignments.  Feasibility at each node requires
    q**(n*|out(v)|) >= R(v)**k; packing is mixed-radix (one radix-R digit
    per block position, most significant first) expanded to base q.
    Children's class tuples are recombined through the disjoint union of
    their separated sets; the receiver resolves classes to function values.
    """
    if not is_multi_edge_tree(net):
        raise NotTree("network is not a multi-edge tree")
    if k < 1 or n < 1:
        raise ValidationError("k and n must be positive")
    q, s = net.alphabet_size, net.num_sources

    info = {}
    violations = []
    for v in range(net.num_nodes):
        if v == net.receiver:
            continue
        idx, fp = _node_cut_info(net, f, v)
        bundle = len(net.out_edges(v)) * n
        if q**bundle < fp.class_count**k:
            violations.append((fp.class_count**k / q**bundle, v, bundle, fp))
        info[v] = (idx, fp)
    if violations:
        # Report the binding constraint: the node with the worst deficit.
        _, v, bundle, fp = max(violations)
        raise RateInfeasible(
            net.node_ids[v],
            f"q**{bundle} = {q**bundle} < R**{k} = {fp.class_count}**{k} "
            f"at node {net.node_ids[v]!r}",
        )

    def children_of(v: int):
        # Tails feeding v; in a multi-edge tree each tail's whole out-edge
        # bundle lands on v.  Sorted by node index for determinism.
        return sorted({net.tail(e) for e in net.in_edges(v)})

    def class_combiner(v: int):
        """Map (child class tuple [, own symbol]) -> class at v, per block slot."""
        idx_v, fp_v = info[v]
        kids = children_of(v)
        own = net.source_index(v)
        positions = {i: pos for pos, i in enumerate(idx_v)}
        combine = {}
        for a in product(range(q), repeat=len(idx_v)):
            key_parts = []
            for u in kids:
                idx_u, fp_u = info[u]
                proj = tuple(a[positions[i]] for i in idx_u)
                key_parts.append(fp_u.class_of[proj])
            if own:
                key_parts.append(a[positions[own]])
            key = tuple(key_parts)
            value = fp_v.class_of[a]
            if combine.setdefault(key, value) != value:
                raise AssertionError("class recombination is inconsistent")
        return combine

    def unpack_child_classes(u: int, vectors: tuple):
        """Child u's k class indices from the vectors on its out-edges."""
        _, fp_u = info[u]
        digits = [d for vec in vectors for d in vec]
        value = _digits_to_int(digits, q)
        radix = fp_u.class_count
        if value >= radix**k:
            return None  # unreachable input; caller substitutes a default
        return tuple(
            value // radix ** (k - 1 - pos) % radix + 1 for pos in range(k)
        )

    combiners = {}
    for v in range(net.num_nodes):
        if v == net.receiver:
            continue
        combiners[v] = class_combiner(v)

    def make_encoder(v: int, slot: int):
        idx_v, fp_v = info[v]
        kids = children_of(v)
        own = net.source_index(v)
        combine = combiners[v]
        out_count = len(net.out_edges(v))
        in_order = net.in_edges(v)
        kid_slots = {
            u: tuple(i for i, e in enumerate(in_order) if net.tail(e) == u)
            for u in kids
        }
        radix = fp_v.class_count

        def encoder(in_vecs, message):
            kid_classes = {}
            for u in kids:
                vecs = tuple(in_vecs[i] for i in kid_slots[u])
                kid_classes[u] = unpack_child_classes(u, vecs)
            my = []
            for pos in range(k):
                parts = []
                ok = True
                for u in kids:
                    if kid_classes[u] is None:
                        ok = False
                        break
                    parts.append(kid_classes[u][pos])
                if ok and own:
                    parts.append(message[pos])
                cls = combine.get(tuple(parts)) if ok else None
                my.append(cls if cls is not None else 1)
            packed = 0
            for cls in my:
                packed = packed * radix + (cls - 1)
            digits = _int_to_digits(packed, q, out_count * n)
            return digits[slot * n : (slot + 1) * n]

        return encoder

    encoders = {}
    for v in range(net.num_nodes):
        if v == net.receiver:
            continue
        for slot, e in enumerate(sorted(net.out_edges(v))):
            encoders[e] = make_encoder(v, slot)

    rho = net.receiver
    kids = children_of(rho)
    in_order = net.in_edges(rho)
    kid_slots = {
        u: tuple(i for i, e in enumerate(in_order) if net.tail(e) == u)
        for u in kids
    }
    # Resolve child class tuples to function values: the receiver's in-cut
    # separates every source.
    resolver = {}
    for x in product(range(q), repeat=s):
        key = []
        for u in kids:
            idx_u, fp_u = info[u]
            proj = tuple(x[i - 1] for i in idx_u)
            key.append(fp_u.class_of[proj])
        key = tuple(key)
        value = f.evaluate(x)
        if resolver.setdefault(key, value) != value:
            raise AssertionError("receiver-side classes do not determine f")
    default_value = f.evaluate((0,) * s)

    def decoder(received):
        kid_classes = {}
        for u in kids:
            vecs = tuple(received[i] for i in kid_slots[u])
            kid_classes[u] = unpack_child_classes(u, vecs)
        out = []
        for pos in range(k):
            parts = []
            ok = all(kid_classes[u] is not None for u in kids)
            if ok:
                parts = tuple(kid_classes[u][pos] for u in kids)
            value = resolver.get(parts) if ok else None
            out.append(value if value is not None else default_value)
        return tuple(out)

    return NetworkCode(k, n, q, encoders, decoder)


def best_tree_rate_pair(
    net: Network, f: TargetFunction, max_n: int = 12
) -> tuple:
    """Feasible (k, n) with the largest ratio k/n for ``tree_code``.

    Scans n = 1..max_n, taking for each the largest k passing the
    per-node capacity checks (exact integer comparisons); ties prefer the
    smaller n.
    """
    if not is_multi_edge_tree(net):
        raise NotTree("network is not a multi-edge tree")
    q = net.alphabet_size
    nodes = []
    for v in range(net.num_nodes):
        if v == net.receiver:
            continue
        _, fp = _node_cut_info(net, f, v)
        nodes.append((len(net.out_edges(v)), fp.class_count))
    best = None
    for n in range(1, max_n + 1):
        k = 1
        while all(q ** (d * n) >= r ** (k + 1) for d, r in nodes):
            k += 1
        if not all(q ** (d * n) >= r**k for d, r in nodes):
            continue
        if best is None or k * best[1] > best[0] * n:
            best = (k, n)
    if best is None:
        raise RateInfeasible(None, f"no feasible (k, n) with n <= {max_n}")
    return best


# -- diamond construction ---------------------------------------------------

def diamond_code(k: int) -> NetworkCode:
    """Split-relay code on the diamond network for the binary sum.

    The shared source forwards its whole block on both out-edges; each of
    the other sources adds the shared block on half of its components and
    transmits a packed index of the resulting ternary/binary mixed vector.
    The receiver unpacks both indices and sums them componentwise.  Edge
    block length is the smallest n with 2**n >= 3**(k/2) * 2**(k/2), so
    the rate k/n climbs toward 2/(1 + log2 3) as k grows.
    """
    if k < 2 or k % 2:
        raise OddK(f"k must be a positive even integer, got {k}")
    half = k // 2
    n = _ceil_log(2, 3**half * 2**half)
    if k > n:
        raise BlockTooSmall(f"k = {k} exceeds n = {n}")
    limit = 3**half * 2**half

    def pack_mixed(y, ternary_first):
        # One half carries sums in {0,1,2} (radix 3), the other raw bits.
        value = 0
        for i in range(k):
            radix = 3 if (i < half) == ternary_first else 2
            value = value * radix + y[i]
        return _int_to_digits(value, 2, n)

    def unpack_mixed(vec, ternary_first):
        value = _digits_to_int(vec, 2)
        if value >= limit:
            return None
        digits = [0] * k
        for i in range(k - 1, -1, -1):
            radix = 3 if (i < half) == ternary_first else 2
            digits[i] = value % radix
            value //= radix
        return tuple(digits)

    def forward_shared(in_vecs, message):
        return tuple(message) + (0,) * (n - k)

    def send_mixed(first_half_active):
        # first_half_active: which half of this source's block absorbs the
        # shared source's bits (and hence carries ternary digits).
        def encoder(in_vecs, message):
            shared = in_vecs[0][:k]
            y = tuple(
                message[i] + (shared[i] if (i < half) == first_half_active else 0)
                for i in range(k)
            )
            return pack_mixed(y, first_half_active)

        return encoder

    def decoder(received):
        y1 = unpack_mixed(received[0], True)
        y2 = unpack_mixed(received[1], False)
        if y1 is None or y2 is None:
            return (0,) * k
        return tuple(a + b for a, b in zip(y1, y2))

    # Edge indices follow diamond_spec: (s3,s1), (s3,s2), (s1,rho), (s2,rho).
    encoders = {
        0: forward_shared,
        1: forward_shared,
        2: send_mixed(True),
        3: send_mixed(False),
    }
    return NetworkCode(k, n, 2, encoders, decoder)


def diamond_counting_feasible(k: int, n: int) -> bool:
    """Counting necessary condition for any (k, n) diamond solution.

    The receiver's two n-bit edges must distinguish enough sum patterns;
    disjointness of the per-value preimage classes forces 4**n >= 6**k.
    """
    return 4**n >= 6**k


def diamond_network() -> Network:
    return compile_network(diamond_spec())


# -- reverse butterfly parity witness ----------------------------------------

def reverse_butterfly_xor_code() -> NetworkCode:
    """Rate-2 parity code on the reverse butterfly (k=2, n=1, mod-2 sum).

    Hand-built witness that the cut-set bound is met for the parity
    target on this topology; validated exclusively by ``verify_code``.
    """
    x = lambda *bits: (sum(bits) % 2,)

    encoders = {
        0: lambda iv, m: x(m[0], m[1]),   # s1 -> n1 : a1+a2
        1: lambda iv, m: (m[1],),         # s1 -> n4 : a2
        2: lambda iv, m: x(m[0], m[1]),   # s2 -> n2 : b1+b2
        3: lambda iv, m: (m[0],),         # s2 -> n4 : b1
        4: lambda iv, m: x(iv[0][0], iv[1][0]),  # n4 -> n3 : a2+b1
        5: lambda iv, m: iv[0],           # n3 -> n1 : forward
        6: lambda iv, m: iv[0],           # n3 -> n2 : forward
        7: lambda iv, m: x(iv[0][0], iv[1][0]),  # n1 -> rho : a1+b1
        8: lambda iv, m: x(iv[0][0], iv[1][0]),  # n2 -> rho : a2+b2
    }

    def decoder(received):
        return (received[0][0], received[1][0])

    return NetworkCode(2, 1, 2, encoders, decoder)


def reverse_butterfly_network() -> Network:
    return compile_network(reverse_butterfly_spec())


# -- exhaustive code search ---------------------------------------------------

def search_code(
    net: Network,
    f: TargetFunction,
    k: int,
    n: int,
    budget: int | None = None,
):
    """Depth-first search for a (k, n) solution over explicit encoders.

    Edges are assigned in topological order (lowest index first); each
    edge's table ranges over its generator-reachable inputs only, with
    unreachable inputs defaulting to zeros.  A branch is pruned as soon as
    two generators with different function vectors become permanently
    indistinguishable: they agree on the receiver inputs fixed so far and
    on every value the remaining encoders could still read.  The decoder
    is never searched; a full consistent assignment forces it.

    Returns a NetworkCode, or INFEASIBLE when the space is exhausted, or
    BUDGET_EXHAUSTED when the node budget runs out first.
    """
    budget = DEFAULT_SEARCH_BUDGET if budget is None else budget
    q, s = net.alphabet_size, net.num_sources
    if f.arity != s:
        raise ValidationError("function arity must match the source count")
    total = q ** (k * s)
    if total > DEFAULT_GENERATOR_BUDGET:
        raise BudgetExceeded(f"generator space {total} too large to search")

    topo_edges = list(net.topo_sorted_edges())
    blocks = list(all_vectors(q, k))
    generators = list(product(blocks, repeat=s))
    f_vectors = []
    for combo in generators:
        f_vectors.append(
            tuple(
                f.evaluate(tuple(combo[i][j] for i in range(s)))
                for j in range(k)
            )
        )
    rho_in = set(net.in_edges(net.receiver))
    out_vectors = list(all_vectors(q, n))
    zero_vec = (0,) * n

    source_pos = {v: i for i, v in enumerate(net.sources)}
    # For the prune signature: which assigned values stay relevant.
    suffix_tails = [
        {net.tail(e) for e in topo_edges[d:]} for d in range(len(topo_edges) + 1)
    ]

    nodes_visited = 0

    def dfs(depth, values):
        # values: per generator, dict edge -> vector for assigned edges.
        nonlocal nodes_visited
        if depth == len(topo_edges):
            table = {}
            for g, vals in enumerate(values):
                key = tuple(vals[e] for e in net.in_edges(net.receiver))
                if table.setdefault(key, f_vectors[g]) != f_vectors[g]:
                    return None
            default = f_vectors[0]
            decoder_table = dict(table)

            def decoder(received):
                return decoder_table.get(tuple(received), default)

            return decoder

        e = topo_edges[depth]
        tail = net.tail(e)
        in_edges = net.in_edges(tail)
        msg_pos = source_pos.get(tail)

        keys = []
        key_of = []
        seen = {}
        for g, combo in enumerate(generators):
            key = (
                tuple(values[g][e2] for e2 in in_edges),
                combo[msg_pos] if msg_pos is not None else None,
            )
            idx = seen.get(key)
            if idx is None:
                idx = len(keys)
                seen[key] = idx
                keys.append(key)
            key_of.append(idx)

        later = suffix_tails[depth + 1]
        for assignment in product(out_vectors, repeat=len(keys)):
            nodes_visited += 1
            if nodes_visited > budget:
                return BUDGET_EXHAUSTED
            new_values = []
            for g in range(len(generators)):
                vals = dict(values[g])
                vals[e] = assignment[key_of[g]]
                new_values.append(vals)
            # Prune: permanently indistinguishable generators must agree on f.
            groups = {}
            conflict = False
            for g, combo in enumerate(generators):
                sig_edges = tuple(
                    new_values[g][e2]
                    for e2 in topo_edges[: depth + 1]
                    if e2 in rho_in or net.head(e2) in later
                )
                sig_msgs = tuple(
                    combo[source_pos[v]]
                    for v in sorted(source_pos)
                    if v in later
                )
                sig = (sig_edges, sig_msgs)
                if groups.setdefault(sig, f_vectors[g]) != f_vectors[g]:
                    conflict = True
                    break
            if conflict:
                continue
            result = dfs(depth + 1, new_values)
            if result is BUDGET_EXHAUSTED:
                return BUDGET_EXHAUSTED
            if result is not None:
                decoder, suffix_tables = result if isinstance(result, tuple) else (result, [])
                suffix_tables = [(e, dict(zip(keys, assignment)))] + suffix_tables
                return decoder, suffix_tables
        return None

    outcome = dfs(0, [dict() for _ in generators])
    if outcome is BUDGET_EXHAUSTED:
        return BUDGET_EXHAUSTED
    if outcome is None:
        return INFEASIBLE
    decoder, tables = outcome

    encoders = {}
    for e, table in tables:
        def make(table):
            def encoder(in_vecs, message):
                return table.get((tuple(in_vecs), message), zero_vec)

            return encoder

        encoders[e] = make(table)
    return NetworkCode(k, n, q, encoders, decoder)


# -- alphabet simulation and repetition --------------------------------------

def repeat_code(code: NetworkCode, c: int) -> NetworkCode:
    """Run a code c times in parallel: a (ck, cn) code over the same alphabet."""
    if c < 1:
        raise ValidationError("repetition factor must be positive")
    if c == 1:
        return code
    k, n = code.k, code.n

    def make_encoder(enc):
        def encoder(in_vecs, message):
            out = []
            for j in range(c):
                chunk_in = tuple(v[j * n : (j + 1) * n] for v in in_vecs)
                chunk_msg = (
                    message[j * k : (j + 1) * k] if message is not None else None
                )
                out.extend(enc(chunk_in, chunk_msg))
            return tuple(out)

        return encoder

    def decoder(received):
        out = []
        for j in range(c):
            chunk = tuple(v[j * n : (j + 1) * n] for v in received)
            out.extend(code.decoder(chunk))
        return tuple(out)

    return NetworkCode(
        c * k,
        c * n,
        code.alphabet_size,
        {e: make_encoder(enc) for e, enc in code.encoders.items()},
        decoder,
    )


def simulate_alphabet(code: NetworkCode, q: int, c: int = 1) -> NetworkCode:
    """Carry a q'-ary code over a q-ary network by positional recoding.

    The c-fold repetition of the input code is taken first; each edge's
    c*n q'-ary symbols are then transported as ceil(c*n*log_q q') q-ary
    digits (most significant first).  Source messages must embed, so the
    target alphabet cannot exceed the source one.
    """
    qp = code.alphabet_size
    if q > qp:
        raise IncompatibleEmbedding(
            f"alphabet {q} does not embed into {qp}-ary messages"
        )
    if q < 2:
        raise ValidationError("alphabet size must be at least 2")
    base = repeat_code(code, c)
    inner_n = base.n
    outer_n = _ceil_log(q, qp**inner_n)

    def lift(vec_q):
        value = _digits_to_int(vec_q, q)
        if value >= qp**inner_n:
            return None
        return _int_to_digits(value, qp, inner_n)

    def lower(vec_qp):
        return _int_to_digits(_digits_to_int(vec_qp, qp), q, outer_n)

    zero_inner = (0,) * inner_n

    def make_encoder(enc):
        def encoder(in_vecs, message):
            lifted = tuple(lift(v) or zero_inner for v in in_vecs)
            return lower(enc(lifted, message))

        return encoder

    def decoder(received):
        lifted = tuple(lift(v) or zero_inner for v in received)
        return base.decoder(lifted)

    return NetworkCode(
        base.k,
        outer_n,
        q,
        {e: make_encoder(enc) for e, enc in base.encoders.items()},
        decoder,
    )


# -- serialization -------------------------------------------------------------

def _vector_to_string(vec, q: int) -> str:
    if q <= 10:
        return "".join(str(d) for d in vec)
    return ",".join(str(d) for d in vec)


def _string_to_vector(text: str, q: int, n: int) -> tuple:
    if q <= 10:
        digits = tuple(int(ch) for ch in text)
    else:
        digits = tuple(int(part) for part in text.split(",")) if text else ()
    if len(digits) != n or any(not 0 <= d < q for d in digits):
        raise ValidationError(f"bad vector string {text!r}")
    return digits


def _encoder_domain(net: Network, e: int, q: int, k: int, n: int):
    """Lexicographic domain of edge e's encoder: in-vectors, then message."""
    tail = net.tail(e)
    in_count = len(net.in_edges(tail))
    is_source = net.source_index(tail) > 0
    vec_space = list(all_vectors(q, n))
    msg_space = list(all_vectors(q, k)) if is_source else [None]
    for in_combo in product(vec_space, repeat=in_count):
        for msg in msg_space:
            yield in_combo, msg


def code_to_document(
    net: Network, code: NetworkCode, table_budget: int | None = None
) -> dict:
    """Render explicit tables for every encoder plus the decoder.

    Domain tuples are enumerated in lexicographic order so only values
    are stored; parsing reconstructs the same iteration.
    """
    budget = DEFAULT_TABLE_BUDGET if table_budget is None else table_budget
    q, k, n = code.alphabet_size, code.k, code.n
    total = 0
    for e in range(net.num_edges):
        tail = net.tail(e)
        entries = q ** (n * len(net.in_edges(tail)))
        if net.source_index(tail):
            entries *= q**k
        total += entries
    total += q ** (n * len(net.in_edges(net.receiver)))
    if total > budget:
        raise BudgetExceeded(f"{total} table entries exceed budget {budget}")

    edges_doc = []
    for e in range(net.num_edges):
        values = [
            _vector_to_string(code.encoders[e](in_combo, msg), q)
            for in_combo, msg in _encoder_domain(net, e, q, k, n)
        ]
        edges_doc.append({"edge": e, "values": values})
    rho_count = len(net.in_edges(net.receiver))
    decoder_values = [
        list(code.decoder(combo))
        for combo in product(list(all_vectors(q, n)), repeat=rho_count)
    ]
    return {
        "format": "v1",
        "k": k,
        "n": n,
        "alphabet": q,
        "edges": edges_doc,
        "decoder": decoder_values,
    }


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def document_to_code(net: Network, doc: dict) -> NetworkCode:
    """Rebuild a table-backed code from its serialized document."""
    for key in ("format", "k", "n", "alphabet", "edges", "decoder"):
        if key not in doc:
            raise ValidationError(f"code document missing key {key!r}")
    if doc["format"] != "v1":
        raise ValidationError(f"unsupported code format {doc['format']!r}")
    k, n, q = int(doc["k"]), int(doc["n"]), int(doc["alphabet"])
    if q != net.alphabet_size:
        raise ValidationError("code alphabet does not match the network")
    if len(doc["edges"]) != net.num_edges:
        raise ValidationError("code document edge count mismatch")

    encoders = {}
    for entry in doc["edges"]:
        e = int(entry["edge"])
        table = {}
        domain = list(_encoder_domain(net, e, q, k, n))
        if len(domain) != len(entry["values"]):
            raise ValidationError(f"edge {e} table has wrong size")
        for (in_combo, msg), text in zip(domain, entry["values"]):
            table[(in_combo, msg)] = _string_to_vector(text, q, n)

        def make(table):
            def encoder(in_vecs, message):
                return table[(tuple(in_vecs), message)]

            return encoder

        encoders[e] = make(table)

    rho_count = len(net.in_edges(net.receiver))
    combos = list(product(list(all_vectors(q, n)), repeat=rho_count))
    if len(combos) != len(doc["decoder"]):
        raise ValidationError("decoder table has wrong size")
    decoder_table = {
        combo: _freeze(value) for combo, value in zip(combos, doc["decoder"])
    }

    def decoder(received):
        return decoder_table[tuple(received)]

    return NetworkCode(k, n, q, encoders, decoder)


def code_to_json(net: Network, code: NetworkCode, table_budget=None) -> str:
    return json.dumps(code_to_document(net, code, table_budget), indent=None)


def code_from_json(net: Network, text: str) -> NetworkCode:
    return document_to_code(net, json.loads(text))
