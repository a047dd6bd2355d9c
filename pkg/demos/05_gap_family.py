"""The relay gap family: the cut bound can be arbitrarily loose.

M sources each own a direct edge to the receiver plus L parallel edges
into a shared relay.  The cut bound grows like L + log(M), yet the
capacity stays near 1: the sumset counting argument caps any rate r > 1
by r * gamma(r) <= L / log2(M + 1).  The table shows the bound-to-rate
ratio widening as M grows.
"""

import netfuncap as nf

L = 2
print(f"L = {L}")
print(f"{'M':>4} {'min-cut':>10} {'m*':>4} {'rate cap':>10} {'bracket hi':>11} "
      f"{'cut/bracket':>12}")
for M in (3, 7, 15, 31):
    cut, m_star = nf.mincut_NML_closed_form(M, L)
    cap = nf.rate_upper_NML(M, L)
    hi = min(cap, cut)
    print(f"{M:>4} {cut:>10.4f} {m_star:>4} {cap:>10.4f} {hi:>11.4f} "
          f"{cut / hi:>12.4f}")

print("\nclosed form vs exhaustive enumeration (M <= 4, L <= 3):")
for M in range(1, 5):
    for L_ in range(1, 4):
        net = nf.compile_network(nf.build_NML(M, L_))
        f = nf.arithmetic_sum(M, 2)
        enum_value = nf.min_cut_f(net, f)[0]
        closed_value, _ = nf.mincut_NML_closed_form(M, L_)
        marker = "ok" if abs(enum_value - closed_value) < 1e-9 else "MISMATCH"
        print(f"  M={M} L={L_}: closed {closed_value:.4f} "
          f"enum {enum_value:.4f} [{marker}]")
