"""
Per-path delay, energy and energy-delay product
===============================================

Walks the closed-form model for a five-path benchmark network: how long a
load of packets takes on each path, what it costs in joules, and why the
product of the two is the quantity worth balancing.
"""

from wsn_multipath import (
    EnergyParams,
    LinkParams,
    PathProfile,
    average_edp,
    path_delay,
    path_edp,
    path_energy,
    per_hop_delay,
)

# First-order radio: a fixed cost per transmitted and received bit, an
# amplifier term that grows with hop distance, and a steady sensing drain.
ep = EnergyParams(e_t=0.128, e_d=0.0, e_r=0.1024, K_r=0.024, S=1000.0)

# 50 kbps links and 1000-bit packets give a 20 ms hop when the link adds
# no propagation or queuing delay.
link = LinkParams(b=50_000.0)
print(f"per-hop delay at 50 kbps: {per_hop_delay(ep.S, link) * 1e3:.0f} ms")

# Five node-disjoint paths between one source and one sink, all spanning
# the same 100 m but with very different hop counts.
paths = [
    PathProfile(path_id=j + 1, H=h, tau=0.02, T_dist=100.0)
    for j, h in enumerate([9, 22, 5, 20, 7])
]

# Sending 20 packets down every path shows the imbalance: the 22-hop path
# takes more than four times as long as the 5-hop one, and burns more
# energy too, because every relay pays to receive and re-transmit.
print("\nequal 20-packet load per path")
print("path  hops  delay [s]  energy [J]  EDP [J*s]")
for p in paths:
    t = path_delay(20, p)
    e = path_energy(ep, p, 20)
    print(f"{p.path_id:4d}  {p.H:4d}  {t:9.3f}  {e:10.4f}  {path_edp(ep, p, 20):9.4f}")

# The average EDP over all paths at the equal split is the budget the
# adaptive allocation holds every single path to.
budget = average_edp(ep, paths, 100)
print(f"\naverage EDP at the equal split (D=100): {budget:.6f} J*s")
