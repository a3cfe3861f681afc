#!/usr/bin/env python3
"""Walkthrough: delay metrics on the broadcast erasure channel.

A source broadcasts 32 packets to K receivers; each transmission
reaches each receiver independently with probability 0.7.  Phase 1
sends the packets uncoded, phase 2 sends coded repair vectors until
everyone can decode.  With a field at least as large as the user count
the cofactor method matches the channel capacity limit N/(1-Pe); over
GF(2) no scheme is optimal, but sparse deterministic repair still beats
random coding.
"""

from innocode import SimConfig, run_experiment

N, PE, R = 32, 0.3, 60
print(f"N={N} packets, Pe={PE}, {R} realizations per point")
print(f"Capacity limit: N/(1-Pe) = {N / (1 - PE):.2f} transmissions\n")

header = f"{'scheme':<10}{'q':>4}{'K':>4}{'worst-case':>12}{'average':>10}"
print(header)
print("-" * len(header))
for q in (101, 2):
    for k in (8, 16):
        for scheme in ("cofactor", "rlnc"):
            cfg = SimConfig(
                n_packets=N, n_users=k, q=q, erasure_prob=PE,
                realizations=R, scheme=scheme, seed=2,
            )
            m = run_experiment(cfg)
            print(f"{scheme:<10}{q:>4}{k:>4}{m.worst_case_delay:>12.2f}{m.average_delay:>10.2f}")
    print()

print("Reading the table: at q=101 both schemes sit on the 45.7 limit")
print("(every coded packet is innovative); at q=2 the cofactor method's")
print("average and worst-case delay stay below random coding's, because")
print("it only fails to serve a receiver when no binary vector could.")
