"""Reduced tau, HF+ and rank of the Mazur plumbings G_1..G_N.

    python scripts/reproduce_table1.py [N]
"""

import sys
import time

from plumbhf import Grading, build_root, compute_tau, hf_from_root, mazur_graph, mazur_rank


def main(limit: int = 7) -> None:
    for n in range(1, limit + 1):
        start = time.perf_counter()
        tau = compute_tau(mazur_graph(n))
        module = hf_from_root(build_root(tau.reduced), Grading.d0())
        elapsed = time.perf_counter() - start
        ok = "ok" if module.rank_red == mazur_rank(n) else "MISMATCH"
        print(f"n={n}  i0={tau.i0}  rank={module.rank_red} ({ok})  {elapsed:.3f}s")
        print(f"  reduced tau: {list(tau.reduced)}")
        print(f"  HF+: {module.notation()}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 7)
