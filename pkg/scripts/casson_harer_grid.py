"""Compare closed-form tau and rank against the plumbing computation for Casson-Harer spheres.

    python scripts/casson_harer_grid.py
"""

from plumbhf import CassonHarerFamily, Family, brieskorn_graph, build_root, compute_tau, hf_from_root, reduce_tau
from plumbhf.families import rank_casson_harer, tau_casson_harer_sequence

GRID = (
    [CassonHarerFamily(Family.FAMILY1, p, s, e) for p in (3, 5, 7) for s in (1, 2) for e in (1, -1)
     if (p, s, e) != (3, 1, -1)]
    + [CassonHarerFamily(Family.FAMILY2, p, s) for p, s in [(2, 3), (2, 5), (4, 1), (4, 3), (6, 1)]]
)


def main() -> None:
    print(f"{'family':<8}{'p':>3}{'s':>3}{'sign':>5}  {'triple':<16}{'rank':>6}{'closed':>8}  tau  tau(s-variant)")
    for fam in GRID:
        tau = compute_tau(brieskorn_graph(fam.triple()))
        rank = hf_from_root(build_root(tau.reduced)).rank_red
        closed = rank_casson_harer(fam)
        tau_ok = reduce_tau(tau_casson_harer_sequence(fam)) == list(tau.reduced)
        if fam.family is Family.FAMILY1:
            variant_ok = "ok" if reduce_tau(tau_casson_harer_sequence(fam, s_variant=True)) == list(tau.reduced) else "differs"
        else:
            variant_ok = "-"
        sign = "" if fam.sign is None else f"{fam.sign:+d}"
        triple = str(tuple(fam.triple()))
        print(f"{fam.family.name:<8}{fam.p:>3}{fam.s:>3}{sign:>5}  {triple:<16}{rank:>6}{closed:>8}  "
              f"{'ok' if tau_ok else 'differs':<4} {variant_ok}")


if __name__ == "__main__":
    main()
