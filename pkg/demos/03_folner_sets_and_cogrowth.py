"""Folner sets and Grigorchuk cogrowth.

Two more group-side amenability diagnostics.  The Folner search looks
for finite sets that are nearly invariant under translation (success
certifies a small defect; failure is only a budget statement).  The
cogrowth of a normal subgroup N of a free group F_k reaches the maximal
rate 2k-1 exactly when F_k/N is amenable.
"""
import symdyn as sd

# --- Folner search --------------------------------------------------------
for name, group in [("Z", sd.FreeAbelianGroup(1)),
                    ("Z^2", sd.FreeAbelianGroup(2)),
                    ("lamplighter", sd.LamplighterGroup()),
                    ("F2", sd.FreeGroup(2))]:
    res = sd.folner_search(group, 0.1, max_radius=8, max_size=60_000)
    status = "FOUND" if res.success else "not found"
    print(f"{name:12s} eps=0.1: {status:9s} best defect {res.defect:.4f} "
          f"(|F| = {len(res.subset)})  {res.note}")

# a concrete defect: the interval {0..19} in Z under +1
Z = sd.FreeAbelianGroup(1)
F = {(i,) for i in range(20)}
print("\ndefect of {0..19} under +1:", sd.folner_defect(Z, F, [(1,)]))

# --- cogrowth --------------------------------------------------------------
print("\ncogrowth of kernels in F2 (target rate 2k-1 = 3):")
quotients = [
    ("F2 -> Z^2 (abelianized; amenable)", sd.abelianization(2)),
    ("F2 -> Z   (kill b; amenable)", sd.kill_generators(2, ["b"])),
    ("F2 -> 1   (whole group; amenable)", sd.trivial_quotient(2)),
    ("F2 -> F2  (trivial kernel)", sd.free_identity_quotient(2)),
]
for name, q in quotients:
    cg = sd.cogrowth_estimate(q, 16)
    print(f"  {name:36s} counts {cg.counts[:6]} ... rate ~ {cg.rate_fit:.4f}")
