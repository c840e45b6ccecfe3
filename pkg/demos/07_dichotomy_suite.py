"""The end-to-end dichotomy experiment.

Runs both suite presets: symbolic (full-shift extensions over the
standard groups, classified by the deficit of the holonomy-restricted
growth rate) and schottky (kernel critical exponents under amenable and
non-amenable quotients).  Equality holds exactly for the amenable
fibers; the free fibers show a definite gap.

Writes CSV tables next to this script; the same runs are available as
`symdyn suite symbolic` / `symdyn suite schottky`.
"""
import pathlib
import time

from symdyn.cli import dichotomy_suite

out = pathlib.Path(__file__).resolve().parent / "suite-output"
out.mkdir(exist_ok=True)

t0 = time.time()
sym = dichotomy_suite("symbolic", out)
print(f"symbolic preset [{time.time()-t0:.0f}s]:")
print(f"{'case':14s} {'P':>9s} {'G_hat':>9s} {'deficit':>9s} "
      f"{'verdict':>13s} {'expected':>9s}")
for row in sym["rows"]:
    print(f"{row['case']:14s} {row['P']:9.5f} {row['G_hat']:9.5f} "
          f"{row['deficit']:9.5f} {row['verdict']:>13s} {row['expected']:>9s}"
          + ("" if row["match"] else "   << MISMATCH"))
print("all hard expectations met:", sym["passed"])

t0 = time.time()
sch = dichotomy_suite("schottky", out)
print(f"\nschottky preset [{time.time()-t0:.0f}s]:")
print(f"{'case':24s} {'delta':>9s} {'delta0':>9s} {'diff':>8s} {'expected':>9s}")
for row in sch["rows"]:
    print(f"{row['case']:24s} {row['delta']:9.5f} {row['delta0']:9.5f} "
          f"{row['difference']:8.4f} {row['expected']:>9s}"
          + ("" if row["match"] else "   << MISMATCH"))
print("all hard expectations met:", sch["passed"])
print("\nCSV tables in", out)
