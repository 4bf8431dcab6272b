"""Two non-nilpotent groups where bounded directional derivatives do not force polynomials."""
from nilpoly import verify_builtin_counterexample

for name in ("aff_plus", "sl2r"):
    rep = verify_builtin_counterexample(name)
    print(f"{name}: {rep.verdict}")
    for label, ok in rep.checks:
        print(f"  [{'ok' if ok else 'FAILED'}] {label}")
