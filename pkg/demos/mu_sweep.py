"""Which inequalities does the partially mixed singlet violate as mu grows?

Observables sit on the equator of the Bloch sphere, so marginals vanish and
every left-hand side is mu times a fixed slope.

Run: python demos/mu_sweep.py
"""
from lfpoly.seesaw import FIG4_ANGLES, closed_form_threshold, mu_sweep, sweep_inequalities

print("violation onset (closed form):")
for label, ineq in sorted(sweep_inequalities(), key=lambda p: closed_form_threshold(FIG4_ANGLES, p[1])):
    print(f"  {label:<13} mu > {closed_form_threshold(FIG4_ANGLES, ineq):.4f}")

mus = (0.74, 0.80, 0.81, 0.87, 0.92, 0.99)
rows = mu_sweep(FIG4_ANGLES, mus)
print()
for mu in mus:
    hits = [r["label"] for r in rows if r["mu"] == mu and r["violated"]]
    print(f"mu={mu:.2f}: {', '.join(hits) or 'nothing violated'}")
