"""Exact membership with certificates anyone can re-check.

The mu = 0.80 state of the experiment violates a Bell inequality but sits
inside the LF polytope.  Inside verdicts come with convex weights over
vertices, outside verdicts with a separating facet.

Run: python demos/membership_certificates.py
"""
from lfpoly import (
    LIBRARY, Scenario, behavior_from_strategy, build_polytope, classify, evaluate, lp_membership,
    rho_mu, verify_certificate,
)
from lfpoly.reps import HRepresentation
from lfpoly.scenario import to_exact_collins_gisin
from lfpoly.seesaw import FIG4_ANGLES

s = Scenario(3, 2)
behavior = behavior_from_strategy(rho_mu(0.80), FIG4_ANGLES.alice(), FIG4_ANGLES.bob())
# quantum statistics are floats; round them to denominator 1e9 and certify that point
point, radius = to_exact_collins_gisin(behavior)
print(f"Bell non-LF value at mu=0.80: {evaluate(LIBRARY['bell-non-lf'], behavior):.4f} (bound 2)")
print(f"rounding radius: {radius:.2e}")

for kind in ("lf", "lhv"):
    poly = build_polytope(kind, s, validate=False)
    cert = lp_membership(point, poly.vertices, facets=poly.facets)
    line = f"{kind.upper():>3}: {cert.verdict}, certificate verified: {verify_certificate(cert, point, poly.vertices)}"
    if cert.inside:
        line += f", {len(cert.weights)} vertices carry weight"
    else:
        label = classify(HRepresentation([cert.separator]), s, strict=False)[0].label
        line += f", separator class: {label}"
    print(line)
