"""Lower bounds on quantum violations of the two genuine LF facets by see-saw.

Each round replaces the state by the top eigenvector of the Bell operator and
each observable by the sign of its effective operator; the value never drops.

Run: python demos/seesaw_search.py   (about a minute, mostly the qutrit case)
"""
from lfpoly import LIBRARY, seesaw_maximize, white_noise_tolerance

for name, dims, restarts in (("brukner", 2, 20), ("genuine-lf-1", 2, 50), ("genuine-lf-2", 3, 200)):
    ineq = LIBRARY[name]
    r = seesaw_maximize(ineq, dims, dims, restarts=restarts, seed=0)
    eps = white_noise_tolerance(ineq, r.state, r.alice, r.bob)
    schmidt = ", ".join(f"{x:.3f}" for x in r.schmidt)
    print(f"{ineq.label:<20} d={dims}: {r.value:.5f} > {ineq.bound}, Schmidt ({schmidt}), "
          f"white-noise tolerance {eps:.4f}")
