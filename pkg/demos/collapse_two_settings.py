"""With only two settings per party, asking the friend leaves a single
"other" setting, and every one-setting no-signalling box is deterministic.
The LF polytope then coincides with the Bell polytope.

Run: python demos/collapse_two_settings.py
"""
from lfpoly import Scenario, build_polytope
from lfpoly.builders import ns_vertices

for outcomes in (2, 3):
    s = Scenario(2, outcomes)
    boxes = ns_vertices(Scenario(1, outcomes))
    lf, lhv = build_polytope("lf", s), build_polytope("lhv", s)
    print(f"O={outcomes}: NS(1,{outcomes}) has {len(boxes)} vertices, all deterministic; "
          f"LF has {len(lf.vertices)} vertices / {len(lf.facets)} facets, "
          f"identical to LHV: {lf.facets.as_set() == lhv.facets.as_set()}")
