"""A planar cut through the 15-dimensional correlation space.

The plane passes through the uniform point, an LF vertex built from a PR box,
and the rounded quantum optimum of Genuine LF facet 1.  Each grid point is
classified exactly against the LHV, LF and NS facet lists.

Run: python demos/slice_plane.py [out.csv]
"""
import collections
import sys

from lfpoly import Scenario, build_polytope, ns_facets
from lfpoly.slice import SlicePlane, run_slice, slice_csv_lines

s = Scenario(3, 2)
plane = SlicePlane.default(resolution=101)
rows = run_slice(plane, build_polytope("lhv", s, validate=False).facets,
                 build_polytope("lf", s, validate=False).facets, ns_facets(s))

regions = collections.Counter()
for *_, lhv, lf, ns in rows:
    regions["LHV" if lhv else "LF only" if lf else "NS only" if ns else "not a behavior"] += 1
for name, count in regions.most_common():
    print(f"{name:<15} {count:6d} grid points")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write("\n".join(slice_csv_lines(rows)) + "\n")
    print(f"wrote {sys.argv[1]}")
