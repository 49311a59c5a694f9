"""JSON-lines polytope files, manifests and class tables."""
import hashlib
import json
import os

from .rational import format_fraction, to_fraction
from .reps import HRepresentation, VRepresentation


def vertices_lines(vrep):
    return [json.dumps({"vertex": [format_fraction(x) for x in v]}) for v in vrep.vertices]


def facets_lines(hrep):
    return [json.dumps({"coeffs": [str(c) for c in coeffs], "bound": str(bound)})
            for coeffs, bound in hrep.rows]


def _write_lines(path, lines):
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")


def write_vertices(path, vrep):
    _write_lines(path, vertices_lines(vrep))


def write_facets(path, hrep):
    _write_lines(path, facets_lines(hrep))


def read_vertices(path):
    with open(path) as fh:
        verts = [tuple(to_fraction(x) for x in json.loads(line)["vertex"]) for line in fh if line.strip()]
    return VRepresentation(verts)


def read_facets(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                obj = json.loads(line)
                rows.append((tuple(int(c) for c in obj["coeffs"]), int(obj["bound"])))
    return HRepresentation(rows)


def content_hash(*texts):
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
    return h.hexdigest()


def write_polytope(directory, polytope):
    """Write ``vertices.jsonl``, ``facets.jsonl`` and ``manifest.json``; returns the manifest."""
    os.makedirs(directory, exist_ok=True)
    vtext = "".join(line + "\n" for line in vertices_lines(polytope.vertices.sorted()))
    ftext = "".join(line + "\n" for line in facets_lines(polytope.facets.sorted()))
    with open(os.path.join(directory, "vertices.jsonl"), "w") as fh:
        fh.write(vtext)
    with open(os.path.join(directory, "facets.jsonl"), "w") as fh:
        fh.write(ftext)
    s = polytope.scenario
    manifest = {
        "scenario": [s.settings, s.outcomes],
        "kind": polytope.kind,
        "dimension": polytope.vertices.dimension,
        "vertices": len(polytope.vertices),
        "facets": len(polytope.facets),
        "vertices_sha256": content_hash(vtext),
        "facets_sha256": content_hash(ftext),
        "content_sha256": content_hash(vtext, ftext),
    }
    with open(os.path.join(directory, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def write_classes(path, classes):
    with open(path, "w") as fh:
        json.dump([c.to_json() for c in classes], fh, indent=1)
        fh.write("\n")
