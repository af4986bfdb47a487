#!/usr/bin/env python3
"""Builds the bundled fan files from projective spaces by products,
projective bundles and star subdivisions. Rerun to regenerate data/fans."""
import itertools
import json
import math
import os

import numpy as np
from scipy.spatial import ConvexHull, HalfspaceIntersection

HERE = os.path.dirname(os.path.abspath(__file__))


class Fan:
    def __init__(self, rays, cones, basis=None):
        self.rays = [tuple(r) for r in rays]
        self.cones = [tuple(sorted(c)) for c in cones]
        self.basis = dict(basis or {})

    @property
    def rank(self):
        return len(self.rays[0])

    def ray_index(self, v):
        return self.rays.index(tuple(v))

    def blowup(self, cone_rays, name, strict=()):
        """Star subdivision at the sum of the given rays. Basis classes are
        pulled back except those listed in `strict`, which keep their
        strict transform. The exceptional divisor is added as `name`."""
        tau = sorted(self.ray_index(v) for v in cone_rays)
        new = tuple(int(x) for x in np.sum([self.rays[i] for i in tau], axis=0))
        idx = len(self.rays)
        cones = []
        for c in self.cones:
            if set(tau) <= set(c):
                for r in tau:
                    cones.append(tuple(sorted([x for x in c if x != r] + [idx])))
            else:
                cones.append(c)
        basis = {}
        for k, coeffs in self.basis.items():
            extra = 0 if k in strict else sum(coeffs[i] for i in tau)
            basis[k] = list(coeffs) + [extra]
        basis[name] = [0] * len(self.rays) + [1]
        return Fan(self.rays + [new], cones, basis)

    def json(self, **extra):
        out = {"rank": self.rank, "rays": [list(r) for r in self.rays],
               "max_cones": [list(c) for c in sorted(self.cones)],
               "basis_map": self.basis}
        out.update(extra)
        return out


def dump(obj, path):
    lines = ["{"]
    items = list(obj.items())
    for k, (key, val) in enumerate(items):
        sep = "," if k + 1 < len(items) else ""
        if key in ("rays", "max_cones"):
            inner = ",\n    ".join(json.dumps(x) for x in val)
            lines.append('  "%s": [\n    %s\n  ]%s' % (key, inner, sep))
        elif key == "basis_map":
            inner = ",\n    ".join("%s: %s" % (json.dumps(n), json.dumps(c)) for n, c in val.items())
            lines.append('  "basis_map": {\n    %s\n  }%s' % (inner, sep))
        else:
            lines.append("  %s: %s%s" % (json.dumps(key), json.dumps(val), sep))
    lines.append("}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def projective_space(n, name="H"):
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = [c for c in itertools.combinations(range(n + 1), n)]
    return Fan(rays, cones, {name: [0] * n + [1]})


def product(f, g):
    a, b = f.rank, g.rank
    rays = [tuple(r) + (0,) * b for r in f.rays] + [(0,) * a + tuple(r) for r in g.rays]
    off = len(f.rays)
    cones = [tuple(c) + tuple(x + off for x in d) for c in f.cones for d in g.cones]
    basis = {k: list(v) + [0] * len(g.rays) for k, v in f.basis.items()}
    basis.update({k: [0] * len(f.rays) + list(v) for k, v in g.basis.items()})
    return Fan(rays, cones, basis)


def bundle_p1(base, twist):
    """P(O + O(D)) over a toric base, D given by integer weights per base ray."""
    n = base.rank
    rays = [tuple(r) + (t,) for r, t in zip(base.rays, twist)]
    up, down = len(rays), len(rays) + 1
    rays += [(0,) * n + (1,), (0,) * n + (-1,)]
    cones = [tuple(c) + (f,) for c in base.cones for f in (up, down)]
    basis = {k: list(v) + [0, 0] for k, v in base.basis.items()}
    basis["F"] = [0] * len(base.rays) + [1, 0]
    return Fan(rays, cones, basis)


def anticanonical_degree(fan):
    """(-K)^3 as 3! times the volume of {m : <m, v> >= -1}; Fano fans only."""
    rays = np.array(fan.rays, dtype=float)
    hs = np.hstack([-rays, -np.ones((len(rays), 1))])
    pts = HalfspaceIntersection(hs, np.zeros(fan.rank)).intersections
    vol = ConvexHull(pts).volume
    return int(round(vol * math.factorial(fan.rank)))


def is_face_fan(fan):
    """True when the max cones are exactly the facets of conv(rays), i.e.
    the fan is the face fan of a simplicial polytope with rays as vertices."""
    hull = ConvexHull(np.array(fan.rays, dtype=float))
    if len(hull.vertices) != len(fan.rays):
        return False
    facets = set()
    for simplex in hull.simplices:
        facets.add(tuple(sorted(simplex)))
    return facets == set(fan.cones)


def p2(name="H"):
    return projective_space(2, name)


def p1(name):
    return projective_space(1, name)


def main():
    e1, e2, e3, e0 = (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)
    P3 = projective_space(3)
    fans = {}

    fans["1.17"] = P3
    bl_line = P3.blowup([e1, e2], "E1")
    fans["2.33"] = bl_line
    fans["2.34"] = product(p1("A"), p2("B"))
    bl_pt = P3.blowup([e1, e2, e3], "E1")
    fans["2.35"] = bl_pt
    fans["2.36"] = bundle_p1(p2("H"), [0, 0, 2])
    u = (1, 1, 0)
    two_lines = bl_line.blowup([e3, e0], "E2")
    fans["3.25"] = two_lines
    fans["3.26"] = bl_line.blowup([e2, e3, e0], "E2")
    fans["3.27"] = product(product(p1("A"), p1("B")), p1("C"))
    F1 = p2("H").blowup([(1, 0), (0, 1)], "E")
    fans["3.28"] = product(p1("A"), F1)
    fans["3.29"] = bl_pt.blowup([(1, 1, 1), e1], "E2")
    fans["3.30"] = bl_pt.blowup([e1, e2], "E2")
    p1p1 = product(p1("A"), p1("B"))
    fans["3.31"] = bundle_p1(p1p1, [0, 1, 0, 1])
    fans["4.9"] = two_lines.blowup([u, e3], "E3", strict=("E1",))
    S7 = p2("H").blowup([(1, 0), (0, 1)], "E1").blowup([(0, 1), (-1, -1)], "E2")
    fans["4.10"] = product(p1("A"), S7)
    p1f1 = product(p1("A"), F1)
    fans["4.11"] = p1f1.blowup([(1, 0, 0), (0, 1, 1)], "E2")
    fans["4.12"] = bl_line.blowup([u, e3], "E2", strict=("E1",)).blowup([u, e0], "E3", strict=("E1",))
    fans["5.2"] = two_lines.blowup([u, e3], "E3", strict=("E1",)).blowup([u, e0], "E4", strict=("E1",))
    S6 = S7.blowup([(1, 0), (-1, -1)], "E3")
    fans["5.3"] = product(p1("A"), S6)

    # Ambient spaces and surfaces used by the case files.
    ambient = {}
    ambient["P1"] = p1("H")
    ambient["P2"] = p2("H")
    ambient["P1xP1"] = p1p1
    ambient["P1xP1_ac"] = product(p1("a"), p1("c"))
    ambient["P1xP1_ab"] = product(p1("a"), p1("b"))
    ambient["F1_he"] = p2("h").blowup([(1, 0), (0, 1)], "e")
    ambient["P3"] = P3
    ambient["P1xP2"] = fans["2.34"]
    ambient["P1xP1xP1"] = fans["3.27"]
    ambient["Bl_pt_P3"] = bl_pt
    ambient["Bl_line_P3"] = bl_line
    ambient["Bl_two_lines_P3"] = two_lines
    # P3 blown up along a line, then along the fibre over a point of it.
    ambient["Bl_line_fibre_P3"] = bl_line.blowup([u, e3], "E2", strict=("E1",))
    # P1 x P2 blown up along P1 x pt, i.e. P1 x F1 with basis A, B, E2.
    p1p2 = fans["2.34"]
    ambient["Bl_curve_P1xP2"] = p1p2.blowup([(0, 1, 0), (0, 0, 1)], "E2")
    # P1 x Bl_pt P2 with A, B (ruling) and H (pullback of the line class).
    y47 = product(p1("A"), p2("H").blowup([(1, 0), (0, 1)], "E"))
    bmap = dict(y47.basis)
    bmap = {"A": bmap["A"], "B": [h - e for h, e in zip(bmap["H"], bmap["E"])], "H": bmap["H"]}
    y47.basis = bmap
    ambient["P1xF1"] = y47
    ambient["P2xP2"] = product(p2("A"), p2("B"))
    ambient["P1xP1xP2"] = product(product(p1("A"), p1("B")), p2("C"))
    P4 = projective_space(4)
    ambient["P4"] = P4
    f1, f2, f3, f4, f0 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)
    ambient["Bl_two_lines_P4"] = P4.blowup([f1, f2, f3], "E1").blowup([f3, f4, f0], "E2")
    g = P4.blowup([f1, f2], "E1")
    uu = (1, 1, 0, 0)
    g = g.blowup([uu, f3, f4], "E2", strict=("E1",))
    g = g.blowup([uu, f3, f0], "E3", strict=("E1",))
    g = g.blowup([uu, f4, f0], "E4", strict=("E1",))
    ambient["G_plane_three_fibres_P4"] = g

    fan_dir = os.path.join(HERE, "fans")
    os.makedirs(fan_dir, exist_ok=True)
    for fid, fan in fans.items():
        assert is_face_fan(fan), fid
        out = fan.json(id="(%s)" % fid, toric_fano=True)
        dump(out, os.path.join(fan_dir, "fano_%s.json" % fid))
        print(fid, len(fan.rays), anticanonical_degree(fan))
    for name, fan in ambient.items():
        dump(fan.json(id=name), os.path.join(fan_dir, "%s.json" % name))


if __name__ == "__main__":
    main()
