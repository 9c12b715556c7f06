"""Sphere sizes of covered-building balls against the thickness formula.

For a building whose s-panels all have q_s chambers, the number of chambers at
Weyl distance w is the product of (q_s - 1) over a reduced word for w. The
script builds balls for a few foldings and prints both columns.
"""

import argparse
import math
import time
from dataclasses import dataclass

from buildcover import coxeter as cx
from buildcover import fixtures as fx
from buildcover.cover import Cover, surgery


@dataclass
class Case:
    name: str
    building: object
    folding: object


def formula(W, thickness: dict, radius: int) -> list[int]:
    sizes = [0] * (radius + 1)
    frontier = {(): ()}
    sizes[0] = 1
    seen = {()}
    for k in range(1, radius + 1):
        nxt = {}
        for w in frontier:
            for s in W.generators:
                v = cx.tits_reduce(w + (s,), W)
                if len(v) == k and v not in seen:
                    seen.add(v)
                    nxt[v] = ()
        sizes[k] = sum(math.prod(thickness[s] - 1 for s in v) for v in nxt)
        frontier = nxt
    return sizes


def cases() -> list[Case]:
    hexagon, fano, prism = fx.thin_dihedral(3), fx.fano(), fx.fano_prism()
    return [
        Case("hexagon / two points", hexagon, fx.two_point_folding(hexagon)),
        Case("Fano / two points", fano, fx.two_point_folding(fano)),
        Case("Fano prism / {s,u} deleted", prism, fx.fano_prism_folding(prism)),
        Case("Fano / identity", fano, fx.edge_folding(fano)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--radius", type=int, default=5)
    args = parser.parse_args()
    for case in cases():
        start = time.perf_counter()
        ball = Cover(case.folding, case.building).ball(case.building.chambers[0], args.radius)
        elapsed = time.perf_counter() - start
        W = surgery(case.folding)
        thickness = {s: len(case.building.panel(case.folding.f[s], case.building.chambers[0])) for s in W.generators}
        expected = formula(W, thickness, args.radius)
        status = "ok" if ball.sphere_sizes() == expected else "MISMATCH"
        print(f"{case.name:30s} built {ball.sphere_sizes()}  formula {expected}  {status}  ({elapsed:.2f}s)")


if __name__ == "__main__":
    main()
