"""Reduced homology of realizations U(C', K(L)) for the shipped foldings.

A nonzero first Betti number means the realization is not simply connected,
which is what makes the cover nontrivial.
"""

import argparse

from buildcover import coxeter as cx
from buildcover import fixtures as fx
from buildcover.chambers import realize
from buildcover.simplicial import reduced_homology


def main():
    argparse.ArgumentParser(description=__doc__.splitlines()[0]).parse_args()
    hexagon, fano, prism = fx.thin_dihedral(3), fx.fano(), fx.fano_prism()
    rows = [
        ("hexagon", hexagon, fx.two_point_folding(hexagon).L),
        ("hexagon", hexagon, fx.edge_folding(hexagon).L),
        ("Fano", fano, fx.two_point_folding(fano).L),
        ("Fano", fano, fx.edge_folding(fano).L),
        ("Fano prism", prism, fx.fano_prism_folding(prism).L),
        ("Fano prism", prism, cx.nerve(prism.coxeter)),
    ]
    for name, B, L in rows:
        U = realize(B, L)
        H = reduced_homology(U)
        nonzero = {d: r for d, r in H.betti.items() if r}
        print(f"{name:12s} L facets {L.facets()!s:40s} f={U.f_vector()}  betti={nonzero or 'acyclic'}")


if __name__ == "__main__":
    main()
