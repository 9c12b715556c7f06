"""Regenerate the JSON corpus in fixtures/ from the builders in buildcover.fixtures."""

import argparse
import json
from pathlib import Path

from buildcover import coxeter as cx
from buildcover import fixtures as fx
from buildcover.products import spec_to_json


def folding_doc(fd, B):
    return {**fd.to_json(), "building": B.to_json()}


def corpus() -> dict:
    hexagon, square, fano = fx.thin_dihedral(3), fx.thin_dihedral(4), fx.fano()
    ab_hexagon = hexagon.relabel({"s": "a", "t": "b"})
    docs = {
        "i2_3.coxeter": cx.dihedral(3).to_json(),
        "a3.coxeter": cx.type_a(3, ("a", "b", "c")).to_json(),
        "i2_3.thin": hexagon.to_json(),
        "i2_4.thin": square.to_json(),
        "fano.flags": fano.to_json(),
        "hexagon_product": fx.hexagon_product().to_json(),
        "corrupted_hexagon": fx.corrupted_hexagon().to_json(with_delta=True),
        "hexagon_dinf.folding": folding_doc(fx.two_point_folding(hexagon), hexagon),
        "fano_deleted_edge.folding": folding_doc(fx.two_point_folding(fano), fano),
        "hexagon_identity.folding": folding_doc(fx.edge_folding(hexagon), hexagon),
        "four_cycle.folding": fx.four_cycle_folding().to_json(),
        "hollow_triangle.folding": fx.hollow_triangle_folding().to_json(),
        "square_i2_3": {
            **spec_to_json(fx.square_of_dihedral(3)),
            "buildings": [ab_hexagon.to_json(), ab_hexagon.to_json()],
        },
        "square_dinf": spec_to_json(fx.square_of_dihedral(cx.INF)),
        "corrupted_hexagon_dinf.ball": fx.corrupted_cover_ball().to_json(),
    }
    for p in range(3):
        for n in range(1, 4):
            docs[f"octahedral_p{p}_n{n}.complex"] = fx.octahedral(p, n).to_json()
    return docs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in corpus().items():
        (out / f"{name}.json").write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        print(name)


if __name__ == "__main__":
    main()
