"""Command line front door.

Every command reads one JSON document (``--input``), prints one JSON report to
stdout and exits 0 on success, 1 when a verdict fails and 2 on bad input.
Errors go to stderr as ``{"error": code, "message": ...}``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import coxeter as cx
from .chambers import Building, ball, realize, verify_building, _hashable, _jsonable
from .cover import Cover, CoveredBall, FoldingData, flag_nerve_check, surgery, verify_cover
from .coxeter import CoxeterMatrix
from .errors import BuildcoverError, InvalidInput
from .products import SquareSpec, product_cover_pipeline, product_matrix, spec_from_json, square_nerve
from .simplicial import SimplicialComplex, punctured_check, reduced_homology

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Failed(Exception):
    """A verdict failed; carries the report to print."""

    def __init__(self, report: dict):
        super().__init__("verdict failed")
        self.report = report


def _coxeter_of(doc) -> CoxeterMatrix:
    if "matrix" in doc:
        return CoxeterMatrix.from_json(doc)
    for key in ("coxeter", "target"):
        if key in doc:
            return CoxeterMatrix.from_json(doc[key])
    raise InvalidInput("document carries no Coxeter matrix")


def _complex_of(doc) -> SimplicialComplex:
    return SimplicialComplex.from_json(doc["complex"] if "complex" in doc else doc)


def _base(B: Building, doc, arg):
    if arg is not None:
        if not 0 <= arg < len(B):
            raise InvalidInput(f"base index {arg} out of range 0..{len(B) - 1}")
        return B.chambers[arg]
    if "base" in doc:
        return _hashable(doc["base"])
    return B.chambers[0]


def _verdict(report: dict, verdict) -> dict:
    report["verdict"] = verdict.to_json()
    if not verdict:
        raise Failed(report)
    return report


# -- commands ------------------------------------------------------------


def coxeter_reduce(doc, args):
    M = _coxeter_of(doc)
    if args.word is None:
        raise InvalidInput("--word is required")
    word = [a for a in args.word.split(",") if a]
    reduced = cx.tits_reduce(M.check_word(word), M, budget=args.budget or cx.DEFAULT_BUDGET)
    return {"reduced": list(reduced), "length": len(reduced)}


def coxeter_spherical(doc, args):
    M = _coxeter_of(doc)
    P = cx.spherical_poset(M)
    return {
        "count": len(P),
        "spherical": [list(M.sort(T)) for T in P],
        "maximal": [list(M.sort(T)) for T in P.maximal()],
        "finite": cx.is_spherical(M.generators, M),
    }


def coxeter_nerve(doc, args):
    L = cx.nerve(_coxeter_of(doc))
    return {"complex": L.to_json(), "f_vector": list(L.f_vector())}


def building_verify(doc, args):
    B = Building.from_json(doc)
    report = {"chambers": len(B), "thickness": {s: list(v) for s, v in B.thickness().items()}}
    return _verdict(report, verify_building(B))


def building_ball(doc, args):
    B = Building.from_json(doc)
    base = _base(B, doc, args.base)
    radius = 1 if args.radius is None else args.radius
    chambers = ball(B, base, radius)
    return {"base": _jsonable(base), "radius": radius, "count": len(chambers),
            "chambers": [_jsonable(c) for c in sorted(chambers, key=B.order)]}


def building_realize(doc, args):
    B = Building.from_json(doc)
    if args.complex:
        with open(args.complex) as fh:
            L = _complex_of(json.load(fh))
    elif args.simplex:
        L = SimplicialComplex.from_facets([B.coxeter.generators])
    else:
        L = cx.nerve(B.coxeter)
    U = realize(B, L)
    H = reduced_homology(U)
    return {"f_vector": list(U.f_vector()), "betti": {str(k): v for k, v in H.betti.items()},
            "homology": H.to_json()}


def _cover(doc, args) -> tuple[Cover, object]:
    if "building" not in doc:
        raise InvalidInput("folding document needs an embedded 'building'")
    fd = FoldingData.from_json(doc)
    B = Building.from_json(doc["building"])
    return Cover(fd, B), _base(B, doc, args.base)


def cover_build(doc, args):
    cover, base = _cover(doc, args)
    radius = 2 if args.radius is None else args.radius
    b = cover.ball(base, radius, **({"budget": args.budget} if args.budget else {}))
    report = {"classes": len(b), "sphere_sizes": b.sphere_sizes(), "radius": radius,
              "surgered": surgery(cover.folding).to_json()}
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(b.to_json(), fh, indent=1, sort_keys=True)
    return report


def cover_verify(doc, args):
    if "classes" in doc:
        b = CoveredBall.from_json(doc)
    else:
        cover, base = _cover(doc, args)
        b = cover.ball(base, 4 if args.radius is None else args.radius)
    interior = b.radius - 1 if args.interior is None else args.interior
    report = {"classes": len(b), "radius": b.radius, "interior": interior,
              "flag": flag_nerve_check(b.folding).to_json()}
    return _verdict(report, verify_cover(b, interior))


def product_assemble(doc, args):
    spec = spec_from_json(doc)
    M = product_matrix(spec.as_product() if isinstance(spec, SquareSpec) else spec)
    return {"coxeter": M.to_json(), "spherical_count": len(cx.spherical_poset(M))}


def product_nerve(doc, args):
    spec = spec_from_json(doc)
    if isinstance(spec, SquareSpec):
        sn = square_nerve(spec)
        return {"complex": sn.complex.to_json(), "f_vector": list(sn.complex.f_vector()),
                "octahedral": sn.complex == sn.octahedral,
                "embedding": {s: list(v) for s, v in sn.embedding.items()}}
    L = cx.nerve(product_matrix(spec))
    return {"complex": L.to_json(), "f_vector": list(L.f_vector())}


def product_cover(doc, args):
    spec = spec_from_json(doc)
    if "buildings" not in doc:
        raise InvalidInput("product document needs 'buildings' for the cover")
    buildings = [Building.from_json(B) for B in doc["buildings"]]
    b = product_cover_pipeline(spec, buildings, 2 if args.radius is None else args.radius)
    return {"classes": len(b), "sphere_sizes": b.sphere_sizes(), "radius": b.radius}


def homology_compute(doc, args):
    L = _complex_of(doc)
    H = reduced_homology(L)
    return {"f_vector": list(L.f_vector()), "betti": {str(k): v for k, v in H.betti.items()},
            "homology": H.to_json()}


def homology_punctured(doc, args):
    if args.degree is None:
        raise InvalidInput("--degree is required")
    report = punctured_check(_complex_of(doc), args.degree).to_json()
    if not report["ph"]:
        raise Failed(report)
    return report


COMMANDS = {
    "coxeter": {"reduce": coxeter_reduce, "spherical": coxeter_spherical, "nerve": coxeter_nerve},
    "building": {"verify": building_verify, "ball": building_ball, "realize": building_realize},
    "cover": {"build": cover_build, "verify": cover_verify},
    "product": {"assemble": product_assemble, "nerve": product_nerve, "cover": product_cover},
    "homology": {"compute": homology_compute, "punctured": homology_punctured},
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="buildcover", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    for group, actions in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="action", required=True)
        for action in actions:
            p = sub.add_parser(action)
            p.add_argument("--input", required=True, help="JSON document ('-' for stdin)")
            p.add_argument("--radius", type=int)
            p.add_argument("--interior", type=int)
            p.add_argument("--degree", type=int)
            p.add_argument("--budget", type=int)
            p.add_argument("--base", type=int, help="index into the chamber list")
            p.add_argument("--word", help="comma separated generators")
            p.add_argument("--output", help="also write the built ball here")
            if (group, action) == ("building", "realize"):
                kind = p.add_mutually_exclusive_group()
                kind.add_argument("--nerve", action="store_true", help="use the nerve (default)")
                kind.add_argument("--simplex", action="store_true", help="use the full simplex")
                kind.add_argument("--complex", help="path to a complex JSON")
    return parser


def _read(path: str) -> tuple[dict, str]:
    raw = sys.stdin.read() if path == "-" else open(path).read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidInput("top-level JSON value must be an object")
    return doc, hashlib.sha256(raw.encode()).hexdigest()


def _emit(report: dict, args) -> None:
    full = {"command": f"{args.group} {args.action}", **report}
    json.dump(full, sys.stdout, sort_keys=True, default=str)
    sys.stdout.write("\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, digest = _read(args.input)
        report = COMMANDS[args.group][args.action](doc, args)
    except Failed as exc:
        _emit({"input_sha256": digest, **exc.report}, args)
        return EXIT_FAIL
    except OSError as exc:
        json.dump({"error": "io-error", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_INPUT
    except BuildcoverError as exc:
        json.dump({"error": exc.code, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_INPUT
    except (KeyError, TypeError, ValueError) as exc:
        json.dump({"error": "invalid-input", "message": repr(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_INPUT
    _emit({"input_sha256": digest, **report}, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
