"""Command-line front end.

Each subcommand reads one JSON document (``--fixture PATH`` or stdin) and
writes one JSON document (``--out PATH`` or stdout).  Malformed input exits
with status 2 and an ``{"error": ...}`` document; a failing law under
``verify`` exits with status 1.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import algebra as alg_mod
from .errors import ParseError, QuadNormError
from .norm import norm_hom, norm_quad
from .quadratic import discriminant, star
from .descent import glue_norm
from .rings import Element, ring_from_json
from .serialize import (
    descent_from_json,
    descent_to_json,
    dumps,
    element_to_json,
    extension_from_json,
    hom_from_json,
    hom_to_json,
    quad_from_json,
    quad_to_json,
)


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"input is missing {key!r}")
    return doc[key]


def cmd_norm_quad(doc):
    ext = extension_from_json(_field(doc, "extension"))
    q = quad_from_json(_field(doc, "quad"), ext.ring)
    return {"quad": quad_to_json(norm_quad(ext, q))}


def cmd_norm_hom(doc):
    ext = extension_from_json(_field(doc, "extension"))
    f = hom_from_json(_field(doc, "hom"), ext.ring)
    return {"hom": hom_to_json(norm_hom(ext, f))}


def _base_of(doc):
    return ring_from_json(doc["base"]) if "base" in doc else None


def cmd_star(doc):
    base = _base_of(doc)
    if "quads" in doc:
        quads = doc["quads"]
        if not isinstance(quads, list) or len(quads) != 2:
            raise ParseError("'quads' must hold exactly two quadratics")
        p, q = quads
    else:
        p, q = _field(doc, "p"), _field(doc, "q")
    return {"quad": quad_to_json(star(quad_from_json(p, base), quad_from_json(q, base)))}


def cmd_disc(doc):
    q = quad_from_json(_field(doc, "quad"), _base_of(doc))
    return {"disc": element_to_json(discriminant(q))}


def cmd_glue_norm(doc):
    return descent_to_json(glue_norm(descent_from_json(doc)))


def _algebra_element(doc):
    alg = alg_mod.algebra_from_json(_field(doc, "algebra"))
    x = alg.ring.element_from_json(_field(doc, "element"))
    return alg, Element(alg.ring, x)


def cmd_char_poly(doc):
    _, x = _algebra_element(doc)
    return {"coeffs": [element_to_json(c) for c in alg_mod.char_poly_coeffs(x)]}


def cmd_sn(doc):
    _, x = _algebra_element(doc)
    return {"norm": element_to_json(alg_mod.norm_sn(x)), "trace": element_to_json(alg_mod.trace(x))}


COMMANDS = {
    "norm-quad": cmd_norm_quad,
    "norm-hom": cmd_norm_hom,
    "star": cmd_star,
    "disc": cmd_disc,
    "glue-norm": cmd_glue_norm,
    "char-poly": cmd_char_poly,
    "sn": cmd_sn,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadnorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--fixture", help="input JSON file (default: stdin)")
        p.add_argument("--out", help="output file (default: stdout)")
    v = sub.add_parser("verify", help="run the randomized law checks")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=200)
    v.add_argument("--law", default="all", help="law name, comma-separated names, or 'all'")
    v.add_argument("--jobs", type=int, default=1, help="worker processes (laws run in parallel)")
    v.add_argument("--timings", action="store_true", help="include wall-clock seconds per law")
    v.add_argument("--list", action="store_true", help="print the law names and exit")
    v.add_argument("--fixture", help="optional JSON with seed/cases/laws overrides")
    v.add_argument("--out", help="output file (default: stdout)")
    return parser


class _Exit(Exception):
    def __init__(self, code, doc):
        self.code = code
        self.doc = doc


def _error(kind, message):
    return {"error": {"type": kind, "message": message}}


def _read(path):
    try:
        text = open(path, encoding="utf-8").read() if path else sys.stdin.read()
    except OSError as exc:
        raise _Exit(2, _error("IOError", str(exc))) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Exit(2, _error("ParseError", f"invalid JSON: {exc}")) from None


def _verify(args):
    from .verify import law_names, run_verify

    if args.list:
        return 0, {"laws": law_names()}
    seed, cases, laws = args.seed, args.cases, args.law
    if args.fixture:
        doc = _read(args.fixture)
        seed = int(doc.get("seed", seed))
        cases = int(doc.get("cases", cases))
        laws = doc.get("laws", laws)
    if isinstance(laws, str) and laws != "all":
        laws = [s.strip() for s in laws.split(",") if s.strip()]
    if cases < 1:
        return 2, _error("ParseError", "--cases must be at least 1")
    try:
        report = run_verify(seed, cases, laws, jobs=max(1, args.jobs))
    except KeyError as exc:
        return 2, _error("UnknownLaw", str(exc.args[0]))
    return (0 if report.ok else 1), report.to_json(timings=args.timings)


def run_subcommand(argv) -> tuple[int, dict]:
    """Run one command; returns ``(exit_code, json_document)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), _error("UsageError", "bad command line")
    if args.command == "verify":
        try:
            return _verify(args)
        except _Exit as exc:
            return exc.code, exc.doc
    try:
        doc = _read(args.fixture)
        return 0, COMMANDS[args.command](doc)
    except _Exit as exc:
        return exc.code, exc.doc
    except QuadNormError as exc:
        return 2, _error(type(exc).__name__, str(exc))
    except (KeyError, TypeError, ValueError) as exc:
        return 2, _error("ParseError", f"{type(exc).__name__}: {exc}")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, doc = run_subcommand(argv)
    text = dumps(doc) + "\n"
    out = None
    for i, a in enumerate(argv):
        if a == "--out" and i + 1 < len(argv):
            out = argv[i + 1]
        elif a.startswith("--out="):
            out = a.split("=", 1)[1]
    if out and code != 2:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
