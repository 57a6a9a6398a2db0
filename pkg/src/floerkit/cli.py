"""Command-line front end.

Exit status: 0 when the report has no violations, 1 when it does, 2 for
usage and input-format errors.  The report goes to standard output; with
``--out PATH`` it is written to ``PATH`` and a JSON sidecar to
``PATH.json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .algebra.complexes import check_chain_map, mapping_cone, specialize_hat, validate_complex
from .algebra.homology import homology_hat, truncated_homology
from .algebra.homotopy import MODES, normalize_mode
from .diagrams.pointed import diagram_complex, diagram_report
from .involutive import build_cfi_pair, build_iota, cone_invariant, describe_cone, iota_order
from .invariants import axiom_summary, check_strong, check_weak, path_independence, path_independence_all, assemble_system
from .io import (
    SchemaError,
    complex_from_json,
    diagram_from_json,
    functor_from_json,
    graph_from_json,
    involutive_job_from_json,
    map_from_json,
    read_json,
    system_from_json,
)
from .move_graph import connected_component, enumerate_paths, find_handleswaps, find_rectangles
from .reports import Report, StructureError
from .systems import validate_system

VERBS = ("validate", "homology", "cone", "involutive", "graph-rectangles", "graph-handleswap",
         "invariant-check", "paths", "system-validate")
MODE_CHOICES = sorted(set(MODES) | {"up-to-sign", "up-to-sign-and-homotopy"})


def _kind(obj) -> str:
    if isinstance(obj, str):
        return "diagram"
    if not isinstance(obj, dict):
        raise SchemaError("top-level value must be an object")
    if "kind" in obj:
        return str(obj["kind"])
    if "graph" in obj:
        return "functor"
    if "vertices" in obj:
        return "graph"
    if "index" in obj:
        return "system"
    if "psi" in obj:
        return "involutive"
    if "entries" in obj or "matrix" in obj or "correspondence" in obj:
        return "map"
    if "pieces" in obj:
        return "diagram"
    if "generators" in obj or "diagram" in obj:
        return "complex"
    raise SchemaError("cannot tell what kind of file this is")


def _load(path: str):
    if path.endswith(".json") or Path(path).exists():
        return read_json(path)
    return path, Path(".")      # a catalog name


# ------------------------------------------------------------------- verbs

def cmd_validate(args) -> Report:
    obj, base = _load(args.input)
    kind = _kind(obj)
    if kind == "complex":
        return validate_complex(complex_from_json(obj, base))
    if kind == "map":
        f = map_from_json(obj, base)
        rep = Report("chain map")
        rep.extend(validate_complex(f.source), "source:")
        rep.extend(validate_complex(f.target), "target:")
        rep.extend(check_chain_map(f))
        return rep
    if kind == "diagram":
        return diagram_report(diagram_from_json(obj, base), args.bound)
    if kind == "graph":
        return graph_from_json(obj, base).validate()
    if kind == "system":
        return validate_system(system_from_json(obj, base, args.mode), args.mode)
    if kind == "functor":
        F = functor_from_json(obj, base, args.mode)
        return check_weak(F)
    raise SchemaError(f"validate does not handle {kind!r} files")


def _complex_of(obj, base):
    kind = _kind(obj)
    if kind == "diagram":
        return diagram_complex(diagram_from_json(obj, base))
    if kind == "complex":
        return complex_from_json(obj, base)
    raise SchemaError(f"expected a complex or a diagram, got a {kind!r} file")


def cmd_homology(args) -> Report:
    obj, base = _load(args.input)
    c = _complex_of(obj, base)
    rep = validate_complex(c)
    if not rep.ok:
        return rep
    rep = Report("homology")
    hat = homology_hat(specialize_hat(c))
    rep.note(f"generators: {len(c)}")
    rep.note(f"hat: {hat.summary()}")
    rep.notes.extend(f"  {line}" for line in hat.lines())
    rep.data["hat"] = [list(g.__dict__.values()) for g in hat.groups]
    if args.truncation:
        t = truncated_homology(c, args.truncation)
        rep.note(f"U^{args.truncation}: {t.summary()}")
        rep.notes.extend(f"  {line}" for line in t.lines())
    return rep


def cmd_cone(args) -> Report:
    obj, base = _load(args.input)
    f = map_from_json(obj, base)
    rep = Report("mapping cone")
    chk = check_chain_map(f)
    if not chk.ok:
        rep.extend(chk)
        return rep
    cone = mapping_cone(f)
    rep.extend(validate_complex(cone))
    hat = homology_hat(specialize_hat(cone))
    rep.note(f"hat: {hat.summary()}")
    rep.notes.extend(f"  {line}" for line in hat.lines())
    return rep


def cmd_involutive(args) -> Report:
    obj, base = _load(args.input)
    d, psi, trunc = involutive_job_from_json(obj, base)
    if args.truncation:
        trunc = args.truncation
    data = build_iota(d, psi)
    order, rep = iota_order(data.iota)
    rep.title = f"involutive ({d.describe()})"
    pair = build_cfi_pair(data)
    for label, cone in (("Cone(1 + iota)", pair.plus), ("Cone(1 - iota)", pair.minus)):
        rep.note(f"{label}:")
        rep.notes.extend(f"  {line}" for line in describe_cone(cone))
        rep.note(f"  invariant (truncation {trunc}): {cone_invariant(cone, trunc)}")
    return rep


def cmd_graph_rectangles(args) -> Report:
    obj, base = _load(args.input)
    gr = graph_from_json(obj, base)
    rep = gr.validate()
    rep.title = "distinguished rectangles"
    rects = find_rectangles(gr)
    for r, c in rects:
        rep.note(f"type {c.type}: e={r.e} f={r.f} g={r.g} h={r.h}")
    counts = {t: sum(1 for _, c in rects if c.type == t) for t in range(1, 6)}
    rep.note("counts: " + ", ".join(f"type {t}: {n}" for t, n in counts.items()))
    rep.data["rectangles"] = [[c.type, *r.edge_ids()] for r, c in rects]
    return rep


def cmd_graph_handleswap(args) -> Report:
    obj, base = _load(args.input)
    gr = graph_from_json(obj, base)
    rep = gr.validate()
    rep.title = "simple handleswaps"
    found = find_handleswaps(gr)
    for t, ev in found:
        rep.note(f"e={t.e} f={t.f} g={t.g}")
        rep.notes.extend(f"  {line}" for line in ev)
    rep.note(f"handleswaps: {len(found)}")
    rep.data["handleswaps"] = [[t.e, t.f, t.g] for t, _ in found]
    return rep


def cmd_invariant_check(args) -> Report:
    obj, base = _load(args.input)
    F = functor_from_json(obj, base, args.mode)
    rep = Report(f"Heegaard invariant check ({F.mode})")
    rep.extend(check_weak(F), "weak:")
    strong = check_strong(F)
    rep.extend(strong)
    for name, ok in axiom_summary(strong).items():
        rep.note(f"{name}: {'pass' if ok else 'FAIL'}")
    return rep


def cmd_paths(args) -> Report:
    obj, base = _load(args.input)
    kind = _kind(obj)
    if kind == "graph":
        if not (args.source and args.target):
            raise SchemaError("listing paths in a graph needs --from and --to")
        gr = graph_from_json(obj, base)
        rep = Report(f"paths {args.source} -> {args.target} (length <= {args.max_len})")
        for v in (args.source, args.target):
            if v not in gr.vertices:
                raise SchemaError(f"unknown vertex {v!r}")
        paths = enumerate_paths(gr, args.source, args.target, args.max_len)
        for p in paths:
            rep.note(" -> ".join(p))
        rep.note(f"simple paths: {len(paths)}")
        return rep
    F = functor_from_json(obj, base, args.mode)
    if args.source or args.target:
        if not (args.source and args.target):
            raise SchemaError("give both --from and --to")
        for v in (args.source, args.target):
            if v not in F.graph.vertices:
                raise SchemaError(f"unknown vertex {v!r}")
        return path_independence(F, args.source, args.target, args.max_len)
    return path_independence_all(F, args.max_len)


def cmd_system_validate(args) -> Report:
    obj, base = _load(args.input)
    kind = _kind(obj)
    if kind == "functor":
        F = functor_from_json(obj, base, args.mode)
        start = args.source or sorted(F.graph.vertices)[0]
        if start not in F.graph.vertices:
            raise SchemaError(f"unknown vertex {start!r}")
        s = assemble_system(F, connected_component(F.graph, start))
    else:
        s = system_from_json(obj, base, args.mode)
    return validate_system(s, args.mode)


HANDLERS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "cone": cmd_cone,
    "involutive": cmd_involutive,
    "graph-rectangles": cmd_graph_rectangles,
    "graph-handleswap": cmd_graph_handleswap,
    "invariant-check": cmd_invariant_check,
    "paths": cmd_paths,
    "system-validate": cmd_system_validate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="floerkit", description="Z[U] complexes, torus diagrams, move graphs and naturality checks")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("input", help="input file (JSON) or a catalog diagram name")
    p.add_argument("--mode", choices=MODE_CHOICES, default=None, help="comparison mode (default: from the file, else strict)")
    p.add_argument("--max-len", type=int, default=6, help="maximum path length (default 6)")
    p.add_argument("--bound", type=int, default=3, help="coefficient bound for admissibility (default 3)")
    p.add_argument("--truncation", type=int, default=None, help="U-truncation level")
    p.add_argument("--from", dest="source", default=None, help="start vertex")
    p.add_argument("--to", dest="target", default=None, help="end vertex")
    p.add_argument("--out", default=None, help="write the report here and a JSON sidecar next to it")
    return p


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.mode is not None:
        args.mode = normalize_mode(args.mode)
    if args.max_len < 1 or args.bound < 0 or (args.truncation is not None and args.truncation < 1):
        print("floerkit: --max-len and --truncation must be positive, --bound nonnegative", file=sys.stderr)
        return 2
    try:
        rep = HANDLERS[args.verb](args)
    except (SchemaError, StructureError) as exc:
        print(f"floerkit: input error: {exc}", file=sys.stderr)
        return 2
    text = rep.to_text()
    if args.out:
        Path(args.out).write_text(text)
        side = dict(rep.to_dict(), verb=args.verb)
        Path(args.out + ".json").write_text(json.dumps(side, indent=2, sort_keys=True) + "\n")
    stdout.write(text)
    return 0 if rep.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
