"""Command-line driver: load a workspace file, run one check, emit a report.

Exit codes: 0 the checked property holds / the search completed, 1 the
property fails (the report carries at least one witness), 2 usage or parse
error, 3 resource limit or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import braiding as br
from . import chains, diagrams, inverses
from .core import FinMap, FiniteSet, classify_map
from .dsl import Workspace, parse_workspace
from .errors import (
    CarrierTooLarge,
    RegcatError,
    SearchSpaceTooLarge,
    WorkspaceError,
)

USAGE_ERROR = 2
RESOURCE_ERROR = 3


@dataclass
class Report:
    command: str
    ok: bool
    result: dict
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "ok": self.ok,
            "result": self.result,
            "witnesses": sorted(self.witnesses, key=lambda w: json.dumps(w, sort_keys=True)),
            "counts": self.counts,
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        lines = [f"{self.command}: {'ok' if self.ok else 'FAIL'}"]
        for k, v in self.result.items():
            lines.append(f"  {k}: {v}")
        for k, v in self.counts.items():
            lines.append(f"  {k} = {v}")
        for w in self.witnesses:
            lines.append(f"  witness: {w}")
        return "\n".join(lines)

    @property
    def exit_code(self) -> int:
        return 1 if self.witnesses else 0


def _map_as_labels(m: FinMap) -> dict:
    return {m.dom.label(i): m.cod.label(v) for i, v in enumerate(m.table)}


def _cycle_as_json(c: diagrams.Cycle) -> dict:
    return {"base": c.base, "edges": list(c.edges)}


# --- subcommand handlers --------------------------------------------------------


def _cmd_check_map(ws: Workspace, ns) -> Report:
    f = ws.require_map(ns.map)
    cls = classify_map(f)
    g = inverses.section_inner_inverse(f)
    inv = inverses.invertibility_class(f)
    return Report(
        command="check-map",
        ok=True,
        result={
            "map": ns.map,
            "injective": cls.injective,
            "surjective": cls.surjective,
            "bijective": cls.bijective,
            "idempotent": cls.idempotent,
            "retraction": inv.retraction,
            "coretraction": inv.coretraction,
            "inner_inverse": _map_as_labels(g),
        },
    )


def _cmd_inverses(ws: Workspace, ns) -> Report:
    f = ws.require_map(ns.map)
    enum = inverses.enumerate_inverses(f, ns.kind, limit=ns.limit, max_space=ns.max_space)
    result = {"map": ns.map, "kind": ns.kind, "truncated": enum.truncated}
    if not ns.count_only:
        result["inverses"] = [_map_as_labels(g) for g in enum.maps]
    return Report(
        command="inverses",
        ok=True,
        result=result,
        counts={"inverses": enum.count},
    )


def _chain_from_names(ws: Workspace, base: FinMap, star_names: str) -> chains.StarChain:
    stars = [ws.require_map(n) for n in star_names.split(",") if n]
    return chains.make_chain(base, stars)


def _cmd_chain(ws: Workspace, ns) -> Report:
    f = ws.require_map(ns.map)
    if ns.search:
        found = chains.find_chains(f, ns.n, limit=ns.limit, max_space=ns.max_space)
        return Report(
            command="chain",
            ok=True,
            result={
                "map": ns.map,
                "order": ns.n,
                "truncated": found.truncated,
                "chains": [
                    [_map_as_labels(s) for s in c.stars] for c in found.chains
                ],
            },
            counts={"chains": len(found.chains)},
        )
    if not ns.stars:
        raise UsageError("chain requires either --search or --stars")
    chain = _chain_from_names(ws, f, ns.stars)
    if chain.order != ns.n:
        raise UsageError(f"--n {ns.n} does not match {chain.order} stars")
    verdict = chains.check_chain(chain)
    return Report(
        command="chain",
        ok=verdict.valid,
        result={
            "map": ns.map,
            "order": chain.order,
            "odd_closure": verdict.odd_closure,
            "even_closure": verdict.even_closure,
            "ef_form": verdict.ef_form,
            "obstructor": _map_as_labels(verdict.obstructor),
            "obstructor_idempotent": verdict.obstructor_idempotent,
        },
        witnesses=[
            {"equation": eq, "element": el} for eq, el in verdict.failures
        ],
    )


def _cmd_projector(ws: Workspace, ns) -> Report:
    f = ws.require_map(ns.map)
    chain = _chain_from_names(ws, f, ns.stars)
    hp = chains.higher_projector(chain)
    ok = hp.idempotent and hp.absorption
    witnesses = []
    if not ok:
        witnesses.append({"projector": _map_as_labels(hp.projector)})
    return Report(
        command="projector",
        ok=ok,
        result={
            "map": ns.map,
            "order": chain.order,
            "side": hp.side,
            "idempotent": hp.idempotent,
            "absorption": hp.absorption,
            "projector": _map_as_labels(hp.projector),
        },
        witnesses=witnesses,
    )


def _cmd_diagram(ws: Workspace, ns) -> Report:
    d = ws.build_diagram(ns.name)
    if ns.mode == "commutative":
        rep = diagrams.is_commutative(d, ns.max_len)
        ok = rep.commutative
    else:
        rep = diagrams.is_semicommutative(d, ns.max_len)
        ok = rep.semicommutative
    witnesses = []
    for v in rep.violations:
        if v[0] == "cycle":
            witnesses.append({"kind": "cycle", "cycle": _cycle_as_json(v[1])})
        elif v[0] == "parallel_paths":
            witnesses.append({"kind": "parallel_paths", "paths": [list(v[1]), list(v[2])]})
        else:
            witnesses.append(
                {"kind": "absorption", "cycle": _cycle_as_json(v[1]), "edge": v[2]}
            )
    return Report(
        command="diagram",
        ok=ok,
        result={"diagram": ns.name, "mode": ns.mode, "max_len": ns.max_len, "verdict": ok},
        witnesses=witnesses,
    )


def _cmd_obstruction(ws: Workspace, ns) -> Report:
    d = ws.build_diagram(ns.name)
    rep = diagrams.obstruction_number(d, ns.object, ns.max_n)
    result = {
        "diagram": ns.name,
        "object": ns.object,
        "max_n": ns.max_n,
        "n_obstr": rep.n_obstr,
    }
    if rep.witness is not None:
        result["cycle"] = _cycle_as_json(rep.witness)
    return Report(command="obstruction", ok=True, result=result)


def _cmd_cycles3(ws: Workspace, ns) -> Report:
    d = ws.build_diagram(ns.name)
    found = diagrams.find_regular_3cycles(d)
    return Report(
        command="cycles3",
        ok=True,
        result={
            "diagram": ns.name,
            "cycles": [
                {
                    "objects": [c.x.id, c.y.id, c.z.id],
                    "edges": [c.f.name, c.g.name, c.h.name],
                    "obstructor": _map_as_labels(c.obstructor),
                }
                for c in found
            ],
        },
        counts={"cycles3": len(found)},
    )


def _parse_pairs(spec: str, what: str) -> dict:
    out = {}
    for item in spec.split(","):
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"bad {what} entry {item!r}, expected A=B")
        k, v = item.split("=", 1)
        out[k] = v
    return out


def _cmd_functor(ws: Workspace, ns) -> Report:
    src = ws.build_diagram(ns.src)
    tgt = ws.build_diagram(ns.dst)
    fd = diagrams.FunctorData(
        source=src,
        target=tgt,
        object_map=_parse_pairs(ns.objects, "--objects"),
        edge_map=_parse_pairs(ns.maps, "--maps"),
    )
    rep = diagrams.check_regular_functor(fd, ns.n)
    witnesses = []
    for v in rep.violations:
        if v[0] == "composition":
            witnesses.append({"kind": "composition", "edges": [v[1], v[2]], "composite": v[3]})
        elif v[0] == "identity":
            witnesses.append({"kind": "identity", "edge": v[1]})
        else:
            witnesses.append(
                {
                    "kind": "obstructor",
                    "source_cycle": _cycle_as_json(v[1]),
                    "target_cycle": _cycle_as_json(v[2]),
                }
            )
    return Report(
        command="functor",
        ok=rep.composition_preserved and rep.e_preserved,
        result={
            "from": ns.src,
            "to": ns.dst,
            "n": ns.n,
            "composition_preserved": rep.composition_preserved,
            "e_preserved": rep.e_preserved,
        },
        witnesses=witnesses,
    )


def _cmd_braid_check(ws: Workspace, ns) -> Report:
    b = ws.require_braiding(ns.braiding)
    result = {"braiding": ns.braiding}
    witnesses = []
    ok = True
    cls = classify_map(b.map)
    result["bijective"] = cls.bijective
    if ns.star:
        star = ws.require_braiding(ns.star)
        regular = br.check_regular_braiding(b, star)
        result["regular_with_star"] = regular
        if not regular:
            ok = False
            witnesses.append({"kind": "regularity", "star": ns.star})
    else:
        canon = br.canonical_braiding_star(b)
        result["canonical_star"] = _map_as_labels(canon.map)
        result["regular_with_canonical_star"] = br.check_regular_braiding(b, canon)
    if ns.e:
        e = ws.require_map(ns.e)
        res = br.check_ybe(b, e, "regular")
        result["ybe_holds"] = res.holds
        if not res.holds:
            ok = False
            witnesses.append({"kind": "ybe", "triple": list(res.witness)})
    return Report(command="braid-check", ok=ok, result=result, witnesses=witnesses)


def _cmd_ybe(ws: Optional[Workspace], ns) -> Report:
    carrier = FiniteSet("X", tuple(f"x{i}" for i in range(ns.size)))
    if ns.e == "identity":
        e_spec = "identity"
    elif ns.e == "all":
        e_spec = "all"
    elif ns.e.startswith("table:"):
        entries = [int(v) for v in ns.e[len("table:"):].split(",")]
        e_spec = FinMap("e", carrier, carrier, tuple(entries))
    else:
        raise UsageError(f"bad --e value {ns.e!r}")
    problem = br.YbeProblem(
        carrier=carrier,
        mode=ns.mode,
        e_spec=e_spec,
        require_bijective=ns.bijective,
        max_size=max(ns.size, 3),
        jobs=ns.jobs,
        count_only=ns.count_only,
    )
    sols = br.solve_ybe(problem)
    result = {"size": ns.size, "mode": ns.mode, "bijective": ns.bijective}
    if not ns.count_only:
        result["solutions"] = [
            {"braiding": _map_as_labels(b.map), "e": _map_as_labels(e)}
            for b, e in sols.solutions
        ]
    return Report(
        command="ybe",
        ok=True,
        result=result,
        counts={"solutions": sols.count},
    )


class UsageError(RegcatError):
    pass


HANDLERS = {
    "check-map": _cmd_check_map,
    "inverses": _cmd_inverses,
    "chain": _cmd_chain,
    "projector": _cmd_projector,
    "diagram": _cmd_diagram,
    "obstruction": _cmd_obstruction,
    "cycles3": _cmd_cycles3,
    "functor": _cmd_functor,
    "braid-check": _cmd_braid_check,
    "ybe": _cmd_ybe,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument(
        "--max-space", type=int, default=inverses.DEFAULT_MAX_SPACE, dest="max_space",
        help="bound on exhaustive search spaces",
    )

    parser = argparse.ArgumentParser(prog="regcat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def file_cmd(name: str, **kwargs):
        p = sub.add_parser(name, parents=[common], **kwargs)
        p.add_argument("file", nargs="?", help="workspace file")
        return p

    p = file_cmd("check-map", help="classify a map and report a regularity witness")
    p.add_argument("--map", required=True)

    p = file_cmd("inverses", help="enumerate inner/outer/generalized inverses")
    p.add_argument("--map", required=True)
    p.add_argument("--kind", required=True, choices=list(inverses.INVERSE_KINDS))
    p.add_argument("--count-only", action="store_true", dest="count_only")
    p.add_argument("--limit", type=int, default=None)

    p = file_cmd("chain", help="check or search star chains")
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--search", action="store_true")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--stars", default="")

    p = file_cmd("projector", help="higher projector of a star chain")
    p.add_argument("--map", required=True)
    p.add_argument("--stars", required=True)

    p = file_cmd("diagram", help="commutativity or semicommutativity check")
    p.add_argument("--name", required=True)
    p.add_argument("--mode", required=True, choices=["commutative", "semicommutative"])
    p.add_argument("--max-len", type=int, required=True, dest="max_len")

    p = file_cmd("obstruction", help="least cycle length with non-identity obstructor")
    p.add_argument("--name", required=True)
    p.add_argument("--object", required=True)
    p.add_argument("--max-n", type=int, required=True, dest="max_n")

    p = file_cmd("cycles3", help="list the regular 3-cycles of a diagram")
    p.add_argument("--name", required=True)

    p = file_cmd("functor", help="generalized functor check between two diagrams")
    p.add_argument("--from", required=True, dest="src")
    p.add_argument("--to", required=True, dest="dst")
    p.add_argument("--objects", required=True)
    p.add_argument("--maps", required=True)
    p.add_argument("--n", type=int, required=True)

    p = file_cmd("braid-check", help="symmetry/regularity/YBE checks for a braiding")
    p.add_argument("--braiding", required=True)
    p.add_argument("--star", default=None)
    p.add_argument("--e", default=None)

    p = sub.add_parser("ybe", parents=[common], help="solve the YBE on a fresh carrier")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--mode", required=True, choices=["classical", "regular"])
    p.add_argument("--e", default="identity")
    p.add_argument("--bijective", action="store_true")
    p.add_argument("--count-only", action="store_true", dest="count_only")
    p.add_argument("--jobs", type=int, default=1)

    return parser


def run_command(ws: Optional[Workspace], argv) -> tuple[Report, int]:
    """Dispatch one parsed command against an already-loaded workspace."""
    ns = build_parser().parse_args(argv)
    start = time.perf_counter()
    report = HANDLERS[ns.command](ws, ns)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report, report.exit_code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    ws = None
    try:
        if ns.command != "ybe":
            if not ns.file:
                print("error: a workspace file is required", file=sys.stderr)
                return USAGE_ERROR
            with open(ns.file, encoding="utf-8") as fh:
                ws = parse_workspace(fh.read())
        start = time.perf_counter()
        report = HANDLERS[ns.command](ws, ns)
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    except (SearchSpaceTooLarge, CarrierTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RESOURCE_ERROR
    except (WorkspaceError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except RegcatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(report.to_json() if ns.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
