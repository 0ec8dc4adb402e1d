"""Command-line front end.

Exit codes are a stable contract: 0 affirm, 1 refute, 2 usage error,
3 enumeration budget exceeded.  Graph arguments accept either a path to
a graph JSON file or a family spec like ``bowtie:6:5``,
``product:cycle4:cycle5`` or ``complete:7``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from math import comb

from . import __version__
from .constructive import (
    RefutationAlarm,
    bowtie_extend,
    c4cn_witness,
    extend_via_separator,
    find_separator,
    lemma3_pm,
    lemma4_near_pm,
    separator_extend,
)
from .embedding import (
    RotationSystem,
    bowtie_rotation_N2,
    control_point,
    embedding_characteristic,
    euler_contributions,
    k5_torus_fixture,
    trace_faces,
    verify_embedding,
)
from .extendability import (
    classify_extendable_graphs,
    extendability_number,
    is_k_extendable,
    is_nk_graph,
    k_matchings,
)
from .generators import (
    bowtie,
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    path,
)
from .graph import Graph, is_bipartite, min_degree, normalize_edge
from .matching import make_matching, tutte_violator_of_removal
from .surfaces import (
    KLEIN_BOTTLE,
    Surface,
    control_bound_holds,
    genus_complete,
    mu,
    mu_nk,
    mu_prime,
    nonorientable_genus_complete,
)

BUDGET = 10_000_000

EXIT_AFFIRM, EXIT_REFUTE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class BudgetExceeded(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------


def _parse_factor(tok: str) -> Graph:
    m = re.fullmatch(r"(path|cycle|complete)[:]?(\d+)", tok)
    if not m:
        raise UsageError(f"bad product factor {tok!r} (want e.g. cycle5 or cycle:5)")
    return {"path": path, "cycle": cycle, "complete": complete}[m.group(1)](int(m.group(2)))


def parse_graph_arg(spec: str) -> Graph:
    """A graph JSON file path or a family spec string."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return Graph.from_json(fh.read())
    parts = spec.split(":")
    fam, args = parts[0], parts[1:]
    try:
        if fam in ("path", "cycle", "complete") and len(args) == 1:
            return {"path": path, "cycle": cycle, "complete": complete}[fam](int(args[0]))
        if fam == "complete_bipartite" and len(args) == 2:
            return complete_bipartite(int(args[0]), int(args[1]))
        if fam == "bowtie" and len(args) == 2:
            return bowtie(int(args[0]), int(args[1]))
        if fam == "product" and len(args) == 2:
            return cartesian_product(_parse_factor(args[0]), _parse_factor(args[1]))
    except (ValueError, KeyError) as ex:
        raise UsageError(f"bad graph spec {spec!r}: {ex}") from ex
    raise UsageError(f"unrecognized graph spec {spec!r}")


def _parse_surface(tok: str) -> Surface:
    m = re.fullmatch(r"([SN])_?(\d+)", tok)
    if not m:
        raise UsageError(f"bad surface {tok!r} (want e.g. S0, S1, N2)")
    try:
        return Surface(m.group(1) == "S", int(m.group(2)))
    except ValueError as ex:
        raise UsageError(str(ex)) from ex


def _parse_edge(tok: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)[-,](\d+)", tok)
    if not m:
        raise UsageError(f"bad edge {tok!r} (want u-v)")
    return normalize_edge(int(m.group(1)), int(m.group(2)))


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("EXTLAB_JOBS", "1")))
    except ValueError:
        return 1


def _check_budget(estimate: int, force: bool):
    if estimate > BUDGET and not force:
        raise BudgetExceeded(
            f"estimated {estimate} matching-oracle calls exceeds the "
            f"{BUDGET} budget; pass --force to run anyway"
        )


def _emit(obj, out_path):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Run manifests
# ---------------------------------------------------------------------------


@dataclass
class RunManifest:
    command: str
    parameters: dict
    tool_version: str = __version__
    checks: list = field(default_factory=list)

    def record(self, name, verdict, elapsed, artifact=None):
        entry = {"name": name, "verdict": bool(verdict), "elapsed": elapsed}
        if artifact is not None:
            blob = json.dumps(artifact, sort_keys=True).encode()
            entry["artifact_sha256"] = hashlib.sha256(blob).hexdigest()
            entry["artifact"] = artifact
        self.checks.append(entry)

    @property
    def all_pass(self):
        return all(c["verdict"] for c in self.checks)

    def to_json_obj(self):
        return {
            "command": self.command,
            "parameters": self.parameters,
            "tool_version": self.tool_version,
            "all_pass": self.all_pass,
            "checks": self.checks,
        }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.family == "product":
        if len(args.params) != 2:
            raise UsageError("product needs exactly two factor specs")
        g = cartesian_product(*(_parse_factor(p) for p in args.params))
    else:
        g = parse_graph_arg(":".join([args.family] + args.params))
    text = g.to_dot() if args.format == "dot" else g.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)
    return EXIT_AFFIRM


def cmd_extendable(args) -> int:
    g = parse_graph_arg(args.graph)
    _check_budget(comb(len(g.edges), args.k), args.force)
    report = is_k_extendable(g, args.k, jobs=args.jobs)
    _emit(report.to_json_obj(), args.output)
    if args.witness and report.witness is not None:
        _emit(
            {
                "witness": report.witness.to_json_obj(),
                "certificate": report.witness_certificate.to_json_obj()
                if report.witness_certificate
                else None,
            },
            args.witness,
        )
    return EXIT_AFFIRM if report.verdict else EXIT_REFUTE


def cmd_ext_number(args) -> int:
    g = parse_graph_arg(args.graph)
    _check_budget(sum(comb(len(g.edges), k) for k in range(1, g.order // 2)), args.force)
    print(extendability_number(g, jobs=args.jobs))
    return EXIT_AFFIRM


def cmd_nk(args) -> int:
    g = parse_graph_arg(args.graph)
    _check_budget(comb(g.order, args.n) * comb(len(g.edges), args.k), args.force)
    report = is_nk_graph(g, args.n, args.k, jobs=args.jobs)
    _emit(report.to_json_obj(), args.output)
    return EXIT_AFFIRM if report.holds else EXIT_REFUTE


def cmd_classify(args) -> int:
    graphs = classify_extendable_graphs(args.order, args.k)
    _emit(
        {
            "order": args.order,
            "k": args.k,
            "count": len(graphs),
            "graphs": [[list(e) for e in g.edges] for g in graphs],
        },
        args.output,
    )
    return EXIT_AFFIRM


def cmd_mu(args) -> int:
    print("chi\tsurface\tmu\tmu_prime")
    for chi in range(args.chi_max, args.chi_min - 1, -1):
        surfaces = []
        if chi <= 2 and chi % 2 == 0:
            surfaces.append(Surface(True, (2 - chi) // 2))
        if chi <= 1:
            surfaces.append(Surface(False, 2 - chi))
        for s in surfaces:
            print(f"{chi}\t{s}\t{mu(s)}\t{mu_prime(s)}")
    return EXIT_AFFIRM


def cmd_witness_c4cn(args) -> int:
    m, u = c4cn_witness(args.n)
    g = m.graph
    cert = tutte_violator_of_removal(g, set(u) | m.vertex_set())
    _emit(
        {
            "n": args.n,
            "matching": m.to_json_obj(),
            "U": list(u),
            "tutte_violator_of_remainder": cert.to_json_obj() if cert else None,
        },
        args.output,
    )
    return EXIT_AFFIRM


def cmd_bowtie_extend(args) -> int:
    edges = [_parse_edge(t) for t in args.edges]
    try:
        plan = bowtie_extend(args.n, edges)
    except ValueError as ex:
        raise UsageError(str(ex)) from ex
    _emit(plan.to_json_obj(), args.output)
    return EXIT_AFFIRM


def _load_rotation_system(args) -> RotationSystem:
    if args.spec == "k5-torus":
        return k5_torus_fixture()
    m = re.fullmatch(r"bowtie-n2:(\d+)", args.spec)
    if m:
        return bowtie_rotation_N2(int(m.group(1)))
    if os.path.exists(args.spec):
        if not args.graph:
            raise UsageError("--graph is required with a rotation JSON file")
        g = parse_graph_arg(args.graph)
        with open(args.spec) as fh:
            data = json.load(fh)
        rotations = []
        for v in range(g.order):
            rot = []
            for eid in data["rotations"][str(v)]:
                a, b = g.edges[eid]
                rot.append(b if a == v else a)
            rotations.append(tuple(rot))
        signs = {g.edges[int(eid)]: s for eid, s in data["signs"].items()}
        return RotationSystem(g, tuple(rotations), signs)
    raise UsageError(f"unrecognized embedding spec {args.spec!r}")


def cmd_embed_verify(args) -> int:
    rs = _load_rotation_system(args)
    s = _parse_surface(args.surface)
    ok = verify_embedding(rs, s)
    fs = trace_faces(rs)
    _emit(
        {
            "surface": str(s),
            "verdict": ok,
            "characteristic": embedding_characteristic(rs),
            "face_sizes": list(fs.face_sizes),
        },
        args.output,
    )
    return EXIT_AFFIRM if ok else EXIT_REFUTE


def cmd_contributions(args) -> int:
    rs = _load_rotation_system(args)
    report = euler_contributions(rs)
    print("vertex\tphi\ttriangles")
    for v, phi in enumerate(report.phi):
        print(f"{v}\t{phi}\t{report.triangles_at[v]}")
    v, phi = control_point(rs)
    print(f"# control point: {v} (phi = {phi})")
    return EXIT_AFFIRM


def cmd_conjecture(args) -> int:
    if args.m < 6 or args.m % 2:
        raise UsageError("m must be even and >= 6")
    if args.n < 5 or args.n % 2 == 0:
        raise UsageError("n must be odd and >= 5")
    g = bowtie(args.m, args.n)
    _check_budget(comb(len(g.edges), 3), args.force)
    report = is_k_extendable(g, 3, jobs=args.jobs)
    _emit(
        {
            "statement": f"bowtie({args.m},{args.n}) is 3-extendable",
            "status": "EVIDENCE: a true verdict supports, never proves, the conjecture",
            "report": report.to_json_obj(),
        },
        args.output,
    )
    return EXIT_AFFIRM if report.verdict else EXIT_REFUTE


# ---------------------------------------------------------------------------
# verify-paper suites
# ---------------------------------------------------------------------------


def _timed(manifest, name, fn, artifact_fn=None):
    t0 = time.perf_counter()
    try:
        verdict = bool(fn())
    except Exception as ex:  # a crash is a failed check, not a crash of the suite
        manifest.record(name, False, time.perf_counter() - t0, {"error": repr(ex)})
        return
    manifest.record(
        name, verdict, time.perf_counter() - t0, artifact_fn() if artifact_fn else None
    )


def _suite_formulas(man):
    _timed(man, "mu values", lambda: (
        mu(Surface(True, 0)) == 3
        and mu(Surface(False, 1)) == 3
        and mu(Surface(True, 1)) == 4
        and mu(Surface(False, 2)) == 4
    ))
    _timed(man, "mu_prime values", lambda: (
        mu_prime(Surface(True, 0)) == 3
        and mu_prime(Surface(False, 1)) == 3
        and mu_prime(Surface(True, 1)) == 4
        and mu_prime(Surface(False, 2)) == 4
        and mu_prime(Surface(False, 3)) == 4
        and mu_prime(Surface(False, 4)) == 4  # chi = -2
    ))
    _timed(man, "mu_nk monotone in n", lambda: all(
        mu_nk(n, Surface(False, 2)) >= mu_nk(n + 1, Surface(False, 2)) for n in range(1, 9)
    ))
    _timed(man, "genus of K_7", lambda: genus_complete(7) == 1 and nonorientable_genus_complete(7) == 3)
    _timed(man, "nonorientable genus table", lambda: all(
        nonorientable_genus_complete(n) == -(-(n - 3) * (n - 4) // 6)
        for n in range(5, 51)
        if n != 7
    ))


def _suite_embeddings(man):
    rs5 = bowtie_rotation_N2(5)
    _timed(man, "Fig. 1 embedding on N_2 (n=5)", lambda: verify_embedding(rs5, KLEIN_BOTTLE))
    _timed(man, "all faces quadrilateral (n=5)", lambda: set(trace_faces(rs5).face_sizes) == {4})
    _timed(man, "contributions sum to 0", lambda: sum(euler_contributions(rs5).phi) == 0)
    _timed(man, "control point bound", lambda: control_point(rs5)[1] >= 0)
    _timed(
        man,
        "Lemma 2.4 inequality at control point",
        lambda: control_bound_holds(
            rs5.graph.degree(control_point(rs5)[0]),
            euler_contributions(rs5).triangles_at[control_point(rs5)[0]],
            0,
            rs5.graph.order,
        ),
    )
    _timed(man, "Fig. 1 embedding on N_2 (n=7)", lambda: verify_embedding(bowtie_rotation_N2(7), KLEIN_BOTTLE))
    k5 = k5_torus_fixture()
    _timed(man, "K_5 torus fixture chi=0 with 5 faces", lambda: (
        embedding_characteristic(k5) == 0 and len(trace_faces(k5).faces) == 5
    ))

    def double_angle():
        for walk in trace_faces(k5).faces:
            tails = [v for v, _ in walk]
            if any(tails.count(v) > 1 for v in set(tails)):
                return True
        return False

    _timed(man, "K_5 fixture: face with two angles at a vertex", double_angle)


def _looks_like(g, what):
    if what == "K4":
        return g.order == 4 and len(g.edges) == 6
    if what == "C4":
        return g.order == 4 and len(g.edges) == 4 and min_degree(g) == 2
    if what == "K6":
        return g.order == 6 and len(g.edges) == 15
    if what == "K33":
        return g.order == 6 and len(g.edges) == 9 and is_bipartite(g) is not None
    raise ValueError(what)


def _suite_lemmas(man):
    def classify41():
        found = classify_extendable_graphs(4, 1)
        return len(found) == 2 and {w for w in ("K4", "C4") if any(_looks_like(g, w) for g in found)} == {"K4", "C4"}

    def classify62():
        found = classify_extendable_graphs(6, 2)
        return len(found) == 2 and {w for w in ("K6", "K33") if any(_looks_like(g, w) for g in found)} == {"K6", "K33"}

    _timed(man, "1-extendable order-4 graphs are K_4 and C_4", classify41)
    _timed(man, "2-extendable order-6 graphs are K_6 and K_3,3", classify62)

    def lemma3_sweep():
        n = 5
        g = bowtie(6, n)
        from .constructive import _in_j, _j_coord, j_vertices

        j_edges = [e for e in g.edges if _in_j(n, e[0]) and _in_j(n, e[1])]
        q_ids = [v for v in sorted(j_vertices(n)) if _j_coord(n, v)[0] == "q"]
        for e in j_edges:
            for qk in q_ids:
                if qk in e:
                    continue
                lemma3_pm(n, e, qk)  # raises on failure
        return True

    _timed(man, "Lemma 3 exhaustive at n=5", lemma3_sweep)

    def bowtie_sample():
        n = 5
        g = bowtie(6, n)
        count = 0
        for idxs in k_matchings(g, 3):
            if count % 7 == 0:  # sampled; the full sweep lives in the test suite
                m = make_matching(g, [g.edges[i] for i in idxs])
                bowtie_extend(n, m)
            count += 1
        return True

    _timed(man, "bow-tie constructive extension sample at n=5", bowtie_sample)


def _suite_theorems(man):
    _timed(man, "bowtie(6,5) is 3-extendable", lambda: is_k_extendable(bowtie(6, 5), 3).verdict)
    _timed(man, "C_6 x C_5 is 3-extendable", lambda: is_k_extendable(
        cartesian_product(cycle(6), cycle(5)), 3).verdict)
    _timed(man, "P_4 x C_5 is 2-extendable", lambda: is_k_extendable(
        cartesian_product(path(4), cycle(5)), 2).verdict)
    _timed(man, "P_5 x C_5 is not 2-extendable", lambda: not is_k_extendable(
        cartesian_product(path(5), cycle(5)), 2).verdict)
    _timed(man, "C_4 x C_5 is not 3-extendable", lambda: not is_k_extendable(
        cartesian_product(cycle(4), cycle(5)), 3).verdict)
    _timed(man, "Fig. 4 witness at n=5", lambda: len(c4cn_witness(5)[1]) == 6)

    def separator_sample():
        g = cartesian_product(cycle(6), cycle(5))
        count = 0
        for idxs in k_matchings(g, 3):
            if count % 11 == 0:
                m = make_matching(g, [g.edges[i] for i in idxs])
                choice = find_separator(g, m)
                extend_via_separator(g, m, choice)
            count += 1
        return True

    _timed(man, "separator pipeline sample on C_6 x C_5", separator_sample)

    def p_grid_sample():
        for rows in (4, 6):
            g = cartesian_product(path(rows), cycle(5))
            for idxs in k_matchings(g, 2):
                m = make_matching(g, [g.edges[i] for i in idxs])
                separator_extend(g, m)
        return True

    _timed(man, "separator pipeline on all 2-matchings of P_m x C_5", p_grid_sample)


def cmd_verify_paper(args) -> int:
    man = RunManifest("verify-paper", {"suite": args.suite})
    suites = {
        "formulas": _suite_formulas,
        "embeddings": _suite_embeddings,
        "lemmas": _suite_lemmas,
        "theorems": _suite_theorems,
    }
    chosen = suites.keys() if args.suite == "all" else [args.suite]
    for name in chosen:
        suites[name](man)
    _emit(man.to_json_obj(), args.output)
    return EXIT_AFFIRM if man.all_pass else EXIT_REFUTE


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matchext", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("gen", cmd_gen, help="emit a graph in JSON or DOT")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--output")

    p = add("extendable", cmd_extendable, help="decide k-extendability exhaustively")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("--witness", help="write the failing witness to this file")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--force", action="store_true")
    p.add_argument("--output")

    p = add("ext-number", cmd_ext_number, help="largest k with a true verdict")
    p.add_argument("graph")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--force", action="store_true")

    p = add("nk", cmd_nk, help="(n,k)-graph check over all n-subsets")
    p.add_argument("graph")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--force", action="store_true")
    p.add_argument("--output")

    p = add("classify", cmd_classify, help="connected k-extendable graphs of an order")
    p.add_argument("order", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--output")

    p = add("mu", cmd_mu, help="surface-extendability table in TSV")
    p.add_argument("--chi-max", type=int, default=2)
    p.add_argument("--chi-min", type=int, default=-12)

    p = add("witness-c4cn", cmd_witness_c4cn, help="the Fig. 4 non-extendability certificate")
    p.add_argument("n", type=int)
    p.add_argument("--output")

    p = add("bowtie-extend", cmd_bowtie_extend, help="constructive extension in bowtie(6,n)")
    p.add_argument("n", type=int)
    p.add_argument("edges", nargs=3, metavar="u-v")
    p.add_argument("--output")

    p = add("embed-verify", cmd_embed_verify, help="verify a rotation system against a surface")
    p.add_argument("spec", help="bowtie-n2:N, k5-torus, or a rotation JSON file")
    p.add_argument("surface", help="e.g. S0, S1, N2")
    p.add_argument("--graph", help="graph spec (required with a rotation JSON file)")
    p.add_argument("--output")

    p = add("contributions", cmd_contributions, help="per-vertex Euler contributions in TSV")
    p.add_argument("spec", help="bowtie-n2:N, k5-torus, or a rotation JSON file")
    p.add_argument("--graph")

    p = add("verify-paper", cmd_verify_paper, help="run a verification suite")
    p.add_argument(
        "--suite",
        choices=("theorems", "lemmas", "formulas", "embeddings", "all"),
        default="all",
    )
    p.add_argument("--output")

    p = add("conjecture", cmd_conjecture, help="3-extendability evidence for bowtie(m,n)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--force", action="store_true")
    p.add_argument("--output")

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as ex:
        print(f"budget: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, json.JSONDecodeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except RefutationAlarm as ex:
        print(f"refutation alarm: {ex}", file=sys.stderr)
        return EXIT_REFUTE


if __name__ == "__main__":
    sys.exit(main())
