"""Command-line front end: corpus construction, single-object inspection, and
batch verification with JSON-lines reports.

The default corpus bundles every builtin group of order <= 16, named
representatives at orders 27, 32, and 81, every associative multiplication on
the additive groups of order p^2 for p in {2, 3, 5}, the p-multiple subrings
of Z/p^3Z and Z/p^4Z, a few unital rings as hypothesis-violating instances,
and hom/der rings harvested from the small groups.  Reports are emitted in
task order, so a fixed corpus and flag set is byte-reproducible regardless of
the worker count.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .adjoint import adjoint_group
from .errors import AlgebraError
from .groups import (
    SUBGROUP_BOUND,
    FiniteGroup,
    abelian_normal_subgroups,
    builtin_group,
    center,
    central_target,
    commutator_subgroup,
    frattini,
    load_group,
    lower_central_series,
    min_generators,
    nilpotency_class,
    omega_subgroup,
    power_commutator_subgroup,
    prime_of,
    upper_central_series,
)
from .morphisms import AUT_ORDER_BOUND, check_laue, der_ring, hom_ring, to_finite_ring
from .rings import (
    FiniteRing,
    enumerate_rings,
    load_ring,
    multiples_ring,
    save_ring,
    unital_ring,
    zero_ring,
)
from .verify import (
    check_adjoint_rank,
    check_annihilator_ideal,
    check_aut_center_exponent,
    check_aut_exponent,
    check_aut_gen_bound,
    check_aut_gen_bound_abelian,
    check_central_aut,
    check_central_aut_class,
    check_der_subring_p_nil,
    check_frattini_aut_class,
    check_nilpotency_bound,
    check_omega_correspondence,
    check_p_central_adjoint,
    check_profile_consistency,
    check_quotient_p_nil,
    check_sylow_rank,
    group_profile,
    probe_sylow_center,
    probe_two_nil_improvement,
    ring_profile,
)

RING_CHECKS = (
    "omega-correspondence",
    "p-central-adjoint",
    "nilpotency-bound",
    "nilpotency-probe",
    "quotient-p-nil",
    "annihilator-ideal",
    "adjoint-rank",
    "sylow-rank",
)
GROUP_CHECKS = (
    "profile-consistency",
    "laue",
    "central-aut",
    "central-aut-class",
    "aut-center-exponent",
    "sylow-center-probe",
    "frattini-aut-class",
    "aut-exponent",
    "aut-gen-bound-abelian",
    "aut-gen-bound",
    "der-subring-p-nil",
)
ALL_CHECKS = RING_CHECKS + GROUP_CHECKS

# groups small enough to sweep every abelian normal subgroup as a module
MODULE_SWEEP_CAP = 16
HARVEST_MAP_CAP = 256

DEFAULT_GROUP_NAMES = (
    "c1", "c2", "c3", "c4", "c2xc2", "c5", "c6", "d6", "c7",
    "c8", "c4xc2", "c2xc2xc2", "d8", "q8", "c9", "c3xc3",
    "c10", "d10", "c11",
    "c12", "c6xc2", "d12", "a4", "q12",
    "c13", "c14", "d14", "c15",
    "c16", "c8xc2", "c4xc4", "c4xc2xc2", "c2xc2xc2xc2",
    "d16", "q16", "sd16", "m16", "d8xc2", "q8xc2",
    "c4sc4", "c22sc4", "pauli16",
    "c27", "c9xc3", "c3xc3xc3", "m27", "es27",
    "c32", "c4xc8", "c2xc16", "d32", "q32", "sd32", "m32",
    "c81", "c27xc3", "c9xc9",
)

_NAMED_MODULES = (
    ("center", center),
    ("commutator", commutator_subgroup),
    ("frattini", frattini),
    ("power-commutator", power_commutator_subgroup),
    ("central-target", central_target),
    ("omega1", lambda G: omega_subgroup(G, 1)),
)


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    kind: str  # "ring" | "group"
    obj: object


def builtin_ring(spec: str) -> FiniteRing:
    """Resolve builtin ring names: z9, 3z27, trivial, zero:3:1.1."""
    if spec == "trivial":
        return zero_ring(2, [])
    m = re.fullmatch(r"zero:(\d+):([\d.]*)", spec)
    if m:
        exps = [int(tok) for tok in m.group(2).split(".") if tok]
        return zero_ring(int(m.group(1)), exps)
    m = re.fullmatch(r"z(\d+)", spec)
    if m:
        return unital_ring(int(m.group(1)))
    m = re.fullmatch(r"(\d+)z(\d+)", spec)
    if m:
        return multiples_ring(int(m.group(1)), int(m.group(2)))
    raise AlgebraError(f"unknown ring spec {spec!r}")


def _resolve_ring(spec: str) -> FiniteRing:
    return load_ring(spec) if Path(spec).is_file() else builtin_ring(spec)


def _resolve_group(spec: str) -> FiniteGroup:
    return load_group(spec) if Path(spec).is_file() else builtin_group(spec)


def default_corpus() -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    for p, exps in ((2, (2,)), (2, (1, 1)), (3, (2,)), (3, (1, 1)),
                    (5, (2,)), (5, (1, 1))):
        for R in enumerate_rings(p, exps):
            entries.append(CorpusEntry(f"ring:{R.name}", "ring", R))
    for a, n in ((2, 8), (2, 16), (3, 27), (3, 81), (5, 125), (5, 625)):
        R = multiples_ring(a, n)
        entries.append(CorpusEntry(f"ring:{R.name}", "ring", R))
    for n in (4, 9, 25):
        R = unital_ring(n)
        entries.append(CorpusEntry(f"ring:{R.name}", "ring", R))
    entries.append(CorpusEntry("ring:trivial", "ring", zero_ring(2, [])))

    groups = [(name, builtin_group(name)) for name in DEFAULT_GROUP_NAMES]
    for name, G in groups:
        if prime_of(G) is None or G.n > MODULE_SWEEP_CAP:
            continue
        d = min_generators(G)
        S = central_target(G)
        if S.order ** d <= HARVEST_MAP_CAP:
            ring, _ = to_finite_ring(hom_ring(G, S))
            entries.append(CorpusEntry(f"ring:hom-{name}", "ring", ring))
        Z = center(G)
        if Z.order ** d <= HARVEST_MAP_CAP:
            ring, _ = to_finite_ring(der_ring(G, Z))
            entries.append(CorpusEntry(f"ring:der-{name}", "ring", ring))
    for name, G in groups:
        entries.append(CorpusEntry(f"group:{name}", "group", G))
    return entries


def load_manifest(path: str) -> list[CorpusEntry]:
    obj = json.loads(Path(path).read_text())
    raw = obj["entries"] if isinstance(obj, dict) else obj
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    for item in raw:
        eid = item["id"]
        kind = item["kind"]
        if eid in seen:
            raise AlgebraError(f"duplicate corpus id {eid!r}")
        if kind not in ("ring", "group"):
            raise AlgebraError(f"unknown corpus kind {kind!r} for {eid!r}")
        seen.add(eid)
        spec = item.get("path") or item.get("builtin")
        if not spec:
            raise AlgebraError(f"entry {eid!r} needs a path or builtin spec")
        if "path" in item:
            loaded = load_ring(spec) if kind == "ring" else load_group(spec)
        else:
            loaded = builtin_ring(spec) if kind == "ring" else builtin_group(spec)
        entries.append(CorpusEntry(eid, kind, loaded))
    return entries


# -- verification runner -----------------------------------------------------------

# set by cmd_verify before any worker forks; workers inherit them read-only
_CORPUS: dict[str, CorpusEntry] = {}
_FLAGS: dict[str, int] = {}


def build_tasks(entries: list[CorpusEntry], checks: list[str]) -> list[tuple]:
    """Instance x check task list in deterministic order."""
    wanted = set(checks)
    tasks: list[tuple] = []
    for e in entries:
        if e.kind == "ring":
            for name in RING_CHECKS:
                if name not in wanted:
                    continue
                if name == "quotient-p-nil":
                    top = max(e.obj.additive_exponent_log(), 1)
                    tasks.extend((e.id, name, n) for n in range(1, top + 1))
                else:
                    tasks.append((e.id, name, None))
            continue
        G = e.obj
        p = G.n > 1 and prime_of(G) is not None
        for name in GROUP_CHECKS:
            if name not in wanted:
                continue
            if name == "laue":
                count = len(abelian_normal_subgroups(G))
                tasks.extend((e.id, name, i) for i in range(count))
            elif name == "der-subring-p-nil":
                if not p:
                    continue
                labels = [label for label, _ in _NAMED_MODULES]
                if G.n <= MODULE_SWEEP_CAP:
                    labels += [f"an{i:03d}"
                               for i in range(len(abelian_normal_subgroups(G)))]
                tasks.extend((e.id, name, label) for label in labels)
            else:
                tasks.append((e.id, name, None))
    return tasks


def _module_by_label(G: FiniteGroup, label: str):
    if label.startswith("an"):
        return abelian_normal_subgroups(G)[int(label[2:])]
    for key, fn in _NAMED_MODULES:
        if key == label:
            return fn(G)
    raise AlgebraError(f"unknown module label {label!r}")


def run_check(entry: CorpusEntry, check: str, param, flags: dict) -> str:
    """One verdict line; `param` selects the torsion level or module."""
    obj, iid = entry.obj, entry.id
    sb = flags.get("subgroup_bound", SUBGROUP_BOUND)
    ab = flags.get("aut_bound", AUT_ORDER_BOUND)
    if check == "omega-correspondence":
        rep = check_omega_correspondence(obj, instance=iid)
    elif check == "p-central-adjoint":
        rep = check_p_central_adjoint(obj, instance=iid)
    elif check == "nilpotency-bound":
        rep = check_nilpotency_bound(obj, instance=iid)
    elif check == "nilpotency-probe":
        rep = probe_two_nil_improvement(obj, instance=iid)
    elif check == "quotient-p-nil":
        rep = check_quotient_p_nil(obj, param, instance=iid)
    elif check == "annihilator-ideal":
        rep = check_annihilator_ideal(
            obj, omega_for_two=flags.get("annihilator_omega", 1), instance=iid)
    elif check == "adjoint-rank":
        rep = check_adjoint_rank(obj, instance=iid, subgroup_bound=sb)
    elif check == "sylow-rank":
        rep = check_sylow_rank(obj, instance=iid, subgroup_bound=sb)
    elif check == "profile-consistency":
        rep = check_profile_consistency(obj, instance=iid)
    elif check == "laue":
        N = abelian_normal_subgroups(obj)[param]
        rep = check_laue(obj, N, instance=f"{iid}/an{param:03d}")
    elif check == "central-aut":
        rep = check_central_aut(obj, instance=iid, subgroup_bound=sb)
    elif check == "central-aut-class":
        rep = check_central_aut_class(obj, instance=iid)
    elif check == "aut-center-exponent":
        rep = check_aut_center_exponent(obj, instance=iid)
    elif check == "sylow-center-probe":
        rep = probe_sylow_center(obj, instance=iid, aut_bound=ab)
    elif check == "frattini-aut-class":
        rep = check_frattini_aut_class(obj, instance=iid)
    elif check == "aut-exponent":
        rep = check_aut_exponent(obj, instance=iid, aut_bound=ab)
    elif check == "aut-gen-bound-abelian":
        rep = check_aut_gen_bound_abelian(obj, instance=iid,
                                          aut_bound=ab, subgroup_bound=sb)
    elif check == "aut-gen-bound":
        rep = check_aut_gen_bound(obj, instance=iid,
                                  aut_bound=ab, subgroup_bound=sb)
    elif check == "der-subring-p-nil":
        N = _module_by_label(obj, param)
        rep = check_der_subring_p_nil(obj, N, instance=f"{iid}/{param}")
    else:
        raise AlgebraError(f"unknown check {check!r}")
    return rep.to_json_line()


def _run_task(task: tuple) -> str:
    eid, check, param = task
    return run_check(_CORPUS[eid], check, param, _FLAGS)


def run_verification(entries: list[CorpusEntry], checks: list[str], jobs: int,
                     flags: dict) -> list[str]:
    global _CORPUS, _FLAGS
    _CORPUS = {e.id: e for e in entries}
    _FLAGS = dict(flags)
    tasks = build_tasks(entries, checks)
    if jobs <= 1:
        return [_run_task(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(tasks) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
        return list(pool.map(_run_task, tasks, chunksize=chunk))


# -- commands ----------------------------------------------------------------------


def cmd_ring_info(args) -> int:
    R = _resolve_ring(args.spec)
    prof = ring_profile(R)
    print(f"ring {R.name}")
    for key, value in prof.as_dict().items():
        print(f"  {key}: {value}")
    A = adjoint_group(R)
    print(f"  adjoint order: {A.order}")
    print(f"  adjoint class: {nilpotency_class(A.group)}")
    print(f"  adjoint exponent: {A.group.exponent()}")
    return 0


def cmd_group_info(args) -> int:
    G = _resolve_group(args.spec)
    print(f"group {G.name}")
    print(f"  order: {G.n}")
    if G.n == 1:
        print("  trivial: all profile invariants are 0")
        return 0
    if prime_of(G) is None:
        print(f"  exponent: {G.exponent()}")
        print(f"  abelian: {G.is_abelian()}")
        print("  not a p-group: no p-profile")
        return 0
    prof = group_profile(G)
    for key, value in prof.as_dict().items():
        if key != "order":
            print(f"  {key}: {value}")
    lower = [H.order for H in lower_central_series(G)]
    upper = [H.order for H in upper_central_series(G)]
    print(f"  lower central orders: {lower}")
    print(f"  upper central orders: {upper}")
    return 0


_ENUM_FILTERS = {
    "left-p-nil": lambda r: r.is_left_p_nil(),
    "right-p-nil": lambda r: r.is_right_p_nil(),
    "p-nil": lambda r: r.is_left_p_nil() and r.is_right_p_nil(),
}


def cmd_enumerate_rings(args) -> int:
    exps = [int(tok) for tok in args.exps.split(",") if tok]
    pred = _ENUM_FILTERS[args.filter] if args.filter != "none" else None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    order = 1
    for e in exps:
        order *= args.p ** e
    associative = 0
    kept = 0
    for R in enumerate_rings(args.p, exps, budget=args.budget):
        associative += 1
        if pred is not None and not pred(R):
            continue
        kept += 1
        save_ring(R, out / f"{R.name}.json")
    print(f"candidates: {order ** (len(exps) ** 2)}")
    print(f"associative: {associative}")
    print(f"kept: {kept}")
    print(f"wrote {kept} files to {out}")
    return 0


def cmd_verify(args) -> int:
    checks = ALL_CHECKS if args.checks is None else \
        tuple(tok for tok in args.checks.split(",") if tok)
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        raise AlgebraError(f"unknown checks: {', '.join(unknown)}")
    entries = load_manifest(args.corpus) if args.corpus else default_corpus()
    flags = {
        "annihilator_omega": args.annihilator_omega,
        "aut_bound": args.aut_bound,
        "subgroup_bound": args.subgroup_bound,
    }
    started = time.perf_counter()
    lines = run_verification(entries, list(checks), args.jobs, flags)
    elapsed = time.perf_counter() - started
    if args.report:
        Path(args.report).write_text("".join(line + "\n" for line in lines))
    tally: dict[str, dict[str, int]] = {}
    for line in lines:
        rec = json.loads(line)
        row = tally.setdefault(rec["check"], {"pass": 0, "fail": 0, "skipped": 0})
        row[rec["verdict"]] += 1
    width = max((len(name) for name in tally), default=5)
    print(f"{'check':<{width}}  pass  fail  skip")
    for name in checks:
        if name in tally:
            row = tally[name]
            print(f"{name:<{width}}  {row['pass']:>4}  {row['fail']:>4}"
                  f"  {row['skipped']:>4}")
    failures = sum(row["fail"] for row in tally.values())
    print(f"{len(lines)} reports, {failures} failures, {elapsed:.1f}s")
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="adjrings",
        description="finite p-ring and p-group structure checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ring = sub.add_parser("ring-info", help="print a ring profile")
    p_ring.add_argument("spec", help="builtin name (z9, 3z27, zero:3:1.1) or JSON path")
    p_ring.set_defaults(func=cmd_ring_info)

    p_group = sub.add_parser("group-info", help="print a group profile")
    p_group.add_argument("spec", help="builtin name (q8, c4xc2) or JSON path")
    p_group.set_defaults(func=cmd_group_info)

    p_enum = sub.add_parser("enumerate-rings",
                            help="write every associative tensor on an additive type")
    p_enum.add_argument("--p", type=int, required=True)
    p_enum.add_argument("--exps", required=True, help="comma list, e.g. 1,1")
    p_enum.add_argument("--filter", choices=("none",) + tuple(_ENUM_FILTERS),
                        default="none")
    p_enum.add_argument("--out", default="rings_out")
    p_enum.add_argument("--budget", type=int, default=100_000_000)
    p_enum.set_defaults(func=cmd_enumerate_rings)

    p_verify = sub.add_parser("verify", help="run checks over a corpus")
    p_verify.add_argument("--corpus", help="manifest JSON path (default: builtin corpus)")
    p_verify.add_argument("--checks", help="comma list (default: all)")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--report", help="write JSON-lines report here")
    p_verify.add_argument("--annihilator-omega", type=int, choices=(1, 2), default=1,
                          help="torsion layer feeding the annihilator ideal at p=2")
    p_verify.add_argument("--aut-bound", type=int, default=AUT_ORDER_BOUND,
                          help="max group order for automorphism searches")
    p_verify.add_argument("--subgroup-bound", type=int, default=SUBGROUP_BOUND,
                          help="max group order for subgroup enumeration")
    p_verify.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
