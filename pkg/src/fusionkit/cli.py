"""Command-line front end.

Subcommands: build, centralizer, product, alperin, verify.  Exit codes:
0 on success (verify: all checks pass), 1 on check failures or alarms,
2 on usage/parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import corpus as corpus_mod
from .centralizers import compute_centralizer_data, c_F_of
from .corpus import Config, ingest
from .errors import FusionkitError
from .fusion import FusionSystem, Hom
from .groups import Subgroup, active_caps, normal_subgroups, sylow_subgroup
from .persist import load_system, save_system
from .saturation import alperin_decompose
from .subsystems import normal_subsystem_in
from .verify import CHECK_ORDER, run_suite, suite_report


def _fail(msg: str, code: int = 2) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def resolve_subgroup(F: FusionSystem, spec: str) -> Subgroup:
    """Subgroup specs: 'order:K' (canonical normal subgroup of order K),
    'elts:i,j,...' (element indices), 'gens:w1,w2' (words over g0,g1,...)."""
    G = F.universe
    if spec.startswith("order:"):
        want = int(spec.split(":", 1)[1])
        for N in normal_subgroups(G.full_subgroup):
            if N.order == want:
                return N
        raise FusionkitError(f"no normal subgroup of order {want}")
    if spec.startswith("elts:"):
        idx = [int(tok) for tok in spec.split(":", 1)[1].split(",") if tok]
        return G.generated_subgroup(idx)
    if spec.startswith("gens:"):
        if G.generator_indices is None:
            raise FusionkitError("group carries no named generators; use elts:")
        elems = []
        for word in spec.split(":", 1)[1].split(","):
            x = 0
            for token in word.strip().split("*"):
                token = token.strip()
                if not token:
                    continue
                if "^" in token:
                    base, exp = token.split("^", 1)
                    power = int(exp)
                else:
                    base, power = token, 1
                if not base.startswith("g"):
                    raise FusionkitError(f"bad generator token {token!r}")
                g = G.generator_indices[int(base[1:])]
                x = G.mul(x, G.power(g, power))
            elems.append(x)
        return G.generated_subgroup(elems)
    raise FusionkitError(f"unrecognized subgroup spec {spec!r}")


def resolve_morphism(F: FusionSystem, spec: str) -> Hom:
    """Morphism spec 'a,b,...->x,y,...': element indices generating the
    domain, mapped in order; validated as a morphism of the system."""
    try:
        left, right = spec.split("->")
        gens = [int(t) for t in left.split(",") if t.strip()]
        images = [int(t) for t in right.split(",") if t.strip()]
    except ValueError as exc:
        raise FusionkitError(f"bad morphism spec {spec!r}") from exc
    G = F.universe
    dom = G.generated_subgroup(gens)
    cod = G.generated_subgroup(images)
    hom = Hom.from_generator_images(dom, cod, gens, images)
    if not F.contains_morphism(hom):
        raise FusionkitError("the given map is not a morphism of the system")
    return hom


def _load_fsk(path: str) -> FusionSystem:
    return load_system(path)


def cmd_build(args: argparse.Namespace) -> int:
    G = ingest(args.groupfile, cap=active_caps.group)
    S = sylow_subgroup(G.full_subgroup, args.prime)
    from .fusion import fusion_of_group
    F = fusion_of_group(G, S, args.prime,
                        name=f"F({G.name}@{args.prime})")
    out = args.out or str(Path(args.groupfile).with_suffix("")) + f"@{args.prime}.fsk"
    save_system(F, out)
    print(f"built {F.name}: |G|={G.order}, |S|={S.order}, "
          f"{len(F.subgroups())} subgroups, {F.morphism_count()} morphisms")
    print(f"wrote {out}")
    return 0


def cmd_centralizer(args: argparse.Namespace) -> int:
    from .subsystems import is_normal
    F = _load_fsk(args.system)
    N = resolve_subgroup(F, args.normal)
    E = normal_subsystem_in(F, N)
    data = compute_centralizer_data(F, E)
    cfe = c_F_of(F, E, C_S_E=data.C_S_E)
    summary = data.to_json()
    summary["normality_of_E"] = is_normal(F, E).to_json()
    summary["C_F_E"] = {
        "support": list(cfe.support.members),
        "morphisms": cfe.morphism_count(),
        "normality": is_normal(F, cfe).to_json(),
    }
    if args.json:
        Path(args.json).write_text(json.dumps(summary, indent=1) + "\n")
    print(f"T = S n N: order {E.support.order}")
    print(f"X family: {[list(X.members) for X in data.X_set]}")
    print(f"C_S(E) = {list(data.C_S_E.members)} (order {data.C_S_E.order})")
    print(f"R*     = {list(data.R_star.members)} (order {data.R_star.order})")
    print(f"C_F(E): support order {cfe.support.order}, "
          f"{cfe.morphism_count()} morphisms, normal in F")
    return 0


def cmd_product(args: argparse.Namespace) -> int:
    from .products import verify_product_theorems, central_product_subsystem
    F = _load_fsk(args.system)
    E1 = normal_subsystem_in(F, resolve_subgroup(F, args.f1))
    E2 = normal_subsystem_in(F, resolve_subgroup(F, args.f2))
    report = verify_product_theorems(F, E1, E2)
    print(json.dumps(report.to_json(), indent=1))
    if report.centralize:
        D = central_product_subsystem(F, E1, E2)
        print(f"F1*F2: support order {D.support.order}, "
              f"{D.morphism_count()} morphisms")
    return 0 if report.ok else 1


def cmd_alperin(args: argparse.Namespace) -> int:
    F = _load_fsk(args.system)
    phi = resolve_morphism(F, args.morphism)
    fact = alperin_decompose(F, phi)
    print(f"morphism on {list(phi.domain.members)} factors through "
          f"{len(fact.steps)} family member(s):")
    for i, step in enumerate(fact.steps, 1):
        print(f"  {i}. member {list(step.member.members)} "
              f"automorphism {list(step.automorphism.images)} "
              f"on stage {list(step.stage.members)}")
    rec = fact.recompose()
    ok = rec.images == phi.cores().images
    print(f"recomposition matches: {ok}")
    return 0 if ok else 1


def _run_entry(entry, checks, config):
    label, G, p = entry
    results = run_suite(label, G, p, check_ids=checks, config=config)
    return label, p, results


def cmd_verify(args: argparse.Namespace) -> int:
    checks: Optional[list[str]] = None
    if args.checks and args.checks != "all":
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in checks if c not in CHECK_ORDER]
        if unknown:
            return _fail(f"unknown checks: {unknown} (known: {list(CHECK_ORDER)})")
    config = Config(group_cap=args.group_cap, lattice_cap=args.lattice_cap,
                    jobs=args.jobs, corpus_dir=args.corpus_dir)
    if args.target == "corpus":
        if config.corpus_dir:
            entries = []
            for path in sorted(Path(config.corpus_dir).glob("*.json")):
                G = ingest(path, cap=config.group_cap)
                for p in corpus_mod.designated_primes(path):
                    entries.append((f"{path.stem}@{p}", G, p))
            entries = tuple(entries)
        else:
            entries = corpus_mod.corpus_entries(config)
    else:
        F = _load_fsk(args.target)
        entries = ((Path(args.target).stem, F.universe, F.p),)
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(lambda e: _run_entry(e, checks, config), entries))
    else:
        rows = [_run_entry(e, checks, config) for e in entries]
    reports = []
    all_pass = True
    for label, p, results in rows:
        reports.append(suite_report(label, p, results, timings=args.timings))
        bad = [r for r in results if not r.passed]
        status = "pass" if not bad else "FAIL"
        print(f"{label:14} {status}  ({len(results) - len(bad)}/{len(results)} checks)")
        for r in bad:
            all_pass = False
            print(f"    {r.check_id}: {r.counterexample}")
    if args.json:
        Path(args.json).write_text(json.dumps(reports, indent=1) + "\n")
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fusionkit",
                                 description="saturated fusion systems of "
                                             "finite groups at desk scale")
    ap.add_argument("--group-cap", type=int, default=active_caps.group,
                    help="largest allowed group order")
    ap.add_argument("--lattice-cap", type=int, default=active_caps.lattice,
                    help="largest allowed subgroup-lattice size")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct and persist F_S(G)")
    b.add_argument("groupfile")
    b.add_argument("-p", "--prime", type=int, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("centralizer",
                       help="centralizer data for a normal subsystem")
    c.add_argument("system", help=".fsk file from build")
    c.add_argument("--normal", required=True,
                   help="normal subgroup spec (order:K | elts:... | gens:...)")
    c.add_argument("--json")
    c.set_defaults(func=cmd_centralizer)

    pr = sub.add_parser("product", help="central product of two normal subsystems")
    pr.add_argument("system")
    pr.add_argument("--f1", required=True)
    pr.add_argument("--f2", required=True)
    pr.set_defaults(func=cmd_product)

    al = sub.add_parser("alperin", help="decompose a morphism through the "
                                        "centric radical family")
    al.add_argument("system")
    al.add_argument("--morphism", required=True, help="'a,b->x,y' element indices")
    al.set_defaults(func=cmd_alperin)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("target", help="'corpus' or an .fsk file")
    v.add_argument("--checks", default="all",
                   help="comma-separated check ids, or 'all'")
    v.add_argument("--json", help="write the JSON report here")
    v.add_argument("--timings", action="store_true",
                   help="include per-check timings in the JSON report "
                        "(off by default so reports are byte-reproducible)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--corpus-dir",
                   help="run over the group files in this directory instead "
                        "of the bundled corpus")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    active_caps.group = args.group_cap
    active_caps.lattice = args.lattice_cap
    try:
        return args.func(args)
    except FusionkitError as exc:
        return _fail(str(exc), code=1 if "alarm" in str(exc).lower() else 2)


if __name__ == "__main__":
    raise SystemExit(main())
