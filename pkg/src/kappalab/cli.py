"""Batch front door: scenario runner, refuter subcommands, CSV sampling.

Exit codes: 0 all expected verdicts matched; 2 malformed scenario/schema;
3 a check produced an unexpected verdict; 4 internal failure (a tolerance or
consistency assertion broke inside the machinery).

KAPPALAB_MODE=exact|float selects the numeric mode where a choice is legal:
grid sampling and the stratifiability refuter accept binary64 inputs; the
Sorgenfrey and double arrow computations are exact by construction and
ignore the variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .approximations import QGrid, stratification_to_approximation
from .families import (
    LABEL_DOUBLE_ARROW,
    LABEL_G,
    LABEL_NIEMYTZKI,
    LABEL_SORGENFREY,
    Stratification,
    double_arrow_ro,
    g_stratification,
    niemytzki_kappa,
    niemytzki_union_f,
    sorgenfrey_kappa,
)
from .harness import (
    CheckReport,
    SamplePlan,
    bridge_4_iff_d,
    check_condition_1,
    check_condition_2,
    check_condition_3,
    check_condition_4,
    check_condition_d,
    check_separations,
    chain_check_points,
    continuity_negative_control,
)
from .refuters import (
    NOT_FOUND,
    REFUTED,
    characteristic_candidate,
    clopen_only_candidate,
    doublearrow_not_kappa_default,
    g_family_not_extendable,
    niemytzki_not_stratifiable,
    refute_sorgenfrey_A,
    right_gap_candidate,
)
from .rosets import DecreasingChain, RegularOpenSet
from .sampling import sample_chain, sample_condition3_pairs, double_arrow_pinch_chain
from .serialize import (
    SchemaError,
    decode_basic_set,
    decode_chain,
    decode_roset,
    dumps_canonical,
)
from .spaces import NiemytzkiPoint, Space, SorgenfreyPoint

_FAMILIES = {
    LABEL_SORGENFREY: sorgenfrey_kappa,
    LABEL_DOUBLE_ARROW: double_arrow_ro,
    LABEL_NIEMYTZKI: niemytzki_kappa,
    LABEL_G: g_stratification,
}

_CANDIDATES = {
    "characteristic": characteristic_candidate,
    "right_gap": right_gap_candidate,
    "clopen_only": clopen_only_candidate,
}


def _mode() -> str:
    mode = os.environ.get("KAPPALAB_MODE", "exact")
    if mode not in ("exact", "float"):
        raise SchemaError(f"KAPPALAB_MODE must be exact or float, got {mode!r}")
    return mode


def _family(label: str) -> Stratification:
    if label not in _FAMILIES:
        raise SchemaError(f"unknown family label {label!r}")
    return _FAMILIES[label]()


def _user_family(spec: dict) -> tuple[Stratification, list]:
    """A tabulated family: per set, (point, value) samples with
    nearest-sample evaluation semantics.  Returns the family and its sets."""
    from .families import tabulated_evaluator
    from .serialize import decode_point, decode_scalar

    _known = {"label", "space", "table"}
    unknown = set(spec) - _known
    if unknown:
        raise SchemaError(f"unknown family fields {sorted(unknown)}")
    try:
        space = Space(spec["space"])
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad family space {spec.get('space')!r}") from exc
    table = {}
    for row in spec.get("table", []):
        if set(row) != {"set", "samples"}:
            raise SchemaError(f"table rows need 'set' and 'samples', got {set(row)}")
        key = decode_roset(row["set"]) if "components" in row["set"] else decode_basic_set(row["set"])
        samples = [
            (decode_point(s["point"]), decode_scalar(s["value"])) for s in row["samples"]
        ]
        table[key] = samples
    if not table:
        raise SchemaError("user-supplied families need a non-empty table")
    from .families import user_supplied

    return user_supplied(space, tabulated_evaluator(table)), list(table)


def _plan_from(obj: dict, seed=None, grid_m=None, depth=None) -> SamplePlan:
    allowed = {"seed", "n_points", "n_set_pairs", "n_sequences", "grid_m", "chain_depth"}
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"unknown plan fields {sorted(unknown)}")
    merged = dict(obj)
    if seed is not None:
        merged["seed"] = seed
    if grid_m is not None:
        merged["grid_m"] = grid_m
    if depth is not None:
        merged["chain_depth"] = depth
    return SamplePlan(**merged)


def _chain_from(spec, plan: SamplePlan, label: str, index: int) -> list[DecreasingChain]:
    if spec == "pinch":
        return [double_arrow_pinch_chain(plan.chain_depth)]
    if isinstance(spec, dict) and "sampled" in spec:
        extra = {k for k in spec if k != "sampled"}
        if extra:
            raise SchemaError(f"unknown chain fields {sorted(extra)}")
        space = _family(label).space
        rng = plan.rng(f"chains:{label}:{index}")
        return [sample_chain(space, rng, plan.chain_depth) for _ in range(int(spec["sampled"]))]
    if isinstance(spec, dict):
        return [decode_chain(spec)]
    raise SchemaError(f"bad chain spec {spec!r}")


_CHECK_KEYS = {"check", "family", "chain", "n_certificates", "expect", "target", "n", "candidate"}


def _run_check_entry(entry: dict, plan: SamplePlan) -> list[tuple[str, CheckReport | dict, str]]:
    """Run one scenario entry; returns (key, report-or-payload, verdict)."""
    unknown = set(entry) - _CHECK_KEYS
    if unknown:
        raise SchemaError(f"unknown check fields {sorted(unknown)}")
    kind = entry.get("check")
    out = []
    if kind == "condition_1":
        if isinstance(entry["family"], dict):
            S, sets = _user_family(entry["family"])
            rep = check_condition_1(S, plan, sets=sets)
            out.append(("condition_1:user_supplied", rep, "pass" if rep.passed else "fail"))
            return out
        S = _family(entry["family"])
        rep = check_condition_1(S, plan)
        out.append((f"condition_1:{S.label}", rep, "pass" if rep.passed else "fail"))
    elif kind == "condition_2":
        S = _family(entry["family"])
        rep = check_condition_2(S, plan)
        out.append((f"condition_2:{S.label}", rep, "pass" if rep.passed else "fail"))
    elif kind == "condition_3":
        S = _family(entry["family"])
        n = int(entry.get("n_certificates", plan.n_sequences))
        rng = plan.rng(f"cond3:{S.label}")
        if S.label == LABEL_G:
            from .sampling import sample_condition3_pairs_g

            pairs = sample_condition3_pairs_g(rng, n)
        else:
            pairs = sample_condition3_pairs(S.space, rng, n)
        rep = check_condition_3(S, pairs)
        out.append((f"condition_3:{S.label}", rep, "pass" if rep.passed else "fail"))
    elif kind == "condition_3_negative_control":
        S, pairs = continuity_negative_control()
        rep = check_condition_3(S, pairs)
        out.append(("condition_3:negative_control", rep, "pass" if rep.passed else "fail"))
    elif kind == "condition_4":
        S = _family(entry["family"])
        chains = _chain_from(entry.get("chain", {"sampled": 1}), plan, entry["family"], 0)
        for i, chain in enumerate(chains):
            points = chain_check_points(chain, plan)
            rep = check_condition_4(S, chain, points, plan)
            out.append((f"condition_4:{S.label}:{i}", rep, "pass" if rep.passed else "fail"))
    elif kind == "condition_d":
        S = _family(entry["family"])
        A = stratification_to_approximation(S, QGrid(plan.grid_m))
        for i, chain in enumerate(_chain_from(entry.get("chain", {"sampled": 1}), plan, entry["family"], 0)):
            points = chain_check_points(chain, plan)
            grid = QGrid(plan.grid_m).values
            size = len(grid)
            pairs = [(grid[size // 20], grid[size // 12]), (grid[size // 3], grid[size // 2])]
            pairs = [(p, q) for p, q in pairs if p < q]
            rep = check_condition_d(A, chain, pairs, points, plan)
            out.append((f"condition_d:{S.label}:{i}", rep, "pass" if rep.passed else "fail"))
    elif kind == "bridge_4_iff_d":
        S = _family(entry["family"])
        for i, chain in enumerate(_chain_from(entry.get("chain", {"sampled": 1}), plan, entry["family"], 0)):
            rep4, rep_d, agree = bridge_4_iff_d(S, chain, plan)
            payload = {
                "check_id": "bridge_4_iff_d",
                "family": S.label,
                "chain_index": i,
                "condition_4": rep4.payload(),
                "condition_d": rep_d.payload(),
                "agree": agree,
            }
            out.append((f"bridge:{S.label}:{i}", payload, "pass" if agree else "fail"))
    elif kind == "separations":
        S = _family(entry["family"])
        rep = check_separations(S, plan)
        out.append((f"separations:{S.label}", rep, "pass" if rep.passed else "fail"))
    elif kind == "refute":
        target = entry.get("target")
        verdict_map = {REFUTED: "refuted", NOT_FOUND: "not_found_at_budget"}
        if target == "sorgenfrey-a":
            cand_name = entry.get("candidate", "characteristic")
            if cand_name not in _CANDIDATES:
                raise SchemaError(f"unknown candidate {cand_name!r}")
            cand = _CANDIDATES[cand_name]()
            res = refute_sorgenfrey_A(cand, seed=plan.seed)
            out.append((f"refute:sorgenfrey-a:{cand_name}", res.payload(), verdict_map[res.verdict]))
        elif target == "doublearrow-d":
            res = doublearrow_not_kappa_default(plan.chain_depth)
            out.append(("refute:doublearrow-d", res.payload(), verdict_map[res.verdict]))
        elif target == "niemytzki-strat":
            a = 0.0 if _mode() == "float" else Fraction(0)
            res = niemytzki_not_stratifiable(a, 2, 10, int(entry.get("n", 50)))
            out.append(("refute:niemytzki-strat", res.payload(), verdict_map[res.verdict]))
        elif target == "g-extend":
            res = g_family_not_extendable(int(entry.get("n", 1)))
            out.append(("refute:g-extend", res.payload(), verdict_map[res.verdict]))
        else:
            raise SchemaError(f"unknown refute target {target!r}")
    else:
        raise SchemaError(f"unknown check {kind!r}")
    return out


_SCENARIO_KEYS = {"name", "plan", "checks"}


def run_scenario(
    scenario: dict,
    seed_override=None,
    out_dir: str | None = None,
    grid_m=None,
    depth=None,
) -> int:
    unknown = set(scenario) - _SCENARIO_KEYS
    if unknown:
        raise SchemaError(f"unknown scenario fields {sorted(unknown)}")
    if "name" not in scenario or "checks" not in scenario:
        raise SchemaError("scenario needs 'name' and 'checks'")
    plan = _plan_from(scenario.get("plan", {}), seed_override, grid_m, depth)
    results = []
    mismatches = []
    for entry in scenario["checks"]:
        expected = entry.get("expect", "pass")
        for key, rep, verdict in _run_check_entry(entry, plan):
            payload = rep.payload() if isinstance(rep, CheckReport) else rep
            results.append({"key": key, "expected": expected, "verdict": verdict, "report": payload})
            if verdict != expected:
                mismatches.append((key, expected, verdict))
    doc = {
        "scenario": scenario["name"],
        "plan": plan.payload(),
        "results": results,
        "all_expected": not mismatches,
    }
    text_lines = [f"scenario {scenario['name']} (seed {plan.seed})"]
    for r in results:
        mark = "ok " if r["verdict"] == r["expected"] else "XX "
        text_lines.append(
            f"  {mark}{r['key']}: verdict={r['verdict']} expected={r['expected']}"
        )
    text_lines.append("all verdicts as expected" if not mismatches else "UNEXPECTED VERDICTS")
    text = "\n".join(text_lines) + "\n"
    if out_dir:
        out_path = Path(out_dir)
        out_path.mkdir(parents=True, exist_ok=True)
        (out_path / f"{scenario['name']}.json").write_text(dumps_canonical(doc) + "\n")
        (out_path / f"{scenario['name']}.txt").write_text(text)
    sys.stdout.write(text)
    return 0 if not mismatches else 3


def _load_scenario_file(path: str) -> dict:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read scenario {path!r}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path!r}: {exc}") from exc


def shipped_scenarios() -> list[str]:
    base = resources.files("kappalab").joinpath("scenarios")
    return sorted(p.name for p in base.iterdir() if p.name.endswith(".json"))


def _load_shipped(name: str) -> dict:
    base = resources.files("kappalab").joinpath("scenarios")
    return json.loads(base.joinpath(name).read_text())


def cmd_check(args) -> int:
    worst = 0
    if args.corpus:
        for name in shipped_scenarios():
            code = run_scenario(_load_shipped(name), args.seed, args.out, args.grid_m, args.depth)
            worst = max(worst, code)
        return worst
    if not args.scenario:
        raise SchemaError("check needs --scenario <path> or --corpus")
    scenario = _load_scenario_file(args.scenario)
    return run_scenario(scenario, args.seed, args.out, args.grid_m, args.depth)


def cmd_refute(args) -> int:
    plan_seed = args.seed if args.seed is not None else 0
    if args.target == "sorgenfrey-a":
        cand = _CANDIDATES[args.candidate]()
        res = refute_sorgenfrey_A(cand, seed=plan_seed)
    elif args.target == "doublearrow-d":
        res = doublearrow_not_kappa_default(args.depth)
    elif args.target == "niemytzki-strat":
        a = 0.0 if _mode() == "float" else Fraction(0)
        res = niemytzki_not_stratifiable(a, 2, 10, args.depth)
    elif args.target == "g-extend":
        res = g_family_not_extendable(args.n)
    else:
        raise SchemaError(f"unknown refute target {args.target!r}")
    doc = dumps_canonical(res.payload()) + "\n"
    if args.out:
        Path(args.out).write_text(doc)
    sys.stdout.write(f"{args.target}: {res.verdict}\n")
    expected = args.expect
    if expected and res.verdict != expected:
        return 3
    return 0


def _parse_bbox(text: str) -> list[Fraction]:
    parts = text.split(",")
    return [Fraction(p) for p in parts]


def cmd_sample_grid(args) -> int:
    use_float = _mode() == "float"
    try:
        set_obj = json.loads(args.set)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed set JSON: {exc}") from exc
    if "components" in set_obj:
        target = decode_roset(set_obj)
    else:
        target = decode_basic_set(set_obj)
    label = args.family
    S = _family(label)
    bbox = _parse_bbox(args.bbox)
    rows = []
    if S.space is Space.NIEMYTZKI:
        if len(bbox) != 4:
            raise SchemaError("niemytzki bbox is x0,x1,y0,y1")
        nx, ny = (int(v) for v in args.res.split("x"))
        x0, x1, y0, y1 = bbox
        header = "x,y,value"
        for j in range(ny):
            y = y0 + (y1 - y0) * Fraction(j, ny) if ny else y0
            for i in range(nx):
                x = x0 + (x1 - x0) * Fraction(i, nx) if nx else x0
                if use_float:
                    p = NiemytzkiPoint(float(x), float(y))
                else:
                    p = NiemytzkiPoint(x, y)
                if isinstance(target, RegularOpenSet):
                    v = niemytzki_union_f(target, p, args.budget)
                else:
                    v = S.value(target, p)
                rows.append(f"{_csv_num(x)},{_csv_num(y)},{_csv_num(v)}")
    elif S.space is Space.SORGENFREY:
        if len(bbox) != 2:
            raise SchemaError("sorgenfrey bbox is x0,x1")
        n = int(args.res)
        x0, x1 = bbox
        header = "x,value"
        for i in range(n):
            x = x0 + (x1 - x0) * Fraction(i, n)
            v = S.value(target if isinstance(target, RegularOpenSet) else RegularOpenSet(Space.SORGENFREY, (target,)), SorgenfreyPoint(x))
            rows.append(f"{_csv_num(x)},{_csv_num(v)}")
    else:
        raise SchemaError("sample-grid supports niemytzki and sorgenfrey families")
    text = header + "\n" + "\n".join(rows) + ("\n" if rows else "")
    Path(args.out).write_text(text)
    sys.stdout.write(f"wrote {len(rows)} rows to {args.out}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kappalab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run a scenario file (or the shipped corpus)")
    p_check.add_argument("--scenario", help="path to a scenario JSON file")
    p_check.add_argument("--corpus", action="store_true", help="run every shipped scenario")
    p_check.add_argument("--seed", type=int, default=None, help="override the plan seed")
    p_check.add_argument("--grid-m", type=int, default=None, help="override the dyadic grid depth")
    p_check.add_argument("--depth", type=int, default=None, help="override the chain truncation depth")
    p_check.add_argument("--out", help="directory for JSON/text reports")
    p_check.set_defaults(fn=cmd_check)

    p_ref = sub.add_parser("refute", help="run one refuter")
    p_ref.add_argument(
        "target",
        choices=["sorgenfrey-a", "doublearrow-d", "niemytzki-strat", "g-extend"],
    )
    p_ref.add_argument("--candidate", default="characteristic", choices=sorted(_CANDIDATES))
    p_ref.add_argument("--n", type=int, default=1)
    p_ref.add_argument("--depth", type=int, default=64)
    p_ref.add_argument("--seed", type=int, default=None)
    p_ref.add_argument("--expect", choices=["refuted", "not_found_at_budget"])
    p_ref.add_argument("--out", help="path for the witness bundle JSON")
    p_ref.set_defaults(fn=cmd_refute)

    p_grid = sub.add_parser("sample-grid", help="CSV of family values over a lattice")
    p_grid.add_argument("--family", required=True)
    p_grid.add_argument("--set", required=True, help="base set or union as JSON")
    p_grid.add_argument("--bbox", required=True, help="x0,x1[,y0,y1] (rationals)")
    p_grid.add_argument("--res", required=True, help="NX x NY (e.g. 300x220) or N")
    p_grid.add_argument("--budget", type=int, default=6)
    p_grid.add_argument("--out", required=True)
    p_grid.set_defaults(fn=cmd_sample_grid)
    return ap


def _csv_num(v) -> str:
    f = float(v)
    if f == int(f) and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as exc:
        sys.stderr.write(f"schema error: {exc}\n")
        return 2
    except (AssertionError, ArithmeticError) as exc:
        sys.stderr.write(f"internal tolerance/consistency failure: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
