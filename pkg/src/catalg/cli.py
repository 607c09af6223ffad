"""Command-line front end: ``catalg check|build|induct|verify|fixtures``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from .algstruct import module_to_precosheaf, precosheaf_to_module, validate_algebra, validate_graded, validate_hom, validate_precosheaf
from .constructions import (
    category_algebra,
    check_twisting_axioms,
    check_weak_bialgebra_unit_failure,
    object_tensor_algebra,
    paper_twisting_map,
    skew_category_algebra,
    twisted_tensor_product,
    verify_embedding,
)
from .errors import CatalgError, SpecError, WellDefinednessError
from .fincat import check_condition_423, validate_category, validate_functor
from .induction import (
    InductionContext,
    check_commutation,
    puig_induce,
    s_monoid,
    skew_as_interior,
    theta_check,
    thm13_isomorphism,
    turull_induce,
)
from .spec_format import COMMANDS, Task, WorkbenchSpec, parse_spec

__all__ = ["TaskResult", "Report", "run", "run_task", "load_source", "fixture_names", "main"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class TaskResult:
    index: int
    command: str
    target: str
    outcome: str  # pass / fail / error
    expect: str = "pass"
    metrics: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    message: str = ""
    duration_ms: float = 0.0

    @property
    def status(self) -> str:
        if self.expect == "pass":
            return self.outcome
        return "pass" if self.outcome != "pass" else "fail"


@dataclass
class Report:
    field: str
    results: list[TaskResult]

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "error": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_text(self, timings: bool = True) -> str:
        lines = [f"field={self.field}"]
        for r in self.results:
            head = f"task={r.index} command={r.command.replace(' ', '_')} target={r.target} status={r.status}"
            if r.expect != "pass":
                head += f" expect={r.expect} outcome={r.outcome}"
            if timings:
                head += f" duration_ms={r.duration_ms:.1f}"
            lines.append(head)
            for k, v in r.metrics.items():
                lines.append(f"  {k}={_fmt(v)}")
            for w in r.witnesses:
                lines.append(f"  witness={w}")
            if r.message:
                lines.append(f"  message={r.message}")
        c = self.counts()
        lines.append("# summary")
        lines.append(f"tasks={len(self.results)}")
        lines.extend(f"{k}={v}" for k, v in c.items())
        lines.append(f"status={'pass' if self.ok else 'fail'}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        data = {
            "field": self.field,
            "tasks": [dict(asdict(r), status=r.status) for r in self.results],
            "summary": dict(self.counts(), tasks=len(self.results), status="pass" if self.ok else "fail"),
        }
        return json.dumps(data, indent=2, default=str) + "\n"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    if isinstance(v, dict):
        return ",".join(f"{k}:{_fmt(x)}" for k, x in v.items())
    return str(v)


def _witness(v) -> str:
    return f"{v.axiom}[{', '.join(str(x) for x in v.witness)}]"


# ---------------------------------------------------------------------------
# command implementations: each returns (passed, metrics, witnesses)


def _build_kc(spec: WorkbenchSpec, a):
    cat = spec.categories[a["category"]]
    kc = category_algebra(cat, spec.field)
    bad = validate_algebra(kc)
    return not bad, {"dim": kc.dim, "objects": len(cat.objects)}, [_witness(v) for v in bad]


def _build_skew(spec, a):
    r = spec.precosheaves[a["precosheaf"]]
    g = skew_category_algebra(r)
    bad = validate_algebra(g.algebra) + validate_graded(g)
    expected = sum(r.obj_alg[m.cod].dim for m in r.category.morphisms)
    return not bad and g.algebra.dim == expected, {"dim": g.algebra.dim, "expected_dim": expected}, [_witness(v) for v in bad]


def _build_tensor(spec, a):
    r = spec.precosheaves[a["precosheaf"]]
    t = object_tensor_algebra(r)
    bad = validate_algebra(t)
    return not bad, {"dim": t.dim}, [_witness(v) for v in bad]


def _build_ttp(spec, a):
    r = spec.precosheaves[a["precosheaf"]]
    t = paper_twisting_map(r)
    bad = check_twisting_axioms(t)
    if bad:
        return False, {"twisting_violations": len(bad)}, [_witness(v) for v in bad[:5]]
    alg = twisted_tensor_product(t, check=False)
    bad = validate_algebra(alg)
    return not bad, {"dim": alg.dim}, [_witness(v) for v in bad[:5]]


def _verify_twisting(spec, a):
    t = paper_twisting_map(spec.precosheaves[a["precosheaf"]])
    bad = check_twisting_axioms(t)
    kinds = sorted({v.axiom for v in bad})
    return not bad, {"violations": len(bad), "failed_axioms": kinds or "none"}, [_witness(v) for v in bad[:5]]


def _verify_thm11(spec, a):
    r = spec.precosheaves[a["precosheaf"]]
    rep = verify_embedding(r)
    one_object = len(r.category.objects) == 1
    ok = rep.passed and (rep.surjective or not one_object)
    metrics = {
        "dim_skew": rep.dim_skew,
        "dim_twisted": rep.dim_twisted,
        "rank_psi": rep.rank,
        "twisting_ok": not rep.twisting_violations,
        "twisted_associative": not rep.twisted_violations,
        "unital": rep.unital,
        "multiplicative": rep.multiplicative,
        "left_inverse": rep.left_inverse,
        "injective": rep.injective,
        "bijective": rep.injective and rep.surjective,
    }
    bad = list(rep.twisting_violations[:3]) + list(rep.twisted_violations[:3]) + list(rep.hom_violations[:3])
    return ok, metrics, [_witness(v) for v in bad]


def _verify_mitchell(spec, a):
    r = spec.precosheaves[a["precosheaf"]]
    back = module_to_precosheaf(precosheaf_to_module(r))
    wit = []
    for x in r.category.objects:
        if back.dims[x] != r.obj_alg[x].dim:
            wit.append(f"dim[{x}]")
    for f in r.category.mor_ids:
        if not wit and back.maps[f] != r.mor_hom[f].map:
            wit.append(f"map[{f}]")
    return not wit, {"module_dim": sum(back.dims.values())}, wit


def _verify_cond423(spec, a):
    rep = check_condition_423(spec.functors[a["functor"]])
    wit = [f"{f} {side}: class={{{','.join(cls)}}} composites={{{','.join(comp)}}}" for f, side, cls, comp in rep.witnesses]
    return rep.holds, {"holds": rep.holds}, wit


def _ctx(spec, a) -> InductionContext:
    return InductionContext.build(spec.functors[a["functor"]], spec.precosheaves[a["precosheaf"]])


def _verify_lemma42(spec, a):
    ctx = _ctx(spec, a)
    m = s_monoid(ctx)
    found, bad = check_commutation(ctx, m)
    return not bad, {"monoid_size": len(m), "pairs_checked": len(found) + len(bad)}, [_witness(v) for v in bad]


def _induct_turull(spec, a):
    ctx = _ctx(spec, a)
    ind = turull_induce(ctx)
    bad = validate_precosheaf(ind.precosheaf)
    dims = {x: ind.subspaces[x].dim for x in ctx.source.objects}
    return not bad, {"ms_dims": dims}, [_witness(v) for v in bad]


def _induct_puig(spec, a):
    ctx = _ctx(spec, a)
    p = puig_induce(ctx, skew_as_interior(ctx.precosheaf))
    bad = validate_algebra(p.algebra) + validate_hom(p.tau_bar)
    return not bad, {
        "dim_source": p.interior.algebra.dim,
        "dim_relations": p.relations.dim,
        "dim_quotient": p.quotient.dim,
        "dim_induced": p.algebra.dim,
    }, [_witness(v) for v in bad]


def _verify_thm13(spec, a):
    ctx = _ctx(spec, a)
    rep = thm13_isomorphism(ctx)
    th = theta_check(ctx)
    metrics = {
        "dim_source_skew": rep.dim_skew_source,
        "dim_puig": rep.dim_puig,
        "dim_turull_skew": rep.dim_turull_skew,
        "dim_expected": rep.dim_expected,
        "algebra_iso": rep.is_algebra_iso,
        "graded": rep.is_graded,
        "interior_compatible": rep.is_interior_compatible,
        "theta_ok": th.passed,
        "dim_fixed_target": th.dim_fixed_target,
    }
    return rep.passed and th.passed, metrics, [_witness(v) for v in (rep.failures + th.failures)[:5]]


def _verify_weakbialg(spec, a):
    cat = spec.categories[a["category"]]
    rep = check_weak_bialgebra_unit_failure(cat, spec.field)
    expected_unit = len(cat.objects) == 1
    ok = rep.delta_multiplicative and rep.unit_axiom_holds == expected_unit
    metrics = {"delta_multiplicative": rep.delta_multiplicative, "unit_axiom_holds": rep.unit_axiom_holds}
    return ok, metrics, [f"multiplicative[{u}, {v}]" for u, v in rep.multiplicative_witnesses[:5]]


HANDLERS: dict[str, Callable] = {
    "build kc": _build_kc,
    "build skew": _build_skew,
    "build tensor": _build_tensor,
    "build ttp": _build_ttp,
    "verify twisting": _verify_twisting,
    "verify thm11": _verify_thm11,
    "verify mitchell": _verify_mitchell,
    "verify cond423": _verify_cond423,
    "verify lemma42": _verify_lemma42,
    "induct turull": _induct_turull,
    "induct puig": _induct_puig,
    "verify thm13": _verify_thm13,
    "verify weakbialg": _verify_weakbialg,
}
assert set(HANDLERS) == set(COMMANDS)


def run_task(spec: WorkbenchSpec, task: Task, index: int) -> TaskResult:
    res = TaskResult(index, task.command, task.target, "pass", task.expect)
    start = time.perf_counter()
    try:
        ok, metrics, wit = HANDLERS[task.command](spec, task.args)
        res.outcome = "pass" if ok else "fail"
        res.metrics, res.witnesses = metrics, wit
    except WellDefinednessError as exc:
        res.outcome = "fail"
        res.witnesses = [f"{exc.axiom}[{', '.join(str(x) for x in exc.witness)}]"]
        res.message = exc.detail
    except (CatalgError, KeyError, ValueError) as exc:
        res.outcome = "error"
        res.message = f"{type(exc).__name__}: {exc}"
    res.duration_ms = (time.perf_counter() - start) * 1000
    return res


def _validation_results(spec: WorkbenchSpec) -> list[TaskResult]:
    out = []
    items = (
        [("validate category", n, lambda c=c: validate_category(c)) for n, c in spec.categories.items()]
        + [("validate algebra", n, lambda a=a: validate_algebra(a)) for n, a in spec.algebras.items()]
        + [("validate functor", n, lambda f=f: validate_functor(f)) for n, f in spec.functors.items()]
        + [("validate precosheaf", n, lambda p=p: validate_precosheaf(p)) for n, p in spec.precosheaves.items()]
    )
    for i, (cmd, name, fn) in enumerate(items, 1):
        start = time.perf_counter()
        try:
            bad = fn()
            r = TaskResult(i, cmd, name, "fail" if bad else "pass", witnesses=[_witness(v) for v in bad[:5]])
        except (CatalgError, KeyError) as exc:
            r = TaskResult(i, cmd, name, "error", message=f"{type(exc).__name__}: {exc}")
        r.duration_ms = (time.perf_counter() - start) * 1000
        out.append(r)
    return out


def run(spec: WorkbenchSpec, tasks: list[Task] | None = None, parallel: bool = False, validate: bool = False) -> Report:
    """Execute tasks in order (results are always reported in task order)."""
    tasks = spec.tasks if tasks is None else tasks
    results = _validation_results(spec) if validate else []
    base = len(results)
    if parallel and len(tasks) > 1:
        with ThreadPoolExecutor() as pool:
            done = list(pool.map(lambda it: run_task(spec, it[1], base + it[0] + 1), enumerate(tasks)))
    else:
        done = [run_task(spec, t, base + i + 1) for i, t in enumerate(tasks)]
    return Report(spec.field.name, results + done)


# ---------------------------------------------------------------------------
# input resolution


def fixture_names() -> list[str]:
    root = resources.files("catalg") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


def _fixture_text(name: str) -> str:
    return (resources.files("catalg") / "fixtures" / f"{name}.yaml").read_text(encoding="utf-8")


def load_source(source: str) -> str:
    """Text of a spec file, or of a bundled fixture given by name."""
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    name = source[:-5] if source.endswith(".yaml") else source
    if name in fixture_names():
        return _fixture_text(name)
    raise SpecError(f"no such file or fixture: {source}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="override the document's field, e.g. gf:101")
    common.add_argument("--report", type=Path, help="also write the report here (.json for JSON)")
    common.add_argument("--parallel", action="store_true", help="run tasks concurrently")

    p = argparse.ArgumentParser(prog="catalg", description="Exact checks for category algebras and their inductions.")
    sub = p.add_subparsers(dest="cmd", required=True)
    c = sub.add_parser("check", parents=[common], help="validate every declaration, then run the document's tasks")
    c.add_argument("spec")
    b = sub.add_parser("build", parents=[common], help="build an algebra")
    b.add_argument("what", choices=["kc", "skew", "tensor", "ttp"])
    b.add_argument("spec")
    i = sub.add_parser("induct", parents=[common], help="induce along every functor")
    i.add_argument("what", choices=["turull", "puig"])
    i.add_argument("spec")
    v = sub.add_parser("verify", parents=[common], help="run one check on every applicable declaration")
    v.add_argument("what", choices=["twisting", "thm11", "thm13", "lemma42", "cond423", "weakbialg", "mitchell"])
    v.add_argument("spec")
    f = sub.add_parser("fixtures", help="bundled example documents")
    f.add_argument("action", choices=["list", "show"])
    f.add_argument("name", nargs="?")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    if args.cmd == "fixtures":
        if args.action == "list":
            for name in fixture_names():
                first = _fixture_text(name).splitlines()[0].lstrip("# ").strip()
                print(f"{name}\t{first}")
            return EXIT_OK
        if args.name not in fixture_names():
            print(f"error: unknown fixture {args.name!r}", file=sys.stderr)
            return EXIT_INPUT
        sys.stdout.write(_fixture_text(args.name))
        return EXIT_OK

    try:
        spec = parse_spec(load_source(args.spec), args.field)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.cmd == "check":
        report = run(spec, parallel=args.parallel, validate=True)
    else:
        command = f"{args.cmd} {args.what}"
        tasks = spec.applicable(command)
        if not tasks:
            print(f"error: nothing in {args.spec} that '{command}' applies to", file=sys.stderr)
            return EXIT_INPUT
        report = run(spec, tasks, parallel=args.parallel)

    sys.stdout.write(report.to_text())
    if args.report:
        text = report.to_json() if args.report.suffix == ".json" else report.to_text()
        try:
            args.report.write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_INPUT
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
