"""Command line front end.

    hochcalc hh     ALG   Hochschild homology dimensions and representatives
    hochcalc cohh   ALG   Hochschild cohomology dimensions and the center
    hochcalc ops    ALG   operation matrices on (co)homology
    hochcalc verify ALG   identity suite, Cartan, Morita, Kunneth, bar model
    hochcalc operad       operad axioms, arity tables, pi0 orders
    hochcalc cyclic ALG MORPHISM   matrix of a cyclic-category morphism

``ALG`` is a ``.alg`` file (line format or JSON records) or an inline preset
such as ``preset:truncated_polynomial:2``.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import linalg, operadgeo
from .algebra import AlgebraError, FiniteAlgebra, from_structure_constants, preset
from .cyclic import MorphismError, cyclic_module_of, parse_morphism
from .exactfield import field_from_tag
from .hochcalc import verify as V
from .hochcalc.chains import HochschildChains
from .hochcalc.cochains import HochschildCochains
from .hochcalc.tensors import NORMALIZED, VARIANTS

JOBS_ENV = "HOCHCALC_JOBS"
OPS = ("cup", "cap", "connes", "lie", "bracket")
CHECKS = ("identities", "cartan", "module", "bracket", "bar-model", "morita", "kunneth")
OPERAD_TASKS = ("axioms", "arity-table", "pi0")


class DescriptionError(ValueError):
    pass


_SCALAR = re.compile(r"[+-]?\d+(?:\s*/\s*\d+)?(?:\s*mod\s+\d+)?")


# ---------------------------------------------------------------- algebra descriptions

@dataclass
class AlgebraDescription:
    name: str = ""
    field: str = "Q"
    dim: int | None = None
    basis: list = dc_field(default_factory=list)
    unit: list = dc_field(default_factory=list)
    constants: list = dc_field(default_factory=list)   # [i, j, k, value] with 1-based indices
    preset: str | None = None
    params: list = dc_field(default_factory=list)

    def to_records(self) -> dict:
        if self.preset:
            return {"preset": self.preset, "params": list(self.params), "field": self.field}
        return {"name": self.name, "field": self.field, "dim": self.dim, "basis": list(self.basis),
                "unit": list(self.unit), "constants": [list(c) for c in self.constants]}

    def build(self, field_override: str | None = None) -> FiniteAlgebra:
        tag = field_override or self.field
        try:
            fld = field_from_tag(tag)
        except ValueError as e:
            raise DescriptionError(f"field: {e}") from None
        if self.preset:
            try:
                return preset(self.preset, *self.params, field=fld)
            except ValueError as e:
                raise DescriptionError(f"preset: {e}") from None
        if self.dim is None:
            raise DescriptionError("dim: missing")
        rows = []
        for n, (i, j, k, v) in enumerate(self.constants):
            try:
                rows.append((int(i) - 1, int(j) - 1, int(k) - 1, fld.parse(str(v))))
            except ValueError as e:
                raise DescriptionError(f"constant row {n + 1}: {e}") from None
        try:
            unit = [fld.parse(str(x)) for x in self.unit]
            return from_structure_constants(fld, self.dim, unit, rows, labels=self.basis or None,
                                            name=self.name)
        except AlgebraError as e:
            raise DescriptionError(f"invalid algebra: {e}") from None
        except ValueError as e:
            raise DescriptionError(str(e)) from None


def parse_description_text(text: str, source: str = "<input>") -> AlgebraDescription:
    """Line format: ``key: value`` headers, ``c i j k value`` rows, ``#`` comments."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            return description_from_records(json.loads(text))
        except json.JSONDecodeError as e:
            raise DescriptionError(f"{source}:{e.lineno}: bad JSON ({e.msg})") from None
    d = AlgebraDescription()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        if line.startswith("c ") or line == "c":
            parts = line.split(None, 4)
            if len(parts) != 5:
                raise DescriptionError(f"{where}: constant rows read 'c i j k value'")
            try:
                i, j, k = (int(x) for x in parts[1:4])
            except ValueError:
                raise DescriptionError(f"{where}: indices must be integers") from None
            d.constants.append([i, j, k, parts[4].strip()])
            continue
        if ":" not in line:
            raise DescriptionError(f"{where}: expected 'key: value' or a 'c' row")
        key, val = (x.strip() for x in line.split(":", 1))
        if key == "name":
            d.name = val
        elif key == "field":
            d.field = val
        elif key == "dim":
            try:
                d.dim = int(val)
            except ValueError:
                raise DescriptionError(f"{where}: field 'dim' must be an integer") from None
        elif key == "basis":
            d.basis = val.split()
        elif key == "unit":
            d.unit = [t.strip() for t in _SCALAR.findall(val)]
        elif key == "preset":
            parts = val.split()
            if not parts:
                raise DescriptionError(f"{where}: empty preset")
            d.preset, d.params = parts[0], parts[1:]
        else:
            raise DescriptionError(f"{where}: unknown key {key!r}")
    if d.preset is None and d.dim is None:
        raise DescriptionError(f"{source}: neither 'preset' nor 'dim' given")
    return d


def description_from_records(rec: dict) -> AlgebraDescription:
    if not isinstance(rec, dict):
        raise DescriptionError("records input must be a JSON object")
    if "preset" in rec:
        return AlgebraDescription(field=rec.get("field", "Q"), preset=rec["preset"],
                                  params=[str(x) for x in rec.get("params", [])])
    try:
        return AlgebraDescription(name=rec.get("name", ""), field=rec.get("field", "Q"), dim=int(rec["dim"]),
                                  basis=list(rec.get("basis", [])), unit=[str(x) for x in rec["unit"]],
                                  constants=[[int(i), int(j), int(k), str(v)] for i, j, k, v in rec.get("constants", [])])
    except KeyError as e:
        raise DescriptionError(f"records input lacks field {e.args[0]!r}") from None


def description_of(A: FiniteAlgebra) -> AlgebraDescription:
    f = A.field
    rows = []
    for (i, j) in sorted(A.table):
        for k in sorted(A.table[(i, j)]):
            rows.append([i + 1, j + 1, k + 1, f.render(A.table[(i, j)][k])])
    return AlgebraDescription(name=A.name, field=f.tag, dim=A.dim, basis=list(A.labels),
                              unit=[f.render(A.unit.get(i, f.zero)) for i in range(A.dim)], constants=rows)


def load_description(source: str) -> AlgebraDescription:
    if source.startswith("preset:"):
        parts = source.split(":")[1:]
        if not parts or not parts[0]:
            raise DescriptionError(f"{source}: expected preset:NAME[:PARAM...]")
        return AlgebraDescription(preset=parts[0], params=parts[1:])
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DescriptionError(f"{source}: {e.strerror}") from None
    return parse_description_text(text, source)


def load_algebra(source: str, field_override: str | None = None) -> FiniteAlgebra:
    return load_description(source).build(field_override)


# ---------------------------------------------------------------- configuration

@dataclass
class RunConfig:
    max_degree: int = 4
    variant: str = NORMALIZED
    dense_threshold: int = 64
    jobs: int = 1
    fmt: str = "text"

    def __post_init__(self):
        if self.max_degree < 0:
            raise ValueError("max degree must be nonnegative")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _config(args) -> RunConfig:
    cfg = RunConfig(max_degree=args.max_degree, variant=args.variant, dense_threshold=args.dense_threshold,
                    jobs=args.jobs if args.jobs else _default_jobs(), fmt=args.format)
    linalg.set_dense_threshold(cfg.dense_threshold)
    return cfg


def dump_records(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False)


# ---------------------------------------------------------------- commands

def cmd_hh(A: FiniteAlgebra, cfg: RunConfig) -> dict:
    X = HochschildChains(A, cfg.max_degree, cfg.variant)
    rep = V.homology_report(X)
    rep["command"] = "hh"
    return rep


def cmd_cohh(A: FiniteAlgebra, cfg: RunConfig) -> dict:
    Y = HochschildCochains(A, cfg.max_degree, cfg.variant)
    rep = V.cohomology_report(Y)
    rep["command"] = "cohh"
    return rep


def cmd_ops(A: FiniteAlgebra, cfg: RunConfig, which) -> dict:
    rep = V.operation_matrices(A, cfg.max_degree, set(which))
    rep["command"] = "ops"
    rep["which"] = [w for w in OPS if w in which]
    return rep


def _run_check(task):
    name, A, N, extra = task
    if name == "identities":
        return V.identity_suite(A, N)
    if name == "cartan":
        return V.cartan_check(A, N, max_degree=min(3, N - 1))
    if name == "module":
        return V.module_axiom_check(A, N, max_degree=min(3, N - 1)) + V.cup_commutativity_check(A, N)
    if name == "bracket":
        return V.bracket_check(A, N, max_degree=min(3, N - 1))
    if name == "bar-model":
        return V.bar_model_check(A, max(N, 1), max_degree=min(3, max(N - 1, 0)))
    if name == "morita":
        return [V.verify_morita(A, extra["r"], N, extra.get("budget"))]
    if name == "kunneth":
        return [V.verify_kunneth(A, extra["other"], N, extra.get("budget"))]
    raise ValueError(f"unknown check {name}")


def cmd_verify(A: FiniteAlgebra, cfg: RunConfig, which, morita_r: int = 2, other: FiniteAlgebra | None = None,
               budget: int | None = None) -> dict:
    tasks = []
    for name in CHECKS:
        if name not in which:
            continue
        extra = {"budget": budget}
        if name == "morita":
            extra["r"] = morita_r
        if name == "kunneth":
            extra["other"] = other if other is not None else A
        tasks.append((name, A, cfg.max_degree, extra))
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_check, tasks))
    else:
        results = [_run_check(t) for t in tasks]
    sections = []
    for (name, *_), recs in zip(tasks, results):
        sections.append({"check": name, "ok": V.all_ok(recs), "count": len(recs),
                         "records": recs, "counterexample": V.first_failure(recs)})
    return {"command": "verify", "algebra": V.algebra_id(A), "N": cfg.max_degree,
            "ok": all(s["ok"] for s in sections), "sections": sections}


def cmd_operad(which, operads=None, samples: int = 1000, seed: int = 0, max_arity: int = 4) -> dict:
    operads = list(operads or operadgeo.OPERADS)
    out: dict = {"command": "operad", "ok": True}
    if "axioms" in which:
        rng = random.Random(seed)
        counts = {"associativity": 0, "unitality": 0, "equivariance": 0, "cylinder_invariant": 0, "pi0_morphism": 0}
        failures = []
        for k in range(samples):
            op = operads[k % len(operads)]
            h, gs, fs = operadgeo.random_triple(rng, op)
            perm = list(range(h.arity))
            rng.shuffle(perm)
            checks = {"associativity": operadgeo.associativity_holds(h, gs, fs),
                      "unitality": operadgeo.unitality_holds(h),
                      "equivariance": operadgeo.equivariance_holds(h, gs, perm)}
            comp = operadgeo.compose(h, gs)
            if operadgeo.piece_of(h.target).angular:
                got = operadgeo.cylinder_invariant(comp)
                exp = operadgeo.compose_cylinder_invariants(
                    operadgeo.cylinder_invariant(h), [operadgeo.cylinder_invariant_or_none(g) for g in gs],
                    h.source, [g.source for g in gs])
                checks["cylinder_invariant"] = got[0] == exp[0] and all(
                    e is None or e == r for e, r in zip(exp[1], got[1]))
            if operadgeo.piece_of(h.target).kind == operadgeo.INTERVAL:
                checks["pi0_morphism"] = operadgeo.pi0_order(comp) == operadgeo.insert_orders(
                    operadgeo.pi0_order(h), [operadgeo.pi0_order(g) for g in gs])
            for key, ok in checks.items():
                if ok:
                    counts[key] += 1
                elif len(failures) < 5:
                    failures.append({"law": key, "operad": op, "outer": str(h), "inner": [str(g) for g in gs]})
        out["axioms"] = {"samples": samples, "seed": seed, "passed": counts, "failures": failures,
                         "ok": not failures}
        out["ok"] &= not failures
    if "arity-table" in which:
        rows = []
        for op in operads:
            rows += operadgeo.arity_table(op, max_arity)
        out["arity_table"] = rows
    if "pi0" in which:
        import math
        pi0 = [{"n": n, "orders": len(operadgeo.achievable_orders(n, samples=50, seed=seed)),
                "expected": math.factorial(n)} for n in range(5)]
        for r in pi0:
            r["ok"] = r["orders"] == r["expected"]
        out["pi0"] = pi0
        out["ok"] &= all(r["ok"] for r in pi0)
    return out


def cmd_cyclic(A: FiniteAlgebra, literal: str) -> dict:
    f = parse_morphism(literal)
    M = cyclic_module_of(A).action(f)
    fld = A.field
    return {"command": "cyclic", "algebra": V.algebra_id(A), "morphism": str(f),
            "rows": M.nrows, "cols": M.ncols,
            "entries": [[i, j, fld.render(v)] for i, j, v in M.entries()]}


# ---------------------------------------------------------------- text rendering

def _fmt_matrix(M: list) -> list:
    if not M or not M[0]:
        return ["    (empty)"]
    width = max(len(x) for row in M for x in row)
    return ["    " + " ".join(x.rjust(width) for x in row) for row in M]


def render_text(rep: dict) -> str:
    cmd = rep.get("command")
    lines = []
    if cmd in ("hh", "cohh"):
        sym = "HH_n" if cmd == "hh" else "HH^n"
        lines.append(f"{sym} of {rep['algebra']}  variant={rep['variant']}  N={rep['N']}")
        key = "chain_dim" if cmd == "hh" else "cochain_dim"
        lines.append("  n  dim  space")
        for d in rep["degrees"]:
            flag = "  provisional" if d["provisional"] else ""
            lines.append(f"{d['degree']:3d} {d['dim']:4d} {d[key]:6d}{flag}")
        lines.append("dims: " + " ".join(str(x) for x in rep["dims"]))
        if cmd == "hh":
            for d in rep["degrees"]:
                for k, rep_vec in enumerate(d["representatives"]):
                    terms = " + ".join(f"{c}*({' (x) '.join(t)})" for t, c in rep_vec)
                    lines.append(f"  [{d['degree']}.{k}] {terms}")
        else:
            lines.append("center basis (coordinates in " + " ".join(rep["labels"]) + "):")
            lines += ["  " + " ".join(v) for v in rep["center_basis"]]
        return "\n".join(lines)
    if cmd == "ops":
        lines.append(f"operations on {rep['algebra']}  N={rep['N']}")
        for op in rep["which"]:
            for item in rep.get(op, []):
                tag = item.get("class") or item.get("classes")
                if "matrix" in item:
                    head = f"{op} class={tag} " if tag is not None else f"{op} "
                    lines.append(f"{head}degree={item['degree']}:")
                    lines += _fmt_matrix(item["matrix"])
                else:
                    lines.append(f"{op} classes={tag}: [" + " ".join(item["coordinates"]) + "]")
        return "\n".join(lines)
    if cmd == "verify":
        lines.append(f"verify {rep['algebra']}  N={rep['N']}")
        for s in rep["sections"]:
            lines.append(f"{'PASS' if s['ok'] else 'FAIL'}  {s['check']}  ({s['count']} checks)")
            if not s["ok"]:
                lines.append("  counterexample: " + json.dumps(s["counterexample"], sort_keys=True))
        lines.append("all passed" if rep["ok"] else "FAILURES")
        return "\n".join(lines)
    if cmd == "operad":
        if "axioms" in rep:
            a = rep["axioms"]
            lines.append(f"{'PASS' if a['ok'] else 'FAIL'}  operad axioms on {a['samples']} random triples (seed {a['seed']})")
            for k, v in sorted(a["passed"].items()):
                lines.append(f"  {k}: {v}")
            for f in a["failures"]:
                lines.append("  failure: " + json.dumps(f, sort_keys=True))
        if "arity_table" in rep:
            lines.append(operadgeo.render_arity_table(rep["arity_table"]))
        if "pi0" in rep:
            for r in rep["pi0"]:
                lines.append(f"{'PASS' if r['ok'] else 'FAIL'}  pi0 orders n={r['n']}: {r['orders']} (n! = {r['expected']})")
        return "\n".join(lines)
    if cmd == "cyclic":
        lines.append(f"{rep['morphism']} on {rep['algebra']}: {rep['rows']}x{rep['cols']}")
        lines += [f"  {i} {j} {v}" for i, j, v in rep["entries"]]
        return "\n".join(lines)
    return dump_records(rep)


# ---------------------------------------------------------------- argument parsing

def _split_list(text: str, allowed) -> list:
    items = [x.strip() for x in text.split(",") if x.strip()]
    for x in items:
        if x not in allowed:
            raise argparse.ArgumentTypeError(f"{x!r} not in {', '.join(allowed)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", "-N", type=int, default=4, help="truncation degree N (default 4)")
    common.add_argument("--variant", choices=VARIANTS, default=NORMALIZED)
    common.add_argument("--field", default=None, help="override the field, e.g. Q or F7")
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--jobs", type=int, default=0, help=f"parallel width (default ${JOBS_ENV} or 1)")
    common.add_argument("--dense-threshold", type=int, default=64)
    common.add_argument("--output", "-o", default=None, help="write the report here (.report for records)")

    p = argparse.ArgumentParser(prog="hochcalc", description="Exact Hochschild calculus of finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, hlp in (("hh", "Hochschild homology"), ("cohh", "Hochschild cohomology")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("algebra")
    s = sub.add_parser("ops", parents=[common], help="operation matrices on homology")
    s.add_argument("algebra")
    s.add_argument("--which", type=lambda t: _split_list(t, OPS), default=list(OPS))
    s = sub.add_parser("verify", parents=[common], help="verification suites")
    s.add_argument("algebra")
    s.add_argument("--which", type=lambda t: _split_list(t, CHECKS), default=["identities"])
    s.add_argument("--verify-all", action="store_true", help="run every check")
    s.add_argument("--morita-r", type=int, default=2)
    s.add_argument("--kunneth-with", default=None, help="second algebra for the Kunneth check")
    s.add_argument("--budget", type=int, default=None, help="largest chain-space dimension for Morita/Kunneth")
    s = sub.add_parser("operad", parents=[common], help="operad checks and tables")
    s.add_argument("--which", type=lambda t: _split_list(t, OPERAD_TASKS), default=list(OPERAD_TASKS))
    s.add_argument("--operad", action="append", choices=list(operadgeo.OPERADS), default=None)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-arity", type=int, default=4)
    s = sub.add_parser("cyclic", parents=[common], help="action of a cyclic-category morphism")
    s.add_argument("algebra")
    s.add_argument("morphism", help="literal p->q:[f0,...,fp]")
    return p


def run(argv=None) -> tuple:
    """Returns ``(exit code, rendered output)``."""
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "operad":
            rep = cmd_operad(args.which, args.operad, args.samples, args.seed, args.max_arity)
            code = 0 if rep["ok"] else 1
        else:
            A = load_algebra(args.algebra, args.field)
            code = 0
            if args.command == "hh":
                rep = cmd_hh(A, cfg)
            elif args.command == "cohh":
                rep = cmd_cohh(A, cfg)
            elif args.command == "ops":
                rep = cmd_ops(A, cfg, args.which)
            elif args.command == "cyclic":
                rep = cmd_cyclic(A, args.morphism)
            else:
                which = list(CHECKS) if args.verify_all else args.which
                other = load_algebra(args.kunneth_with, args.field) if args.kunneth_with else None
                rep = cmd_verify(A, cfg, which, args.morita_r, other, args.budget)
                code = 0 if rep["ok"] else 1
    except DescriptionError as e:
        return 2, f"error: {e}"
    except V.BudgetExceeded as e:
        return 3, f"error: {e} (degree reached: {e.reached})"
    except (MorphismError, operadgeo.OperadError, ValueError) as e:
        return 2, f"error: {e}"
    text = dump_records(rep) if cfg.fmt == "records" else render_text(rep)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code in (2, 3) else sys.stdout
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
