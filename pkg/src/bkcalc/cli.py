"""Batch front end: ``ss --family links --strands 2 --ambient 4 --qmax 9``.

Exit status: 0 ok, 1 an enabled check failed, 2 usage error, 3 a row was
truncated by --max-basis.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import platform
import sys
from dataclasses import dataclass, field as dc_field

from . import __version__
from .connest import convergence_verdict
from .exactla import Field
from .models import ModelOperators, ModelSpec, format_basis_element, normalized_basis
from .simplexcalc import check_identities
from .specseq import WORKERS_ENV, PageReport, e2_page

__all__ = ["JobConfig", "build_parser", "parse_config", "run", "main", "render", "read_csv", "CHECKS"]

CHECKS = ("identities", "euler", "vanishing", "d1sq")
EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3
CSV_FIELDS = ["family", "m", "n", "field", "q", "p", "e1", "e2", "region"]


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    family: str
    m: int = 1
    n: int = 4
    q_max: int | None = None
    field: str = "q"
    fmt: str = "table"
    output: str | None = None
    checks: tuple[str, ...] = ()
    max_basis: int | None = None
    show_diagrams: bool = False
    identities_pmax: int = 3
    identities_qmax: int | None = None
    spec: ModelSpec = dc_field(init=False, repr=False)

    def __post_init__(self):
        try:
            self.spec = ModelSpec(self.family, self.m, self.n, Field.parse(self.field))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if self.q_max is None:
            self.q_max = 3 * self.spec.gen_degree
        if self.q_max < 0:
            raise UsageError("--qmax must be nonnegative")
        if self.fmt not in ("json", "csv", "table"):
            raise UsageError(f"unknown format {self.fmt!r}")
        bad = [c for c in self.checks if c not in CHECKS]
        if bad:
            raise UsageError(f"unknown check(s) {bad}; choose from {', '.join(CHECKS)} or all")
        self.checks = tuple(c for c in CHECKS if c in self.checks)
        if self.max_basis is not None and self.max_basis < 1:
            raise UsageError("--max-basis must be positive")
        if self.identities_pmax < 0:
            raise UsageError("--identities-pmax must be nonnegative")
        if self.identities_qmax is None:
            self.identities_qmax = min(self.q_max, 2 * self.spec.gen_degree)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ss",
        description="E1/E2 pages of the cohomology spectral sequences for knots, "
                    "string links, homotopy string links and braids.",
        epilog=f"Rows run in parallel processes when {WORKERS_ENV} is set above 1.",
    )
    ap.add_argument("--family", required=True, choices=["knots", "links", "hlinks", "braids"])
    ap.add_argument("--strands", "-m", type=int, default=1, help="strand count m (default 1)")
    ap.add_argument("--ambient", "-n", type=int, default=4, help="ambient dimension n (default 4)")
    ap.add_argument("--qmax", type=int, default=None,
                    help="largest internal degree q (default: three generator degrees)")
    ap.add_argument("--field", default="q", help="'q' for the rationals or a prime l (default q)")
    ap.add_argument("--format", dest="fmt", choices=["json", "csv", "table"], default="table")
    ap.add_argument("--output", "-o", default=None,
                    help="write the report here; run metadata goes to <output>.meta.json")
    ap.add_argument("--check", action="append", default=[], metavar="NAME",
                    help=f"enable a self-check ({', '.join(CHECKS)}, or all); repeatable")
    ap.add_argument("--max-basis", type=int, default=None,
                    help="truncate any row whose normalized basis exceeds this size")
    ap.add_argument("--show-diagrams", action="store_true",
                    help="list the normalized chord diagrams of every nonzero E1 entry")
    ap.add_argument("--identities-pmax", type=int, default=3,
                    help="levels checked by --check identities (default 3)")
    ap.add_argument("--identities-qmax", type=int, default=None,
                    help="degrees checked by --check identities (default min(qmax, 2 generator degrees))")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return ap


def parse_config(argv=None) -> JobConfig:
    ap = build_parser()
    ns = ap.parse_args(argv)
    checks = []
    for c in ns.check:
        for part in c.split(","):
            part = part.strip()
            checks.extend(CHECKS if part == "all" else [part])
    try:
        return JobConfig(ns.family, ns.strands, ns.ambient, ns.qmax, ns.field, ns.fmt, ns.output,
                         tuple(checks), ns.max_basis, ns.show_diagrams, ns.identities_pmax,
                         ns.identities_qmax)
    except UsageError as exc:
        ap.error(str(exc))


def _run_checks(cfg: JobConfig, page: PageReport) -> dict:
    out = {}
    for name in cfg.checks:
        if name == "euler":
            bad = [r.q for r in page.rows if r.euler_ok is False]
            out[name] = {"passed": not bad, "failed_rows": bad}
        elif name == "vanishing":
            ok = page.vanishing_ok
            out[name] = {"passed": ok is not False,
                         "applicable": ok is not None}
        elif name == "d1sq":
            bad = [r.q for r in page.rows if r.d1_squared_zero is False]
            out[name] = {"passed": not bad, "failed_rows": bad}
        elif name == "identities":
            fails = check_identities(ModelOperators(cfg.spec, cfg.identities_qmax), cfg.identities_pmax)
            out[name] = {
                "passed": not fails,
                "p_max": cfg.identities_pmax,
                "q_max": cfg.identities_qmax,
                "failures": [f"{f.identity} (p={f.p}, i={f.i}, j={f.j}): {f.detail}" for f in fails[:20]],
            }
    return out


def _diagrams(cfg: JobConfig, page: PageReport) -> dict:
    out = {}
    for r in page.rows:
        for e in r.entries:
            if e.e1:
                out[f"{e.p},{r.q}"] = [format_basis_element(cfg.spec, e.p, k)
                                       for k in normalized_basis(cfg.spec, e.p, r.q)]
    return out


def report_body(cfg: JobConfig, page: PageReport, checks: dict) -> dict:
    body = page.to_dict()
    body["verdict"] = convergence_verdict(cfg.spec.family, cfg.spec.n).to_dict()
    body["checks"] = checks
    body["truncation"] = {
        "truncated": page.truncated,
        "max_basis": cfg.max_basis,
        "rows": [r.q for r in page.rows if r.truncated],
    }
    if cfg.show_diagrams:
        body["diagrams"] = _diagrams(cfg, page)
    return body


def _csv(body: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    s = body["spec"]
    for row in body["rows"]:
        for e in row["entries"]:
            w.writerow({"family": s["family"], "m": s["m"], "n": s["n"], "field": s["field"],
                        "q": row["q"], "p": e["p"],
                        "e1": "" if e["e1"] is None else e["e1"],
                        "e2": "" if e["e2"] is None else e["e2"],
                        "region": e["region"]})
    return buf.getvalue()


def read_csv(text: str) -> dict[tuple[int, int], tuple[int | None, int | None]]:
    """Parse CSV output back into {(p, q): (e1, e2)}."""
    out = {}
    for rec in csv.DictReader(io.StringIO(text)):
        conv = (lambda v: None if v == "" else int(v))
        out[int(rec["p"]), int(rec["q"])] = (conv(rec["e1"]), conv(rec["e2"]))
    return out


def _table(body: dict) -> str:
    s = body["spec"]
    lines = [f"{s['family']}  m={s['m']}  n={s['n']}  field={s['field']}  q<={body['q_max']}",
             body["label"], ""]
    p_top = max((e["p"] for r in body["rows"] for e in r["entries"]), default=0)
    head = "   q |" + "".join(f"{'p=' + str(p):>14}" for p in range(p_top + 1)) + "   chi"
    lines += ["E2 (E1) dimensions", head, "-" * len(head)]
    for r in body["rows"]:
        cells = {e["p"]: e for e in r["entries"]}
        parts = []
        for p in range(p_top + 1):
            e = cells.get(p)
            if e is None:
                parts.append(f"{'.':>14}")
            elif e["e1"] is None:
                parts.append(f"{'?':>14}")
            elif e["e1"] == 0:
                parts.append(f"{'.':>14}")
            else:
                parts.append(f"{str(e['e2']) + ' (' + str(e['e1']) + ')':>14}")
        chi = "?" if r["euler_e2"] is None else str(r["euler_e2"])
        lines.append(f"{r['q']:>4} |" + "".join(parts) + f"{chi:>6}")
    v = body["verdict"]
    fmt = {True: "yes", False: "no", None: "unknown"}
    lines += ["", f"convergence: cohomology {fmt[v['converges_cohomology']]}, "
                  f"homotopy {fmt[v['converges_homotopy']]}; target: {v['target']}"]
    for name, c in body["checks"].items():
        lines.append(f"check {name}: {'ok' if c['passed'] else 'FAILED'}")
        for f in c.get("failures", []):
            lines.append(f"  {f}")
    if body["truncation"]["truncated"]:
        lines.append(f"TRUNCATED rows (basis > {body['truncation']['max_basis']}): {body['truncation']['rows']}")
    for pq, ds in body.get("diagrams", {}).items():
        p, q = pq.split(",")
        lines.append(f"diagrams at p={p}, q={q}: " + "; ".join(ds))
    return "\n".join(lines) + "\n"


def render(body: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(body, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _csv(body)
    return _table(body)


def run(cfg: JobConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    page = e2_page(cfg.spec, cfg.q_max, max_basis=cfg.max_basis, check_d1sq="d1sq" in cfg.checks)
    checks = _run_checks(cfg, page)
    body = report_body(cfg, page, checks)
    text = render(body, cfg.fmt)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
        meta = {
            "version": __version__,
            "python": platform.python_version(),
            "workers": os.environ.get(WORKERS_ENV, "1"),
            "total_seconds": page.timing["total_seconds"],
            "row_seconds": {str(q): t for q, t in page.timing["row_seconds"].items()},
        }
        with open(cfg.output + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        stdout.write(text)
    if any(not c["passed"] for c in checks.values()):
        return EXIT_CHECK
    if page.truncated:
        print(f"ss: rows {body['truncation']['rows']} truncated at --max-basis {cfg.max_basis}",
              file=sys.stderr)
        return EXIT_TRUNCATED
    return EXIT_OK


def main(argv=None) -> int:
    cfg = parse_config(argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
