"""Command-line front end: ``detfam eval|verify|pol|guess|scan|factor``.

Every subcommand prints one JSON document (``schema: 1``) unless ``--csv`` is
given. Exit codes: 0 pass, 2 conjecture falsified, 1 failure or error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import closedforms as cf
from .exact import rat
from .report import (
    ERROR,
    EXIT_CODES,
    FAIL,
    PASS,
    Report,
    dumps,
    encode_value,
    overall_status,
    reports_to_csv,
)

JOBS_ENV = "DETFAM_JOBS"


@dataclass
class CommandResult:
    subcommand: str
    status: str
    payload: dict
    text: str | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _reports_payload(reports, timing: bool) -> dict:
    return {"status": overall_status(reports), "reports": [r.to_dict(timing) for r in reports]}


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(target: str, n: int, x=None) -> CommandResult:
    """Determinant of a spec, or both sides of a closed-form identity."""
    from .detengine import det, det_bareiss
    from .families import QSpec, build_q_matrix, parse_spec

    if n < 0:
        raise ValueError("n must be nonnegative")
    xv = rat(x) if x is not None else None
    if target in cf.IDENTITIES:
        rec = cf.IDENTITIES[target]
        if not isinstance(rec, cf.ClosedForm):
            raise ValueError(f"{target} is not a closed form; use verify")
        spec = rec.family(xv)
        lhs = det(spec, n)
        rhs = cf.eval_rhs(target, n, xv)
        equal = lhs == rhs
        payload = {"id": target, "spec": spec.to_text(), "n": n, "x": encode_value(xv),
                   "lhs": encode_value(lhs), "rhs": encode_value(rhs), "equal": equal}
        return CommandResult("eval", PASS if equal else FAIL, payload)
    spec = parse_spec(target)
    if isinstance(spec, QSpec):
        m, factor = build_q_matrix(n)
        value = det_bareiss(m)
        payload = {"spec": "Q", "n": n, "det": encode_value(value), "factor": encode_value(factor)}
        return CommandResult("eval", PASS, payload)
    if xv is not None:
        spec = spec.with_x(xv)
    payload = {"spec": spec.to_text(), "n": n, "det": encode_value(det(spec, n))}
    return CommandResult("eval", PASS, payload)


def _verify_one(args):
    from .verify import verify_identity

    ident, n_max = args
    try:
        return verify_identity(ident, n_max)
    except Exception as e:  # reported per id
        return [Report(ident, error=f"{type(e).__name__}: {e}")]


def cmd_verify(ids, n_max: int, jobs: int = 1, timing: bool = False) -> CommandResult:
    from .verify import expand_ids

    if n_max < 1:
        raise ValueError("--n-max must be at least 1")
    names = expand_ids(ids)
    tasks = [(k, n_max) for k in names]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_verify_one, tasks))
    else:
        chunks = [_verify_one(t) for t in tasks]
    reports = [r for c in chunks for r in c]
    payload = _reports_payload(reports, timing)
    return CommandResult("verify", payload["status"], payload, reports_to_csv(reports))


def cmd_pol(n_max: int) -> CommandResult:
    pols, items = {}, []
    status = PASS
    for n in range(1, n_max + 1):
        try:
            pols[n] = cf.pol_extract(n).pol
            items.append({"n": n, "pol": pols[n].to_text(), "degree": pols[n].degree})
        except cf.PolExtractionError as e:
            items.append({"n": n, "error": str(e)})
            status = FAIL
    residuals = []
    if status == PASS and n_max >= 4:
        for n, r in cf.ms1_recurrence_check(n_max, pols):
            residuals.append({"n": n, "residual": r.to_text(), "zero": r.is_zero()})
            if not r.is_zero():
                status = "conjecture-falsified"
    payload = {"status": status, "pols": items, "recurrence": residuals}
    return CommandResult("pol", status, payload)


def cmd_guess(*, builtin: str | None, datafile: str | None, support: str, degree,
              total_degree: int | None = None, n_max: int | None = None,
              holdout: float | None = None, slack: int = 10) -> CommandResult:
    from . import guess

    if builtin:
        data = guess.builtin_data(builtin, n_max)
    else:
        with open(datafile, encoding="utf-8") as fh:
            data = guess.DataTable.from_csv(fh.read(), domain=datafile)
    sup = guess.ShiftSupport.parse(support, data.dim)
    reports = []
    try:
        if holdout is not None:
            recs, reports = guess.fit_with_holdout(data, sup, degree, total_degree, holdout, slack)
        else:
            recs = guess.fit_recurrence(data, sup, degree, total_degree, slack)
    except guess.InsufficientData as e:
        payload = {"status": ERROR, "error": str(e), "points": len(data)}
        return CommandResult("guess", ERROR, payload)
    status = FAIL if not recs else overall_status(reports) if reports else PASS
    payload = {
        "status": status,
        "support": sup.to_text(),
        "degree": degree if isinstance(degree, int) else list(degree),
        "points": len(data),
        "basis": [r.to_json() for r in recs],
    }
    if reports:
        payload["holdout"] = [r.to_dict() for r in reports]
    return CommandResult("guess", status, payload)


def cmd_scan(configfile: str, jobs: int, csv_out: bool = False) -> CommandResult:
    from . import scan

    cfg = scan.ScanConfig.load(configfile)
    reports = scan.run_scan(cfg, jobs=jobs)
    payload = scan.summary(reports)
    status = ERROR if any(r.status == scan.ERROR for r in reports) else PASS
    payload["status"] = status
    text = scan.to_csv(reports) if csv_out else scan.to_jsonl(reports)
    return CommandResult("scan", status, payload, text)


def cmd_factor(value: str) -> CommandResult:
    from .scan import factor_integer

    v = rat(value)
    f = factor_integer(v)
    payload = {"status": PASS, "value": encode_value(v), "factorization": f.to_text(), **f.to_json()}
    return CommandResult("factor", PASS, payload)


# ---------------------------------------------------------------------------
# argument parsing


def _degree(text: str):
    parts = [int(p) for p in text.split(",")]
    return parts[0] if len(parts) == 1 else tuple(parts)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1 so that 2 stays reserved for falsified conjectures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="detfam",
        description="Exact evaluation, verification and search for binomial determinant families.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, csv=False):
        sp.add_argument("--pretty", action="store_true", help="indent the JSON output")
        sp.add_argument("--timing", action="store_true", help="include elapsed seconds")
        if csv:
            sp.add_argument("--csv", action="store_true", help="print a CSV table instead of JSON")

    sp = sub.add_parser("eval", help="evaluate a determinant or both sides of an identity")
    sp.add_argument("target", help="family spec (e.g. D[1,1,1,-1], DiFrancesco) or identity id")
    sp.add_argument("n", type=int, help="matrix dimension")
    sp.add_argument("--x", help="rational value substituted for x")
    common(sp)

    sp = sub.add_parser("verify", help="check identities over their grids")
    sp.add_argument("ids", nargs="+", help="identity ids, group names, suites, all-proved or all-conjectures")
    sp.add_argument("--n-max", type=int, default=8, help="largest dimension (default 8)")
    sp.add_argument("--jobs", type=int, default=None,
                    help=f"worker processes (default ${JOBS_ENV} or the core count)")
    common(sp, csv=True)

    sp = sub.add_parser("pol", help="extract Pol_n from the MS1 determinant and check its recurrence")
    sp.add_argument("--n-max", type=int, default=6, help="largest n (default 6)")
    common(sp)

    sp = sub.add_parser("guess", help="fit recurrences with a given shift support")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", help="built-in data set: difran-c, warmup-c, pow2, factorial")
    src.add_argument("--data", help="CSV file with header n,value or n,j,value")
    sp.add_argument("--support", required=True, help='shifts, e.g. "Sj2,Sn,Sj,1"')
    sp.add_argument("--degree", type=_degree, required=True,
                    help="coefficient degree bound per variable (int or n,j pair)")
    sp.add_argument("--total-degree", type=int, help="cap on total coefficient degree")
    sp.add_argument("--n-max", type=int, help="size of the built-in data set")
    sp.add_argument("--holdout", type=float, help="fit on this fraction and check the rest")
    sp.add_argument("--slack", type=int, default=10, help="extra equations required (default 10)")
    common(sp)

    sp = sub.add_parser("scan", help="search a parameter box for completely factoring determinants")
    sp.add_argument("config", help="config file with key = value and 'range alpha = lo..hi' lines")
    sp.add_argument("--jobs", type=int, default=None,
                    help=f"worker processes (default ${JOBS_ENV} or the core count)")
    sp.add_argument("--summary", action="store_true", help="print the summary document instead of JSON lines")
    common(sp, csv=True)

    sp = sub.add_parser("factor", help="factor a nonzero integer or rational")
    sp.add_argument("value")
    common(sp)
    return p


def run(args) -> CommandResult:
    if args.command == "eval":
        return cmd_eval(args.target, args.n, args.x)
    if args.command == "verify":
        return cmd_verify(args.ids, args.n_max, args.jobs or default_jobs(), args.timing)
    if args.command == "pol":
        return cmd_pol(args.n_max)
    if args.command == "guess":
        return cmd_guess(builtin=args.builtin, datafile=args.data, support=args.support,
                         degree=args.degree, total_degree=args.total_degree, n_max=args.n_max,
                         holdout=args.holdout, slack=args.slack)
    if args.command == "scan":
        return cmd_scan(args.config, args.jobs or default_jobs(), getattr(args, "csv", False))
    if args.command == "factor":
        return cmd_factor(args.value)
    raise ValueError(f"unknown command {args.command}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        res = run(args)
    except Exception as e:
        res = CommandResult(args.command, ERROR, {"status": ERROR, "error": f"{type(e).__name__}: {e}"})
    elapsed = time.perf_counter() - t0
    if getattr(args, "csv", False) and res.text is not None:
        sys.stdout.write(res.text)
    elif args.command == "scan" and res.text is not None and not args.summary:
        sys.stdout.write(res.text)
    else:
        doc = {"command": res.subcommand, "status": res.status, **res.payload}
        if args.timing:
            doc["elapsed"] = round(elapsed, 6)
        print(dumps(doc, pretty=args.pretty))
    if res.status == ERROR and "error" in res.payload:
        print(f"detfam: {res.payload['error']}", file=sys.stderr)
    return res.exit_code


__all__ = ["CommandResult", "build_parser", "cmd_eval", "cmd_factor", "cmd_guess", "cmd_pol",
           "cmd_scan", "cmd_verify", "default_jobs", "main"]
