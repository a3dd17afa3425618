"""Command-line front end.

Exit codes: 0 liftable/valid, 1 not liftable/invalid, 2 bad input,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .differentials import ModuleMultiset, decompose, differential_table, dimension_check
from .errors import InputError, InvalidGroupError, InvalidJumpsError, SearchBudgetExceeded
from .exactmath import GroupSpec, make_group, validate_group
from .lifting import decide, default_budget, explicit_w01_pairing
from .ramification import (
    JumpSequence,
    family_jumps,
    genus_generic,
    genus_special,
    kgb_vanishes,
    lower_to_upper,
    upper_to_lower,
    validate_obus_pries,
)
from .scan import ScanRange, scan

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

MODES = ("decide", "decompose", "dtable", "genus", "validate", "family", "scan")
SUBCOMMANDS = {"validate": "validate", "genus": "genus", "dtable": "dtable", "decompose": "decompose",
               "lift": "decide", "family": "family", "scan": "scan"}


@dataclass
class JobSpec:
    p: int
    h: Optional[int] = None
    m: int = 2
    alpha: Optional[int] = None
    a0: Optional[int] = None
    lower_jumps: Optional[Tuple[int, ...]] = None
    upper_jumps: Optional[Tuple[int, ...]] = None
    family_w0: Optional[int] = None
    mode: str = "decide"
    allow_trivial_eigenvalue: bool = False
    cross_check: bool = False
    budget: Optional[int] = None
    notation: str = "u"
    rows: Optional[str] = None
    w0_max: Optional[int] = None
    family_only: bool = True
    slack: int = 0
    workers: int = 1

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "JobSpec":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InputError(f"unknown field(s) {unknown}", field=unknown[0])
        data = {k: v for k, v in data.items() if v is not None}
        if "p" not in data:
            raise InputError("missing required field", field="p")
        for name in ("p", "h", "m", "alpha", "a0", "family_w0", "budget", "w0_max", "slack", "workers"):
            if name in data and (not isinstance(data[name], int) or isinstance(data[name], bool)):
                raise InputError(f"must be an integer, got {data[name]!r}", field=name)
        for name in ("allow_trivial_eigenvalue", "cross_check", "family_only"):
            if name in data and not isinstance(data[name], bool):
                raise InputError(f"must be a boolean, got {data[name]!r}", field=name)
        for name in ("lower_jumps", "upper_jumps"):
            if name in data:
                seq = data[name]
                if not isinstance(seq, (list, tuple)) or not all(
                    isinstance(x, int) and not isinstance(x, bool) for x in seq
                ):
                    raise InputError(f"must be a list of integers, got {seq!r}", field=name)
                data[name] = tuple(seq)
        job = cls(**data)
        if job.mode not in MODES:
            raise InputError(f"unknown mode {job.mode!r}; expected one of {MODES}", field="mode")
        if job.notation not in ("u", "v"):
            raise InputError(f"notation must be 'u' or 'v', got {job.notation!r}", field="notation")
        sources = [n for n in ("lower_jumps", "upper_jumps", "family_w0") if getattr(job, n) is not None]
        if job.mode == "scan":
            if sources:
                raise InputError("scan enumerates its own jumps; drop the jump source", field=sources[0])
            if job.w0_max is None:
                raise InputError("scan needs a bound", field="w0_max")
        elif len(sources) != 1:
            raise InputError(
                "exactly one of lower_jumps, upper_jumps, family_w0 is required", field=(sources or ["lower_jumps"])[-1]
            )
        if job.mode == "family" and job.family_w0 is None:
            raise InputError("family mode needs family_w0", field="family_w0")
        if job.h is None:
            seq = job.lower_jumps or job.upper_jumps
            if seq is None:
                raise InputError("missing required field", field="h")
            job.h = len(seq)
        return job

    def group(self) -> GroupSpec:
        return make_group(self.p, self.h, self.m, self.alpha, self.a0)

    def lower(self) -> List[int]:
        if self.family_w0 is not None:
            return family_jumps(self.p, self.h, self.family_w0)
        if self.upper_jumps is not None:
            lower = upper_to_lower(self.upper_jumps, self.p)
        else:
            lower = list(self.lower_jumps)
        if len(lower) != self.h:
            raise InputError(f"h = {self.h} but {len(lower)} jumps were given", field="h")
        return lower

    def jumps(self) -> JumpSequence:
        return JumpSequence(p=self.p, lower=tuple(self.lower()))

    def effective_budget(self) -> int:
        return self.budget if self.budget is not None else default_budget()


# -- serialization ------------------------------------------------------------------


def modules_json(ms: ModuleMultiset) -> List[Dict[str, int]]:
    return [{"socle": a, "dim": b, "mult": mult} for (a, b), mult in ms.entries]


def group_json(spec: GroupSpec) -> Dict[str, int]:
    return {"p": spec.p, "h": spec.h, "q": spec.q, "m": spec.m, "alpha": spec.alpha, "a0": spec.a0}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def render_modules(ms: ModuleMultiset, notation: str, a0: int) -> str:
    view = ms.to_v(a0) if notation == "v" else ms.to_u(a0)
    name = "V" if view.notation == "V" else "U"
    return ", ".join(f"{name}({a},{b})" + (f"^{k}" if k > 1 else "") for (a, b), k in view.entries) or "(none)"


def _parse_rows(text: Optional[str], q: int) -> List[int]:
    if not text:
        return list(range(q))
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition("-")
        try:
            lo_i, hi_i = int(lo), int(hi or lo)
        except ValueError:
            raise InputError(f"bad row range {part!r}", field="rows") from None
        if not 0 <= lo_i <= hi_i < q:
            raise InputError(f"row range {part!r} outside [0, {q - 1}]", field="rows")
        out.extend(range(lo_i, hi_i + 1))
    return out


def dtable_rows(job: JobSpec) -> List[Dict[str, Any]]:
    table = differential_table(job.jumps(), job.p, job.m)
    q = table.q
    rows = []
    for j in _parse_rows(job.rows, q):
        row = table.rows[j]
        diff = table.differences(j)
        rows.append({
            "j": j,
            "digits": list(row.digits),
            "B": row.B,
            "numerator": q - 1 + table.rows[q - 1].B - row.B,
            "d": row.d,
            "n": list(row.n),
            "diff": None if diff is None else list(diff),
        })
    return rows


def render_dtable(job: JobSpec) -> str:
    rows = dtable_rows(job)
    m = job.m
    head = ["j", "p-adic", "d_j"] + [f"n_j,{l}" for l in range(m)] + [f"n_(j-1),{l}-n_j,{l}" for l in range(m)]
    lines = [" | ".join(head)]
    for r in rows:
        diff = ["-"] * m if r["diff"] is None else [str(x) for x in r["diff"]]
        cells = [str(r["j"]), ",".join(map(str, r["digits"])), f"floor({r['numerator']}/{job.p ** job.h})={r['d']}"]
        lines.append(" | ".join(cells + [str(x) for x in r["n"]] + diff))
    return "\n".join(lines)


# -- modes ----------------------------------------------------------------------------


def _validate(job: JobSpec, as_json: bool) -> Tuple[str, int]:
    spec = job.group()
    doc: Dict[str, Any] = {"mode": "validate", "group": group_json(spec)}
    try:
        doc["group_diagnostics"] = validate_group(spec).as_dict()
        doc["group_valid"] = True
    except InvalidGroupError as exc:
        doc.update(group_valid=False, group_error=str(exc))
    try:
        lower = job.lower()
        upper = list(job.upper_jumps) if job.upper_jumps is not None else lower_to_upper(lower, job.p)[1]
        op = validate_obus_pries(upper, job.p, job.m)
        doc.update(lower_jumps=lower, upper_jumps=upper, obus_pries=[{"clause": c, "message": msg} for c, msg in op.violations])
        jumps = job.jumps()
        kgb = kgb_vanishes(jumps.lower, job.m, job.p)
        doc.update(
            orbit_counts=list(jumps.orbit_counts),
            jumps_valid=op.valid,
            kgb_vanishes=kgb.vanishes,
            kgb_upper_all_minus_one=kgb.upper_all_minus_one,
            kgb_m_divides_orbit_counts=kgb.m_divides_orbit_counts,
        )
    except InvalidJumpsError as exc:
        doc.update(jumps_valid=False, jumps_error=str(exc))
    valid = doc["group_valid"] and doc["jumps_valid"]
    doc["valid"] = valid
    if as_json:
        return dumps(doc), EXIT_OK if valid else EXIT_NEGATIVE
    lines = [f"group C_{spec.q} x| C_{spec.m}, alpha = {spec.alpha}, a0 = {spec.a0}: "
             + ("valid" if doc["group_valid"] else "INVALID (" + doc["group_error"] + ")")]
    if doc["group_valid"]:
        gd = doc["group_diagnostics"]
        lines.append(f"  order of alpha mod q = {gd['order_mod_q']}, faithful = {gd['faithful']}, "
                     f"a0 candidates = {gd['a0_candidates']}")
    if "jumps_error" in doc:
        lines.append(f"jumps: INVALID ({doc['jumps_error']})")
        lines += [f"  clause ({v['clause']}): {v['message']}" for v in doc.get("obus_pries", [])]
    else:
        lines.append(f"lower jumps {doc['lower_jumps']}, upper jumps {doc['upper_jumps']}, "
                     f"orbit counts {doc['orbit_counts']}")
        lines.append("admissible: " + ("yes" if doc["jumps_valid"] else "no"))
        lines += [f"  clause ({v['clause']}): {v['message']}" for v in doc["obus_pries"]]
        lines.append(f"KGB obstruction vanishes: {doc['kgb_vanishes']}")
    lines.append("valid" if valid else "invalid")
    return "\n".join(lines), EXIT_OK if valid else EXIT_NEGATIVE


def _genus(job: JobSpec, as_json: bool) -> Tuple[str, int]:
    jumps = job.jumps()
    special = genus_special(jumps.lower, job.p)
    generic = genus_generic(jumps.orbit_counts, job.p)
    doc = {"genus": special, "genus_special": special, "genus_generic": generic,
           "lower_jumps": list(jumps.lower), "upper_jumps": list(jumps.upper),
           "orbit_counts": list(jumps.orbit_counts)}
    if special != generic:
        raise AssertionError(f"genus evaluations disagree: {special} vs {generic}")
    if as_json:
        return dumps(doc), EXIT_OK
    return f"genus {special} (lower jumps {list(jumps.lower)}; both Riemann-Hurwitz evaluations agree)", EXIT_OK


def _dtable(job: JobSpec, as_json: bool) -> Tuple[str, int]:
    if as_json:
        return dumps({"rows": dtable_rows(job)}), EXIT_OK
    return render_dtable(job), EXIT_OK


def _decompose(job: JobSpec, as_json: bool) -> Tuple[str, int]:
    spec = job.group()
    validate_group(spec)
    jumps = job.jumps()
    ms = decompose(spec, jumps.lower)
    genus = genus_special(jumps.lower, job.p)
    doc = {"genus": genus, "modules": modules_json(ms), "dimension_check": dimension_check(ms, genus),
           "summands": ms.size, "group": group_json(spec), "lower_jumps": list(jumps.lower)}
    if as_json:
        return dumps(doc), EXIT_OK
    return (f"genus {genus}, {ms.size} summands\n" + render_modules(ms, job.notation, spec.a0)), EXIT_OK


def decision_json(spec: GroupSpec, jumps: JumpSequence, report) -> Dict[str, Any]:
    return {
        "decision": report.decision,
        "genus": report.diagnostics["genus"],
        "kgb_vanishes": report.diagnostics["kgb_vanishes"],
        "modules": modules_json(report.modules),
        "certificate": None if report.certificate is None else report.certificate.as_json(),
        "a": None if report.certificate is None else report.certificate.a,
        "witness": None if report.witness is None else modules_json(report.witness),
        "method": report.method,
        "summands": report.diagnostics["summands"],
        "group": group_json(spec),
        "lower_jumps": list(jumps.lower),
        "upper_jumps": list(jumps.upper),
    }


def _decide(job: JobSpec, as_json: bool) -> Tuple[str, int]:
    spec = job.group()
    jumps = job.jumps()
    report = decide(spec, jumps.lower, job.allow_trivial_eigenvalue, job.cross_check, job.effective_budget())
    code = EXIT_OK if report.liftable else EXIT_NEGATIVE
    if as_json:
        return dumps(decision_json(spec, jumps, report)), code
    d = report.diagnostics
    lines = [
        f"group C_{spec.q} x| C_{spec.m}, alpha = {spec.alpha}, a0 = {spec.a0}",
        f"lower jumps {list(jumps.lower)}, upper jumps {list(jumps.upper)}",
        f"genus {d['genus']}, {d['summands']} summands, KGB obstruction "
        + ("vanishes" if d["kgb_vanishes"] else "does not vanish"),
        "modules: " + render_modules(report.modules, job.notation, spec.a0),
        f"decision: {'liftable' if report.liftable else 'not liftable'} ({report.method})",
    ]
    if report.certificate is not None:
        lines.append(f"certificate (a = {report.certificate.a}, V-notation):")
        lines += ["  " + " -> ".join(f"V({l},{k})" for l, k in g) for g in report.certificate.groups]
    else:
        lines.append("witness: " + render_modules(report.witness, job.notation, spec.a0))
        if "reason" in d:
            lines.append("  " + d["reason"])
    if "cross_check" in d:
        lines.append(f"cross-check with partition search: {d['cross_check']}")
    return "\n".join(lines), code


def _family(job: JobSpec, as_json: bool) -> Tuple[str, int]:
    jumps = job.jumps()
    doc = {"p": job.p, "h": job.h, "w0": job.family_w0, "lower_jumps": list(jumps.lower),
           "upper_jumps": list(jumps.upper), "genus": genus_special(jumps.lower, job.p), "pairing": None}
    if job.family_w0 == 1:
        doc["pairing"] = [list(pair) for pair in explicit_w01_pairing(job.p, job.h)]
    if as_json:
        return dumps(doc), EXIT_OK
    lines = [f"w0 = {job.family_w0}: lower jumps {doc['lower_jumps']}, upper jumps {doc['upper_jumps']}, "
             f"genus {doc['genus']}"]
    if doc["pairing"] is not None:
        lines.append("complementary pairs (verified): " + ", ".join(f"{a}<->{b}" for a, b in doc["pairing"]))
    return "\n".join(lines), EXIT_OK


def _scan(job: JobSpec, as_json: bool) -> Tuple[str, int]:
    rng = ScanRange(job.p, job.h, job.m, job.w0_max, job.family_only, job.slack, job.alpha, job.a0)
    records = scan(rng, job.workers, job.effective_budget(), job.allow_trivial_eigenvalue, job.cross_check)
    lines = []
    for rec in records:
        if as_json:
            lines.append(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        else:
            extra = "" if rec["decision"] == "indeterminate" else f"  genus {rec['genus']}  kgb {rec['kgb_vanishes']}"
            lines.append(f"upper {rec['upper_jumps']}  lower {rec['lower_jumps']}  {rec['decision']}{extra}")
    return "\n".join(lines), EXIT_OK


HANDLERS = {"validate": _validate, "genus": _genus, "dtable": _dtable, "decompose": _decompose,
            "decide": _decide, "family": _family, "scan": _scan}


def run(job: JobSpec, as_json: bool = False) -> Tuple[str, int]:
    """Execute a job and return ``(output, exit_code)``; library errors become codes 2 and 3."""
    try:
        return HANDLERS[job.mode](job, as_json)
    except SearchBudgetExceeded as exc:
        return f"indeterminate: {exc}", EXIT_BUDGET
    except InputError as exc:
        return format_input_error(exc), EXIT_INPUT


def format_input_error(exc: InputError) -> str:
    where = f"field '{exc.field}': " if getattr(exc, "field", None) else ""
    return f"error: {where}{exc}"


# -- argument parsing --------------------------------------------------------------


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="JSON job file; explicit flags override its fields")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--p", type=int)
    common.add_argument("--h", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--alpha", type=int)
    common.add_argument("--a0", type=int)
    common.add_argument("--lower", type=_int_list, dest="lower_jumps", metavar="B0,B1,...")
    common.add_argument("--upper", type=_int_list, dest="upper_jumps", metavar="W0,W1,...")
    common.add_argument("--family-w0", type=int, dest="family_w0")
    common.add_argument("--notation", choices=("u", "v"))
    common.add_argument("--allow-trivial-eigenvalue", action="store_true", default=None)
    common.add_argument("--cross-check", action="store_true", default=None)
    common.add_argument("--budget", type=int, help="search node budget (default: $LIFTORACLE_BUDGET)")
    common.add_argument("--workers", type=int)
    common.add_argument("--rows", help="dtable row selection, e.g. 0-6,120-124")
    common.add_argument("--w0-max", type=int, dest="w0_max")
    common.add_argument("--all-admissible", action="store_false", dest="family_only", default=None,
                        help="scan: also allow jumps above p*w_prev (see --slack)")
    common.add_argument("--slack", type=int)

    parser = argparse.ArgumentParser(prog="liftoracle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    sub.add_parser("run", parents=[common], help="run the mode named in the --input file")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    data: Dict[str, Any] = {}
    if args.input:
        try:
            with open(args.input) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read job file: {exc}", field="input") from None
        if not isinstance(data, dict):
            raise InputError("job file must hold a JSON object", field="input")
    if args.command != "run":
        mode = SUBCOMMANDS[args.command]
        if data.get("mode", mode) != mode:
            raise InputError(f"job file says mode {data['mode']!r} but the subcommand is {args.command!r}",
                             field="mode")
        data["mode"] = mode
    for name in ("p", "h", "m", "alpha", "a0", "lower_jumps", "upper_jumps", "family_w0", "notation",
                 "allow_trivial_eigenvalue", "cross_check", "budget", "workers", "rows", "w0_max",
                 "family_only", "slack"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    return JobSpec.from_mapping(data)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
    except InputError as exc:
        print(format_input_error(exc), file=sys.stderr)
        return EXIT_INPUT
    out, code = run(job, args.json)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    if out:
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
