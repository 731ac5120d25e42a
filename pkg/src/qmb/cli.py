"""Command-line surface: evaluate primitives, run catalog checks, sweep a
free parameter, and emit machine-readable reports.

Check, sweep, and report emit one JSON object per parameter point (one per
line, fixed field order, floats at 17 significant digits with lowercase
exponent marks) followed by a summary object {total, pass, fail, skipped};
the exit status is 0 exactly when no point failed.  Identical configuration
and seed give byte-identical streams, independent of the --jobs level,
because points are drawn up front and results are written in draw order.

Precision: --precision binary64 is the native mode everywhere.  The
extended mode routes the `eval` primitives through mpmath at 30 significant
digits; catalog checking is binary64-only because the per-identity derive
hooks fix the machine complex type, so check/sweep/report reject the
extended mode with a usage error.  The QMB_PRECISION environment variable,
when set, overrides the flag.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import fnmatch
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, TextIO, Tuple

from .errors import DomainError, QmbError, SamplingExhausted
from .identities.base import (DEFAULT_TOL, CheckReport, IdentityDescriptor,
                              catalog, check)
from .sampler import SampleConfig, sample

USAGE_EXIT = 2
DEFAULT_COUNT = 20
EXTENDED_DPS = 30

_PRECISIONS = ("binary64", "extended")
_COMMANDS = ("check", "report", "sweep", "eval")
_EVAL_NAMES = ("qpoch", "theta", "ptheta", "qgamma")


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: one command plus every knob it reads."""

    command: str                     # "eval" | "check" | "sweep" | "report"
    id_filter: str = "*"
    seed: int = 0
    count: int = DEFAULT_COUNT
    tol: float = DEFAULT_TOL
    eps_quad: Optional[float] = None
    precision: str = "binary64"
    out: Optional[str] = None
    jobs: int = 1
    # eval-only
    primitive: str = ""
    eval_args: Tuple[Tuple[str, str], ...] = ()
    # sweep-only
    param: str = ""
    values: Tuple[complex, ...] = ()

    def __post_init__(self) -> None:
        if self.command not in _COMMANDS:
            raise ValueError(f"command must be one of {_COMMANDS}")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.precision not in _PRECISIONS:
            raise ValueError(f"precision must be one of {_PRECISIONS}")


def _f17(x: float) -> str:
    """17-significant-digit decimal, lowercase exponent mark."""
    return format(float(x), ".17g")


def _pair(z: complex) -> str:
    z = complex(z)
    return f"[{_f17(z.real)},{_f17(z.imag)}]"


def _report_line(desc: IdentityDescriptor, seed: int, index: int,
                 rep: CheckReport) -> str:
    parts = [f'"id":{json.dumps(rep.id)}', f'"seed":{seed}',
             f'"index":{index}']
    fields = []
    for name, _rule in desc.free_params:
        v = rep.bound[name]
        if isinstance(v, int):
            fields.append(f'"{name}":{v}')
        else:
            fields.append(f'"{name}":{_pair(v)}')
    parts.append('"params":{' + ",".join(fields) + "}")
    for label, v in (("lhs", rep.lhs), ("rhs", rep.rhs)):
        parts.append(f'"{label}":null' if v is None else
                     f'"{label}":{_pair(v)}')
    rr = rep.rel_residual
    parts.append('"rel_residual":null' if rr is None else
                 f'"rel_residual":{_f17(rr)}')
    parts.append(f'"status":{json.dumps(rep.status)}')
    if rep.reason is not None:
        parts.append(f'"reason":{json.dumps(rep.reason)}')
    parts.append(f'"n_terms":{rep.n_terms}')
    parts.append(f'"n_nodes":{rep.n_nodes}')
    return "{" + ",".join(parts) + "}"


def _summary_line(reports: Sequence[CheckReport]) -> str:
    n_pass = sum(1 for r in reports if r.status == "Pass")
    n_fail = sum(1 for r in reports if r.status == "Fail")
    n_skip = sum(1 for r in reports if r.status == "Skipped")
    return (f'{{"total":{len(reports)},"pass":{n_pass},'
            f'"fail":{n_fail},"skipped":{n_skip}}}')


def _matched_ids(pattern: str) -> List[IdentityDescriptor]:
    return [d for d in catalog() if fnmatch.fnmatchcase(d.id, pattern)]


def _check_worker(task):
    identity_id, bound, tol, eps_quad = task
    return check(identity_id, bound, tol, eps_quad)


def _run_tasks(tasks, jobs: int) -> List[CheckReport]:
    """Evaluate (id, bound, tol, eps) tasks, preserving task order."""
    if jobs <= 1 or len(tasks) <= 1:
        return [_check_worker(t) for t in tasks]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_check_worker, tasks, chunksize=4))


def _emit(stream: TextIO, lines: Sequence[str]) -> None:
    for line in lines:
        stream.write(line + "\n")


def _cmd_check(cfg: RunConfig, stream: TextIO, err: TextIO) -> int:
    descs = _matched_ids(cfg.id_filter)
    if not descs:
        err.write(f"error: id filter {cfg.id_filter!r} matches no catalog "
                  f"entry\n")
        return USAGE_EXIT
    tasks = []
    task_meta = []
    for desc in descs:
        try:
            points = sample(desc.id, SampleConfig(seed=cfg.seed), cfg.count)
        except SamplingExhausted as exc:
            err.write(f"warning: {exc}\n")
            continue
        for index, bound in enumerate(points):
            tasks.append((desc.id, bound, cfg.tol, cfg.eps_quad))
            task_meta.append((desc, index))
    reports = _run_tasks(tasks, cfg.jobs)
    lines = [_report_line(desc, cfg.seed, index, rep)
             for (desc, index), rep in zip(task_meta, reports)]
    lines.append(_summary_line(reports))
    _emit(stream, lines)
    return 0 if not any(r.status == "Fail" for r in reports) else 1


def _cmd_sweep(cfg: RunConfig, stream: TextIO, err: TextIO) -> int:
    descs = _matched_ids(cfg.id_filter)
    if not descs:
        err.write(f"error: id filter {cfg.id_filter!r} matches no catalog "
                  f"entry\n")
        return USAGE_EXIT
    if len(descs) > 1:
        err.write(f"error: sweep needs exactly one identity, filter "
                  f"{cfg.id_filter!r} matches {len(descs)}\n")
        return USAGE_EXIT
    desc = descs[0]
    names = [n for n, _ in desc.free_params]
    if cfg.param not in names:
        err.write(f"error: {cfg.param!r} is not a free parameter of "
                  f"{desc.id} (these are: {', '.join(names)})\n")
        return USAGE_EXIT
    values = cfg.values
    if not values:
        err.write("error: sweep needs --values v1,v2,...\n")
        return USAGE_EXIT
    try:
        points = sample(desc.id, SampleConfig(seed=cfg.seed), cfg.count)
    except SamplingExhausted as exc:
        err.write(f"warning: {exc}\n")
        points = []
    tasks = []
    for bound in points:
        for v in values:
            b = dict(bound)
            b[cfg.param] = v
            tasks.append((desc.id, b, cfg.tol, cfg.eps_quad))
    reports = _run_tasks(tasks, cfg.jobs)
    lines = [_report_line(desc, cfg.seed, i, rep)
             for i, rep in enumerate(reports)]
    lines.append(_summary_line(reports))
    _emit(stream, lines)
    nv = len(values)
    if cfg.param in desc.rhs_only_params:
        for base in range(0, len(reports), nv):
            fixed = [r.lhs for r in reports[base:base + nv]
                     if r.lhs is not None]
            for i, x in enumerate(fixed):
                for y in fixed[i + 1:]:
                    dev = abs(x - y) / max(abs(x), abs(y), 1e-300)
                    if dev >= cfg.tol:
                        err.write(f"error: lhs of {desc.id} moved by {dev} "
                                  f"across {cfg.param} values declared "
                                  f"rhs-only\n")
                        return 1
    return 0 if not any(r.status == "Fail" for r in reports) else 1


def _eval_binary64(cfg: RunConfig, stream: TextIO, err: TextIO) -> int:
    from .qcore import QBase, partial_theta, qgamma, qpoch, qpoch_inf, theta
    args = dict(cfg.eval_args)
    try:
        q = QBase(complex(args["q"]))
        if cfg.primitive == "qpoch":
            a = complex(args["a"])
            v = (qpoch(a, q, int(args["n"])) if "n" in args
                 else qpoch_inf(a, q))
        elif cfg.primitive == "theta":
            v = theta(complex(args["z"]), q)
        elif cfg.primitive == "ptheta":
            v = partial_theta(complex(args["z"]), q)
        else:
            v = qgamma(complex(args["x"]).real, q)
    except KeyError as exc:
        err.write(f"error: eval {cfg.primitive} needs --{exc.args[0]}\n")
        return USAGE_EXIT
    except (QmbError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return USAGE_EXIT
    z = complex(v)
    sign = "+" if z.imag >= 0 else "-"
    stream.write(f"{_f17(z.real)}{sign}{_f17(abs(z.imag))}j\n")
    return 0


def _eval_extended(cfg: RunConfig, stream: TextIO, err: TextIO) -> int:
    """Same primitives with mpmath scalars; qcore is scalar-type generic."""
    import mpmath
    from .qcore import QBase, partial_theta, qpoch, qpoch_inf, theta
    args = dict(cfg.eval_args)
    with mpmath.workdps(EXTENDED_DPS):
        try:
            q = QBase(mpmath.mpmathify(args["q"]), eps_tail=1e-35)
            if cfg.primitive == "qpoch":
                a = mpmath.mpmathify(args["a"])
                v = (qpoch(a, q, int(args["n"])) if "n" in args
                     else qpoch_inf(a, q))
            elif cfg.primitive == "theta":
                v = theta(mpmath.mpmathify(args["z"]), q)
            elif cfg.primitive == "ptheta":
                v = partial_theta(mpmath.mpmathify(args["z"]), q)
            else:
                # The binary64 q-gamma narrows its nome internally, so the
                # extended route builds the product form from the generic
                # q-shifted factorials instead.
                x = mpmath.mpf(args["x"])
                qr = mpmath.mpf(args["q"])
                if not 0 < qr < 1:
                    raise DomainError("q-gamma needs a real nome in (0,1)")
                v = qpoch_inf(qr, q) / ((1 - qr) ** (x - 1)
                                        * qpoch_inf(qr ** x, q))
        except KeyError as exc:
            err.write(f"error: eval {cfg.primitive} needs --{exc.args[0]}\n")
            return USAGE_EXIT
        except (QmbError, ValueError) as exc:
            err.write(f"error: {exc}\n")
            return USAGE_EXIT
        stream.write(mpmath.nstr(v, EXTENDED_DPS, strip_zeros=False) + "\n")
    return 0


def _cmd_eval(cfg: RunConfig, stream: TextIO, err: TextIO) -> int:
    if cfg.precision == "extended":
        return _eval_extended(cfg, stream, err)
    return _eval_binary64(cfg, stream, err)


def _print_catalog(stream: TextIO) -> None:
    for d in catalog():
        stream.write(f"{d.id:20s} {d.family:12s} {d.kind:9s} {d.summary}\n")


def run(cfg: RunConfig, stream: Optional[TextIO] = None,
        err: Optional[TextIO] = None) -> int:
    """Execute one resolved invocation; returns the process exit status."""
    err = err if err is not None else sys.stderr
    opened = None
    if stream is None:
        if cfg.out:
            opened = open(cfg.out, "w")
            stream = opened
        else:
            stream = sys.stdout
    try:
        if cfg.command == "eval":
            return _cmd_eval(cfg, stream, err)
        if cfg.command in ("check", "report"):
            if cfg.precision == "extended":
                err.write("error: catalog checking is binary64-only; "
                          "extended precision applies to eval\n")
                return USAGE_EXIT
            return _cmd_check(cfg, stream, err)
        if cfg.command == "sweep":
            if cfg.precision == "extended":
                err.write("error: catalog checking is binary64-only; "
                          "extended precision applies to eval\n")
                return USAGE_EXIT
            return _cmd_sweep(cfg, stream, err)
        err.write(f"error: unknown command {cfg.command!r}\n")
        return USAGE_EXIT
    finally:
        if opened is not None:
            opened.close()


def _parse_values(txt: str) -> Tuple[complex, ...]:
    return tuple(complex(part) for part in txt.split(",") if part)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmb",
        description="q-series identity checks and primitive evaluation")
    parser.add_argument("--list", action="store_true",
                        help="print the identity catalog and exit")
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--id", default="*",
                       help="identity id or glob (default: all)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--count", type=int, default=DEFAULT_COUNT,
                       help="points per identity")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--eps-quad", type=float, default=None)
        p.add_argument("--precision", choices=_PRECISIONS,
                       default="binary64")
        p.add_argument("--out", default=None,
                       help="write the report here instead of stdout")
        p.add_argument("--jobs", type=int, default=1,
                       help="concurrent worker processes")

    p_check = sub.add_parser("check", help="check sampled parameter points")
    common(p_check)
    p_report = sub.add_parser("report",
                              help="full-catalog check (same stream format)")
    common(p_report)
    p_sweep = sub.add_parser("sweep",
                             help="re-check while varying one parameter")
    common(p_sweep)
    p_sweep.add_argument("--param", required=True,
                         help="free parameter to vary")
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated complex values")

    p_eval = sub.add_parser("eval", help="evaluate one primitive")
    p_eval.add_argument("primitive", choices=_EVAL_NAMES)
    for flag in ("--q", "--a", "--z", "--x"):
        p_eval.add_argument(flag, default=None)
    p_eval.add_argument("--n", default=None,
                        help="finite order for qpoch (default: infinite)")
    p_eval.add_argument("--precision", choices=_PRECISIONS,
                        default="binary64")
    p_eval.add_argument("--out", default=None)
    return parser


def _resolve_precision(flag_value: str, err: TextIO) -> Optional[str]:
    env = os.environ.get("QMB_PRECISION")
    if env is None:
        return flag_value
    env_norm = env.strip().lower()
    if env_norm not in _PRECISIONS:
        err.write(f"error: QMB_PRECISION must be one of {_PRECISIONS}, "
                  f"got {env!r}\n")
        return None
    return env_norm


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.list:
        _print_catalog(sys.stdout)
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    precision = _resolve_precision(args.precision, sys.stderr)
    if precision is None:
        return USAGE_EXIT
    try:
        if args.command == "eval":
            pairs = tuple((name, getattr(args, name))
                          for name in ("q", "a", "z", "x", "n")
                          if getattr(args, name) is not None)
            cfg = RunConfig(command="eval", precision=precision,
                            out=args.out, primitive=args.primitive,
                            eval_args=pairs)
        else:
            values: Tuple[complex, ...] = ()
            param = ""
            if args.command == "sweep":
                param = args.param
                values = _parse_values(args.values)
            cfg = RunConfig(command=args.command, id_filter=args.id,
                            seed=args.seed, count=args.count, tol=args.tol,
                            eps_quad=args.eps_quad, precision=precision,
                            out=args.out, jobs=args.jobs, param=param,
                            values=values)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_EXIT
    try:
        return run(cfg)
    except QmbError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
