"""Command-line front end.

    cmreg run FILE|-  [--json] [--floor N] [--smax S] [--threads T] [--timing]
    cmreg verify ID|all [--seed N] [--size K] [--json] [--threads T]

Exit codes: 0 success, 1 a verification check FAILS, 2 parse or semantic
error, 3 engine error.  The default thread count comes from CMREG_THREADS.
"""

from __future__ import annotations

import argparse
import os
import sys

from .dsl import ScriptError, parse
from .report import Flags, execute, render

EXIT_OK, EXIT_FAILS, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2, 3


def _default_threads():
    try:
        return max(1, int(os.environ.get("CMREG_THREADS", "1")))
    except ValueError:
        return 1


def _parser():
    ap = argparse.ArgumentParser(prog="cmreg", description="Castelnuovo-Mumford regularity toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    run = sub.add_parser("run", help="execute a script file ('-' reads standard input)")
    run.add_argument("file")
    run.add_argument("--floor", type=int, default=None, help="lowest degree scanned by coarse routes")
    run.add_argument("--smax", type=int, default=4, help="largest Frobenius power probed")

    ver = sub.add_parser("verify", help="run the statement checks on a generated corpus")
    ver.add_argument("statement", help="statement id or 'all'")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--size", type=int, default=20)

    for p in (run, ver):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--timing", action="store_true", help="append per-command timings (text only)")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    threads = args.threads if args.threads is not None else _default_threads()
    if args.cmd == "run":
        try:
            if args.file == "-":
                text = sys.stdin.read()
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            print(f"cmreg: {exc}", file=sys.stderr)
            return EXIT_INPUT
        flags = Flags(floor=args.floor, smax=args.smax, threads=threads)
        name = "<stdin>" if args.file == "-" else args.file
    else:
        text = f"field QQ; positive x1; verify {args.statement} --seed {args.seed} --size {args.size};"
        flags = Flags(threads=threads)
        name = "<verify>"
    try:
        script = parse(text)
    except ScriptError as exc:
        print(f"{name}:{exc.line}:{exc.col}: {type(exc).__name__}: {exc.msg}", file=sys.stderr)
        return EXIT_INPUT
    report = execute(script, flags)
    sys.stdout.write(render(report, "json" if args.json else "text", timing=args.timing))
    if report.error:
        print(f"cmreg: {report.error}", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
