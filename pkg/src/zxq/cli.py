"""Command-line interface.

Subcommands: ``eval``, ``check``, ``simplify``, ``euler``, ``verify``,
``fixtures``.  Exit codes: 0 success, 1 verification or equivalence
failure, 2 usage/parse errors.  ``ZXQ_TOL`` overrides the default
tolerance; ``--tol`` overrides both.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import diagram_io
from .circuits import (
    ZxcSyntaxError,
    circuit_matrix,
    circuit_to_diagram,
    export_fixtures,
    load_circuit,
)
from .diagram_io import ZxgFormatError
from .harness import verify_p_formulas, verify_relations, verify_rules
from .phase import Phase
from .phase_algebra import EulerTriple, p_rule_angles
from .rewrite import FULL_STRATEGY, StrategyConfig, simplify
from .semantics import DEFAULT_TOL, ResourceLimitError, equal_up_to_scalar, evaluate, matrix_to_text


class UsageError(Exception):
    pass


def _tolerance(args) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("ZXQ_TOL")
    if env is not None:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"bad ZXQ_TOL value {env!r}") from None
    return DEFAULT_TOL


def _load_matrix(path: str) -> np.ndarray:
    """A .zxc file goes through the gate-matrix oracle, a .zxg through
    diagram evaluation."""
    if path.endswith(".zxc"):
        return circuit_matrix(load_circuit(path))
    if path.endswith(".zxg"):
        return evaluate(diagram_io.load(path))
    raise UsageError(f"unknown file type (want .zxc or .zxg): {path!r}")


def _load_diagram(path: str):
    if path.endswith(".zxc"):
        return circuit_to_diagram(load_circuit(path))
    if path.endswith(".zxg"):
        return diagram_io.load(path)
    raise UsageError(f"unknown file type (want .zxc or .zxg): {path!r}")


def _parse_phase_arg(text: str) -> Phase:
    if text.startswith("f:"):
        return Phase.approx(float(text[2:]))
    if "/" in text:
        num, den = text.split("/", 1)
        return Phase.exact(int(num), int(den))
    return Phase.approx(float(text))


def _cmd_eval(args) -> int:
    if args.file.endswith(".zxg"):
        m = evaluate(diagram_io.load(args.file), max_entries=args.cap)
    else:
        m = _load_matrix(args.file)
    sys.stdout.write(matrix_to_text(m))
    return 0


def _cmd_check(args) -> int:
    tol = _tolerance(args)
    a = _load_matrix(args.a)
    b = _load_matrix(args.b)
    if a.shape != b.shape:
        print(f"shapes differ: {a.shape} vs {b.shape}", file=sys.stderr)
        return 1
    v = equal_up_to_scalar(a, b, tol)
    if v.equal:
        print(f"equal up to scalar {v.scalar:.9g} (residual {v.residual:.3e})")
        return 0
    print(f"not equal (residual {v.residual:.3e})")
    return 1


def _cmd_simplify(args) -> int:
    d = _load_diagram(args.input)
    cfg = FULL_STRATEGY if args.full else StrategyConfig()
    if args.budget is not None:
        cfg = StrategyConfig(
            step_budget=args.budget, enabled_rules=cfg.enabled_rules, tolerance=cfg.tolerance
        )
    out, trace = simplify(d, cfg)
    diagram_io.save(out, args.output)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as f:
            f.write("\n".join(trace.export_lines()))
            if trace.steps:
                f.write("\n")
    if trace.truncated:
        print("step budget exhausted; wrote best-so-far", file=sys.stderr)
    print(f"{len(trace.steps)} steps, wrote {args.output}")
    return 0


def _cmd_euler(args) -> int:
    t = EulerTriple(
        _parse_phase_arg(args.alpha), _parse_phase_arg(args.beta), _parse_phase_arg(args.gamma)
    )
    out = p_rule_angles(t)
    a, b, g = out.radians
    print(f"{a:.15g} {b:.15g} {g:.15g}")
    return 0


def _cmd_verify(args) -> int:
    tol = _tolerance(args)
    if args.campaign == "rules":
        rep = verify_rules(seed=args.seed, samples=args.samples, tol=tol)
    elif args.campaign == "relations":
        rep = verify_relations(tol=tol)
    else:
        rep = verify_p_formulas(seed=args.seed, samples=args.samples, tol=tol)
    sys.stdout.write(rep.render_body())
    print(f"# wall time: {rep.wall_time:.2f}s", file=sys.stderr)
    return 0 if rep.passed else 1


def _cmd_fixtures(args) -> int:
    paths = export_fixtures(args.directory)
    print(f"wrote {len(paths)} files to {args.directory}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxq", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="print the matrix of a .zxc or .zxg file")
    pe.add_argument("file")
    pe.add_argument("--cap", type=int, default=1 << 20, help="intermediate tensor entry cap")
    pe.set_defaults(func=_cmd_eval)

    pc = sub.add_parser("check", help="equivalence of two files up to a scalar")
    pc.add_argument("a")
    pc.add_argument("b")
    pc.add_argument("--tol", type=float, default=None)
    pc.set_defaults(func=_cmd_check)

    ps = sub.add_parser("simplify", help="rewrite a diagram to a smaller one")
    ps.add_argument("input")
    ps.add_argument("-o", "--output", required=True)
    ps.add_argument("--trace", default=None, help="write the rewrite trace here")
    ps.add_argument("--budget", type=int, default=None)
    ps.add_argument("--full", action="store_true", help="enable colour-change and chain-swap passes")
    ps.set_defaults(func=_cmd_simplify)

    pu = sub.add_parser("euler", help="colour-swap angles of a Z-X-Z chain")
    pu.add_argument("alpha", help="phase as p/d (times pi), f:<radians>, or plain radians")
    pu.add_argument("beta")
    pu.add_argument("gamma")
    pu.set_defaults(func=_cmd_euler)

    pv = sub.add_parser("verify", help="run a verification campaign")
    pv.add_argument("campaign", choices=("rules", "relations", "pformulas"))
    pv.add_argument("--seed", type=lambda s: int(s) % (1 << 64), default=0)
    pv.add_argument("--samples", type=int, default=None)
    pv.add_argument("--tol", type=float, default=None)
    pv.set_defaults(func=_cmd_verify)

    pf = sub.add_parser("fixtures", help="fixture corpus utilities")
    fsub = pf.add_subparsers(dest="fixtures_command", required=True)
    pfe = fsub.add_parser("export", help="write the .zxc fixture assets to a directory")
    pfe.add_argument("directory")
    pfe.set_defaults(func=_cmd_fixtures)

    return p


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if getattr(args, "command", None) == "verify" and args.samples is None:
        args.samples = 100 if args.campaign == "rules" else 1000
    try:
        return args.func(args)
    except (UsageError, ZxcSyntaxError, ZxgFormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
