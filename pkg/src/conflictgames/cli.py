"""Command-line entry point.

Subcommands: gen, eval, enumerate, dynamics, smoothness, cce, reproduce.
Every subcommand reads an instance from --instance or builds one from
--generator flags (exactly one of the two).  Output goes to --out or stdout
and is byte-identical for identical (argv, instance file, seed).

Exit codes: 0 success, 1 failed verdicts in reproduce mode, 2 usage or
input/cap errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from . import dynamics, oracle, report, smoothness, verdicts
from .games import (
    GameKind,
    Instance,
    InvalidInstanceError,
    player_values,
    potential,
    social_value,
)
from .instances import (
    GENERATOR_NAMES,
    InstanceFormatError,
    gen_bwc_multipartite,
    gen_bwcf_lower,
    gen_bwf_cliques,
    gen_maxcut_edge,
    gen_path4,
    gen_random,
    gen_swc_pos,
    gen_swf_nostrong,
    load_instance,
    write_instance,
)
from .oracle import OracleLimits, StateSpaceExceeded
from .verdicts import frac_str


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _add_common(p: argparse.ArgumentParser, with_seed: bool = True) -> None:
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--max-states", type=int, default=None,
                   help="cap on enumerated states (also applied to the CCE LP)")
    p.add_argument("--threads", type=int, default=None,
                   help="parallelism hint; results never depend on it")
    if with_seed:
        p.add_argument("--seed", type=int, default=0)


def _add_instance_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", help="instance document path")
    p.add_argument("--generator", choices=GENERATOR_NAMES, help="build instead of reading")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--kind", choices=[k.value for k in GameKind])
    p.add_argument("--alpha", type=_fraction)
    p.add_argument("--beta", type=_fraction)
    p.add_argument("--gamma", type=_fraction)
    p.add_argument("--eps", type=_fraction)
    p.add_argument("--edge-prob", type=_fraction)
    p.add_argument("--weighted", action="store_true")


def _build_generated(args) -> Instance:
    name = args.generator

    def need(flag, value):
        if value is None:
            raise UsageError(f"generator {name!r} needs {flag}")
        return value

    if name == "bwc-multipartite":
        return gen_bwc_multipartite(need("--m", args.m))
    if name == "bwf-cliques":
        return gen_bwf_cliques(need("--m", args.m))
    if name == "bwcf-lower":
        return gen_bwcf_lower(
            need("--m", args.m), need("--alpha", args.alpha),
            need("--beta", args.beta), need("--gamma", args.gamma),
        )
    if name == "path4":
        return gen_path4()
    if name == "swc-pos":
        return gen_swc_pos(need("--m", args.m), need("--eps", args.eps))
    if name == "swf-nostrong":
        return gen_swf_nostrong(need("--eps", args.eps))
    if name == "maxcut-edge":
        return gen_maxcut_edge()
    if name == "random":
        kind = GameKind(need("--kind", args.kind))
        return gen_random(
            need("--n", args.n), need("--m", args.m), kind,
            need("--edge-prob", args.edge_prob), getattr(args, "seed", 0) or 0,
            alpha=args.alpha, beta=args.beta, gamma=args.gamma,
            weighted=args.weighted,
        )
    raise UsageError(f"unknown generator {name!r}")


def _resolve_instance(args) -> Instance:
    if args.instance and args.generator:
        raise UsageError("give either --instance or --generator, not both")
    if args.instance:
        return load_instance(args.instance)
    if args.generator:
        return _build_generated(args)
    raise UsageError("an instance is required: --instance PATH or --generator NAME")


def _limits(args) -> OracleLimits:
    if args.max_states is None:
        return OracleLimits()
    return OracleLimits(
        max_states=args.max_states,
        lp_max_states=min(args.max_states, OracleLimits().lp_max_states),
    )


def _parse_state(text: str, inst: Instance) -> tuple[int, ...]:
    try:
        state = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--state must be comma-separated machine ids: {text!r}") from exc
    if len(state) != inst.n:
        raise UsageError(f"--state needs {inst.n} entries, got {len(state)}")
    return state


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gen(args) -> int:
    if args.generator is None:
        raise UsageError("gen needs --generator NAME")
    inst = _build_generated(args)
    _emit(args, write_instance(inst))
    return 0


def _cmd_eval(args) -> int:
    inst = _resolve_instance(args)
    state = _parse_state(args.state, inst)
    values = player_values(inst, state)
    social = social_value(inst, state)
    pot = potential(inst, state)
    if args.format == "csv":
        lines = ["player,value"]
        lines += [f"{i},{frac_str(v)}" for i, v in enumerate(values, start=1)]
        lines.append(f"social,{frac_str(social)}")
        lines.append(f"potential,{frac_str(pot)}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = [f"{inst.kind.value} n={inst.n} m={inst.m} state={','.join(map(str, state))}"]
        lines += [f"player {i}: {frac_str(v)}" for i, v in enumerate(values, start=1)]
        lines.append(f"social value: {frac_str(social)}")
        lines.append(f"potential: {frac_str(pot)}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _states_str(state) -> str:
    return "".join(str(k) for k in state) if max(state) <= 9 else ",".join(map(str, state))


def _cmd_enumerate(args) -> int:
    inst = _resolve_instance(args)
    limits = _limits(args)
    do_strong = args.strong or (
        args.strong is None
        and inst.n <= limits.strong_max_players
        and oracle.state_count(inst) <= 4096
    )
    rep = oracle.equilibrium_report(inst, limits, with_strong=bool(do_strong))
    lines = []
    if args.format == "csv":
        lines.append("item,state,value")
        lines.append(f"optimum,{_states_str(rep.optimum[0])},{frac_str(rep.optimum[1])}")
        for s, v in rep.pure_ne:
            lines.append(f"pure_ne,{_states_str(s)},{frac_str(v)}")
        for s, v in rep.strong_ne:
            lines.append(f"strong_ne,{_states_str(s)},{frac_str(v)}")
        lines.append(f"poa,,{frac_str(rep.poa)}")
        lines.append(f"pos,,{frac_str(rep.pos)}")
        lines.append(f"strong_poa,,{frac_str(rep.strong_poa)}")
    else:
        lines.append(f"{inst.kind.value} n={inst.n} m={inst.m}: {oracle.state_count(inst)} states")
        lines.append(
            f"optimum: state {_states_str(rep.optimum[0])} value {frac_str(rep.optimum[1])}"
        )
        lines.append(f"pure Nash equilibria: {len(rep.pure_ne)}")
        for s, v in rep.pure_ne:
            lines.append(f"  {_states_str(s)}  {frac_str(v)}")
        if do_strong:
            lines.append(f"strong Nash equilibria: {len(rep.strong_ne)}")
            for s, v in rep.strong_ne:
                lines.append(f"  {_states_str(s)}  {frac_str(v)}")
        else:
            lines.append("strong Nash equilibria: skipped (size; force with --strong)")
        lines.append(f"price of anarchy: {frac_str(rep.poa)}")
        lines.append(f"price of stability: {frac_str(rep.pos)}")
        lines.append(f"strong price of anarchy: {frac_str(rep.strong_poa)}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_dynamics(args) -> int:
    inst = _resolve_instance(args)
    limits = _limits(args)
    if args.start:
        start = _parse_state(args.start, inst)
    elif args.worst_start:
        start, _ = oracle.worst_social_state(inst, limits)
    else:
        import random as _random

        start = dynamics.random_start(inst, _random.Random(args.seed))
    trace = dynamics.run_br(inst, start, max_steps=args.max_steps)
    csv = dynamics.trace_csv(trace)
    if args.format == "csv":
        _emit(args, csv)
    else:
        summary = (
            f"start {_states_str(trace.start)} -> end {_states_str(trace.end)} "
            f"in {len(trace.steps)} steps"
            f"{' (step budget exhausted)' if trace.exhausted else ''}\n"
        )
        _emit(args, summary + csv)
    return 0


def _cmd_smoothness(args) -> int:
    inst = _resolve_instance(args)
    limits = _limits(args)
    if args.lam is not None or args.mu is not None:
        if args.lam is None or args.mu is None:
            raise UsageError("--lam and --mu go together")
        params = smoothness.make_params(inst.kind, args.lam, args.mu)
        pota = params.rho if inst.kind.minimizes else 1 / params.rho
    else:
        params, pota = smoothness.certificate_params(
            inst.kind, inst.n, inst.m, inst.alpha, inst.beta, inst.gamma
        )
    rows = []
    v = smoothness.check_semi_smooth(inst, params, limits=limits)
    label = f"{inst.kind.value}(n={inst.n},m={inst.m})"
    rows.append(verdicts.make_verdict("semi_smooth.slack", label, 0, v.slack, ">="))
    nice = smoothness.check_nice(inst, params, limits=limits)
    rows.append(verdicts.make_verdict("nice.slack", label, 0, nice.slack, ">="))
    lb = smoothness.check_opt_lower_bounds(inst, limits)
    rows.append(verdicts.make_verdict("opt_lower_bounds", label, 1, int(lb.holds), "=="))
    header = (
        f"lambda={frac_str(params.lam)} mu={frac_str(params.mu)} "
        f"rho={frac_str(params.rho)} cce_bound={frac_str(pota)}\n"
    )
    body = verdicts.render_csv(rows) if args.format == "csv" else verdicts.render_text(rows)
    _emit(args, body if args.format == "csv" else header + body)
    return 0


def _cmd_cce(args) -> int:
    inst = _resolve_instance(args)
    limits = _limits(args)
    sol = oracle.worst_cce_value(inst, limits)
    if args.format == "csv":
        lines = ["state,probability"]
        lines += [f"{_states_str(s)},{frac_str(q)}" for s, q in sol.distribution]
        lines.append(f"value,{frac_str(sol.value)}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = [f"worst coarse-correlated equilibrium value: {frac_str(sol.value)}"]
        lines += [f"  {_states_str(s)}  {frac_str(q)}" for s, q in sol.distribution]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_reproduce(args) -> int:
    limits = _limits(args)
    rows = []
    if not args.table or args.named:
        rows += report.reproduce_named_examples(limits)
    if args.table:
        rows += report.reproduce_bound_table(
            max_n=args.max_n, max_m=args.max_m, trials=args.trials, seed=args.seed,
            limits=limits,
        )
    text = verdicts.render_csv(rows) if args.format == "csv" else verdicts.render_text(rows)
    _emit(args, text)
    return 0 if all(r.passed for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conflictgames",
        description="Assignment games with conflicts/friendships: equilibria, "
        "bound certificates, and best-response dynamics.",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("gen", help="write an instance document")
    _add_instance_source(p)
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("eval", help="player values, social value, potential of one state")
    _add_instance_source(p)
    p.add_argument("--state", required=True, help="comma-separated machine ids")
    _add_common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("enumerate", help="optimum, Nash sets, and quality ratios")
    _add_instance_source(p)
    p.add_argument("--strong", action="store_true", default=None,
                   help="force the coalition scan even on large instances")
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("dynamics", help="run max-gain best-response dynamics")
    _add_instance_source(p)
    p.add_argument("--start", help="comma-separated start state")
    p.add_argument("--worst-start", action="store_true")
    p.add_argument("--max-steps", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_dynamics)

    p = sub.add_parser("smoothness", help="certificate and floor checks")
    _add_instance_source(p)
    p.add_argument("--lam", type=_fraction, help="override lambda")
    p.add_argument("--mu", type=_fraction, help="override mu")
    _add_common(p)
    p.set_defaults(func=_cmd_smoothness)

    p = sub.add_parser("cce", help="worst coarse-correlated equilibrium (exact LP)")
    _add_instance_source(p)
    _add_common(p)
    p.set_defaults(func=_cmd_cce)

    p = sub.add_parser("reproduce", help="run the verification batteries")
    p.add_argument("--named", action="store_true", help="named worked examples (default)")
    p.add_argument("--table", action="store_true", help="per-kind bound table")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-m", type=int, default=3)
    _add_common(p)
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidInstanceError, InstanceFormatError) as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return 2
    except StateSpaceExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
