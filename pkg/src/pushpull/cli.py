"""Command-line front end: seeded, reproducible experiment runs to CSV.

Subcommands: simulate (one graph, one protocol), compare (sync/async
ratio over a size family), diamonds (bracket and band checks on one
diamond string), paths (degree-weighted path-counting report), and
attainability (exponent fits for a target pair).  Options may come from
a key=value config file via --config; explicit flags win.  All output
is deterministic given --seed.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import estimator, path_analysis
from .errors import (
    CapExceededError,
    ConfigError,
    GraphError,
    InfeasiblePairError,
    ParameterOutOfRangeError,
    RequiresFamilyError,
)
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    path_graph,
    read_edge_list,
    star,
    string_of_diamonds,
)


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    graph: str
    protocol: str
    start: int
    trials: int
    seed: int
    out: str


def parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None
    if not sizes:
        raise ConfigError("empty size list")
    return sizes


def parse_graph_spec(spec: str) -> tuple[Graph, str, str]:
    """Build a graph from a 'name:params' one-liner.

    Generators: star:n, path:n, cycle:n, complete:n, diamonds:m,k,l.
    Files: edgelist:PATH in the 'n m' + edge-per-line text format.
    """
    name, _, rest = spec.partition(":")
    name = name.strip().lower()
    if name == "edgelist":
        if not rest:
            raise ConfigError("edgelist: needs a file path")
        return read_edge_list(rest), name, rest
    one_param = {
        "star": star,
        "path": path_graph,
        "cycle": cycle_graph,
        "complete": complete_graph,
    }
    try:
        params = [int(p) for p in rest.split(",")] if rest else []
    except ValueError:
        raise ConfigError(f"graph parameters must be integers in {spec!r}") from None
    if name in one_param:
        if len(params) != 1:
            raise ConfigError(f"{name}: takes exactly one parameter, got {spec!r}")
        return one_param[name](params[0]), name, rest
    if name == "diamonds":
        if len(params) != 3:
            raise ConfigError(f"diamonds: takes m,k,l, got {spec!r}")
        return string_of_diamonds(*params), name, rest
    raise ConfigError(f"unknown graph spec {spec!r}")


def load_config(path: str) -> dict[str, str]:
    """key=value lines; '#' comments; later keys override earlier ones."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        if not eq or not key.strip():
            raise ConfigError(f"{path}: line {lineno}: expected key=value")
        values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


@dataclass(frozen=True)
class Option:
    type: type
    default: object = None
    required: bool = False
    help: str = ""


COMMAND_OPTIONS: dict[str, dict[str, Option]] = {
    "simulate": {
        "graph": Option(str, required=True, help="graph spec, e.g. diamonds:3,4,5"),
        "start": Option(int, 0, help="start vertex"),
        "protocol": Option(str, "sync", help="sync or async"),
        "engine": Option(str, None, help="rounds/clocks or events/fpp"),
        "trials": Option(int, estimator.DEFAULT_TRIALS),
        "seed": Option(int, 0),
        "out": Option(str, "-", help="CSV path, - for stdout"),
    },
    "compare": {
        "family": Option(str, required=True, help="comma-separated sizes, at least 3"),
        "family_kind": Option(str, "diamonds-tight", help="diamonds-tight or star"),
        "start": Option(int, 0),
        "trials": Option(int, 1000),
        "seed": Option(int, 0),
        "out": Option(str, "-"),
    },
    "diamonds": {
        "m": Option(int, required=True),
        "k": Option(int, required=True),
        "l": Option(int, 0),
        "trials": Option(int, estimator.DEFAULT_TRIALS),
        "seed": Option(int, 0),
        "out": Option(str, "-"),
    },
    "paths": {
        "graph": Option(str, required=True),
        "length": Option(int, None, help="path length L; all lengths if omitted"),
        "cap": Option(int, path_analysis.DEFAULT_WORK_CAP),
        "out": Option(str, "-"),
    },
    "attainability": {
        "alpha": Option(float, required=True),
        "beta": Option(float, required=True),
        "family": Option(str, required=True, help="comma-separated sizes, at least 3"),
        "start": Option(int, 0),
        "trials": Option(int, 1000),
        "seed": Option(int, 0),
        "out": Option(str, "-"),
    },
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pushpull",
        description="Simulate and analyse push&pull rumour spreading.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, options in COMMAND_OPTIONS.items():
        p = sub.add_parser(command)
        p.add_argument("--config", default=None, help="key=value defaults file")
        for key, opt in options.items():
            flag = "--" + key.replace("_", "-")
            if key == "length":
                p.add_argument("--L", dest="length", type=opt.type, default=None, help=opt.help)
            else:
                p.add_argument(flag, type=opt.type, default=None, help=opt.help)
    return parser


def resolve_options(ns: argparse.Namespace) -> dict:
    """Merge CLI flags over config file values over defaults."""
    spec = COMMAND_OPTIONS[ns.command]
    config = load_config(ns.config) if ns.config else {}
    unknown = set(config) - set(spec)
    if unknown:
        raise ConfigError(
            f"config keys {sorted(unknown)} not valid for {ns.command}"
        )
    resolved = {}
    for key, opt in spec.items():
        value = getattr(ns, key)
        if value is None and key in config:
            try:
                value = opt.type(config[key])
            except ValueError:
                raise ConfigError(
                    f"config key {key}: cannot parse {config[key]!r} as {opt.type.__name__}"
                ) from None
        if value is None:
            if opt.required:
                raise ConfigError(f"{ns.command}: missing required option --{key}")
            value = opt.default
        resolved[key] = value
    return resolved


def emit(out: str, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return "" if x is None else str(x)


def cmd_simulate(opts: dict) -> int:
    g, name, params = parse_graph_spec(opts["graph"])
    cfg = ExperimentConfig(
        command="simulate",
        graph=opts["graph"],
        protocol=opts["protocol"],
        start=opts["start"],
        trials=opts["trials"],
        seed=opts["seed"],
        out=opts["out"],
    )
    summary = estimator.estimate(
        cfg.protocol, g, cfg.start, cfg.trials, cfg.seed, engine=opts["engine"]
    )
    lines = [
        estimator.SUMMARY_CSV_HEADER,
        estimator.summary_csv_row(name, params, g, summary),
    ]
    emit(cfg.out, lines)
    print(f"seed={cfg.seed}", file=sys.stderr)
    return 0


COMPARE_HEADER = (
    "record,kind,n,m,k,l,trials,seed,sync_mean,sync_stderr,"
    "async_mean,async_stderr,ratio,slope,intercept,r_squared"
)


def family_members(kind: str, sizes: tuple[int, ...]):
    if kind == "star":
        return [estimator.FamilyMember(star(n), "star", str(n)) for n in sizes]
    if kind == "diamonds-tight":
        return [estimator.tight_ratio_family_member(n) for n in sizes]
    raise ConfigError(f"unknown family kind {kind!r}")


def cmd_compare(opts: dict) -> int:
    sizes = parse_sizes(opts["family"])
    if len(sizes) < 3:
        raise RequiresFamilyError(f"need at least 3 sizes, got {len(sizes)}")
    members = family_members(opts["family_kind"], sizes)
    trials, seed, start = opts["trials"], opts["seed"], opts["start"]
    lines = [COMPARE_HEADER]
    points = []
    for i, member in enumerate(members):
        g = member.graph
        s_sum = estimator.estimate("sync", g, start, trials, seed + 2 * i)
        a_sum = estimator.estimate(
            "async", g, start, trials, seed + 2 * i + 1, engine="fpp"
        )
        ratio = s_sum.mean / a_sum.mean
        points.append((g.n, ratio))
        lines.append(
            ",".join(
                [
                    "size",
                    member.name,
                    str(g.n),
                    fmt(member.m or None),
                    fmt(member.k or None),
                    fmt(member.l if member.name == "diamonds" else None),
                    str(trials),
                    str(seed),
                    fmt(s_sum.mean),
                    fmt(s_sum.std_error),
                    fmt(a_sum.mean),
                    fmt(a_sum.std_error),
                    fmt(ratio),
                    "",
                    "",
                    "",
                ]
            )
        )
    fit = estimator.fit_exponent(points)
    lines.append(
        ",".join(
            ["fit", opts["family_kind"], "", "", "", "", str(trials), str(seed)]
            + [""] * 5
            + [fmt(fit.slope), fmt(fit.intercept), fmt(fit.r_squared)]
        )
    )
    emit(opts["out"], lines)
    print(f"seed={seed}", file=sys.stderr)
    return 0


DIAMONDS_HEADER = (
    "m,k,l,n,trials,seed,sync_mean,sync_stderr,sync_lower,sync_upper,"
    "sync_in_bracket,async_mean,async_stderr,async_lower,async_upper,async_in_band"
)


def cmd_diamonds(opts: dict) -> int:
    m, k, l = opts["m"], opts["k"], opts["l"]
    g = string_of_diamonds(m, k, l)
    trials, seed = opts["trials"], opts["seed"]
    s_sum = estimator.estimate("sync", g, 0, trials, seed)
    a_sum = estimator.estimate("async", g, 0, trials, seed + 1)
    lo, hi = estimator.diamond_S_bounds(m, k, l)
    sync_ok = lo - 3 * s_sum.std_error <= s_sum.mean <= hi + 3 * s_sum.std_error
    a_lo = m * estimator.y_lower_bound_threshold(k) if k >= 2 else 0.0
    a_hi = m * estimator.z_mean(k) + 1.0 + math.log(g.n)
    async_ok = (
        a_lo - 3 * a_sum.std_error <= a_sum.mean <= a_hi + 3 * a_sum.std_error
    )
    row = [
        str(m),
        str(k),
        str(l),
        str(g.n),
        str(trials),
        str(seed),
        fmt(s_sum.mean),
        fmt(s_sum.std_error),
        str(lo),
        str(hi),
        str(sync_ok),
        fmt(a_sum.mean),
        fmt(a_sum.std_error),
        fmt(a_lo),
        fmt(a_hi),
        str(async_ok),
    ]
    emit(opts["out"], [DIAMONDS_HEADER, ",".join(row)])
    print(f"seed={seed}", file=sys.stderr)
    return 0 if sync_ok and async_ok else 1


PATHS_HEADER = "record,L,num_paths,sum_q,bound,holds,x,ell_minus,ell_plus,walk_sum,ok"


def cmd_paths(opts: dict) -> int:
    g, name, params = parse_graph_spec(opts["graph"])
    cap = opts["cap"]
    lengths = [opts["length"]] if opts["length"] is not None else list(range(1, g.n))
    lines = [PATHS_HEADER]
    all_ok = True
    for length in lengths:
        r = path_analysis.sum_q_over_length(g, length, cap)
        all_ok &= r.holds
        lines.append(
            ",".join(
                [
                    "qsum",
                    str(r.length),
                    str(r.num_paths),
                    fmt(r.q_sum),
                    fmt(r.bound),
                    str(r.holds),
                    "",
                    "",
                    "",
                    "",
                    "",
                ]
            )
        )
    for x in sorted({0, g.n // 2, g.n - 1}):
        for lm, lp in ((0, 1), (1, 1), (2, 2)):
            w = path_analysis.walk_sum(g, x, lm, lp, cap)
            ok = abs(w - 1.0) <= 1e-12
            all_ok &= ok
            lines.append(
                ",".join(
                    ["walk", "", "", "", "", "", str(x), str(lm), str(lp), fmt(w), str(ok)]
                )
            )
    emit(opts["out"], lines)
    return 0 if all_ok else 1


ATTAINABILITY_HEADER = (
    "record,n,m,k,l,k_clamped,trials,seed,sync_mean,sync_stderr,"
    "async_mean,async_stderr,alpha_target,beta_target,alpha_fit,beta_fit"
)


def cmd_attainability(opts: dict) -> int:
    alpha, beta = opts["alpha"], opts["beta"]
    sizes = parse_sizes(opts["family"])
    if len(sizes) < 3:
        raise RequiresFamilyError(f"need at least 3 sizes, got {len(sizes)}")
    trials, seed, start = opts["trials"], opts["seed"], opts["start"]
    members = [estimator.attainability_family_member(alpha, beta, n) for n in sizes]
    lines = [ATTAINABILITY_HEADER]
    sync_points, async_points = [], []
    for i, member in enumerate(members):
        g = member.graph
        s_sum = estimator.estimate("sync", g, start, trials, seed + 2 * i)
        a_sum = estimator.estimate(
            "async", g, start, trials, seed + 2 * i + 1, engine="fpp"
        )
        sync_points.append((g.n, s_sum.mean))
        async_points.append((g.n, a_sum.mean))
        lines.append(
            ",".join(
                [
                    "size",
                    str(g.n),
                    fmt(member.m or None),
                    fmt(member.k or None),
                    fmt(member.l if member.name == "diamonds" else None),
                    str(member.k_clamped),
                    str(trials),
                    str(seed),
                    fmt(s_sum.mean),
                    fmt(s_sum.std_error),
                    fmt(a_sum.mean),
                    fmt(a_sum.std_error),
                    "",
                    "",
                    "",
                    "",
                ]
            )
        )
    beta_fit = estimator.fit_exponent(sync_points)
    alpha_fit = estimator.fit_exponent(async_points)
    lines.append(
        ",".join(
            ["fit", "", "", "", "", "", str(trials), str(seed), "", "", "", ""]
            + [fmt(float(alpha)), fmt(float(beta)), fmt(alpha_fit.slope), fmt(beta_fit.slope)]
        )
    )
    emit(opts["out"], lines)
    print(f"seed={seed}", file=sys.stderr)
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "diamonds": cmd_diamonds,
    "paths": cmd_paths,
    "attainability": cmd_attainability,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        opts = resolve_options(ns)
        return COMMANDS[ns.command](opts)
    except CapExceededError as e:
        print(
            f"error: {e}\nhint: raise --cap or restrict --L to shorter paths",
            file=sys.stderr,
        )
        return 2
    except (
        ConfigError,
        GraphError,
        InfeasiblePairError,
        ParameterOutOfRangeError,
        RequiresFamilyError,
        ValueError,
        OSError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
