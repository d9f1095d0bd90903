"""Command-line front end: generate, solve, certify, and benchmark."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import dual, instance, oracle, solve
from .errors import FracparityError, MonteCarloFailure
from .field import DEFAULT_PRIME, derive_seed

_ALGORITHMS = {
    "simple": solve.simple_solve,
    "sparse": solve.sparse_solve,
    "faster": solve.faster_solve,
    "maxmatch": solve.max_matching_solve,
}


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str) -> instance.LineSet:
    ls = instance.parse_line_set(Path(path).read_text())
    instance.validate(ls)
    return ls


def cmd_gen(args) -> int:
    if args.kind == "random":
        ls = instance.random_instance(args.n, args.m, args.seed, args.prime)
    else:
        g = instance.parse_graph(Path(args.graphfile).read_text())
        ls = instance.from_graph(g, args.prime)
    _write(instance.serialize_line_set(ls), args.output)
    return 0


def cmd_solve(args) -> int:
    ls = _load_instance(args.file)
    if args.alg == "lasvegas":
        report, cover = solve.las_vegas_solve(ls, args.seed)
        cover_path = args.cover_out or args.file + ".cover"
        Path(cover_path).write_text(dual.serialize_cover(cover))
    else:
        report = _ALGORITHMS[args.alg](ls, args.seed)
    _write(instance.serialize_half_vector(report.y), args.output)
    return 0


def cmd_dual(args) -> int:
    ls = _load_instance(args.file)
    cover = dual.dominant_two_cover(ls, args.seed)
    _write(dual.serialize_cover(cover), args.output)
    return 0


def cmd_verify(args) -> int:
    ls = _load_instance(args.file)
    hv = instance.parse_half_vector(Path(args.solution).read_text())
    cover = dual.parse_cover(Path(args.cover).read_text(), ls.p)
    check = dual.verify_two_cover(ls, cover)
    equal = hv.value_doubled == check.value
    for name, ok in (("nested", check.nested), ("covering", check.covering),
                     ("value-equality", equal)):
        print(f"{name} {'PASS' if ok else 'FAIL'}")
    verdict = check.nested and check.covering and equal
    print(f"certification {'PASS' if verdict else 'FAIL'} "
          f"value {hv.value_doubled}/2")
    return 0 if verdict else 1


def cmd_oracle(args) -> int:
    ls = _load_instance(args.file)
    report = oracle.brute_force(ls, args.seed)
    sys.stdout.write(oracle.serialize_report(report))
    return 0


def _solve_with_retries(fn, ls, seed: int, tries: int = 8):
    for t in range(tries):
        try:
            return fn(ls, derive_seed(seed, f"retry/{t}"))
        except MonteCarloFailure:
            continue
    raise MonteCarloFailure("retries exhausted")


def _bench_scaling(args) -> tuple[list[dict], str]:
    sizes = [(8, 64), (8, 128), (16, 256)]
    rows = []
    for n, m in sizes:
        ls = instance.random_instance(n, m, derive_seed(args.seed, f"bench/{n}/{m}"))
        for alg in ("sparse", "faster"):
            t0 = time.perf_counter()
            _solve_with_retries(_ALGORITHMS[alg], ls, derive_seed(args.seed, alg))
            rows.append({"n": n, "m": m, "alg": alg,
                         "seconds": time.perf_counter() - t0})
    header = f"{'n':>4} {'m':>6} {'alg':>8} {'seconds':>10}"
    lines = [header]
    for r in rows:
        lines.append(f"{r['n']:>4} {r['m']:>6} {r['alg']:>8} {r['seconds']:>10.4f}")
    return rows, "\n".join(lines) + "\n"


def _bench_crosscheck(args) -> tuple[list[dict], str]:
    rows = []
    for t in range(20):
        n = 2 + (t % 5)
        m = max(3, (n + 1) // 2 + (t % 3) + 1)
        ls = instance.random_instance(n, m, derive_seed(args.seed, f"cross/{t}"))
        truth = oracle.brute_force(ls, derive_seed(args.seed, f"cross/oracle/{t}"))
        vals = {"oracle": truth.optimum_doubled}
        vals["simple"] = _solve_with_retries(
            solve.simple_solve, ls, derive_seed(args.seed, f"cross/simple/{t}")).value_doubled
        vals["maxmatch"] = _solve_with_retries(
            solve.max_matching_solve, ls,
            derive_seed(args.seed, f"cross/maxmatch/{t}")).value_doubled
        rep, _ = solve.las_vegas_solve(ls, derive_seed(args.seed, f"cross/lv/{t}"))
        vals["lasvegas"] = rep.value_doubled
        agree = len(set(vals.values())) == 1
        rows.append({"trial": t, **vals, "agree": agree})
    header = (f"{'trial':>6} {'oracle':>7} {'simple':>7} "
              f"{'maxmatch':>9} {'lasvegas':>9} {'agree':>6}")
    lines = [header]
    for r in rows:
        lines.append(f"{r['trial']:>6} {r['oracle']:>7} {r['simple']:>7} "
                     f"{r['maxmatch']:>9} {r['lasvegas']:>9} "
                     f"{'yes' if r['agree'] else 'NO':>6}")
    good = sum(1 for r in rows if r["agree"])
    lines.append(f"agreement {good}/{len(rows)}")
    return rows, "\n".join(lines) + "\n"


def _render_bench_figure(rows: list[dict], suite: str, plot_dir: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    Path(plot_dir).mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6, 4))
    if suite == "scaling":
        labels = sorted({f"n={r['n']},m={r['m']}" for r in rows})
        for alg in ("sparse", "faster"):
            ys = [r["seconds"] for r in rows if r["alg"] == alg]
            ax.plot(labels, ys, marker="o", label=alg)
        ax.set_ylabel("seconds")
        ax.set_yscale("log")
        ax.set_title("solver wall-clock by instance size")
        ax.legend()
    else:
        trials = [r["trial"] for r in rows]
        agree = [1 if r["agree"] else 0 for r in rows]
        ax.bar(trials, agree)
        ax.set_xlabel("trial")
        ax.set_ylabel("value agreement")
        ax.set_ylim(0, 1.2)
        ax.set_title("solver vs oracle agreement")
    fig.tight_layout()
    fig.savefig(str(Path(plot_dir) / f"bench_{suite}.png"), dpi=120)
    plt.close(fig)


def cmd_bench(args) -> int:
    if args.suite == "scaling":
        rows, table = _bench_scaling(args)
    else:
        rows, table = _bench_crosscheck(args)
    sys.stdout.write(table)
    if args.plot_dir:
        _render_bench_figure(rows, args.suite, args.plot_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracparity",
                                 description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gsub = gen.add_subparsers(dest="kind", required=True)
    gr = gsub.add_parser("random")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--m", type=int, required=True)
    gr.add_argument("--seed", type=int, required=True)
    gr.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    gr.add_argument("-o", "--output")
    gg = gsub.add_parser("graph")
    gg.add_argument("graphfile")
    gg.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    gg.add_argument("-o", "--output")
    gen.set_defaults(fn=cmd_gen)

    so = sub.add_parser("solve", help="run a primal solver")
    so.add_argument("file")
    so.add_argument("--alg", choices=[*_ALGORITHMS, "lasvegas"],
                    default="lasvegas")
    so.add_argument("--seed", type=int, required=True)
    so.add_argument("--cover-out")
    so.add_argument("-o", "--output")
    so.set_defaults(fn=cmd_solve)

    du = sub.add_parser("dual", help="extract the dominant 2-cover")
    du.add_argument("file")
    du.add_argument("--seed", type=int, required=True)
    du.add_argument("-o", "--output")
    du.set_defaults(fn=cmd_dual)

    ve = sub.add_parser("verify", help="check a primal-dual certificate pair")
    ve.add_argument("file")
    ve.add_argument("--solution", required=True)
    ve.add_argument("--cover", required=True)
    ve.set_defaults(fn=cmd_verify)

    orc = sub.add_parser("oracle", help="brute-force ground truth")
    orc.add_argument("file")
    orc.add_argument("--seed", type=int, required=True)
    orc.set_defaults(fn=cmd_oracle)

    be = sub.add_parser("bench", help="timing and agreement tables")
    be.add_argument("--suite", choices=["scaling", "crosscheck"],
                    required=True)
    be.add_argument("--seed", type=int, required=True)
    be.add_argument("--plot-dir",
                    help="also render the table as a figure into this directory")
    be.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except MonteCarloFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (FracparityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
