"""Command-line interface: ``sortnet <subcommand> ...``.

Exit status is 0 on success, 1 when a verification subcommand finds a
violated identity, and 2 for bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import core, exact, geometry, montecarlo, tableau, urn
from .export import (fmt_decimal, fmt_rational, path_csv, points_csv, read_points_csv,
                     render_exact)


def _subset(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated labels, got {text!r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _rational_line(x: Fraction) -> str:
    return f"{fmt_rational(x)}  ({fmt_decimal(x)})\n"


# -- subcommands ----------------------------------------------------------------

def cmd_enumerate(a) -> int:
    for net in exact.enumerate_networks(a.n, allow_large=a.allow_large):
        print(core.format_network(net))
    return 0


def cmd_count(a) -> int:
    print(exact.count_networks(a.n))
    return 0


def cmd_sample(a) -> int:
    rng = np.random.default_rng(a.seed)
    nets = [tableau.sample_uniform_network(a.n, rng) for _ in range(a.count)]
    _emit("".join(core.format_network(w) + "\n" for w in nets), a.out)
    return 0


def cmd_subnet(a) -> int:
    for net in core.read_networks(a.input):
        print(core.format_network(core.subnetwork(net, a.subset)))
    return 0


def cmd_pmf_first_swap(a) -> int:
    rows = [({"n": a.n, "k": k}, exact.first_swap_pmf(a.n, k)) for k in range(1, a.n)]
    _emit(render_exact(rows, a.format), a.out)
    return 0


def cmd_theorem1(a) -> int:
    sys.stdout.write(_rational_line(exact.theorem1_expectation(a.m, a.j)))
    return 0


def cmd_verify_theorem1(a) -> int:
    if not 2 <= a.nmax <= exact.MAX_ENUM_N:
        raise ValueError(f"--nmax must be in 2..{exact.MAX_ENUM_N}")
    failures = 0
    for n in range(2, a.nmax + 1):
        for m in range(2, n + 1):
            for j in range(1, m):
                brute = exact.expected_subnet_swaps_bruteforce(n, m, j)
                closed = exact.theorem1_expectation(m, j)
                ok = brute == closed
                failures += not ok
                print(f"n={n} m={m} j={j}  brute={fmt_rational(brute)}  "
                      f"formula={fmt_rational(closed)}  {'ok' if ok else 'FAIL'}")
    print("PASS" if not failures else f"FAIL ({failures} mismatches)")
    return 1 if failures else 0


def cmd_lemma6(a) -> int:
    checked = failures = 0
    for n in range(2, a.nmax + 1):
        for m in range(2, n + 1):
            for j in range(1, m):
                ok, left, right = exact.lemma6_check(n, m, j)
                checked += 1
                if not ok:
                    failures += 1
                    print(f"n={n} m={m} j={j}: {fmt_rational(left)} != {fmt_rational(right)}")
    print(f"{checked} triples checked, {failures} failures")
    return 1 if failures else 0


def cmd_corollary2(a) -> int:
    if a.mc is not None:
        est = montecarlo.mc_corollary2(a.mc, a.samples, np.random.default_rng(_need_seed(a)), a.workers)
        print(f"{est}  z={est.zscore(Fraction(1, 4)):+.3f}")
        return 0
    if a.n is None:
        raise ValueError("give n for the exact check or --mc N --samples K --seed S")
    p = exact.corollary2_probability(a.n)
    sys.stdout.write(_rational_line(p))
    return 0 if p == Fraction(1, 4) else 1


def cmd_urn_pmf(a) -> int:
    law = urn.white_count_pmf(a.n)
    rows = [({"n": a.n, "k": k}, p) for k, p in enumerate(law, start=1)]
    _emit(render_exact(rows, a.format), a.out)
    return 0 if law == exact.first_swap_law(a.n) else 1


def cmd_urn_couple(a) -> int:
    paths = urn.coupled_first_swaps_batch(a.nmax, a.paths, np.random.default_rng(a.seed))
    _emit(path_csv(paths), a.out)
    return 0


def cmd_geom_sample(a) -> int:
    ps = geometry.sample_archimedes(a.m, np.random.default_rng(a.seed))
    _emit(points_csv(ps.points), a.out)
    return 0


def cmd_geom_network(a) -> int:
    ps = geometry.PointSet(tuple(read_points_csv(a.points)))
    print(core.format_network(geometry.geometric_network(ps)))
    return 0


def cmd_geom_expect(a) -> int:
    value = geometry.archimedes_expected_swaps(a.m, a.j)
    target = exact.theorem1_expectation(a.m, a.j)
    print(f"quadrature {value:.12g}  formula {fmt_rational(target)}  diff {abs(value - float(target)):.3g}")
    return 0 if abs(value - float(target)) <= 1e-8 else 1


def cmd_mc_subnet(a) -> int:
    est = montecarlo.mc_subnet_swap_expectation(a.n, a.m, a.j, a.samples,
                                                np.random.default_rng(a.seed), a.workers)
    target = exact.theorem1_expectation(a.m, a.j)
    print(f"{est}  target {fmt_rational(target)}  z={est.zscore(target):+.3f}")
    return 0


def cmd_diagram(a) -> int:
    nets = core.read_networks(a.input)
    if not nets:
        raise ValueError(f"no networks in {a.input}")
    core.wiring_diagram(nets[a.index], a.out)
    return 0


def cmd_run(a) -> int:
    record = montecarlo.run_experiment(montecarlo.ExperimentConfig.load(a.config), a.log)
    print(json.dumps(record, indent=2))
    return 0


def _need_seed(a) -> int:
    if a.seed is None:
        raise ValueError("--seed is required for Monte Carlo runs")
    return a.seed


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sortnet", description="Random subnetworks of uniform sorting networks.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        return sp

    def formats(sp):
        sp.add_argument("--format", choices=["text", "csv", "json"], default="text")
        sp.add_argument("--out")

    sp = add("enumerate", cmd_enumerate, "list every n-particle network")
    sp.add_argument("n", type=int)
    sp.add_argument("--allow-large", action="store_true", help="permit n=7 (about 1.1e9 networks)")

    add("count", cmd_count, "number of n-networks by the hook formula").add_argument("n", type=int)

    sp = add("sample", cmd_sample, "uniform random networks")
    sp.add_argument("n", type=int)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--out")

    sp = add("subnet", cmd_subnet, "restrict networks from a file to a particle subset")
    sp.add_argument("--input", required=True)
    sp.add_argument("--subset", type=_subset, required=True)

    sp = add("pmf-first-swap", cmd_pmf_first_swap, "exact law of the first swap location")
    sp.add_argument("n", type=int)
    formats(sp)

    sp = add("theorem1", cmd_theorem1, "expected location-j swaps of a random m-subnetwork")
    sp.add_argument("m", type=int)
    sp.add_argument("j", type=int)

    sp = add("verify-theorem1", cmd_verify_theorem1, "brute-force check of the expectation formula")
    sp.add_argument("--nmax", type=int, default=6)

    sp = add("lemma6", cmd_lemma6, "exact check of the hypergeometric mixture identity")
    sp.add_argument("--nmax", type=int, default=40)

    sp = add("corollary2", cmd_corollary2, "probability of the four triangle-type 4-networks")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--mc", type=int, metavar="N", help="Monte Carlo at this n instead")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("urn-pmf", cmd_urn_pmf, "white-count law of the 3/2 + 3/2 Polya urn")
    sp.add_argument("n", type=int)
    formats(sp)

    sp = add("urn-couple", cmd_urn_couple, "coupled first-swap paths as CSV")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--paths", type=int, default=1)
    sp.add_argument("--out")

    sp = add("geom-sample", cmd_geom_sample, "Archimedes-distributed points as CSV")
    sp.add_argument("m", type=int)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out")

    sp = add("geom-network", cmd_geom_network, "geometric sorting network of a point CSV")
    sp.add_argument("--points", required=True)

    sp = add("geom-expect", cmd_geom_expect, "quadrature of the geometric expectation")
    sp.add_argument("m", type=int)
    sp.add_argument("j", type=int)

    sp = add("mc-subnet", cmd_mc_subnet, "Monte Carlo expected subnetwork swaps")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("j", type=int)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("diagram", cmd_diagram, "SVG wiring diagram of a network from a file")
    sp.add_argument("--input", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--index", type=int, default=0, help="which network in the file (0-based)")

    sp = add("run", cmd_run, "run an experiment config (JSON)")
    sp.add_argument("config")
    sp.add_argument("--log", help="append the result to this JSON-lines file")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"sortnet {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
