"""Command-line front end.

Subcommands: digits, eval, scan, continuity, integral, cdf, verify.
Configuration comes from defaults, then an optional JSON config file, then
explicit flags.  Scan-style commands write a delimited file and render a
matplotlib figure next to it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .indexseq import IDENTITY, IndexSequence, continuity_condition, parse_index_sequence
from .numeration import (
    DigitSeq,
    NumerationSystem,
    alternate_representation,
    digits_of,
    format_rational,
    parse_rational,
    value_of,
)
from .operators import ShiftPlan, apply_plan, delete_digit, shift
from .salem import (
    KIND_JUMP,
    NotApplicableError,
    SalemParams,
    cdf,
    classify_continuity,
    equation_residual,
    evaluate,
    evaluate_at,
    integral_closed_form,
    integral_riemann,
    sample_digit_values,
)

Q = Fraction

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    q: int = 2
    p: tuple[Fraction, ...] = ()
    perm: IndexSequence = IDENTITY
    tol: float = 1e-10
    depth: int = 64
    seed: int = 0

    def params(self) -> SalemParams:
        p = self.p if self.p else tuple(Q(1, self.q) for _ in range(self.q))
        return SalemParams(self.q, p)

    def system(self) -> NumerationSystem:
        return NumerationSystem(self.q)


def _parse_weights(text) -> tuple[Fraction, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(parse_rational(str(t)) for t in text)
    return tuple(parse_rational(t) for t in str(text).split(",") if t.strip() != "")


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if "q" in doc:
            cfg.q = int(doc["q"])
        if "p" in doc:
            cfg.p = _parse_weights(doc["p"])
        if "perm" in doc:
            cfg.perm = parse_index_sequence(str(doc["perm"]))
        if "tol" in doc:
            cfg.tol = float(doc["tol"])
        if "depth" in doc:
            cfg.depth = int(doc["depth"])
        if "seed" in doc:
            cfg.seed = int(doc["seed"])
    if getattr(args, "q", None) is not None:
        cfg.q = args.q
    if getattr(args, "p", None) is not None:
        cfg.p = _parse_weights(args.p)
    if getattr(args, "perm", None) is not None:
        cfg.perm = parse_index_sequence(args.perm)
    if getattr(args, "tol", None) is not None:
        cfg.tol = args.tol
    if getattr(args, "depth", None) is not None:
        cfg.depth = args.depth
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if cfg.tol <= 0:
        raise ValueError(f"tolerance must be > 0, got {cfg.tol}")
    cfg.params()  # validate q/p/perm invariants eagerly
    return cfg


def _figure_path(out_path: str) -> str:
    stem, _ = os.path.splitext(out_path)
    return stem + ".png"


def _render_figure(xs, ys, out_path: str, title: str, ylabel: str) -> str:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(xs, ys, lw=0.8, color="#1f4e79")
    ax.set_xlabel("x")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    path = _figure_path(out_path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def cmd_digits(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    sys_ = cfg.system()
    x = parse_rational(args.x)
    seq = digits_of(x, sys_)
    print(seq.to_text())
    other = alternate_representation(seq, sys_)
    if other is not None:
        print(f"alt {other.to_text()}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    x = parse_rational(args.x)
    bv = evaluate_at(cfg.params(), cfg.perm, x, cfg.tol)
    print(f"x = {format_rational(x)}")
    print(f"h = {bv.value!r} ± {bv.err:.3e}")
    return EXIT_OK


def scan_rows(cfg: RunConfig, n_points: int) -> list[tuple[Fraction, float, float]]:
    if n_points < 2:
        raise ValueError(f"need at least 2 scan points, got {n_points}")
    sys_ = cfg.system()
    params = cfg.params()
    step = (sys_.dom_sup - sys_.dom_inf) / (n_points - 1)
    rows = []
    for i in range(n_points):
        x = sys_.dom_inf + i * step
        bv = evaluate_at(params, cfg.perm, x, cfg.tol)
        rows.append((x, bv.value, bv.err))
    return rows


def _write_rows(rows, header: str, out: Optional[str]) -> None:
    lines = [header] + [f"{format_rational(x)},{v!r},{e!r}" for x, v, e in rows]
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {len(rows)} rows to {out}")


def cmd_scan(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    rows = scan_rows(cfg, args.points)
    _write_rows(rows, "x,h,err", args.out)
    if args.out and not args.no_plot:
        title = f"q={cfg.q} p={','.join(map(str, cfg.params().p))} perm={cfg.perm}"
        path = _render_figure([float(x) for x, _, _ in rows], [v for _, v, _ in rows],
                              args.out, title, "h(x)")
        print(f"wrote figure to {path}")
    return EXIT_OK


def cmd_continuity(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    sys_ = cfg.system()
    x = parse_rational(args.x)
    seq = digits_of(x, sys_)
    report = classify_continuity(cfg.params(), cfg.perm, seq, cfg.tol)
    print(f"x = {format_rational(x)}  digits = {seq.to_text()}")
    print(f"class = {report.kind}")
    if report.limits is not None:
        lim = report.limits
        print(f"branch position = {lim.position}")
        print(f"left  = {lim.left.value!r} ± {lim.left.err:.3e}")
        print(f"right = {lim.right.value!r} ± {lim.right.err:.3e}")
        print(f"jump = {report.jump!r}")
    return EXIT_OK


def cmd_integral(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    params = cfg.params()
    closed = integral_closed_form(params)
    riem = integral_riemann(params, cfg.perm, args.rank, cfg.tol)
    print(f"closed form = {format_rational(closed)} = {float(closed)!r}")
    print(f"riemann rank {args.rank} = {riem!r}")
    print(f"|difference| = {abs(riem - float(closed))!r}")
    return EXIT_OK


def cmd_cdf(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    params = cfg.params()
    if args.x is not None:
        x = parse_rational(args.x)
        bv = cdf(params, cfg.perm, x, cfg.tol)
        print(f"x = {format_rational(x)}")
        print(f"F = {bv.value!r} ± {bv.err:.3e}")
        return EXIT_OK
    sys_ = cfg.system()
    step = (sys_.dom_sup - sys_.dom_inf) / (args.points - 1)
    rows = []
    for i in range(args.points):
        x = sys_.dom_inf + i * step
        bv = cdf(params, cfg.perm, x, cfg.tol)
        rows.append((x, bv.value, bv.err))
    _write_rows(rows, "x,F,err", args.out)
    if args.out and not args.no_plot:
        title = f"distribution function, q={cfg.q} p={','.join(map(str, params.p))}"
        path = _render_figure([float(x) for x, _, _ in rows], [v for _, v, _ in rows],
                              args.out, title, "F(x)")
        print(f"wrote figure to {path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def _random_seq(rng, q: int, max_pre: int = 8, max_per: int = 6) -> DigitSeq:
    pre = tuple(rng.randrange(q) for _ in range(rng.randint(0, max_pre)))
    per = tuple(rng.randrange(q) for _ in range(rng.randint(1, max_per)))
    return DigitSeq(pre, per)


def _suite_identities(cfg: RunConfig) -> list[Check]:
    import random as _random

    rng = _random.Random(cfg.seed or 1)
    sys_ = cfg.system()
    q = cfg.q
    checks = []

    bad = 0
    for _ in range(100):
        seq = _random_seq(rng, q)
        x = value_of(seq, sys_)
        if value_of(digits_of(x, sys_), sys_) != x:
            bad += 1
    checks.append(Check("round-trip value_of(digits_of(x)) == x (100 cases)", bad == 0, f"failures={bad}"))

    bad = 0
    for _ in range(50):
        seq = _random_seq(rng, q)
        x = value_of(seq, sys_)
        for n in range(1, 13):
            head = sum((Q(seq.digit_at(k)) / Q(-q) ** k for k in range(1, n + 1)), Q(0))
            if x != head + Q(-q) ** (-n) * value_of(shift(seq, n), sys_):
                bad += 1
    checks.append(Check("shift reconstruction identity exact (50 seqs, n<=12)", bad == 0, f"failures={bad}"))

    bad = 0
    for _ in range(100):
        seq = _random_seq(rng, q)
        x = value_of(seq, sys_)
        m = rng.randint(1, 12)
        lhs = value_of(delete_digit(seq, m), sys_)
        head = DigitSeq(tuple(seq.digit_at(k) for k in range(1, m + 1)), (0,))
        rhs = -q * x - Q(seq.digit_at(m)) / Q(-q) ** m + (q + 1) * value_of(head, sys_)
        if lhs != rhs:
            bad += 1
    checks.append(Check("single-deletion affine identity exact (100 cases)", bad == 0, f"failures={bad}"))

    bad = 0
    for _ in range(50):
        seq = _random_seq(rng, q)
        k = rng.randint(1, 5)
        targets = tuple(rng.sample(range(1, 13), k))
        plan = ShiftPlan(targets)
        got = apply_plan(seq, plan)
        horizon = 40
        kept = [seq.digit_at(j) for j in range(1, horizon + 1) if j not in targets]
        if [got.digit_at(i) for i in range(1, len(kept) + 1)] != kept:
            bad += 1
    checks.append(Check("plan deletion equals one-pass deletion (50 plans)", bad == 0, f"failures={bad}"))
    return checks


def _suite_theorem1(cfg: RunConfig) -> list[Check]:
    import random as _random

    rng = _random.Random(cfg.seed or 1)
    params = cfg.params()
    bound = 3 * cfg.tol * (1 + params.max_abs_p)
    worst = 0.0
    for _ in range(20):
        seq = _random_seq(rng, cfg.q)
        for k in range(1, 6):
            worst = max(worst, equation_residual(params, cfg.perm, seq, k, cfg.tol))
    return [
        Check(
            "functional recursion residuals (20 points, k<=5)",
            worst <= bound,
            f"max={worst:.3e} tol={bound:.3e}",
        )
    ]


def _suite_continuity(cfg: RunConfig) -> list[Check]:
    params = cfg.params()
    sys_ = cfg.system()
    checks = []
    agree = True
    jump_found = None
    tested = 0
    for m in range(1, 4):
        if not cfg.perm.covers(m):
            continue
        for head in product(range(cfg.q), repeat=m - 1):
            for pivot in range(1, cfg.q):
                seq = DigitSeq(head + (pivot,), (sys_.q - 1, 0))
                report = classify_continuity(params, cfg.perm, seq, cfg.tol)
                predicted = continuity_condition(cfg.perm, m)
                tested += 1
                if predicted != (report.kind != KIND_JUMP):
                    agree = False
                if report.kind == KIND_JUMP and jump_found is None:
                    jump_found = (value_of(seq, sys_), report.jump)
    checks.append(
        Check(
            f"classifier agrees with the continuity predicate ({tested} branch points)",
            agree,
            "all match" if agree else "mismatch found",
        )
    )
    if jump_found is not None:
        x, j = jump_found
        checks.append(Check("jump witness", True, f"x={format_rational(x)} jump={j:.6g}"))
    return checks


def _suite_integral(cfg: RunConfig) -> list[Check]:
    params = cfg.params()
    rank = 12 if params.q ** 12 <= 600_000 else 10
    closed = float(integral_closed_form(params))
    riem = integral_riemann(params, cfg.perm, rank, cfg.tol)
    diff = abs(riem - closed)
    return [
        Check(
            f"riemann rank {rank} vs closed form",
            diff <= 1e-3,
            f"riemann={riem:.6f} closed={closed:.6f} |diff|={diff:.6f} tol=1e-3",
        )
    ]


def _suite_cdf(cfg: RunConfig) -> list[Check]:
    params = cfg.params()
    checks = []
    n = 20_000
    values, streams = sample_digit_values(params.q, params.p, cfg.seed, n, depth=40, with_digits=True)
    pairs = sorted(
        (v, evaluate(params, cfg.perm, DigitSeq(st, (0,)), cfg.tol).value)
        for v, st in zip(values, streams)
    )
    dks = 0.0
    for i, (_, f) in enumerate(pairs):
        dks = max(dks, abs(f - i / n), abs(f - (i + 1) / n))
    checks.append(Check(f"KS distance over {n} samples", dks <= 0.02, f"D={dks:.4f} tol=0.02"))

    sys_ = cfg.system()
    step = (sys_.dom_sup - sys_.dom_inf) / 299
    prev = None
    monotone = True
    for i in range(300):
        bv = cdf(params, cfg.perm, sys_.dom_inf + i * step, cfg.tol)
        if prev is not None and prev.value - bv.value > prev.err + bv.err:
            monotone = False
        prev = bv
    checks.append(Check("cdf nondecreasing on a 300-point grid", monotone, ""))
    return checks


SUITES = {
    "identities": _suite_identities,
    "theorem1": _suite_theorem1,
    "continuity": _suite_continuity,
    "integral": _suite_integral,
    "cdf": _suite_cdf,
}


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    any_failed = False
    for name in names:
        for check in SUITES[name](cfg):
            tag = "PASS" if check.passed else "FAIL"
            detail = f"  [{check.detail}]" if check.detail else ""
            print(f"{tag}  {name}: {check.name}{detail}")
            if not check.passed:
                any_failed = True
    return EXIT_CHECK_FAILED if any_failed else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-q", type=int, default=None, help="base magnitude (radix is -q)")
    parser.add_argument("--p", type=str, default=None, help="comma-separated weights, e.g. 1/3,2/3")
    parser.add_argument("--perm", type=str, default=None, help="index sequence: 'id' or '3,7,9|+2'")
    parser.add_argument("--tol", type=float, default=None, help="evaluation tolerance (default 1e-10)")
    parser.add_argument("--depth", type=int, default=None, help="digit depth for samplers (default 64)")
    parser.add_argument("--seed", type=int, default=None, help="random seed (default 0)")
    parser.add_argument("--config", type=str, default=None, help="JSON config file; flags override it")
    parser.add_argument("--out", type=str, default=None, help="output file path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negasalem",
        description="Nega-q-ary numeration and Salem-type functions over permuted digit reads",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", help="digit expansion of a rational, plus its alternate form")
    _add_common(p)
    p.add_argument("x", help="rational a/b or decimal")
    p.set_defaults(func=cmd_digits)

    p = sub.add_parser("eval", help="evaluate the function at a point")
    _add_common(p)
    p.add_argument("x")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scan", help="tabulate the function over the domain (CSV + figure)")
    _add_common(p)
    p.add_argument("--points", type=int, default=256)
    p.add_argument("--no-plot", action="store_true", help="skip the figure")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("continuity", help="classify a point and report one-sided limits")
    _add_common(p)
    p.add_argument("x")
    p.set_defaults(func=cmd_continuity)

    p = sub.add_parser("integral", help="closed-form integral vs the cylinder Riemann sum")
    _add_common(p)
    p.add_argument("--rank", type=int, default=10)
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("cdf", help="distribution function at a point or over a grid")
    _add_common(p)
    p.add_argument("x", nargs="?", default=None)
    p.add_argument("--points", type=int, default=256)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_cdf)

    p = sub.add_parser("verify", help="run a verification suite")
    _add_common(p)
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotApplicableError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
