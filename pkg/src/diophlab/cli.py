"""Command-line entry point: ``diophlab <command> [options]``.

Exit status: 0 success, 1 internal error, 2 invalid configuration,
3 refused for resource reasons (quadrature budget, sieve size, X too small).
Every emitted CSV/JSON starts with a ``#`` header line carrying the manifest
hash; wall-clock time goes to stderr only so outputs stay byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .approx import convergents, parse_ratio, scale_sequence
from .arcs import (
    SelbergSpec,
    check_budget,
    default_truncation,
    integrate_I,
    major_arc_J1,
    selberg_J,
)
from .config import ConfigError, RunConfig, derive_circle_params, load_config, validate
from .expsums import SumSpec, eval_S, eval_T, eval_U
from .kernel import fourier_pair_check, k_hat
from .lp import build_lp, parse_grid, solve_lp
from .primes import OutOfTableError, cached_sieve, chebyshev_theta, default_cache_dir, sieve
from .quadrature import BudgetExceeded, set_threads
from .search import best_miss, count_solutions, enumerate_solutions, exact_weighted_sum, theorem_scan

EXIT_OK, EXIT_INTERNAL, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3
SIEVE_MAX = 10**9
# arguments that do not change results and stay out of the manifest hash
_VOLATILE = {"threads", "out", "sieve_cache", "summary", "func"}


class Refused(RuntimeError):
    """A request the tool declines for resource or scale reasons."""


def fmt(x) -> str:
    return "%.12e" % x


def _round(obj):
    """Floats to 12 significant digits, recursively, for JSON output."""
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else str(obj)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


class Manifest:
    def __init__(self, args: argparse.Namespace):
        fields = {k: v for k, v in sorted(vars(args).items()) if k not in _VOLATILE}
        config = getattr(args, "config", None)
        if config:
            try:
                fields["config_data"] = json.loads(Path(config).read_text())
            except (OSError, json.JSONDecodeError):
                fields["config_data"] = None
        fields["version"] = __version__
        fields["seed"] = 0
        self.fields = fields
        blob = json.dumps(fields, sort_keys=True, default=str).encode()
        self.hash = hashlib.sha256(blob).hexdigest()

    def header(self) -> str:
        return f"# diophlab {__version__} command={self.fields['command']} manifest={self.hash}"


def _write(manifest: Manifest, lines: list[str], path: Path | None = None) -> None:
    text = "\n".join([manifest.header(), *lines]) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json_lines(obj) -> list[str]:
    return json.dumps(_round(obj), indent=2, sort_keys=True).splitlines()


def read_output(path) -> str:
    """File contents without the leading ``#`` header line(s)."""
    return "".join(line for line in Path(path).read_text().splitlines(True) if not line.startswith("#"))


def _table(limit: float, args):
    limit = max(int(math.ceil(limit)) + 1, 100)
    if limit > SIEVE_MAX:
        raise Refused(f"prime table up to {limit} exceeds the limit {SIEVE_MAX}")
    if args.sieve_cache or default_cache_dir() is not None:
        return cached_sieve(limit, args.sieve_cache)
    return sieve(limit)


def _run_config(args) -> RunConfig:
    cfg = load_config(args.config)
    validate(cfg.params)
    return cfg


def _scale(cfg: RunConfig, override=None) -> float:
    if override is not None:
        return float(override)
    if cfg.X is not None:
        return cfg.X
    if cfg.q is not None:
        return scale_sequence(cfg.params, cfg.q)
    raise ConfigError("config needs 'X' or 'q' (or pass --X)")


# -- commands -------------------------------------------------------------------

def cmd_validate(args, man):
    cfg = load_config(args.config)
    rep = validate(cfg.params, strict=False)
    out = {"ok": rep.ok, "checks": rep.checks, "theorem_mode": rep.theorem_mode,
           "exploratory": rep.exploratory, "messages": rep.messages}
    _write(man, _json_lines(out), args.out)
    return EXIT_OK if rep.ok else EXIT_CONFIG


def cmd_primes(args, man):
    table = _table(args.limit, args)
    rows = ["x,pi,theta"]
    for x in args.x or [args.limit]:
        n = int((table.primes <= x).sum())
        rows.append(f"{fmt(x)},{n},{fmt(chebyshev_theta(x, table))}")
    _write(man, rows, args.out)
    return EXIT_OK


def cmd_expsum(args, man):
    spec = SumSpec(args.kind, args.k, args.X, args.delta)
    alphas = parse_grid(args.alpha_grid)
    if args.kind == "S":
        vals = eval_S(spec, alphas, _table(spec.hi, args))
    elif args.kind == "U":
        vals = eval_U(spec, alphas)
    else:
        vals = eval_T(spec, alphas)
    rows = ["alpha,re,im,abs"]
    rows += [f"{fmt(a)},{fmt(v.real)},{fmt(v.imag)},{fmt(abs(v))}" for a, v in zip(alphas, vals)]
    _write(man, rows, args.out)
    return EXIT_OK


def cmd_kernel(args, man):
    rows = ["eta,t,value,k_hat,gap,error,tail"]
    for t in parse_grid(args.t_grid):
        res = fourier_pair_check(args.eta, t, args.T)
        kh = k_hat(args.eta, t)
        rows.append(",".join(fmt(v) for v in (args.eta, t, res.value, kh, abs(res.value - kh),
                                              res.abs_error_est, res.truncation_tail)))
    _write(man, rows, args.out)
    return EXIT_OK


def cmd_convergents(args, man):
    rows = ["index,a,q,certified"]
    for c in convergents(parse_ratio(args.ratio), args.count):
        rows.append(f"{c.index},{c.a},{c.q},{int(c.certified)}")
    _write(man, rows, args.out)
    return EXIT_OK


def _arc_result(params, cp, arc, table, T):
    name = {"trivial": "trivial-truncated"}.get(arc, arc)
    res = integrate_I(params, cp, name, table, T=T)
    d = res.as_dict()
    d["arc"] = arc
    return d


def cmd_arcs(args, man):
    cfg = _run_config(args)
    X = _scale(cfg, args.X)
    cp = derive_circle_params(cfg.params, X, cfg.eta_log6)
    T = args.T if args.T is not None else default_truncation(cp)
    arcs = ["major", "minor", "trivial"] if args.arc == "all" else [args.arc]
    check_budget(cfg.params, cp, [{"trivial": "trivial-truncated"}.get(a, a) for a in arcs], T)
    table = _table(X, args)
    out = {a: _arc_result(cfg.params, cp, a, table, T) for a in arcs}
    if args.arc != "all":
        out = out[args.arc]
    _write(man, _json_lines(out), args.out)
    return EXIT_OK


def cmd_selberg(args, man):
    rows = ["k,X,h,value,error,pieces"]
    for k in args.k:
        for X in args.X:
            hs = [h for h in args.h]
            table = _table((2 * X + max(hs)) ** (1.0 / k), args)
            for h in hs:
                res = selberg_J(SelbergSpec(k, X, h), table)
                rows.append(f"{fmt(k)},{fmt(X)},{fmt(h)},{fmt(res.value)},{fmt(res.abs_error_est)},"
                            f"{res.details.get('pieces', 0)}")
    _write(man, rows, args.out)
    return EXIT_OK


def cmd_search(args, man):
    cfg = _run_config(args)
    X = _scale(cfg, args.X)
    eta = args.eta if args.eta is not None else derive_circle_params(cfg.params, X, cfg.eta_log6).eta
    table = _table(max(X, X ** (1.0 / cfg.params.k)), args)
    count = count_solutions(cfg.params, X, eta, table)
    recs = enumerate_solutions(cfg.params, X, eta, table)
    if args.top is not None:
        recs = sorted(recs, key=lambda r: (r.miss, r.p1, r.p2, r.p3))[: args.top]
    rows = ["p1,p2,p3,form,miss,weight,boundary"]
    rows += [f"{r.p1},{r.p2},{r.p3},{fmt(r.form_value)},{fmt(r.miss)},{fmt(r.weight)},{int(r.on_boundary)}"
             for r in recs]
    summary = {"count": count, "eta": eta, "X": X,
               "weighted_sum": exact_weighted_sum(cfg.params, X, eta, table)}
    rows.append("# summary " + json.dumps(_round(summary), sort_keys=True))
    _write(man, rows, args.out)
    if args.summary:
        _write(man, _json_lines(summary), args.summary)
    return EXIT_OK


def cmd_scan(args, man):
    cfg = _run_config(args)
    ratio = cfg.params.ratio if cfg.params.ratio is not None else cfg.params.lambda1 / cfg.params.lambda2
    convs = convergents(ratio, args.count)
    qs = sorted({abs(c.q) for c in convs})
    top = max(scale_sequence(cfg.params, q) for q in qs)
    table = _table(min(max(top, top ** (1.0 / cfg.params.k)), args.max_table), args)
    rep = theorem_scan(cfg.params, qs, table, cfg.eta_log6)
    rows = ["q,X,eta,count,best_miss,best_over_eta,note"]
    for r in rep.rows:
        rows.append(f"{r.q},{fmt(r.X)},{fmt(r.eta)},{r.count},{fmt(r.best)},{fmt(r.best_over_eta)},{r.note}")
    if rep.cutoff:
        rows.append("# cutoff " + rep.cutoff)
    _write(man, rows, args.out)
    return EXIT_OK


def cmd_lp(args, man):
    grid = [args.k] if args.k is not None else parse_grid(args.k_grid)
    rows = ["k,inv_a,b,c,status,active_set"]
    for k in grid:
        sol = solve_lp(build_lp(k))
        if sol.status == "optimal":
            vals = ",".join(fmt(v) for v in sol.as_floats())
        else:
            vals = "nan,nan,nan"
        rows.append(f"{fmt(k)},{vals},{sol.status},{' '.join(map(str, sol.active_set))}")
    _write(man, rows, args.out)
    return EXIT_OK


def build_report(cfg: RunConfig, table_for, T: float | None = None) -> dict:
    """The end-to-end comparison for one scale X."""
    params = cfg.params
    X = _scale(cfg)
    if X < 10:
        raise Refused(f"X={X:.6g} too small for the circle-method pipeline (need X >= 10)")
    cp = derive_circle_params(params, X, cfg.eta_log6)
    T = default_truncation(cp) if T is None else T
    check_budget(params, cp, ["full-truncated", "major", "minor", "trivial-truncated"], T)
    table = table_for(max(X, X ** (1.0 / params.k)))
    full = integrate_I(params, cp, "full-truncated", table, T=T)
    arcs = {a: integrate_I(params, cp, a, table, T=T) for a in ("major", "minor", "trivial-truncated")}
    exact = exact_weighted_sum(params, X, cp.eta, table)
    count = count_solutions(params, X, cp.eta, table)
    j1 = major_arc_J1(params, cp)
    best = best_miss(params, X, table, 1)
    total = full.value.real
    gap = abs(total - exact) / exact if exact else math.inf
    return {
        "params": {"lambda": list(params.lambdas), "k": params.k, "varpi": params.varpi,
                   "delta": params.delta, "eps": params.eps, "q": cfg.q, "X": X},
        "circle": {"P": cp.P, "eta": cp.eta, "R": cp.R, "Q": cp.Q, "major_cut": cp.arcs.cut,
                   "eta_log6": cp.eta_log6, "T": T},
        "integral": full.as_dict(),
        "exact_weighted_sum": exact,
        "count": count,
        "identity_gap": gap,
        "j1": {"volume": j1.volume, "major_arc_value": j1.value.real,
               "normalised": j1.normalised, "tail_bound": j1.tail_bound},
        "shares": {a: (r.value.real / total if total else math.nan) for a, r in arcs.items()},
        "arc_values": {a: r.as_dict() for a, r in arcs.items()},
        "best_miss": best[0].miss if best else math.inf,
        "best_over_eta": best[0].miss / cp.eta if best else math.inf,
    }


def _flatten(d: dict, prefix="") -> list[tuple[str, object]]:
    out = []
    for k in sorted(d):
        v = d[k]
        name = f"{prefix}{k}"
        if isinstance(v, dict):
            out += _flatten(v, name + ".")
        else:
            out.append((name, v))
    return out


def cmd_report(args, man):
    cfg = _run_config(args)
    rep = build_report(cfg, lambda lim: _table(lim, args), args.T)
    out = args.out or Path("report")
    _write(man, _json_lines(rep), out / "report.json")
    rows = ["quantity,value"]
    for name, v in _flatten(rep):
        if isinstance(v, float):
            v = fmt(v)
        elif isinstance(v, list):
            v = " ".join(fmt(x) for x in v)
        rows.append(f"{name},{v}")
    _write(man, rows, out / "report.csv")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diophlab", description="Circle-method numerical laboratory.")
    p.add_argument("--threads", type=int, default=1, help="worker threads for quadrature and search")
    p.add_argument("--sieve-cache", type=Path, default=None, help="binary prime-table cache file")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", type=Path, default=None)
        return sp

    sp = add("validate", cmd_validate, "check a JSON config against the hypotheses")
    sp.add_argument("--config", required=True)

    sp = add("primes", cmd_primes, "sieve and report pi(x), theta(x)")
    sp.add_argument("--limit", type=int, required=True)
    sp.add_argument("--x", type=_floats, default=None, help="comma-separated query points")

    sp = add("expsum", cmd_expsum, "evaluate S, U or T on an alpha grid")
    sp.add_argument("--kind", choices=["S", "U", "T"], required=True)
    sp.add_argument("--k", type=float, required=True)
    sp.add_argument("--X", type=float, required=True)
    sp.add_argument("--delta", type=float, default=0.1)
    sp.add_argument("--alpha-grid", required=True, help="lo:hi:n or a,b,c")

    sp = add("kernel-check", cmd_kernel, "numerical Fourier transform of the Fejer kernel")
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--t-grid", required=True)
    sp.add_argument("--T", type=float, default=1e3)

    sp = add("convergents", cmd_convergents, "certified continued-fraction convergents")
    sp.add_argument("--ratio", required=True)
    sp.add_argument("--count", type=int, default=20)

    sp = add("arcs", cmd_arcs, "circle-method integral over one arc or all")
    sp.add_argument("--config", required=True)
    sp.add_argument("--arc", choices=["major", "minor", "trivial", "full-truncated", "all"], default="all")
    sp.add_argument("--X", type=float, default=None)
    sp.add_argument("--T", type=float, default=None, help="truncation point of the trivial arc")

    sp = add("selberg", cmd_selberg, "the Selberg integral J_k(X, h)")
    sp.add_argument("--k", type=_floats, required=True)
    sp.add_argument("--X", type=_floats, required=True)
    sp.add_argument("--h", type=_floats, required=True)

    sp = add("search", cmd_search, "enumerate prime triples within eta")
    sp.add_argument("--config", required=True)
    sp.add_argument("--X", type=float, default=None)
    sp.add_argument("--eta", type=float, default=None)
    sp.add_argument("--top", type=int, default=None)
    sp.add_argument("--summary", type=Path, default=None, help="also write the JSON summary here")

    sp = add("scan", cmd_scan, "counts along the convergent scale sequence")
    sp.add_argument("--config", required=True)
    sp.add_argument("--count", type=int, default=6)
    sp.add_argument("--max-table", type=float, default=1e7)

    sp = add("lp", cmd_lp, "solve the exponent linear program")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=float)
    g.add_argument("--k-grid")

    sp = add("report", cmd_report, "end-to-end comparison bundle (JSON + CSV)")
    sp.add_argument("--config", required=True)
    sp.add_argument("--T", type=float, default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_threads(args.threads)
    man = Manifest(args)
    start = time.perf_counter()
    try:
        status = args.func(args, man)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BudgetExceeded, Refused) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (OutOfTableError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(f"elapsed {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
