"""Command-line entry point: ``skein-kernel``.

Exit codes: 0 success, 1 a check failed, 2 bad input (usage, inadmissible
colors, omega outside the allowed set, missing or malformed files),
3 degenerate oracle system.
"""

import functools
import json
import sys
from fractions import Fraction

import click

from . import graph_calculus as gc
from . import skein_rep as sr
from .cyclotomic import Cyc
from .fixtures import load_json, omega_from_json, shipped_omega, shipped_preset
from .scalars import ApproxRing, ExactRing, RootData
from .store import SCHEMA, DiskSixjStore, matrix_to_json, scalar_to_json

EXIT_FAIL, EXIT_INPUT, EXIT_DEGENERATE = 1, 2, 3


class RunConfig:
    def __init__(self, N, kprime, mode, tol, cache_dir, use_cache, fmt):
        if N < 3 or N % 2 == 0:
            raise click.BadParameter("N must be odd and at least 3", param_hint="--N")
        if tol <= 0:
            raise click.BadParameter("tolerance must be positive", param_hint="--tol")
        try:
            self.root = RootData(N, kprime)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--kprime") from None
        self.N, self.kprime, self.mode, self.tol = N, kprime, mode, tol
        self.cache_dir, self.use_cache, self.fmt = cache_dir, use_cache, fmt

    def sixj_cache(self, method="closed"):
        store = DiskSixjStore(self.cache_dir) if self.use_cache else None
        return sr.SixjCache(method, store)


def _default(o):
    if isinstance(o, (Cyc, complex)):
        return scalar_to_json(o)
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    return str(o)


def emit(doc):
    doc = {"schema": SCHEMA, **doc}
    click.echo(json.dumps(doc, default=_default, indent=1))


def fail(code, message):
    click.echo(json.dumps({"schema": SCHEMA, "error": message}), err=True)
    sys.exit(code)


def guarded(fn):
    """Map library exceptions to the documented exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except gc.DegenerateSystem as exc:
            fail(EXIT_DEGENERATE, f"degenerate system: {exc}")
        except (gc.Inadmissible, sr.OmegaError, sr.FixtureError, KeyError) as exc:
            fail(EXIT_INPUT, f"{type(exc).__name__}: {exc}")
    return wrapper


def parse_color(text, mode):
    try:
        return Fraction(text)
    except ValueError:
        pass
    if mode == "approx":
        try:
            return complex(text.replace(" ", ""))
        except ValueError:
            pass
    raise click.BadParameter(f"not a color: {text!r} (use p/q, or a complex number in approx mode)")


def parse_eps(text):
    if text in ("1", "+1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise click.BadParameter(f"epsilon must be +1 or -1, got {text!r}")


def ring_for(cfg, colors):
    if cfg.mode == "approx":
        return ApproxRing(cfg.root, cfg.tol)
    if any(isinstance(c, complex) for c in colors):
        raise click.BadParameter("exact mode needs rational colors")
    return ExactRing.for_colors(cfg.root, colors)


@click.group()
@click.option("--N", "N", type=int, default=3, show_default=True, help="Odd order of A.")
@click.option("--kprime", type=int, default=1, show_default=True, help="A = exp(2 i pi kprime/N).")
@click.option("--mode", type=click.Choice(["exact", "approx"]), default="exact", show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True, help="Approx-mode tolerance.")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
              help="6j cache root (default: $SKEIN_KERNEL_CACHE or ~/.cache/skein-kernel).")
@click.option("--no-cache", is_flag=True, help="Do not read or write the 6j cache.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True,
              help="csv applies to matrix dumps only.")
@click.pass_context
def main(ctx, N, kprime, mode, tol, cache_dir, no_cache, fmt):
    """Exact and numeric kernel for skein representations at odd roots of unity."""
    ctx.obj = RunConfig(N, kprime, mode, tol, cache_dir, not no_cache, fmt)


# ------------------------------------------------------------------ sixj

@main.command(context_settings={"ignore_unknown_options": True})
@click.argument("alpha")
@click.argument("beta")
@click.argument("gamma")
@click.argument("eps1")
@click.argument("eps2")
@click.option("--method", type=click.Choice(["oracle", "closed", "symbolic"]), default="closed",
              show_default=True)
@click.option("--cross-validate", is_flag=True, help="Also compute the other routes and compare.")
@click.pass_obj
@guarded
def sixj(cfg, alpha, beta, gamma, eps1, eps2, method, cross_validate):
    """6S(ALPHA, BETA, GAMMA; EPS1, EPS2) for colors in units of k."""
    a, b, g = (parse_color(x, cfg.mode) for x in (alpha, beta, gamma))
    e1, e2 = parse_eps(eps1), parse_eps(eps2)
    ring = ring_for(cfg, [a, b, g])
    gc.support_index(cfg.root, a, b, g)

    def run(m):
        if m == "oracle":
            return gc.sixj_oracle(ring, a, b, g, e1, e2), None
        if m == "closed":
            return gc.sixj_closed(ring, a, b, g, e1, e2), None
        from .symbolic6j import sixj_symbolic
        idx = gc.support_index(cfg.root, a, b, g)
        S = sixj_symbolic(cfg.root, idx, e1, e2, M=ring.M if cfg.mode == "exact" else None)
        point = [ring.apow(x) for x in (a, b, g)]
        if cfg.mode == "approx":
            point = [complex(p) for p in point]
        return S.evaluate(point), S.certificate()

    value, cert = run(method)
    doc = {"command": "sixj", "N": cfg.N, "kprime": cfg.kprime, "mode": cfg.mode,
           "args": [str(a), str(b), str(g), e1, e2], "method": method, "value": value}
    if cert is not None:
        doc["certificate"] = cert
    ok = True
    if cross_validate:
        others = {m: run(m)[0] for m in ("oracle", "closed", "symbolic") if m != method}
        doc["cross"] = others
        ok = all(ring.is_zero(v - value) for v in others.values())
        doc["agree"] = ok
    emit(doc)
    if not ok:
        sys.exit(EXIT_FAIL)


# ------------------------------------------------------------------ surfaces

def load_surface(genus, fixture, omega_file):
    if fixture:
        p = sr.preset_from_json(load_json(fixture))
        if not omega_file:
            raise click.UsageError("--fixture needs --omega")
    else:
        p = shipped_preset(genus) if genus in (2, 3) else sr.preset(genus)
    if omega_file:
        omega = omega_from_json(p, load_json(omega_file))
    elif genus in (2, 3):
        omega = shipped_omega(genus)
    else:
        raise click.UsageError("no shipped omega for this genus; pass --omega")
    return p, omega


def surface_options(fn):
    fn = click.option("--genus", type=int, default=2, show_default=True, help="Built-in graph.")(fn)
    fn = click.option("--fixture", type=click.Path(exists=True, dir_okay=False),
                      help="Graph fixture JSON (overrides --genus).")(fn)
    return fn


def build_curve_ops(cfg, p, omega, curves, convention, cache):
    B = sr.enumerate_basis(p, omega, cfg.N)
    ring = sr.make_ring(cfg.root, B.omega, cfg.mode, cfg.tol)
    out = []
    for cid in curves:
        if cid.startswith("gamma_"):
            e = cid[len("gamma_"):]
            if e not in p.graph.edges:
                raise KeyError(f"no pants curve {cid}")
            out.append(sr.gamma_operator(e, B, ring, convention))
        else:
            out.append(sr.beta_operator(p.curve(cid), B, ring, cache))
    return B, ring, out


def matrix_csv(M):
    """row, col, value rows; exact values are JSON objects in one field."""
    import csv
    import io
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "value"])
    for (i, j), v in sorted(M.items()):
        w.writerow([i, j, json.dumps(scalar_to_json(v))])
    return buf.getvalue().rstrip("\n")


@main.command()
@surface_options
@click.option("--omega", "omega_file", type=click.Path(dir_okay=False),
              help="omega JSON: {\"omega\": {edge: \"p/q\" or [re, im]}}.")
@click.option("--curve", "curves", multiple=True,
              help="Curve id (gamma_<edge> or a beta id); repeatable; default all.")
@click.option("--convention", type=click.Choice(sr.GAMMA_CONVENTIONS), default="plain", show_default=True,
              help="Pants-curve eigenvalue convention.")
@click.option("--dense", is_flag=True, help="Dense matrix dump.")
@click.pass_obj
@guarded
def rep(cfg, genus, fixture, omega_file, curves, convention, dense):
    """Matrices of curve operators on the basis of colorings."""
    p, omega = load_surface(genus, fixture, omega_file)
    curves = list(curves) or p.pants_curves + [b.id for b in p.beta_curves]
    cache = cfg.sixj_cache()
    B, ring, ops = build_curve_ops(cfg, p, omega, curves, convention, cache)
    if cfg.fmt == "csv":
        for op in ops:
            click.echo(f"# {op.curve}")
            click.echo(matrix_csv(op.matrix))
        return
    emit({
        "command": "rep", "N": cfg.N, "kprime": cfg.kprime, "mode": cfg.mode,
        "genus": p.genus, "omega": B.omega, "convention": convention,
        "basis": {"edges": list(p.graph.edge_ids), "labels": [list(l) for l in B.labels],
                  "order": "lexicographic in the lift labels"},
        "operators": [{"curve": op.curve, "matrix": matrix_to_json(op.matrix, dense),
                       "structural_zeros": len(op.zero_entries)} for op in ops],
        "cache": {"hits": cache.hits, "misses": cache.misses, "store_hits": cache.store_hits,
                  "spot_checks": cache.spot_checks},
    })


@main.command()
@surface_options
@click.option("--omega", "omega_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--convention", type=click.Choice(sr.GAMMA_CONVENTIONS), default="plain", show_default=True)
@click.pass_obj
@guarded
def irreducible(cfg, genus, fixture, omega_file, convention):
    """Y-set, generation, shadow and Burnside certificates; exit 0 iff all pass."""
    p, omega = load_surface(genus, fixture, omega_file)
    cache = cfg.sixj_cache()
    curves = p.pants_curves + [b.id for b in p.beta_curves]
    B, ring, ops = build_curve_ops(cfg, p, omega, curves, convention, cache)
    certs = [
        sr.yset(p, B.omega, cfg.N, ring, cache),
        sr.generation_certificate(p, cfg.N),
        sr.shadow_certificate(ops, cfg.tol if cfg.mode == "approx" else None),
        sr.burnside_certificate(ops, tol=cfg.tol if cfg.mode == "approx" else None),
    ]
    ok = all(c.passed for c in certs)
    emit({"command": "irreducible", "N": cfg.N, "genus": p.genus, "mode": cfg.mode,
          "omega": B.omega, "passed": ok,
          "certificates": [{"kind": c.kind, "passed": c.passed, "payload": c.payload} for c in certs],
          "cache": {"hits": cache.hits, "misses": cache.misses}})
    if not ok:
        sys.exit(EXIT_FAIL)


# ------------------------------------------------------------------ verify, genus1

SUITES = {"appendixA": [3], "valuations": [5], "all": list(range(1, 11))}


@main.command()
@click.option("--suite", type=click.Choice(sorted(SUITES)), default="all", show_default=True)
@click.option("--criterion", "criteria", type=click.IntRange(1, 10), multiple=True,
              help="Run only these acceptance criteria (repeatable).")
@click.pass_obj
def verify(cfg, suite, criteria):
    """Run acceptance criteria and report pass/fail per criterion."""
    from .acceptance import run
    results = run(list(criteria) or SUITES[suite])
    for r in results:
        click.echo(r.line(), err=True)
    emit({"command": "verify", "suite": suite,
          "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                        "seconds": round(r.seconds, 2), "detail": r.detail} for r in results],
          "passed": all(r.passed for r in results)})
    if not all(r.passed for r in results):
        sys.exit(EXIT_FAIL)


@main.command()
@click.option("--x", "x_text", default="0", show_default=True,
              help="x = exp(2 i pi X); pass a rational X (or a complex x in approx mode with --literal).")
@click.option("--y", "y_text", default="0", show_default=True, help="y = exp(2 i pi Y).")
@click.option("--literal", is_flag=True, help="Read --x/--y as the complex numbers themselves (approx).")
@click.pass_obj
def genus1(cfg, x_text, y_text, literal):
    """Classify the genus-one representation r_{x,y} composed with the curve embedding."""
    from . import genus_one as g1
    if literal:
        if cfg.mode != "approx":
            raise click.UsageError("--literal needs --mode approx")
        ring = ApproxRing(cfg.root, cfg.tol)
        x, y = complex(x_text), complex(y_text)
    else:
        try:
            rx, ry = Fraction(x_text), Fraction(y_text)
        except ValueError:
            raise click.BadParameter("angles must be rational") from None
        ring = g1.angle_ring(cfg.root, rx, ry) if cfg.mode == "exact" else ApproxRing(cfg.root, cfg.tol)
        x, y = g1.unit(ring, rx), g1.unit(ring, ry)
    try:
        res = g1.classify(ring, x, y)
    except ValueError as exc:
        fail(EXIT_INPUT, str(exc))
    emit({"command": "genus1", "N": cfg.N, "mode": cfg.mode, "x": x, "y": y, **res})


if __name__ == "__main__":
    main()
