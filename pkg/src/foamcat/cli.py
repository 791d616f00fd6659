"""Command line interface.

Exit codes: 0 success, 2 input error, 3 resource guard, 4 internal invariant
violation (including failing relation checks).
"""
import csv
import io
import json
import logging
import os
import sys

import click

from .algebra import HomologyTable, StructuralError
from .homology import ResourceError

SCHEMA = 1
EXIT_INPUT, EXIT_RESOURCE, EXIT_INVARIANT = 2, 3, 4

log = logging.getLogger("foamcat")

DEFAULTS = {"n": 2, "ring": "Z", "format": "table", "framed": False, "jobs": 1,
            "beta2": 0, "beta3": 0, "theta3": 0, "theta4": 0, "theta5": 0,
            "max_k": 6, "max_crossings": 12}
INT_KEYS = {"n", "jobs", "beta2", "beta3", "theta3", "theta4", "theta5", "max_k", "max_crossings"}
BOOL_KEYS = {"framed"}


class InputError(Exception):
    pass


def read_config(path):
    """Parse a `key = value` file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError("%s:%d: expected 'key = value'" % (path, lineno))
            k, v = (x.strip() for x in line.split("=", 1))
            k = k.replace("-", "_")
            if k not in DEFAULTS and k != "log":
                raise InputError("%s:%d: unknown key %r" % (path, lineno, k))
            try:
                if k in INT_KEYS:
                    v = int(v)
                elif k in BOOL_KEYS:
                    if v.lower() not in ("true", "false", "yes", "no", "1", "0"):
                        raise ValueError(v)
                    v = v.lower() in ("true", "yes", "1")
            except ValueError:
                raise InputError("%s:%d: bad value %r for %s" % (path, lineno, v, k)) from None
            out[k] = v
    return out


def setup_logging(level=None):
    level = (level or os.environ.get("FOAMCAT_LOG") or "error").lower()
    if level not in ("error", "info", "debug"):
        raise InputError("FOAMCAT_LOG must be error, info or debug")
    logging.basicConfig(level=getattr(logging, level.upper()), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


class Settings:
    def __init__(self, config):
        self.config = config

    def get(self, key, flag=None):
        if flag is not None:
            return flag
        return self.config.get(key, DEFAULTS.get(key))


def load_input(text):
    """A file path (PD JSON or braid text), an example name, or an inline braid."""
    from .skewhowe import parse_input
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    return parse_input(text)


# ---------------------------------------------------------------- formatting

def poly_payload(p):
    return [[e, int(c)] for e, c in sorted(p.items())]


def emit_poly(p, fmt, meta):
    if fmt == "json":
        click.echo(json.dumps(dict({"schema": SCHEMA}, **meta, poly=poly_payload(p))))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "coefficient"])
        for e, c in poly_payload(p):
            w.writerow([e, c])
        click.echo(buf.getvalue(), nl=False)
    else:
        click.echo(str(p))


def emit_table(H, fmt, meta, ring):
    rows = H.to_json()
    if fmt == "json":
        click.echo(json.dumps(dict({"schema": SCHEMA}, **meta, table=rows)))
        return
    cols = ["i", "j", "rank"] + (["torsion"] if ring == "Z" else [])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([r["i"], r["j"], r["rank"]] +
                       ([";".join(str(t) for t in r["torsion"])] if ring == "Z" else []))
        click.echo(buf.getvalue(), nl=False)
        return
    body = []
    for r in rows:
        tors = " ".join("Z/%d" % t for t in r["torsion"])
        body.append([str(r["i"]), str(r["j"]), str(r["rank"])] + ([tors] if ring == "Z" else []))
    widths = [max(len(c), *(len(b[k]) for b in body)) if body else len(c) for k, c in enumerate(cols)]
    click.echo("  ".join(c.rjust(w) for c, w in zip(cols, widths)).rstrip())
    for b in body:
        click.echo("  ".join(x.rjust(w) for x, w in zip(b, widths)).rstrip())


def table_from_json(text):
    """Inverse of the homology JSON output."""
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise InputError("unsupported schema %r" % data.get("schema"))
    return HomologyTable.from_json(data["table"])


# ---------------------------------------------------------------- commands

@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="key = value file; flags override it.")
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default=None)
@click.option("--jobs", type=int, default=None, help="Worker threads for independent matrices.")
@click.pass_context
def main(ctx, config_path, fmt, jobs):
    """sl2/sl3 link invariants and foam relations through ladder webs."""
    config = read_config(config_path) if config_path else {}
    setup_logging(config.get("log"))
    ctx.obj = Settings(config)
    ctx.obj.fmt = ctx.obj.get("format", fmt)
    ctx.obj.jobs = ctx.obj.get("jobs", jobs)


def fmt_option(f):
    import functools

    @click.option("--format", "cmd_fmt", type=click.Choice(["table", "json", "csv"]), default=None)
    @functools.wraps(f)
    def wrapper(*args, cmd_fmt=None, **kw):
        if cmd_fmt is not None:
            click.get_current_context().obj.fmt = cmd_fmt
        return f(*args, **kw)
    return wrapper


def n_option(f):
    return click.option("--n", "n", type=click.Choice(["2", "3"]), default=None,
                        help="sl_n (2 or 3).")(f)


@main.command()
@fmt_option
@click.argument("input_text", metavar="INPUT")
@n_option
@click.option("--framed/--unframed", default=None)
@click.option("--closed/--open", default=True)
@click.pass_obj
def poly(S, input_text, n, framed, closed):
    """Decategorified invariant of a link."""
    from .qrep import link_poly
    n = int(S.get("n", n))
    t = load_input(input_text)
    if not closed:
        raise InputError("poly needs a closed diagram")
    framed = S.get("framed", framed)
    p = link_poly(t, n, framed=framed)
    emit_poly(p, S.fmt, {"command": "poly", "n": n, "framed": framed})


@main.command()
@fmt_option
@click.argument("input_text", metavar="INPUT")
@n_option
@click.option("--ring", type=click.Choice(["Z", "Q"]), default=None)
@click.option("--framed/--unframed", default=None)
@click.option("--simplify/--no-simplify", default=True)
@click.option("--max-crossings", type=int, default=None)
@click.option("--beta2", type=int, default=None)
@click.option("--beta3", type=int, default=None)
@click.pass_obj
def homology(S, input_text, n, ring, framed, simplify, max_crossings, beta2, beta3):
    """Integral or rational link homology table."""
    from .foam2 import FoamParams2
    from .homology import link_homology
    n = int(S.get("n", n))
    ring = S.get("ring", ring)
    framed = S.get("framed", framed)
    params = FoamParams2(S.get("beta2", beta2), S.get("beta3", beta3))
    t = load_input(input_text)
    H = link_homology(t, n, ring=ring, framed=framed, params=params, jobs=S.jobs,
                      simplified=simplify, max_crossings=S.get("max_crossings", max_crossings))
    if ring == "Q":
        H = H.rationalized()
    emit_table(H, S.fmt, {"command": "homology", "n": n, "ring": ring, "framed": framed}, ring)


SHAPES2 = ("sphere", "two-sphere", "theta", "blister", "seam-tube")
SHAPES3 = ("sphere", "theta")


def _dots(text, count):
    try:
        ds = [int(x) for x in text.split(",")] if text else []
    except ValueError:
        raise InputError("--dots takes comma separated integers") from None
    if len(ds) < count:
        ds += [0] * (count - len(ds))
    if len(ds) != count or any(d < 0 for d in ds):
        raise InputError("expected %d nonnegative dot counts" % count)
    return ds


@main.command("eval-foam")
@fmt_option
@click.argument("shape")
@n_option
@click.option("--dots", default="", help="Dot counts, comma separated.")
@click.option("--side", type=click.Choice(["left", "right"]), default="left")
@click.option("--symbolic", is_flag=True, help="Keep the parameters as symbols.")
@click.option("--beta2", type=int, default=None)
@click.option("--beta3", type=int, default=None)
@click.option("--theta3", type=int, default=None)
@click.option("--theta4", type=int, default=None)
@click.option("--theta5", type=int, default=None)
@click.pass_obj
def eval_foam(S, shape, n, dots, side, symbolic, beta2, beta3, theta3, theta4, theta5):
    """Evaluate a closed foam (sphere, theta, ...)."""
    from . import foam2, foam3
    n = int(S.get("n", n))
    if n == 2:
        if shape not in SHAPES2:
            raise InputError("unknown sl2 shape %r; choose from %s" % (shape, ", ".join(SHAPES2)))
        P = (foam2.FoamParams2.symbolic() if symbolic else
             foam2.FoamParams2(S.get("beta2", beta2), S.get("beta3", beta3)))
        if shape == "sphere":
            f = foam2.Sphere(*_dots(dots, 1))
        elif shape == "two-sphere":
            f = foam2.TwoSphere()
        elif shape == "theta":
            f = foam2.Theta(*_dots(dots, 2))
        elif shape == "blister":
            f = foam2.Blister(side, *_dots(dots, 1))
        else:
            f = foam2.SeamTube()
        v = foam2.closed_eval2(f, P)
    else:
        if shape not in SHAPES3:
            raise InputError("unknown sl3 shape %r; choose from %s" % (shape, ", ".join(SHAPES3)))
        P = (foam3.FoamParams3.symbolic() if symbolic else
             foam3.FoamParams3(S.get("theta3", theta3), S.get("theta4", theta4),
                               S.get("theta5", theta5)))
        if shape == "sphere":
            v = foam3.sphere_eval3(*_dots(dots, 1), P)
        else:
            v = foam3.theta_eval3(*_dots(dots, 3), P)
    if S.fmt == "json":
        click.echo(json.dumps({"schema": SCHEMA, "command": "eval-foam", "shape": shape,
                               "n": n, "value": v if isinstance(v, int) else str(v)}))
    else:
        click.echo(str(v))


@main.command("check-relations")
@fmt_option
@click.argument("suite")
@click.option("--n", "n", type=click.Choice(["2", "3"]), default=None)
@click.option("--m", "m", type=int, default=None)
@click.option("--N", "N", type=int, default=None)
@click.option("--inject", type=click.Choice(["sign"]), default=None, hidden=True,
              help="Fault injection for testing the checker.")
@click.pass_obj
def check_relations(S, suite, n, m, N, inject):
    """Run a relation suite (use 'all' for every suite)."""
    from .relations import SUITES, run_suite
    names = sorted(SUITES) if suite == "all" else [suite]
    for name in names:
        if name not in SUITES:
            raise InputError("unknown suite %r; choose from all, %s" % (name, ", ".join(sorted(SUITES))))
    results = [run_suite(name, n=int(n) if n else None, m=m, N=N, inject=inject) for name in names]
    bad = sum(len(r.failures) for r in results)
    if S.fmt == "json":
        click.echo(json.dumps({"schema": SCHEMA, "command": "check-relations", "suites": [
            {"suite": r.name, "checked": r.checked, "failures": [list(map(str, f)) for f in r.failures]}
            for r in results]}))
    else:
        for r in results:
            status = "pass" if not r.failures else "FAIL"
            click.echo("%s: %s (%d checks, %d failures)" % (r.name, status, r.checked, len(r.failures)))
            for f in r.failures[:10]:
                click.echo("  counterexample: %s" % (" ".join(map(str, f)),))
    if bad:
        sys.exit(EXIT_INVARIANT)


@main.command()
@fmt_option
@click.option("--m", "m", type=int, default=2)
@click.option("--k", "k", type=int, required=True)
@click.option("--max-k", type=int, default=None, help="Resource cap on k.")
@click.pass_obj
def projector(S, m, k, max_k):
    """Truncated categorified projector: chain groups and property report."""
    from .homology import projector_truncation
    cap = S.get("max_k", max_k)
    P = projector_truncation(m, k, max_k=cap)
    nxt = projector_truncation(m, k + 1, max_k=k + 1)
    rep = P.report(nxt)
    if S.fmt == "json":
        rep = dict(rep, chain_groups={str(h): [list(x) for x in v] for h, v in rep["chain_groups"].items()})
        click.echo(json.dumps(dict({"schema": SCHEMA, "command": "projector"}, **rep)))
        return
    if S.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "web", "shift"])
        for h, gs in rep["chain_groups"].items():
            for web, s in gs:
                w.writerow([h, web, s])
        click.echo(buf.getvalue(), nl=False)
        return
    for h, gs in rep["chain_groups"].items():
        click.echo("%3d: %s" % (h, " + ".join("%s{%d}" % g for g in gs)))
    click.echo("identity web only in degree 0: %s" % rep["identity_only_in_degree_0"])
    click.echo("stabilizes through degree %d: %s" % (rep["stable_range"], rep["stabilizes"]))
    click.echo("turnback acyclic through degree %s: %s" % (rep["turnback_acyclic_through"],
                                                          rep["turnback_acyclic"]))


@main.command()
@fmt_option
@click.argument("input_text", metavar="INPUT")
@n_option
@click.pass_obj
def compile(S, input_text, n):
    """Show the ladder word a link compiles to."""
    from .skewhowe import compile_tangle
    n = int(S.get("n", n))
    comp = compile_tangle(load_input(input_text), n)
    info = {"schema": SCHEMA, "command": "compile", "n": n, "m": comp.conv.m, "N": comp.conv.N,
            "domain": list(comp.domain), "word": comp.word_string(), "writhe": comp.writhe,
            "crossings": len(comp.crossings()), "components": comp.components,
            "framing": list(comp.framing) if comp.framing is not None else None}
    if S.fmt == "json":
        click.echo(json.dumps(info))
    else:
        for k in ("m", "N", "domain", "writhe", "crossings", "components", "framing", "word"):
            click.echo("%s: %s" % (k, info[k]))


def run(argv=None):
    """Entry point with the documented exit codes."""
    from .skewhowe import ParseError
    try:
        main.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return EXIT_INPUT
    except (InputError, ParseError, json.JSONDecodeError, FileNotFoundError,
            NotImplementedError) as e:
        click.echo("error: %s" % e, err=True)
        return EXIT_INPUT
    except ResourceError as e:
        click.echo("resource limit: %s" % e, err=True)
        return EXIT_RESOURCE
    except StructuralError as e:
        click.echo("invariant violation: %s" % e, err=True)
        return EXIT_INVARIANT
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0
    except ValueError as e:
        click.echo("error: %s" % e, err=True)
        return EXIT_INPUT
    return 0


def entry():
    sys.exit(run())
