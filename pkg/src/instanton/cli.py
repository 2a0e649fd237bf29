"""Command-line front end: ``instanton compute | table | verify``."""

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import click

from . import invariants, modgb
from .corpus import TABLES, CorpusError, load_corpus, table_rows
from .invariants import InstantonInputError, InstantonInternalError
from .parse import PolySyntaxError, parse_poly
from .polycore import DEFAULT, STRICT

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class RunConfig:
    mode: str = DEFAULT
    nmax: int = 64
    json: bool = False
    debug: bool = False
    parallel: bool = False

    def __post_init__(self):
        if self.nmax < 4:
            raise ValueError("nmax must be at least 4")
        if self.mode not in (DEFAULT, STRICT):
            raise ValueError(f"unknown truncation mode {self.mode!r}")


def _dim(d):
    return d if modgb.is_finite(d) else "undefined"


def result_dict(src, res):
    out = {"poly": src, "j": res.j, "w": res.w, "h": res.h, "charge": res.charge}
    if res.multiplicity is not None:
        out["multiplicity"] = res.multiplicity
        out["milnor"] = _dim(res.milnor)
        out["tjurina"] = _dim(res.tjurina)
    out["mode"] = res.mode
    return out


def result_lines(res):
    lines = [f"w={res.w} h={res.h} charge={res.charge}"]
    if res.multiplicity is not None:
        lines.append(f"m={res.multiplicity} milnor={_dim(res.milnor)} tjurina={_dim(res.tjurina)}")
    return lines


# -- golden rows ------------------------------------------------------------


@dataclass
class RowReport:
    row: object
    computed: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)
    error: str = ""

    @property
    def ok(self):
        return not self.mismatches and not self.error


def check_row(row, cfg):
    rep = RowReport(row)
    try:
        p = parse_poly(row.poly)
        res = invariants.compute(p, row.j, cfg.mode, classical=row.has_classical, nmax=cfg.nmax, debug=cfg.debug)
    except (PolySyntaxError, InstantonInputError, InstantonInternalError) as e:
        rep.error = f"{type(e).__name__}: {e}"
        return rep
    got = {"w": res.w, "h": res.h, "charge": res.charge}
    want = {"w": row.w, "h": row.h, "charge": row.charge}
    if row.has_classical:
        got.update(m=res.multiplicity, mu=_dim(res.milnor), tau=_dim(res.tjurina))
        want.update(m=row.m, mu=row.mu, tau=row.tau)
    rep.computed = got
    rep.mismatches = [k for k in want if want[k] is not None and got[k] != want[k]]
    return rep


def _check_row_star(args):
    return check_row(*args)


def run_rows(rows, cfg):
    """Check ``rows`` in order; with ``cfg.parallel`` rows are spread over processes."""
    if cfg.parallel and len(rows) > 1:
        with ProcessPoolExecutor() as pool:
            return list(pool.map(_check_row_star, [(r, cfg) for r in rows]))
    return [check_row(r, cfg) for r in rows]


def format_report(rep):
    row = rep.row
    head = f"{row.table:>4} {row.poly:<26} j={row.j}"
    if rep.error:
        return f"{head}  ERROR {rep.error}"
    got = rep.computed
    cells = []
    for key, want in (("w", row.w), ("h", row.h), ("charge", row.charge),
                      ("m", row.m), ("mu", row.mu), ("tau", row.tau)):
        if key in got:
            cells.append(f"{key}={got[key]}/{want}")
    if row.delta is not None:
        cells.append(f"delta={row.delta}")
    status = "ok" if rep.ok else "MISMATCH " + ",".join(rep.mismatches)
    return f"{head}  {' '.join(cells)}  {status}"


def report_json(rep):
    row = rep.row
    out = {"table": row.table, "poly": row.poly, "j": row.j}
    if rep.error:
        out["error"] = rep.error
    else:
        out["computed"] = rep.computed
    out["ok"] = rep.ok
    return out


# -- commands ---------------------------------------------------------------


def common_options(f):
    f = click.option("--parallel", is_flag=True, help="Evaluate table rows in separate processes.")(f)
    f = click.option("--debug-checks", "debug", is_flag=True, help="Run internal consistency checks.")(f)
    f = click.option("--nmax", default=64, show_default=True, type=int, help="Cap for the m-adic stabilisation.")(f)
    f = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")(f)
    f = click.option("--strict-truncation", "strict", is_flag=True, help="Also drop z-exponents >= j from pbar.")(f)
    return f


def _config(strict, nmax, as_json, debug, parallel):
    try:
        return RunConfig(STRICT if strict else DEFAULT, nmax, as_json, debug, parallel)
    except ValueError as e:
        raise click.BadParameter(str(e))


def _fail(msg, code):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Instanton width, height and charge of a plane curve germ."""


@main.command()
@click.argument("poly")
@click.argument("j", type=int)
@click.option("--classical", is_flag=True, help="Also compute multiplicity, Milnor and Tjurina numbers.")
@common_options
def compute(poly, j, classical, strict, as_json, nmax, debug, parallel):
    """Invariants of the bundle with extension class POLY and splitting type J."""
    cfg = _config(strict, nmax, as_json, debug, parallel)
    try:
        p = parse_poly(poly)
        res = invariants.compute(p, j, cfg.mode, classical=classical, nmax=cfg.nmax, debug=cfg.debug)
    except (PolySyntaxError, InstantonInputError) as e:
        _fail(str(e), EXIT_INPUT)
    except InstantonInternalError as e:
        _fail(f"internal: {e}", EXIT_FAIL)
    if cfg.json:
        click.echo(json.dumps(result_dict(poly, res)))
    else:
        for line in result_lines(res):
            click.echo(line)


def _load(path):
    try:
        return load_corpus(path)
    except (OSError, CorpusError) as e:
        _fail(str(e), EXIT_INPUT)


def _emit(reports, cfg, title):
    if cfg.json:
        for rep in reports:
            click.echo(json.dumps(report_json(rep)))
        return
    click.echo(title)
    for rep in reports:
        click.echo(format_report(rep))


def _exit_code(reports, cfg):
    if any(rep.error for rep in reports):
        return EXIT_FAIL
    # strict truncation is a documented comparison, not a regression
    if cfg.mode == STRICT:
        return EXIT_OK
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_FAIL


@main.command()
@click.argument("table_id", metavar="TABLE")
@click.option("--corpus", type=click.Path(dir_okay=False), default=None, help="Alternative golden CSV.")
@common_options
def table(table_id, corpus, strict, as_json, nmax, debug, parallel):
    """Recompute one golden table (I to VIII) and compare."""
    cfg = _config(strict, nmax, as_json, debug, parallel)
    tid = table_id.upper()
    if tid not in TABLES:
        _fail(f"unknown table {table_id!r}; expected one of {', '.join(TABLES)}", EXIT_INPUT)
    rows = table_rows(_load(corpus), tid)
    reports = run_rows(rows, cfg)
    _emit(reports, cfg, f"Table {tid} ({cfg.mode} truncation), computed/expected")
    sys.exit(_exit_code(reports, cfg))


@main.command()
@click.option("--corpus", type=click.Path(dir_okay=False), default=None, help="Alternative golden CSV.")
@common_options
def verify(corpus, strict, as_json, nmax, debug, parallel):
    """Recompute every golden row and summarise."""
    cfg = _config(strict, nmax, as_json, debug, parallel)
    rows = _load(corpus)
    reports = run_rows(rows, cfg)
    _emit(reports, cfg, f"Golden corpus ({cfg.mode} truncation), computed/expected")
    bad = [rep for rep in reports if not rep.ok]
    if not cfg.json:
        label = "changed" if cfg.mode == STRICT else "failed"
        click.echo(f"{len(reports) - len(bad)}/{len(reports)} rows match, {len(bad)} {label}")
        for rep in bad:
            what = rep.error or ",".join(rep.mismatches)
            click.echo(f"  {label}: table {rep.row.table} {rep.row.poly} j={rep.row.j} ({what})")
    sys.exit(_exit_code(reports, cfg))


if __name__ == "__main__":  # pragma: no cover
    main()
