"""The bundled golden table of instanton and classical invariants."""

import csv
from dataclasses import dataclass
from importlib import resources
from typing import Optional

TABLES = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class GoldenRow:
    table: str
    poly: str
    j: int
    w: int
    h: int
    charge: int
    m: Optional[int] = None
    delta: Optional[int] = None
    mu: Optional[int] = None
    tau: Optional[int] = None
    line: int = 0

    @property
    def has_classical(self):
        return self.m is not None


def _opt_int(s):
    s = s.strip()
    return int(s) if s else None


def parse_corpus(lines):
    """Parse CSV lines ('#' comments allowed) into checked :class:`GoldenRow` s."""
    numbered = [(n, ln) for n, ln in enumerate(lines, 1) if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.DictReader(ln for _, ln in numbered)
    rows = []
    for (lineno, _), rec in zip(numbered[1:], reader):
        try:
            row = GoldenRow(
                table=rec["table"].strip(),
                poly=rec["poly"].strip(),
                j=int(rec["j"]),
                w=int(rec["w"]),
                h=int(rec["h"]),
                charge=int(rec["charge"]),
                m=_opt_int(rec["m"]),
                delta=_opt_int(rec["delta"]),
                mu=_opt_int(rec["mu"]),
                tau=_opt_int(rec["tau"]),
                line=lineno,
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CorpusError(f"line {lineno}: malformed row ({e})") from None
        if row.table not in TABLES:
            raise CorpusError(f"line {lineno}: unknown table {row.table!r}")
        if row.charge != row.w + row.h:
            raise CorpusError(f"line {lineno}: charge {row.charge} != w + h for {row.poly}")
        rows.append(row)
    return rows


def load_corpus(path=None):
    if path is None:
        text = resources.files("instanton").joinpath("data/golden.csv").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    return parse_corpus(text.splitlines())


def table_rows(rows, table):
    return [r for r in rows if r.table == table]
