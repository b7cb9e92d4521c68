"""Deterministic CSV tables with a provenance header."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from . import __version__

SCHEMA_VERSION = 1

METRICS = ("c_t", "p_od", "p_ou", "se_dl", "se_ul")


def format_value(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"refusing to write non-finite value {v!r}")
        # normalise -0 so repeated runs cannot differ in sign of zero
        return f"{v + 0.0:.6g}"
    return str(v)


@dataclass
class OutputTable:
    columns: list
    rows: list
    provenance: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row has {len(row)} cells, expected {len(self.columns)}")

    def column(self, name):
        k = self.columns.index(name)
        return [row[k] for row in self.rows]

    def to_csv(self):
        buf = io.StringIO()
        buf.write(f"# schema_version={self.schema_version}\n")
        buf.write(f"# fdas_version={__version__}\n")
        for key, value in self.provenance.items():
            buf.write(f"# {key}={value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buf.getvalue()


def read_csv(text):
    """Parse the CSV produced by :meth:`OutputTable.to_csv` back into a table.

    Numeric cells come back as floats and empty cells as ``None``.
    """
    provenance = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            provenance[key] = value
        elif line:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)

    def parse(cell):
        if cell == "":
            return None
        try:
            return float(cell)
        except ValueError:
            return cell

    rows = [[parse(c) for c in r] for r in reader]
    schema = int(provenance.pop("schema_version", SCHEMA_VERSION))
    return OutputTable(columns, rows, provenance, schema)


def config_provenance(config, **extra):
    s = config.strategy
    prov = {
        "m_t": config.m_t,
        "m_r": config.m_r,
        "snr_db": format_value(float(config.snr_db)),
        "eta_db": format_value(float(config.eta_db)),
        "gamma_t_dl_db": format_value(float(config.gamma_t_dl_db)),
        "gamma_t_ul_db": format_value(float(config.gamma_t_ul_db)),
        "samples": config.n_samples,
        "seed": config.seed,
        "strategy": s.label,
        "scale": s.scale,
    }
    if s.is_multi_objective and s.w is not None:
        prov["w"] = format_value(float(s.w))
    if s.label == "MO-EWC":
        prov["p"] = format_value(float(s.p))
    prov.update(extra)
    return prov


def run_table(config, estimate, **extra):
    s = config.strategy
    columns = ["strategy", "w", "p", "n", "outage_count_dl", "outage_count_ul",
               "p_od", "p_ou", "se_dl", "se_ul", "c_d", "c_u", "c_t"]
    w = float(s.w) if s.is_multi_objective else None
    p = float(s.p) if s.label == "MO-EWC" else None
    e = estimate
    row = [s.label, w, p, e.n, e.outage_count_dl, e.outage_count_ul, e.p_od_hat, e.p_ou_hat,
           e.se_dl, e.se_ul, e.c_d, e.c_u, e.c_t]
    return OutputTable(columns, [row], config_provenance(config, **extra))


def sweep_table(x_name, rows, labels, provenance):
    """One row per sweep point with the metrics of every strategy in ``labels``."""
    columns = [x_name]
    for label in labels:
        columns += [f"{label}_{m}" for m in METRICS]
        if label.startswith("MO-"):
            columns.append(f"{label}_w")
    out = []
    for r in rows:
        cells = [float(r.x)]
        for label in labels:
            e = r.estimates[label]
            cells += [e.c_t, e.p_od_hat, e.p_ou_hat, e.se_dl, e.se_ul]
            if label.startswith("MO-"):
                cells.append(float(r.weights[label]))
        out.append(cells)
    return OutputTable(columns, out, provenance)
