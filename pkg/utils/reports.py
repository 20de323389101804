"""Self-describing CSV and JSON output.

Every output starts with the tool version, the resolved run configuration
and the unit convention, so a file on its own is enough to reproduce it.
"""
import json
import sys
from contextlib import contextmanager

import numpy as np
import pandas as pd

from models.domain import UNIT_CONVENTION

VERSION = "1.0.0"
SCHEMA = "hyperlandau/1"
FORMATS = ["csv", "json"]
# plumbing that does not change the numbers
UNECHOED_KEYS = ["out", "log_level", "config", "format", "func"]


def _to_builtin(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError("Object of type {} is not JSON serializable".format(type(obj).__name__))


def _clean(value):
    """NaN/inf become null so the JSON stays standard."""
    if isinstance(value, float) and not np.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def resolved_config(config):
    """Configuration echoed into headers: everything but output plumbing."""
    return {k: v for k, v in sorted(config.items()) if k not in UNECHOED_KEYS}


def header_lines(config, extra=None, non_physical=False):
    """Comment lines opening every CSV output."""
    lines = ["# hyperlandau {}".format(VERSION),
             "# config: {}".format(json.dumps(resolved_config(config), sort_keys=True, default=_to_builtin)),
             "# units: {}".format(UNIT_CONVENTION)]
    if non_physical:
        lines.append("# non-physical: lambda is not half-odd (relaxed mode)")
    for key, value in (extra or {}).items():
        lines.append("# {}: {}".format(key, value))
    return lines


@contextmanager
def open_output(out=None):
    """Text stream on `out`, or stdout when it is None or "-"."""
    if out is None or out == "-":
        yield sys.stdout
    else:
        with open(out, "w", newline="") as f:
            yield f


def write_table(rows, columns, config, fmt="csv", out=None, extra=None, non_physical=False):
    """Write `rows` (list of dicts) as a CSV or JSON table with its header."""
    if fmt not in FORMATS:
        raise ValueError("Unknown format: {}".format(fmt))
    table = pd.DataFrame(list(rows), columns=columns)
    with open_output(out) as f:
        if fmt == "csv":
            f.write("\n".join(header_lines(config, extra, non_physical)) + "\n")
            table.to_csv(f, index=False, lineterminator="\n")
        else:
            document = {"schema": SCHEMA,
                        "version": VERSION,
                        "config": resolved_config(config),
                        "units": UNIT_CONVENTION,
                        "non_physical": non_physical,
                        "header": extra or {},
                        "columns": list(columns),
                        "rows": table.to_dict(orient="records")}
            write_json_document(document, f)


def write_report(report, config, out=None):
    """Write a verification report; always JSON."""
    document = dict(report)
    document.update({"schema": SCHEMA, "version": VERSION,
                     "config": resolved_config(config), "units": UNIT_CONVENTION})
    with open_output(out) as f:
        write_json_document(document, f)


def write_json_document(document, f):
    json.dump(_clean(document), f, indent=4, sort_keys=True, default=_to_builtin)
    f.write("\n")
