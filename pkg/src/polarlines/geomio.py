"""Canonical text files for geometries, class maps and reports.

A geometry file is::

    pls <n> <m>
    <ids of line 0>
    ...

with each record sorted ascending and the records sorted lexicographically.
Lines starting with ``#`` (and blank lines) are skipped on read.
"""

import json

from .incidence import PartialLinearSpace

REPORT_KEYS = ("tool", "version", "command", "instance", "suite", "verdict", "checks",
               "extra", "wall_time_s")
VOLATILE_KEYS = ("wall_time_s",)


class GeometryParseError(ValueError):
    def __init__(self, lineno, msg):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def canonical_lines(lines):
    return sorted(tuple(sorted(l)) for l in lines)


def format_pls(n, lines):
    lines = canonical_lines(lines)
    out = [f"pls {n} {len(lines)}"]
    out += [" ".join(map(str, l)) for l in lines]
    return "\n".join(out) + "\n"


def dumps_geometry(obj):
    """Canonical text of anything with ``n`` and ``lines``."""
    return format_pls(obj.n, obj.lines)


def _int(tok, lineno, what):
    if not tok.isdigit():
        raise GeometryParseError(lineno, f"{what} must be a non-negative decimal integer, got {tok!r}")
    return int(tok)


def _content(text):
    for i, raw in enumerate(text.split("\n"), 1):
        s = raw.rstrip("\r").strip()
        if s and not s.startswith("#"):
            yield i, s


def parse_pls(text):
    rows = _content(text)
    try:
        lineno, head = next(rows)
    except StopIteration:
        raise GeometryParseError(1, "empty file, expected header 'pls <n> <m>'") from None
    toks = head.split()
    if len(toks) != 3 or toks[0] != "pls":
        raise GeometryParseError(lineno, f"expected header 'pls <n> <m>', got {head!r}")
    n = _int(toks[1], lineno, "point count")
    m = _int(toks[2], lineno, "line count")
    lines = []
    last = lineno
    for lineno, s in rows:
        last = lineno
        if len(lines) == m:
            raise GeometryParseError(lineno, f"more than the {m} declared line records")
        ids = [_int(t, lineno, "point id") for t in s.split()]
        for p in ids:
            if p >= n:
                raise GeometryParseError(lineno, f"point id {p} out of range [0, {n})")
        if len(set(ids)) != len(ids):
            raise GeometryParseError(lineno, "repeated point id in line record")
        lines.append(tuple(sorted(ids)))
    if len(lines) != m:
        raise GeometryParseError(last, f"declared {m} line records, found {len(lines)}")
    return PartialLinearSpace(n, canonical_lines(lines))


def read_pls(path):
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as e:
        raise GeometryParseError(data[:e.start].count(b"\n") + 1, "non-ASCII byte") from None
    return parse_pls(text)


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_pls(path, obj):
    write_text(path, dumps_geometry(obj))


def format_class_map(class_map):
    k = max(class_map, default=-1) + 1
    out = [f"class_map {len(class_map)} {k}"]
    out += [f"{p} {c}" for p, c in enumerate(class_map)]
    return "\n".join(out) + "\n"


def parse_class_map(text):
    rows = _content(text)
    try:
        lineno, head = next(rows)
    except StopIteration:
        raise GeometryParseError(1, "empty class map") from None
    toks = head.split()
    if len(toks) != 3 or toks[0] != "class_map":
        raise GeometryParseError(lineno, f"expected header 'class_map <n> <k>', got {head!r}")
    n, k = _int(toks[1], lineno, "point count"), _int(toks[2], lineno, "class count")
    cmap = []
    for lineno, s in rows:
        toks = s.split()
        if len(toks) != 2:
            raise GeometryParseError(lineno, "expected '<point> <class>'")
        p, c = _int(toks[0], lineno, "point"), _int(toks[1], lineno, "class")
        if p != len(cmap) or c >= k:
            raise GeometryParseError(lineno, f"bad record {s!r}")
        cmap.append(c)
    if len(cmap) != n:
        raise GeometryParseError(lineno, f"declared {n} points, found {len(cmap)}")
    return cmap


def make_report(command, instance, suite=None, verdict=None, checks=(), extra=None,
                wall_time=None, version=None):
    from . import __version__
    doc = {
        "tool": "polarlines",
        "version": version or __version__,
        "command": command,
        "instance": instance,
        "suite": suite,
        "verdict": verdict,
        "checks": list(checks),
        "extra": extra or {},
        "wall_time_s": None if wall_time is None else round(wall_time, 3),
    }
    return {k: doc[k] for k in REPORT_KEYS}


def dumps_report(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def stable_report(doc):
    """The report with its volatile fields blanked, for comparisons."""
    return {k: (None if k in VOLATILE_KEYS else v) for k, v in doc.items()}
