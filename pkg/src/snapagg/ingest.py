"""Parsing of delimited contact files into ContactSequence values.

Handles the common proximity-data layouts: SocioPatterns-style space
delimited ``t i j ...`` rows and Copenhagen-style CSV with a header and
sentinel scans (negative device ids).  Files may be gzip-compressed;
this is detected from the magic bytes, not the filename.
"""

from __future__ import annotations

import gzip
import io
import json
import math
import os
import warnings
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

from .model import ContactSequence

_DELIMITERS = {"auto": None, "tab": "\t", "comma": ",", "space": None}


class ParseError(ValueError):
    """Malformed input data (maps to CLI exit code 1)."""


@dataclass(frozen=True)
class ColumnMap:
    """Where to find the timestamp and the two node columns in a row."""

    t_col: int = 0
    u_col: int = 1
    v_col: int = 2
    delimiter: str = "auto"
    comment_prefix: str = "#"
    has_header: bool = False

    def __post_init__(self) -> None:
        cols = (self.t_col, self.u_col, self.v_col)
        if len(set(cols)) != 3 or min(cols) < 0:
            raise ValueError(f"column indices must be distinct and >= 0: {cols}")
        if self.delimiter not in _DELIMITERS:
            raise ValueError(f"unknown delimiter {self.delimiter!r}")


#: Named layouts for the supported public datasets.
PRESETS = {
    # SocioPatterns releases: "t i j Ci Cj", whitespace separated, no header.
    "sociopatterns": ColumnMap(t_col=0, u_col=1, v_col=2, delimiter="space"),
    # Copenhagen Network Study bluetooth file: "timestamp,user_a,user_b,rssi"
    # with a header row; user_b is -1/-2 for scans of non-participants.
    "cns": ColumnMap(t_col=0, u_col=1, v_col=2, delimiter="comma", has_header=True),
    "generic": ColumnMap(),
}


def infer_resolution(timestamps: Sequence[int]) -> int:
    """gcd of consecutive differences of sorted distinct timestamps."""
    distinct = sorted(set(int(t) for t in timestamps))
    if len(distinct) < 2:
        raise ValueError("need at least 2 distinct timestamps to infer dt")
    out = 0
    prev = distinct[0]
    for t in distinct[1:]:
        out = math.gcd(out, t - prev)
        prev = t
    return out


def _open_stream(source) -> IO[bytes]:
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        raw = open(source, "rb")
    else:
        raw = source
    head = raw.read(2)
    if hasattr(raw, "seek"):
        raw.seek(0)
    else:  # non-seekable stream: reattach the consumed bytes
        raw = io.BufferedReader(io.BytesIO(head + raw.read()))
    if head == b"\x1f\x8b":
        return gzip.open(raw, "rb")
    return raw


def _split(line: str, delimiter: Optional[str]) -> list:
    if delimiter is None:
        return line.split()
    return [f.strip() for f in line.split(delimiter)]


def _node_value(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def parse_contacts(
    source: Union[str, IO[bytes]],
    colmap: Union[str, ColumnMap] = "generic",
    dt: Optional[int] = None,
    drop_negative_nodes: bool = True,
) -> ContactSequence:
    """Parse a delimited contact file into a canonical ContactSequence.

    ``colmap`` is a ColumnMap or the name of a preset.  Exact duplicate
    (u, v, t) rows are collapsed, pairs are canonicalized, and node labels
    are mapped to dense 0-based ids in sorted label order (so re-parsing a
    serialized sequence reproduces the same ids).  When ``dt`` is omitted
    it is inferred as the gcd of timestamp gaps, with a warning: inference
    can only underestimate the true resolution.
    """
    if isinstance(colmap, str):
        try:
            colmap = PRESETS[colmap]
        except KeyError:
            raise ValueError(f"unknown preset {colmap!r}") from None
    need = max(colmap.t_col, colmap.u_col, colmap.v_col) + 1
    delim = _DELIMITERS[colmap.delimiter]
    if colmap.delimiter == "auto":
        delim = "auto"  # decided from the first data line

    rows = []
    header_pending = colmap.has_header
    stream = _open_stream(source)
    try:
        for lineno, raw_line in enumerate(io.TextIOWrapper(stream, "utf-8"), 1):
            line = raw_line.strip()
            if not line or line.startswith(colmap.comment_prefix):
                continue
            if delim == "auto":
                delim = "\t" if "\t" in line else "," if "," in line else None
            if header_pending:
                header_pending = False
                fields = _split(line, delim)
                try:  # only a non-numeric timestamp marks a real header row
                    int(fields[colmap.t_col])
                except (ValueError, IndexError):
                    continue
            fields = _split(line, delim)
            if len(fields) < need:
                raise ParseError(
                    f"line {lineno}: expected >= {need} fields, got {len(fields)}"
                )
            try:
                t = int(fields[colmap.t_col])
            except ValueError:
                raise ParseError(
                    f"line {lineno}: bad timestamp {fields[colmap.t_col]!r}"
                ) from None
            a = _node_value(fields[colmap.u_col])
            b = _node_value(fields[colmap.v_col])
            if drop_negative_nodes and (
                (isinstance(a, int) and a < 0) or (isinstance(b, int) and b < 0)
            ):
                continue
            if a == b:
                raise ParseError(f"line {lineno}: self-loop contact on node {a}")
            rows.append((t, a, b))
    finally:
        if stream is not source:
            stream.close()

    if not rows:
        raise ParseError("no contacts found in input")
    return _assemble(rows, dt)


def _assemble(rows: Iterable[tuple], dt: Optional[int]) -> ContactSequence:
    rows = list(rows)
    labels = sorted(
        {a for _, a, _ in rows} | {b for _, _, b in rows},
        key=lambda x: (isinstance(x, str), x),
    )
    index = {lab: i for i, lab in enumerate(labels)}
    triples = [(index[a], index[b], t) for t, a, b in rows]

    timestamps = sorted({t for t, _, _ in rows})
    if dt is None:
        if len(timestamps) < 2:
            raise ParseError("cannot infer dt from a single distinct timestamp")
        dt = infer_resolution(timestamps)
        warnings.warn(
            f"resolution inferred as dt={dt} (gcd of timestamp gaps); "
            "pass dt explicitly if the true grid is coarser",
            stacklevel=3,
        )
    t_min = timestamps[0]
    for t in timestamps:
        if (t - t_min) % dt:
            raise ParseError(f"timestamp {t} not aligned to dt={dt} grid from {t_min}")
    return ContactSequence.from_contacts(triples, dt=dt, labels=tuple(labels))


def write_contacts(seq: ContactSequence, path: Union[str, IO[str]]) -> None:
    """Serialize to the plain-text format this module reads back.

    The body is plain ``t u v`` rows under the original node labels, so
    ``parse_contacts`` accepts the file as-is and rebuilds the same id
    assignment.  Header comments carry dt, the observation span and the
    full label table (nodes without contacts included) so
    ``read_contacts`` reconstructs an equal value.
    """
    toks = [str(lab) for lab in seq.labels]
    if any(len(t.split()) != 1 for t in toks):
        raise ValueError("labels with whitespace cannot be serialized")
    own = isinstance(path, (str, bytes)) or hasattr(path, "__fspath__")
    fh = open(path, "w") if own else path
    try:
        fh.write("# snapagg contacts v1\n")
        fh.write(f"# dt={seq.dt}\n")
        if seq.t_min is not None:
            fh.write(f"# span={seq.t_min} {seq.t_max}\n")
        if seq.labels:
            fh.write(f"# labels={json.dumps(list(seq.labels))}\n")
        for t, u, v in seq.data:
            if toks:
                fh.write(f"{t} {toks[u]} {toks[v]}\n")
            else:
                fh.write(f"{t} {u} {v}\n")
    finally:
        if own:
            fh.close()


def load_contacts(
    path: Union[str, os.PathLike],
    colmap: Union[str, ColumnMap] = "generic",
    dt: Optional[int] = None,
) -> ContactSequence:
    """Open a contact file, native or delimited, choosing the right reader.

    Files starting with the native magic comment keep their embedded
    metadata; anything else goes through parse_contacts with ``colmap``.
    """
    with _open_stream(path) as probe:
        first = probe.readline()
    if first.strip() == b"# snapagg contacts v1":
        return read_contacts(path)
    return parse_contacts(path, colmap, dt=dt)


def read_contacts(source: Union[str, IO[bytes]]) -> ContactSequence:
    """Read back a file produced by write_contacts, including metadata."""
    dt = None
    span = None
    labels = ()
    rows = []
    stream = _open_stream(source)
    try:
        for lineno, raw_line in enumerate(io.TextIOWrapper(stream, "utf-8"), 1):
            line = raw_line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("dt="):
                    dt = int(body[3:])
                elif body.startswith("span="):
                    lo, hi = body[5:].split()
                    span = (int(lo), int(hi))
                elif body.startswith("labels="):
                    labels = tuple(json.loads(body[7:]))
                continue
            fields = line.split()
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: expected 't u v'")
            rows.append((int(fields[0]), _node_value(fields[1]), _node_value(fields[2])))
    finally:
        if stream is not source:
            stream.close()
    if dt is None:
        raise ParseError("missing '# dt=' header")
    t_min, t_max = span if span else (None, None)
    if labels:
        index = {lab: i for i, lab in enumerate(labels)}
        try:
            triples = [(index[a], index[b], t) for t, a, b in rows]
        except KeyError as exc:
            raise ParseError(f"node {exc.args[0]!r} missing from label table") from None
    else:
        triples = [(int(a), int(b), t) for t, a, b in rows]
    return ContactSequence.from_contacts(
        triples, dt=dt, t_min=t_min, t_max=t_max, labels=labels
    )
