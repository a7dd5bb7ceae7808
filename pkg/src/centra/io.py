"""Edge-list files, experiment config files and CSV emission.

Edge-list format::

    # comments start with '#'
    src,dst,weight[,directed]
    a,b,1.5
    b,c,2.0,false

Node labels are arbitrary strings, numbered by first appearance. The
optional ``directed`` column defaults to ``true``; ``false`` adds both
directions with the same weight.

Config format: one ``key = value`` per line, ``#`` comments, optional
``[experiment]`` header. Keys: ``sizes``, ``trials``, ``noise`` (``type1`` or
``type2``), ``p``, ``delta``, ``measures``, ``thresholds``, ``top_k``,
``seed``. Lists are comma separated; explicit ``p``/``delta`` override
``noise``.
"""

from __future__ import annotations

import configparser
import csv
import math
from pathlib import Path

import numpy as np

from .centrality import Measure
from .exceptions import (
    DuplicateEdgeError,
    NonPositiveWeightError,
    ParseError,
    SelfLoopError,
)
from .experiments import ExperimentConfig
from .graph import WeightedDigraph, WeightKind
from .perturbation import TYPE1, TYPE2

__all__ = ["parse_edge_list", "write_edge_list", "parse_config", "write_csv", "format_value"]

_TRUE = {"true", "1", "yes", "y", "t"}
_FALSE = {"false", "0", "no", "n", "f"}


def parse_edge_list(path, weight_kind=WeightKind.SIMILARITY, labels=None):
    """Read an edge-list file; returns ``(graph, labels)`` with ``labels[id]`` the node name.

    Passing ``labels`` fixes the id of each known label up front (and keeps
    isolated nodes); unseen labels are appended in order of appearance.
    """
    ids: dict[str, int] = {name: i for i, name in enumerate(labels or [])}
    edges: dict[tuple, float] = {}
    header = None

    def node(name):
        if name not in ids:
            ids[name] = len(ids)
        return ids[name]

    with open(path, newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            row = [c.strip() for c in next(csv.reader([line]))]
            if header is None:
                header = [c.lower() for c in row]
                if header[:3] != ["src", "dst", "weight"] or header[3:] not in ([], ["directed"]):
                    raise ParseError("header must be 'src,dst,weight[,directed]'", lineno)
                continue
            if len(row) != len(header):
                raise ParseError(f"expected {len(header)} fields, got {len(row)}", lineno)
            a, b = row[0], row[1]
            if not a or not b:
                raise ParseError("empty node label", lineno)
            try:
                w = float(row[2])
            except ValueError:
                raise ParseError(f"weight {row[2]!r} is not a number", lineno) from None
            directed = True
            if len(row) == 4:
                flag = row[3].lower()
                if flag not in _TRUE | _FALSE:
                    raise ParseError(f"directed must be true or false, got {row[3]!r}", lineno)
                directed = flag in _TRUE
            if a == b:
                raise SelfLoopError(f"line {lineno}: self-loop on {a!r}")
            if not (w > 0 and math.isfinite(w)):
                raise NonPositiveWeightError(f"line {lineno}: weight {w!r} must be finite and > 0")
            u, v = node(a), node(b)
            for key in [(u, v)] if directed else [(u, v), (v, u)]:
                if key in edges:
                    raise DuplicateEdgeError(f"line {lineno}: duplicate edge {a!r} -> {b!r}")
                edges[key] = w
    if header is None:
        raise ParseError("file has no header line")
    labels = list(ids)
    graph = WeightedDigraph.from_edges(len(labels), [(u, v, w) for (u, v), w in edges.items()], weight_kind)
    return graph, labels


def write_edge_list(g: WeightedDigraph, path, labels=None):
    """Write every directed edge as its own row.

    Isolated nodes are not written; pass the same ``labels`` to
    :func:`parse_edge_list` to restore the exact node numbering.
    """
    labels = labels or [str(i) for i in range(g.n)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["src", "dst", "weight", "directed"])
        for u, v, weight in g.edges():
            w.writerow([labels[u], labels[v], repr(weight), "true"])


def _list(value, cast):
    return tuple(cast(x.strip()) for x in value.split(",") if x.strip())


def parse_config(path) -> ExperimentConfig:
    text = Path(path).read_text()
    if not any(line.strip().startswith("[") for line in text.splitlines()):
        text = "[experiment]\n" + text
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ParseError(str(exc)) from None
    if not parser.has_section("experiment"):
        raise ParseError("missing [experiment] section")
    sec = parser["experiment"]
    known = {"sizes", "trials", "noise", "p", "delta", "measures", "thresholds", "top_k", "seed"}
    unknown = set(sec) - known
    if unknown:
        raise ParseError(f"unknown config keys: {', '.join(sorted(unknown))}")

    kwargs = {}
    try:
        noise = sec.get("noise")
        if noise is not None:
            preset = {"type1": TYPE1, "type2": TYPE2}.get(noise.strip().lower())
            if preset is None:
                raise ParseError(f"noise must be type1 or type2, got {noise!r}")
            kwargs["p"], kwargs["delta"] = preset.p, preset.delta
        if "sizes" in sec:
            kwargs["sizes"] = _list(sec["sizes"], int)
        if "thresholds" in sec:
            kwargs["thresholds"] = _list(sec["thresholds"], int)
        if "measures" in sec:
            kwargs["measures"] = _list(sec["measures"], Measure)
        for key in ("trials", "top_k", "seed"):
            if key in sec:
                kwargs[key] = int(sec[key])
        for key in ("p", "delta"):
            if key in sec:
                kwargs[key] = float(sec[key])
        return ExperimentConfig(**kwargs)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_value(x) -> str:
    """Floats as shortest round-trip repr; infinity as ``inf``."""
    if isinstance(x, np.integer):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return repr(x)
    if hasattr(x, "value"):
        return str(x.value)
    return str(x)


def write_csv(fh_or_path, header, rows):
    """Write rows with ``\\n`` line endings so output bytes are platform independent."""
    if isinstance(fh_or_path, (str, Path)):
        with open(fh_or_path, "w", newline="") as fh:
            return write_csv(fh, header, rows)
    w = csv.writer(fh_or_path, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_value(x) for x in row])
