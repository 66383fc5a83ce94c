"""JSON and text documents for espaliers, bandwords, traces, baskets and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .bandword import (
    Band,
    BandwordError,
    Deflation,
    EmbeddedBandRep,
    Inflation,
    InvariantReport,
    Move,
    MoveTrace,
    Slide,
    SlideVariant,
    Slip,
    Turn,
    Twirl,
    band,
    parse_band,
)
from .core import Espalier, EspalierError, coord, make_edge
from .normalize import BasketPresentation, Classification, Compressible, Disconnected, Fibered


class DocumentError(ValueError):
    pass


def num(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_num(x: Any) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(f"coordinate must be an integer or a 'num/den' string, got {x!r}")
    try:
        return coord(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad coordinate {x!r}") from exc


def _edges(raw: Any) -> list[tuple[Fraction, Fraction]]:
    if not isinstance(raw, list):
        raise DocumentError("edges must be a list of pairs")
    out = []
    for e in raw:
        if not isinstance(e, list) or len(e) != 2:
            raise DocumentError(f"edge must be a pair, got {e!r}")
        out.append((parse_num(e[0]), parse_num(e[1])))
    return out


# --- espaliers ----------------------------------------------------------------

def espalier_to_doc(t: Espalier) -> dict:
    return {"vertices": [num(v) for v in t.vertices], "edges": [[num(a), num(b)] for a, b in t.sorted_edges()]}


def raw_espalier(doc: dict) -> tuple[list[Fraction], list[tuple[Fraction, Fraction]]]:
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise DocumentError("espalier document needs 'vertices' and 'edges'")
    return [parse_num(v) for v in doc["vertices"]], _edges(doc["edges"])


def espalier_from_doc(doc: dict) -> Espalier:
    vs, es = raw_espalier(doc)
    return Espalier(tuple(vs), frozenset(make_edge(*e) for e in es))


# --- bandwords ------------------------------------------------------------------

def band_to_doc(b: Band) -> dict:
    return {"lo": num(b.lo), "hi": num(b.hi), "sign": "+" if b.sign > 0 else "-"}


def band_from_doc(d: Any) -> Band:
    if not isinstance(d, dict) or not {"lo", "hi", "sign"} <= d.keys():
        raise DocumentError(f"band must have lo, hi and sign: {d!r}")
    if d["sign"] not in ("+", "-"):
        raise DocumentError(f"band sign must be '+' or '-': {d!r}")
    return band(parse_num(d["lo"]), parse_num(d["hi"]), d["sign"])


def bandword_to_doc(b: EmbeddedBandRep, t: Optional[Espalier] = None) -> dict:
    doc: dict = {"vertices": [num(v) for v in b.vertices]}
    if t is not None:
        doc["espalier_edges"] = [[num(x), num(y)] for x, y in t.sorted_edges()]
    doc["word"] = [band_to_doc(x) for x in b.word]
    return doc


def bandword_from_doc(doc: dict) -> tuple[EmbeddedBandRep, Optional[list[tuple[Fraction, Fraction]]]]:
    """The word and the raw espalier edges, if the document names any."""
    if not isinstance(doc, dict) or "vertices" not in doc or "word" not in doc:
        raise DocumentError("bandword document needs 'vertices' and 'word'")
    if not isinstance(doc["word"], list) or not isinstance(doc["vertices"], list):
        raise DocumentError("'vertices' and 'word' must be lists")
    try:
        b = EmbeddedBandRep(tuple(parse_num(v) for v in doc["vertices"]), tuple(band_from_doc(x) for x in doc["word"]))
    except BandwordError as exc:
        raise DocumentError(str(exc)) from exc
    edges = _edges(doc["espalier_edges"]) if "espalier_edges" in doc else None
    return b, edges


def parse_text(text: str) -> dict:
    """Text short form: a ``V:`` header, an optional ``E: 1-2 2-3`` line, then band tokens."""
    vertices = None
    edges = None
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("V:"):
            vertices = line[2:].split()
        elif line.startswith("E:"):
            edges = [tok.split("-", 1) for tok in line[2:].split()]
        else:
            tokens.extend(line.split())
    if vertices is None:
        raise DocumentError("text bandword needs a 'V:' header")
    try:
        word = [band_to_doc(parse_band(tok)) for tok in tokens]
    except BandwordError as exc:
        raise DocumentError(str(exc)) from exc
    doc: dict = {"vertices": vertices, "word": word}
    if edges is not None:
        doc["espalier_edges"] = edges
    return doc


def load_text_or_json(text: str) -> Any:
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_text(text)


def espalier_for(b: EmbeddedBandRep, edges: Optional[list[tuple[Fraction, Fraction]]]) -> Espalier:
    """The espalier a bandword document refers to; without one, its supports must form an espalier."""
    try:
        if edges is not None:
            return Espalier(b.vertices, frozenset(make_edge(*e) for e in edges))
        return Espalier(b.vertices, frozenset(b.supports()))
    except EspalierError as exc:
        hint = "" if edges is not None else " (no espalier_edges given; the band supports do not form one)"
        raise DocumentError(f"invalid espalier: {exc}{hint}") from exc


# --- moves and traces ---------------------------------------------------------------

def move_to_doc(m: Move) -> dict:
    if isinstance(m, Inflation):
        return {"kind": "inflation", "position": m.position, "new_vertex": num(coord(m.new_vertex)),
                "anchor": num(coord(m.anchor)), "sign": "+" if m.sign > 0 else "-"}
    if isinstance(m, Deflation):
        d: dict = {"kind": "deflation", "position": m.position}
        if m.vertex is not None:
            d["vertex"] = num(coord(m.vertex))
        return d
    if isinstance(m, Slip):
        return {"kind": "slip", "position": m.position}
    if isinstance(m, Slide):
        return {"kind": "slide", "position": m.position, "variant": SlideVariant(m.variant).value}
    if isinstance(m, Twirl):
        return {"kind": "twirl", "new_vertex": num(coord(m.new_vertex))}
    if isinstance(m, Turn):
        return {"kind": "turn"}
    raise TypeError(m)


def move_from_doc(d: Any) -> Move:
    if not isinstance(d, dict) or "kind" not in d:
        raise DocumentError(f"move must be an object with 'kind': {d!r}")
    kind = d["kind"]
    try:
        if kind == "inflation":
            sign = {"+": 1, "-": -1}[d.get("sign", "+")]
            return Inflation(int(d["position"]), parse_num(d["new_vertex"]), parse_num(d["anchor"]), sign)
        if kind == "deflation":
            v = d.get("vertex")
            return Deflation(int(d["position"]), None if v is None else parse_num(v))
        if kind == "slip":
            return Slip(int(d["position"]))
        if kind == "slide":
            return Slide(int(d["position"]), SlideVariant(d["variant"]))
        if kind == "twirl":
            return Twirl(parse_num(d["new_vertex"]))
        if kind == "turn":
            return Turn()
    except (KeyError, ValueError, TypeError) as exc:
        raise DocumentError(f"malformed {kind} move: {d!r}") from exc
    raise DocumentError(f"unknown move kind {kind!r}")


def trace_to_doc(t: MoveTrace, espalier: Optional[Espalier] = None) -> dict:
    return {
        "initial": bandword_to_doc(t.initial, espalier),
        "steps": [{"move": move_to_doc(m), "result": bandword_to_doc(b)} for m, b in t.steps],
    }


def trace_from_doc(doc: Any) -> MoveTrace:
    if isinstance(doc, dict) and "trace" in doc and "initial" not in doc:
        doc = doc["trace"]
    if not isinstance(doc, dict) or "initial" not in doc or not isinstance(doc.get("steps"), list):
        raise DocumentError("trace document needs 'initial' and a 'steps' list")
    initial, _ = bandword_from_doc(doc["initial"])
    steps = []
    for s in doc["steps"]:
        if not isinstance(s, dict) or "move" not in s or "result" not in s:
            raise DocumentError("each trace step needs 'move' and 'result'")
        steps.append((move_from_doc(s["move"]), bandword_from_doc(s["result"])[0]))
    return MoveTrace(initial, tuple(steps))


# --- reports ----------------------------------------------------------------------

def basket_to_doc(b: BasketPresentation) -> dict:
    return {
        "star_vertices": [num(v) for v in b.star_vertices],
        "plumbands": [{"edge_max_vertex": num(p.edge_max_vertex), "twist": p.twist, "arc": list(p.arc)} for p in b.plumbands],
        "euler_characteristic": b.euler_characteristic,
    }


def report_to_doc(r: InvariantReport) -> dict:
    return {
        "euler_characteristic": r.euler_characteristic,
        "edges": [{"edge": [num(s.edge[0]), num(s.edge[1])], "count": s.count,
                   "positive": s.positive, "negative": s.negative} for s in r.edges],
        "strict": r.strict,
        "homogeneous": r.homogeneous,
        "connected": r.connected,
        "components": [[num(v) for v in comp] for comp in r.components],
        "permutation": list(r.permutation),
        "closure_components": r.closure_components,
        "c_statistic": r.c_statistic,
    }


def classification_to_doc(c: Classification, emit_trace: bool = False, espalier: Optional[Espalier] = None) -> dict:
    if isinstance(c, Fibered):
        doc: dict = {"kind": c.kind, "plumbands": len(c.basket.plumbands), "basket": basket_to_doc(c.basket)}
        if emit_trace:
            doc["trace"] = trace_to_doc(c.trace, espalier)
        return doc
    if isinstance(c, Compressible):
        w = c.witness
        return {"kind": c.kind, "witness": {
            "edge": [num(w.edge[0]), num(w.edge[1])],
            "subword": [band_to_doc(x) for x in w.subword],
            "pair": list(w.pair),
            "positions": list(w.positions),
            "sides": w.sides,
        }}
    if isinstance(c, Disconnected):
        return {"kind": c.kind, "partition": [[num(v) for v in comp] for comp in c.partition]}
    raise TypeError(c)


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=False, separators=(",", ":"))
