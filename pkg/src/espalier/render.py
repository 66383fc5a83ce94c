"""
Charged fence diagrams.

One vertical wire per vertex, one horizontal crossbar per band. The first band
is drawn lowest, so handle heights increase upward. The crossbar passes behind
any wire between its ends. In ASCII the charge is written just right of the
crossbar's right wire; in SVG a negative band gets a crook at its right end.
"""

from __future__ import annotations

from fractions import Fraction

from .bandword import EmbeddedBandRep

COL_PITCH = 24
ROW_PITCH = 16
MARGIN = 16


def _label(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def render_ascii(b: EmbeddedBandRep) -> str:
    labels = [_label(v) for v in b.vertices]
    pitch = max(4, max(len(s) for s in labels) + 2)
    n = len(b.vertices)
    width = pitch * (n - 1) + 2
    ranks = b.ranks()
    gutter = len(str(len(b.word))) + 1

    def bare() -> list[str]:
        row = [" "] * width
        for k in range(n):
            row[k * pitch] = "|"
        return row

    lines = [" " * gutter + "".join(bare()).rstrip()]
    for s in range(len(b.word), 0, -1):
        x = b.word[s - 1]
        a, c = (ranks[x.lo] - 1) * pitch, (ranks[x.hi] - 1) * pitch
        row = bare()
        for i in range(a + 1, c):
            if row[i] == " ":
                row[i] = "-"
        row[c + 1] = "+" if x.sign > 0 else "-"
        lines.append(str(s).rjust(gutter - 1) + " " + "".join(row).rstrip())
    lines.append(" " * gutter + "".join(bare()).rstrip())
    foot = [" "] * (width + pitch)
    for k, s in enumerate(labels):
        for i, ch in enumerate(s):
            foot[k * pitch + i] = ch
    lines.append(" " * gutter + "".join(foot).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(b: EmbeddedBandRep) -> str:
    n, k = len(b.vertices), len(b.word)
    width = COL_PITCH * (n - 1) + 2 * MARGIN + 8
    top = MARGIN
    bottom = MARGIN + ROW_PITCH * (k + 1)
    height = bottom + MARGIN + 12
    ranks = b.ranks()

    def x_of(v: Fraction) -> int:
        return MARGIN + COL_PITCH * (ranks[v] - 1)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g stroke="black" stroke-width="2" fill="none" stroke-linecap="round">',
    ]
    for s, x in enumerate(b.word, 1):
        y = bottom - ROW_PITCH * s
        x0, x1 = x_of(x.lo), x_of(x.hi)
        sign = "+" if x.sign > 0 else "-"
        out.append(f'<line class="band" data-position="{s}" data-sign="{sign}" x1="{x0}" y1="{y}" x2="{x1}" y2="{y}"/>')
        if x.sign < 0:
            out.append(f'<path class="crook" d="M {x1} {y} q 6 0 6 -6"/>')
    for v in b.vertices:
        xv = x_of(v)
        # a white gap under each wire crossing shows the band passing behind
        for s, x in enumerate(b.word, 1):
            if x.lo < v < x.hi:
                y = bottom - ROW_PITCH * s
                out.append(f'<line stroke="white" stroke-width="6" x1="{xv}" y1="{y - 3}" x2="{xv}" y2="{y + 3}"/>')
        out.append(f'<line class="wire" x1="{xv}" y1="{top}" x2="{xv}" y2="{bottom}"/>')
    out.append("</g>")
    out.append('<g font-family="monospace" font-size="10" text-anchor="middle">')
    for v in b.vertices:
        out.append(f'<text x="{x_of(v)}" y="{bottom + 14}">{_label(v)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_fence(b: EmbeddedBandRep, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(b)
    if fmt == "svg":
        return render_svg(b)
    raise ValueError(f"unknown format {fmt!r}")
