"""
Deterministic SVG output for templates and windows, with query overlays.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict

import svgwrite

from .exceptions import HighlightError
from .figure import DEGREES, FigureTemplate
from .tones import render_tone
from .utils import logger


class HighlightKind(str, Enum):
    SCALE_FIGURE = "ScaleFigure"
    TRIAD_OCCURRENCE = "TriadOccurrence"
    MODE_PATH = "ModePath"
    TONE_SUBGRAPH = "ToneSubgraph"
    PLR_MOVE = "PlrMove"


DEFAULT_STYLES = {
    HighlightKind.SCALE_FIGURE: {"stroke": "#c0392b", "fill": "none", "width": 3.0},
    HighlightKind.TRIAD_OCCURRENCE: {"stroke": "#2471a3", "fill": "#aed6f1", "width": 2.0},
    HighlightKind.MODE_PATH: {"stroke": "#e74c3c", "fill": "none", "width": 3.0},
    HighlightKind.TONE_SUBGRAPH: {"stroke": "#1e8449", "fill": "#a9dfbf", "width": 3.0},
    HighlightKind.PLR_MOVE: {"stroke": "#7d3c98", "fill": "#d2b4de", "width": 2.0},
}


@dataclass(frozen=True)
class Highlight:
    """
    An overlay on a rendered window.

    payload by kind: ScaleFigure takes a PlacedFigure, TriadOccurrence an
    Occurrence, ModePath a ModePath, ToneSubgraph a ToneConnectivity and
    PlrMove a (source, target) pair of Occurrences.
    """

    kind: HighlightKind
    payload: Any
    style: Dict[str, Any] = field(default_factory=dict)

    @property
    def resolved_style(self):
        style = dict(DEFAULT_STYLES[HighlightKind(self.kind)])
        style.update(self.style)
        return style


class SvgRenderer:
    """Renders a FigureTemplate or TonnetzWindow with svgwrite."""

    UNIT = 100.0
    RADIUS = 0.09
    FONT_SIZE = 0.14

    def __init__(self, subject, precision=6, unicode=False, labeling=None, atlas_hash=""):
        self.precision = precision
        self.unicode = unicode
        self.atlas_hash = atlas_hash or getattr(subject, "atlas_hash", "")
        if isinstance(subject, FigureTemplate):
            self.points = [subject.points[d] for d in DEGREES]
            self.edges = sorted((a - 1, b - 1) for a, b in subject.edges)
            if labeling is not None:
                self.labels = [render_tone(labeling.tone_at(d), unicode) for d in DEGREES]
            else:
                self.labels = [str(d) for d in DEGREES]
            self.cells = set()
        else:
            self.points = list(subject.points)
            self.edges = list(subject.edges)
            self.labels = [render_tone(t, unicode) for t in subject.tones]
            self.cells = {fig.cell for fig in subject.figures}
        self.coords = [self._coord(p) for p in self.points]
        self._calculate_bounds()

    def _coord(self, point):
        z = point.to_complex()
        # SVG y grows downward
        return (z.real * self.UNIT, -z.imag * self.UNIT)

    def _calculate_bounds(self):
        """viewBox from the bounding box of the vertices, padded 5%"""
        xs = [x for x, _ in self.coords]
        ys = [y for _, y in self.coords]
        width = max(max(xs) - min(xs), self.UNIT)
        height = max(max(ys) - min(ys), self.UNIT)
        pad_x, pad_y = 0.05 * width, 0.05 * height
        self.view = (min(xs) - pad_x, min(ys) - pad_y, width + 2 * pad_x, height + 2 * pad_y)

    def _fmt(self, value):
        text = f"{value:.{self.precision}f}"
        # no "-0.000000"
        return text[1:] if text.startswith("-") and float(text) == 0 else text

    def _xy(self, index):
        x, y = self.coords[index]
        return self._fmt(x), self._fmt(y)

    def _check(self, highlights):
        for h in highlights:
            kind = HighlightKind(h.kind)
            for index in self._referenced_vertices(h):
                if not 0 <= index < len(self.points):
                    raise HighlightError(f"{kind.value} highlight refers to missing vertex {index}")
            if kind == HighlightKind.SCALE_FIGURE and h.payload.cell not in self.cells:
                raise HighlightError(f"ScaleFigure highlight refers to missing cell {h.payload.cell}")

    @staticmethod
    def _referenced_vertices(h):
        kind = HighlightKind(h.kind)
        if kind == HighlightKind.PLR_MOVE:
            source, target = h.payload
            return list(source.vertex_indices) + list(target.vertex_indices)
        return list(h.payload.vertex_indices)

    def render(self, highlights=()):
        """
        Build the SVG document text.

        Raises:
            HighlightError: a highlight references something not in the subject
        """
        highlights = list(highlights)
        self._check(highlights)

        dwg = svgwrite.Drawing(
            size=("100%", "100%"),
            viewBox=" ".join(self._fmt(v) for v in self.view),
            debug=False,
        )
        if self.atlas_hash:
            dwg.attribs["data-atlas-hash"] = self.atlas_hash
        self._draw_edges(dwg)
        self._draw_vertices(dwg)
        for number, h in enumerate(highlights):
            self._draw_highlight(dwg, number, h)
        return dwg.tostring()

    def _draw_edges(self, dwg):
        group = dwg.g(id="edges", stroke="#555555", stroke_width="1.5")
        for i, j in self.edges:
            group.add(dwg.line(self._xy(i), self._xy(j)))
        dwg.add(group)

    def _draw_vertices(self, dwg):
        radius = self._fmt(self.RADIUS * self.UNIT)
        font_size = self._fmt(self.FONT_SIZE * self.UNIT)
        group = dwg.g(id="vertices")
        for index, label in enumerate(self.labels):
            x, y = self._xy(index)
            group.add(dwg.circle((x, y), radius, fill="white", stroke="black", stroke_width="1"))
            group.add(dwg.text(label, insert=(x, y), font_size=font_size, text_anchor="middle",
                               dominant_baseline="central", font_family="sans-serif"))
        dwg.add(group)

    def _polygon(self, dwg, indices, style, opacity="0.35"):
        return dwg.polygon([self._xy(i) for i in indices], stroke=style["stroke"], fill=style["fill"],
                           fill_opacity=opacity, stroke_width=self._fmt(style["width"]))

    def _draw_highlight(self, dwg, number, h):
        kind = HighlightKind(h.kind)
        style = h.resolved_style
        group = dwg.g(id=f"highlight-{number}", **{"class": kind.value})

        if kind == HighlightKind.SCALE_FIGURE:
            members = set(h.payload.vertex_indices)
            for i, j in self.edges:
                if i in members and j in members:
                    group.add(dwg.line(self._xy(i), self._xy(j), stroke=style["stroke"],
                                       stroke_width=self._fmt(style["width"])))
        elif kind == HighlightKind.TRIAD_OCCURRENCE:
            group.add(self._polygon(dwg, h.payload.vertex_indices, style))
        elif kind == HighlightKind.MODE_PATH:
            path = h.payload.vertex_indices
            for i, j in zip(path, path[1:]):
                group.add(dwg.line(self._xy(i), self._xy(j), stroke=style["stroke"],
                                   stroke_width=self._fmt(style["width"])))
        elif kind == HighlightKind.TONE_SUBGRAPH:
            for i, j in h.payload.edges:
                group.add(dwg.line(self._xy(i), self._xy(j), stroke=style["stroke"],
                                   stroke_width=self._fmt(style["width"])))
            for i in h.payload.vertex_indices:
                group.add(dwg.circle(self._xy(i), self._fmt(self.RADIUS * self.UNIT * 1.3),
                                     fill="none", stroke=style["stroke"], stroke_width="2"))
        else:
            source, target = h.payload
            group.add(self._polygon(dwg, source.vertex_indices, style))
            group.add(self._polygon(dwg, target.vertex_indices, style, opacity="0.15"))
            group.add(dwg.line(self._centroid(source.vertex_indices), self._centroid(target.vertex_indices),
                               stroke=style["stroke"], stroke_width=self._fmt(style["width"]),
                               stroke_dasharray="6,3"))
        dwg.add(group)

    def _centroid(self, indices):
        xs = [self.coords[i][0] for i in indices]
        ys = [self.coords[i][1] for i in indices]
        return self._fmt(sum(xs) / len(xs)), self._fmt(sum(ys) / len(ys))


def render_svg(subject, highlights=(), precision=6, unicode=False, labeling=None, atlas_hash=""):
    """
    SVG document text for a template or window.

    Args:
        subject: FigureTemplate or TonnetzWindow
        highlights: Highlight overlays, drawn in order after edges and vertices
        precision: decimal places of emitted coordinates
        unicode: use ♯/♭ in tone labels
        labeling: tone labels for a bare template (degrees are shown otherwise)
        atlas_hash: tag written on the root element (windows carry their own)

    Returns:
        str: SVG text
    """
    highlights = list(highlights)
    text = SvgRenderer(subject, precision, unicode, labeling, atlas_hash).render(highlights)
    logger.debug(f"Rendered SVG with {len(highlights)} highlights ({len(text)} bytes)")
    return text
