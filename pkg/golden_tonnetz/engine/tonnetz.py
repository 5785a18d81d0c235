"""
Finite windows of the golden Tonnetz and the representability queries run on them.

A window is assembled cell by cell. Cell (c, row) holds one placed copy of the
base figure: even rows are upright major figures, odd rows are copies
reflected in the C-G mirror line. Column steps apply the horizontal glue,
row pairs step by the vertical lift that stacks the next pair on the mediant.
"""

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import List, Optional, Tuple

import networkx as nx

from .exceptions import AtlasError, LabelConflictError, NotFoundError, UnsupportedScaleError
from .figure import CHORD_DEGREES, DEGREES, Labeling, check_condition2
from .goldenfield import CycPoint, Isometry, ShapeClass, classify_triangle
from .tones import (
    PlrOp, Scale, ScaleKind, Tone, Triad, TriadQuality, common_tones, mode_parent_major,
    plr_apply, render_tone, scale_tones, tone_set, transpose_fifths, triad_tones,
)
from .utils import logger

WINDOW_FORMAT = "golden-tonnetz-window"
WINDOW_VERSION = 1


class HorizontalMode(str, Enum):
    FIFTH_SHIFT = "FifthShift"
    SELF_REPEAT = "SelfRepeat"


class VerticalMode(str, Enum):
    RELATIVE_MINOR_REFLECT = "RelativeMinorReflect"
    MAJOR_REFLECT = "MajorReflect"


@dataclass(frozen=True)
class LatticeVariant:
    horizontal: HorizontalMode = HorizontalMode.FIFTH_SHIFT
    vertical: VerticalMode = VerticalMode.RELATIVE_MINOR_REFLECT

    @classmethod
    def golden(cls):
        return cls(HorizontalMode.FIFTH_SHIFT, VerticalMode.RELATIVE_MINOR_REFLECT)

    @property
    def is_golden(self):
        return self == LatticeVariant.golden()

    def to_dict(self):
        return {"horizontal": self.horizontal.value, "vertical": self.vertical.value}

    def __str__(self):
        return f"{self.horizontal.value}/{self.vertical.value}"


@dataclass(frozen=True)
class PlacedFigure:
    cell: Tuple[int, int]
    transform: Isometry
    scale: Scale
    labeling: Labeling
    vertex_indices: Tuple[int, ...]
    golden: bool

    @property
    def column(self):
        return self.cell[0]

    @property
    def row(self):
        return self.cell[1]

    @property
    def reflected(self):
        return self.row % 2 == 1

    def vertex_of(self, degree):
        return self.vertex_indices[degree - 1]

    def vertex_of_tone(self, tone):
        return self.vertex_of(self.labeling.degree_of(tone))

    def chord_vertices(self, scale_degree):
        """Window vertices of the triad stacked on a scale degree, root first"""
        tones = scale_tones(self.scale)
        return tuple(self.vertex_of_tone(tones[(scale_degree - 1 + k) % 7]) for k in (0, 2, 4))


@dataclass(frozen=True)
class Occurrence:
    tones: Tuple[Tone, ...]
    vertex_indices: Tuple[int, ...]
    shape: Optional[ShapeClass] = None
    figure_refs: Tuple[Tuple[int, int], ...] = ()
    triad: Optional[Triad] = None

    def vertex_for(self, tone):
        return self.vertex_indices[self.tones.index(tone)]

    def to_dict(self):
        return {
            "triad": str(self.triad) if self.triad else None,
            "tones": [render_tone(t) for t in self.tones],
            "vertices": list(self.vertex_indices),
            "shape": self.shape.value if self.shape else None,
            "figures": [list(cell) for cell in self.figure_refs],
        }


@dataclass
class TonnetzWindow:
    points: List[CycPoint]
    tones: List[Tone]
    edges: List[Tuple[int, int]]
    figures: List[PlacedFigure]
    variant: LatticeVariant
    extent: Tuple[int, int]
    atlas_hash: str = ""

    @property
    def vertices(self):
        return list(zip(self.points, self.tones))

    @cached_property
    def graph(self):
        graph = nx.Graph()
        for index, tone in enumerate(self.tones):
            graph.add_node(index, tone=tone)
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def _vertices_by_tone(self):
        by_tone = defaultdict(list)
        for index, tone in enumerate(self.tones):
            by_tone[tone].append(index)
        return by_tone

    @cached_property
    def _figures_by_cell(self):
        return {fig.cell: fig for fig in self.figures}

    def vertices_with(self, tone):
        return self._vertices_by_tone.get(tone, [])

    def tone_inventory(self):
        return frozenset(self.tones)

    def figure_at(self, column, row):
        try:
            return self._figures_by_cell[(column, row)]
        except KeyError:
            raise NotFoundError(f"cell ({column}, {row})", f"no figure at cell ({column}, {row}) in this window") from None


def window_cells(columns, rows):
    """Cells of a window in row-major order, centered on the base figure"""
    c_lo = -((columns - 1) // 2)
    r_lo = -(rows // 2)
    return [(c, r) for r in range(r_lo, r_lo + rows) for c in range(c_lo, c_lo + columns)]


def _cell_scale(variant, base, column, row):
    """Scale of the figure placed at a cell"""
    lift = (row + 1) // 2
    shift = column if variant.horizontal == HorizontalMode.FIFTH_SHIFT else 0
    if variant.vertical == VerticalMode.RELATIVE_MINOR_REFLECT:
        shift += 7 * lift
        kind = ScaleKind.NATURAL_MINOR if row % 2 else base.kind
    else:
        kind = base.kind
    return Scale(transpose_fifths(base.root, shift), kind)


def _cell_labeling(variant, base_slots, scale, column):
    """Degree labeling; SelfRepeat rolls the arrangement one diatonic fifth per column"""
    steps = 0
    if variant.horizontal == HorizontalMode.SELF_REPEAT:
        steps = (3 * column) % 7
    return Labeling.from_slots(scale, tuple(base_slots[(i + steps) % 7] for i in range(7)))


def build_window(atlas, variant, columns, rows):
    """
    Assemble a window of the lattice.

    Args:
        atlas: FigureAtlas with both glue isometries
        variant: LatticeVariant
        columns: number of figure columns (>= 1)
        rows: number of figure rows (>= 1)

    Returns:
        TonnetzWindow

    Raises:
        AtlasError: atlas lacks glue isometries
        IsometryError: a glue map is not an isometry on the template
        LabelConflictError: two different tones land on one point
    """
    if columns < 1 or rows < 1:
        raise ValueError(f"window extent must be at least 1x1, got {columns}x{rows}")
    if atlas.h_glue is None or atlas.v_glue is None:
        raise AtlasError(f"atlas {atlas.source or atlas.atlas_hash} has no gluing isometries")

    template = atlas.template
    template_points = [template.points[d] for d in DEGREES]
    atlas.h_glue.isometry.check_on(template_points)
    atlas.v_glue.isometry.check_on(template_points)

    step = atlas.h_glue.isometry.offset
    mirror = atlas.v_glue.isometry
    apex = template.points[template.apex_degree]
    lift = apex - mirror.apply(apex)
    base_slots = atlas.canonical_labeling.slots_for(atlas.scale)

    points, tones, index_of = [], [], {}
    edges = set()
    figures = []
    for column, row in window_cells(columns, rows):
        offset = step * column + lift * ((row + 1) // 2)
        if row % 2:
            transform = mirror.shifted(offset)
        else:
            transform = Isometry.translation(offset)
        scale = _cell_scale(variant, atlas.scale, column, row)
        labeling = _cell_labeling(variant, base_slots, scale, column)

        indices = []
        for degree in DEGREES:
            point = transform.apply(template.points[degree])
            tone = labeling.tone_at(degree)
            index = index_of.get(point)
            if index is None:
                index = len(points)
                index_of[point] = index
                points.append(point)
                tones.append(tone)
            elif tones[index] != tone:
                logger.debug(f"Label conflict at cell ({column}, {row}): {point}")
                raise LabelConflictError(point, render_tone(tones[index]), render_tone(tone))
            indices.append(index)

        for a, b in template.edges:
            i, j = indices[a - 1], indices[b - 1]
            edges.add((min(i, j), max(i, j)))

        golden = check_condition2(template, labeling, scale).passed
        figures.append(PlacedFigure((column, row), transform, scale, labeling, tuple(indices), golden))

    window = TonnetzWindow(
        points=points,
        tones=tones,
        edges=sorted(edges),
        figures=figures,
        variant=variant,
        extent=(columns, rows),
        atlas_hash=atlas.atlas_hash,
    )
    logger.info(f"Built {variant} window {columns}x{rows}: {len(points)} vertices, {len(figures)} figures")
    return window


def find_scale_figures(w, s):
    """
    Placed figures representing a major or natural minor scale.

    A figure represents s when it carries exactly the spelled tones of s as
    that kind of scale and its arrangement satisfies both conditions.
    """
    if s.kind not in (ScaleKind.MAJOR, ScaleKind.NATURAL_MINOR):
        raise UnsupportedScaleError(f"figures represent major or natural minor scales, got {s.kind.value}")
    wanted = tone_set(s)
    return [fig for fig in w.figures
            if fig.scale.kind == s.kind and tone_set(fig.scale) == wanted and fig.golden]


def representable_scales(w, root_domain=range(-7, 8)):
    """Majors and natural minors over root_domain represented by some figure of the window"""
    inventory = w.tone_inventory()
    found = set()
    for kind in (ScaleKind.MAJOR, ScaleKind.NATURAL_MINOR):
        for index in root_domain:
            scale = Scale(Tone(index), kind)
            if tone_set(scale) <= inventory and find_scale_figures(w, scale):
                found.add(scale)
    return found


def _triad_of(tones):
    root, third, fifth = tones
    if fifth.fifth_index - root.fifth_index != 1:
        return None
    if third.fifth_index - root.fifth_index == 4:
        return Triad(root, TriadQuality.MAJOR)
    if third.fifth_index - root.fifth_index == -3:
        return Triad(root, TriadQuality.MINOR)
    return None


def _chord_occurrences(w):
    """Every chord-set vertex triple of the window, merged across figures"""
    merged = {}
    for fig in w.figures:
        tones = scale_tones(fig.scale)
        for degree in CHORD_DEGREES:
            chord = tuple(tones[(degree - 1 + k) % 7] for k in (0, 2, 4))
            vertices = fig.chord_vertices(degree)
            key = frozenset(vertices)
            if key in merged:
                refs = merged[key].figure_refs + (fig.cell,)
                merged[key] = Occurrence(chord, vertices, merged[key].shape, refs, merged[key].triad)
                continue
            shape = classify_triangle(*(w.points[i] for i in vertices))
            merged[key] = Occurrence(chord, vertices, shape, (fig.cell,), _triad_of(chord))
    return list(merged.values())


def find_tone_triple_occurrences(w, tones):
    """Chord-set vertex triples labeled with exactly the given three tones"""
    wanted = frozenset(tones)
    found = [occ for occ in _chord_occurrences(w) if frozenset(occ.tones) == wanted]
    return sorted(found, key=_occurrence_key)


def find_triad_occurrences(w, t):
    """
    Occurrences of a triad among the chord sets of the placed figures.

    Returns:
        list: Occurrences ordered by (row, column, vertex indices)
    """
    root, third, fifth = triad_tones(t)
    found = []
    for occ in find_tone_triple_occurrences(w, (root, third, fifth)):
        order = (occ.vertex_for(root), occ.vertex_for(third), occ.vertex_for(fifth))
        found.append(Occurrence((root, third, fifth), order, occ.shape, occ.figure_refs, t))
    return found


def _occurrence_key(occ):
    column, row = occ.figure_refs[0]
    return (row, column, tuple(sorted(occ.vertex_indices)))


def _figure_distance(a, b):
    """Smallest Chebyshev distance between the figures of two occurrences"""
    return min(max(abs(p[0] - q[0]), abs(p[1] - q[1])) for p in a.figure_refs for q in b.figure_refs)


def plr_realize(w, occ, op):
    """
    Realise a P, L or R move from a triad occurrence.

    The target occurrence keeps the vertices of the two common tones; the
    nearest one wins (same figure, then an adjacent figure, then any).

    Raises:
        NotFoundError: the window holds no such neighbour
    """
    if occ.triad is None:
        raise UnsupportedScaleError("PLR moves start from a major or minor triad occurrence")
    target = plr_apply(occ.triad, PlrOp(op))
    kept = common_tones(occ.triad, target)
    candidates = [
        cand for cand in find_triad_occurrences(w, target)
        if all(cand.vertex_for(tone) == occ.vertex_for(tone) for tone in kept)
    ]
    if not candidates:
        raise NotFoundError(target, f"{target} next to {occ.triad} not found in window (enlarge the window)")

    def rank(cand):
        distance = _figure_distance(occ, cand)
        tier = 0 if distance == 0 else 1 if distance == 1 else 2
        return (tier,) + _occurrence_key(cand)

    return min(candidates, key=rank)


@dataclass(frozen=True)
class ModePath:
    scale: Scale
    vertex_indices: Tuple[int, ...]

    def to_dict(self, w):
        return {
            "scale": str(self.scale),
            "vertices": list(self.vertex_indices),
            "tones": [render_tone(w.tones[i]) for i in self.vertex_indices],
        }


def mode_path(w, kind, root):
    """
    An ordered path through the window spelling a Gregorian mode.

    Exhaustive depth-first search over label-matching vertices; the first
    path in vertex-index order is returned.

    Raises:
        UnsupportedScaleError: kind is not a Gregorian mode
        NotFoundError: the window is too small (not a disproof)
    """
    if not kind.is_gregorian:
        raise UnsupportedScaleError(f"{kind.value} is not a Gregorian mode")
    scale = Scale(root, kind)
    tones = scale_tones(scale)
    graph = w.graph

    def extend(path):
        if len(path) == len(tones):
            return path
        wanted = tones[len(path)]
        for index in sorted(graph.neighbors(path[-1])):
            if w.tones[index] == wanted and index not in path:
                found = extend(path + [index])
                if found:
                    return found
        return None

    for start in w.vertices_with(tones[0]):
        found = extend([start])
        if found:
            logger.debug(f"{scale} runs along {found} (parent {mode_parent_major(kind, root)})")
            return ModePath(scale, tuple(found))
    raise NotFoundError(scale)


@dataclass(frozen=True)
class ToneConnectivity:
    connected: bool
    vertex_indices: Tuple[int, ...] = ()
    edges: Tuple[Tuple[int, int], ...] = ()
    missing: Tuple[Tone, ...] = ()

    def to_dict(self, w):
        return {
            "connected": self.connected,
            "vertices": [{"index": i, "tone": render_tone(w.tones[i])} for i in self.vertex_indices],
            "edges": [list(e) for e in self.edges],
            "missing": [render_tone(t) for t in self.missing],
        }


def tones_connected(w, tones):
    """
    Whether one vertex per tone can be chosen so the choice induces a connected subgraph.

    Connected sets are grown from the rarest tone by adding neighbours whose
    tone is not yet covered; visited sets are memoised.
    """
    required = sorted(set(tones))
    missing = tuple(t for t in required if not w.vertices_with(t))
    if missing:
        return ToneConnectivity(False, missing=missing)

    graph = w.graph
    wanted = set(required)
    seen = set()

    def grow(chosen):
        if chosen in seen:
            return None
        seen.add(chosen)
        covered = {w.tones[i] for i in chosen}
        if covered == wanted:
            return chosen
        frontier = sorted({n for i in chosen for n in graph.neighbors(i)
                           if w.tones[n] in wanted and w.tones[n] not in covered})
        for n in frontier:
            found = grow(chosen | {n})
            if found:
                return found
        return None

    rarest = min(required, key=lambda t: (len(w.vertices_with(t)), t))
    for start in w.vertices_with(rarest):
        found = grow(frozenset([start]))
        if found:
            chosen = tuple(sorted(found))
            induced = tuple(sorted(graph.subgraph(chosen).edges()))
            induced = tuple((min(a, b), max(a, b)) for a, b in induced)
            return ToneConnectivity(True, chosen, tuple(sorted(induced)))
    return ToneConnectivity(False)


def occurrence_counts(w):
    """
    Triad -> Counter of the shape classes of its chord-set occurrences.

    Only major and minor triads are counted.
    """
    counts = defaultdict(Counter)
    for occ in _chord_occurrences(w):
        if occ.triad is not None:
            counts[occ.triad][occ.shape] += 1
    return dict(sorted(counts.items()))


def window_to_dict(w):
    """Stable export of a window (cells row-major, then degree order)"""
    return {
        "format": WINDOW_FORMAT,
        "version": WINDOW_VERSION,
        "atlas_hash": w.atlas_hash,
        "variant": w.variant.to_dict(),
        "extent": list(w.extent),
        "vertices": [{"point": p.to_list(), "tone": render_tone(t)} for p, t in zip(w.points, w.tones)],
        "edges": [list(e) for e in w.edges],
        "figures": [
            {
                "cell": list(fig.cell),
                "scale": str(fig.scale),
                "transform": fig.transform.to_dict(),
                "labeling": fig.labeling.to_dict(),
                "vertices": list(fig.vertex_indices),
                "golden": fig.golden,
            }
            for fig in w.figures
        ],
    }


def dump_window(w):
    return json.dumps(window_to_dict(w), indent=2) + "\n"

