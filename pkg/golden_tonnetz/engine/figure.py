"""
The 7-point base figure: templates, labelings, the two conditions, labeling
enumeration and the gluing data of the atlas file.
"""

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from .exceptions import AtlasError, IsometryError, LabelingError, UnsupportedScaleError
from .goldenfield import CycPoint, Isometry, ShapeClass, classify_triangle, gs_sign, sq_distance
from .tones import (
    ROMAN, Scale, ScaleKind, Tone, parse_scale, parse_tone, render_tone, scale_tones,
    scales_containing, relative_minor, transpose_fifths,
)
from .utils import logger, content_hash

DEGREES = tuple(range(1, 8))
# Chords that condition (2) requires to be golden: I, III, IV, V, VI
CHORD_DEGREES = (1, 3, 4, 5, 6)
ATLAS_FORMAT = "golden-tonnetz-atlas"
ATLAS_VERSION = 1


class ShapeKind(str, Enum):
    TRIANGLE = "Triangle"
    GNOMON = "Gnomon"


class Direction(str, Enum):
    HORIZONTAL = "Horizontal"
    VERTICAL = "Vertical"


def _edge(a, b):
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class FigureTemplate:
    shape_kind: ShapeKind
    points: Dict[int, CycPoint]
    edges: FrozenSet[Tuple[int, int]]
    apex_degree: int

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(_edge(a, b) for a, b in self.edges))

    def __hash__(self):
        return hash((self.shape_kind, tuple(sorted(self.edges)), tuple(self.points[d] for d in DEGREES)))

    def has_edge(self, a, b):
        return _edge(a, b) in self.edges

    @property
    def graph(self):
        graph = nx.Graph()
        graph.add_nodes_from(DEGREES)
        graph.add_edges_from(sorted(self.edges))
        return graph

    def structure_problems(self):
        """List of violated template invariants (empty when sound)"""
        problems = []
        if sorted(self.points) != list(DEGREES):
            problems.append(f"degrees must be 1..7, got {sorted(self.points)}")
            return problems
        for a, b in itertools.combinations(DEGREES, 2):
            if self.points[a] == self.points[b]:
                problems.append(f"degrees {a} and {b} share the point {self.points[a]}")
        for a, b in sorted(self.edges):
            if a == b or a not in self.points or b not in self.points:
                problems.append(f"bad edge ({a}, {b})")
        if not problems and not nx.is_connected(self.graph):
            problems.append("edge graph is not connected")
        return problems


@dataclass(frozen=True)
class Labeling:
    """A bijection between 7 tones and the template degrees (index d-1 holds degree d)"""

    tones_by_degree: Tuple[Tone, ...]

    def __post_init__(self):
        tones = tuple(self.tones_by_degree)
        if len(tones) != 7 or len(set(tones)) != 7:
            raise LabelingError(f"a labeling needs 7 distinct tones, got {[render_tone(t) for t in tones]}")
        object.__setattr__(self, "tones_by_degree", tones)

    @classmethod
    def from_slots(cls, scale, slots):
        """slots[i] is the template degree carrying the (i+1)-th scale tone"""
        if sorted(slots) != list(DEGREES):
            raise LabelingError(f"slots {slots} are not a permutation of 1..7")
        tones = [None] * 7
        for tone, degree in zip(scale_tones(scale), slots):
            tones[degree - 1] = tone
        return cls(tuple(tones))

    @classmethod
    def from_mapping(cls, mapping):
        """Build from a tone -> degree mapping"""
        if sorted(mapping.values()) != list(DEGREES):
            raise LabelingError(f"labeling is not a bijection onto 1..7: {mapping}")
        tones = [None] * 7
        for tone, degree in mapping.items():
            tones[degree - 1] = tone
        return cls(tuple(tones))

    def tone_at(self, degree):
        return self.tones_by_degree[degree - 1]

    def degree_of(self, tone):
        try:
            return self.tones_by_degree.index(tone) + 1
        except ValueError:
            raise LabelingError(f"{render_tone(tone)} is not labeled") from None

    def slots_for(self, scale):
        """Template degrees of the scale tones in scale-degree order"""
        tones = scale_tones(scale)
        if set(tones) != set(self.tones_by_degree):
            raise LabelingError(f"labeling does not cover the tones of {scale}")
        return tuple(self.degree_of(t) for t in tones)

    def permuted(self, sigma):
        """Labeling carried along a degree permutation sigma (dict degree -> degree)"""
        tones = [None] * 7
        for degree in DEGREES:
            tones[sigma[degree] - 1] = self.tone_at(degree)
        return Labeling(tuple(tones))

    def relabeled(self, tone_map):
        return Labeling(tuple(tone_map.get(t, t) for t in self.tones_by_degree))

    def to_dict(self):
        return {render_tone(t): d for d, t in zip(DEGREES, self.tones_by_degree)}

    def describe(self):
        return " ".join(f"{d}:{render_tone(t)}" for d, t in zip(DEGREES, self.tones_by_degree))


def rotated_labeling(scale, steps):
    """The scale laid along the degree cycle, shifted by `steps` positions"""
    return Labeling.from_slots(scale, tuple(((i + steps) % 7) + 1 for i in range(7)))


@dataclass(frozen=True)
class Condition1Result:
    passed: bool
    witness: Optional[Tuple[Tone, Tone]] = None


@dataclass(frozen=True)
class ConditionReport:
    condition1: Condition1Result
    condition2: Dict[str, ShapeClass]

    @property
    def condition2_passed(self):
        return all(shape.is_golden for shape in self.condition2.values())

    @property
    def passed(self):
        return self.condition1.passed and self.condition2_passed

    def failing_chords(self):
        return {name: shape for name, shape in self.condition2.items() if not shape.is_golden}


def check_condition1(t, lab, s):
    """
    Consecutive scale tones must be joined by template edges (no wrap-around).

    Returns:
        Condition1Result: with the first violating tone pair as witness
    """
    slots = lab.slots_for(s)
    tones = scale_tones(s)
    for i in range(6):
        if not t.has_edge(slots[i], slots[i + 1]):
            return Condition1Result(False, (tones[i], tones[i + 1]))
    return Condition1Result(True)


def chord_points(t, lab, s, degree):
    """Template points of the diatonic triad on a scale degree"""
    slots = lab.slots_for(s)
    return tuple(t.points[slots[(degree - 1 + k) % 7]] for k in (0, 2, 4))


def classify_chords(t, lab, s, degrees=DEGREES):
    """Roman numeral -> ShapeClass for the chords stacked on the given degrees"""
    return {ROMAN[d - 1]: classify_triangle(*chord_points(t, lab, s, d)) for d in degrees}


def check_condition2(t, lab, s):
    """
    Chords I, III, IV, V and VI must be golden triangles or gnomons.

    Raises:
        UnsupportedScaleError: unless s is major or natural minor
    """
    if s.kind not in (ScaleKind.MAJOR, ScaleKind.NATURAL_MINOR):
        raise UnsupportedScaleError(f"condition (2) is defined for major and natural minor scales, got {s.kind.value}")
    return ConditionReport(check_condition1(t, lab, s), classify_chords(t, lab, s, CHORD_DEGREES))


def self_isometries(t):
    """
    Degree permutations induced by isometries of the template that keep its edges.

    Brute force over all 7! permutations; identity first.
    """
    distances = {(a, b): sq_distance(t.points[a], t.points[b]) for a in DEGREES for b in DEGREES if a < b}
    group = []
    for image in itertools.permutations(DEGREES):
        sigma = dict(zip(DEGREES, image))
        if any(not t.has_edge(sigma[a], sigma[b]) for a, b in t.edges):
            continue
        if all(distances[_edge(sigma[a], sigma[b])] == d for (a, b), d in distances.items()):
            group.append(sigma)
    return group


def enumerate_labelings(t, s, quotient_symmetry=True):
    """
    Every labeling of the scale on the template that satisfies condition (1).

    Args:
        t: FigureTemplate
        s: Scale
        quotient_symmetry: keep one labeling per orbit of the template's self-isometries

    Returns:
        list: Labelings in lexicographic order of their slot tuples
    """
    group = self_isometries(t) if quotient_symmetry else [dict(zip(DEGREES, DEGREES))]
    found = []
    for slots in itertools.permutations(DEGREES):
        if not all(t.has_edge(slots[i], slots[i + 1]) for i in range(6)):
            continue
        # orbit representative: the smallest slot tuple among its images
        if any(tuple(sigma[d] for d in slots) < slots for sigma in group):
            continue
        found.append(Labeling.from_slots(s, slots))
    logger.debug(f"{len(found)} condition (1) labelings of {s} on the {t.shape_kind.value} template")
    return found


def filter_golden(t, s, labs):
    """Labelings that also satisfy condition (2), order preserved"""
    return [lab for lab in labs if check_condition2(t, lab, s).condition2_passed]


@dataclass(frozen=True)
class ExtensionCompatibility:
    horizontal: bool
    vertical: bool


def extension_compatibility(t, lab, s):
    """
    Whether a labeled figure can serve the two extensions.

    Horizontal: one translation carries the figure's degrees 3..6 onto its
    degrees 7, 1, 2, 3 (the shared B-C-D-E block of C and G major).
    Vertical: the tonic and dominant lie on a horizontal mirror line with the
    mediant strictly above it, and the mirrored copy lifted onto the mediant
    also lands on the figure's submediant and leading-tone points.
    """
    slots = lab.slots_for(s)

    def pos(degree):
        return t.points[slots[degree - 1]]

    shift = pos(7) - pos(3)
    horizontal = (shift != CycPoint() and pos(1) - pos(4) == shift
                  and pos(2) - pos(5) == shift and pos(3) - pos(6) == shift)

    vertical = False
    if (pos(5) - pos(1)).is_real() and gs_sign((pos(3) - pos(1)).imag_scaled()) > 0:
        mirror = Isometry.reflection(pos(1))
        lift = pos(3) - mirror.apply(pos(3))
        vertical = all(mirror.apply(pos(d)) + lift == pos(d) for d in (6, 7))
    return ExtensionCompatibility(horizontal, vertical)


@dataclass(frozen=True)
class Glue:
    isometry: Isometry
    shared: Tuple[Tone, ...]


@dataclass(frozen=True)
class FigureAtlas:
    template: FigureTemplate
    scale: Scale
    canonical_labeling: Labeling
    h_glue: Optional[Glue] = None
    v_glue: Optional[Glue] = None
    minor_relabel: Dict[Tone, Tone] = field(default_factory=dict)
    symmetry_quotient: bool = True
    atlas_hash: str = ""
    source: str = ""

    @property
    def minor_scale(self):
        return Scale(self.scale.root, ScaleKind.NATURAL_MINOR)

    @property
    def minor_labeling(self):
        return self.canonical_labeling.relabeled(self.minor_relabel)

    @property
    def fifth_scale(self):
        return Scale(transpose_fifths(self.scale.root, 1), self.scale.kind)

    @property
    def fifth_labeling(self):
        return Labeling.from_slots(self.fifth_scale, self.canonical_labeling.slots_for(self.scale))


def _parse_template(data):
    try:
        points = {int(d): CycPoint.from_list(v) for d, v in data["points"].items()}
        return FigureTemplate(
            shape_kind=ShapeKind(data["shape_kind"]),
            points=points,
            edges=frozenset(_edge(int(a), int(b)) for a, b in data["edges"]),
            apex_degree=int(data.get("apex_degree", 3)),
        )
    except (KeyError, ValueError, TypeError) as e:
        raise AtlasError(f"malformed template: {e}") from e


def _parse_glue(data):
    if not data:
        return None
    return Glue(Isometry.from_dict(data), tuple(parse_tone(x) for x in data.get("shared", [])))


def load_atlas(path):
    """
    Load an atlas (or bare template) file.

    Args:
        path: JSON file written in the atlas format

    Returns:
        FigureAtlas: with atlas_hash set to the sha256 prefix of the file bytes

    Raises:
        AtlasError: malformed or unknown format
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
        data = json.loads(raw.decode("utf-8"))
    except (OSError, ValueError) as e:
        raise AtlasError(f"cannot read atlas {path}: {e}") from e

    if data.get("format") != ATLAS_FORMAT or data.get("version") != ATLAS_VERSION:
        raise AtlasError(f"{path} is not a version {ATLAS_VERSION} {ATLAS_FORMAT} file")

    template = _parse_template(data)
    try:
        scale = parse_scale(data.get("scale", "C-maj"))
        labeling = Labeling.from_mapping({parse_tone(k): int(v) for k, v in data["canonical_labeling"].items()})
        atlas = FigureAtlas(
            template=template,
            scale=scale,
            canonical_labeling=labeling,
            h_glue=_parse_glue(data.get("h_glue")),
            v_glue=_parse_glue(data.get("v_glue")),
            minor_relabel={parse_tone(k): parse_tone(v) for k, v in data.get("minor_relabel", {}).items()},
            symmetry_quotient=bool(data.get("symmetry_quotient", True)),
            atlas_hash=content_hash(raw),
            source=str(path),
        )
    except (KeyError, ValueError, TypeError, LabelingError) as e:
        raise AtlasError(f"malformed atlas {path}: {e}") from e

    logger.info(f"Loaded {template.shape_kind.value} atlas {path} ({atlas.atlas_hash})")
    return atlas


def load_template(path):
    return load_atlas(path).template


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class AtlasReport:
    atlas_hash: str
    checks: List[CheckResult] = field(default_factory=list)
    condition_report: Optional[ConditionReport] = None

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, passed, detail=""):
        self.checks.append(CheckResult(name, bool(passed), detail))


def _figure_points(atlas, isometry, labeling):
    return {labeling.tone_at(d): isometry.apply(atlas.template.points[d]) for d in DEGREES}


def _coincidence_conflicts(first, second):
    """Pairs of differently labeled tones sitting on the same point"""
    by_point = {p: tone for tone, p in first.items()}
    return [(by_point[p], tone, p) for tone, p in second.items() if p in by_point and by_point[p] != tone]


def validate_atlas(atlas):
    """
    Check every atlas invariant and report each failed check with the offending quantity.

    Returns:
        AtlasReport
    """
    t = atlas.template
    report = AtlasReport(atlas.atlas_hash)

    problems = t.structure_problems()
    report.add("template_structure", not problems, "; ".join(problems))
    if problems:
        return report

    lab, scale = atlas.canonical_labeling, atlas.scale
    try:
        conditions = check_condition2(t, lab, scale)
    except (LabelingError, UnsupportedScaleError) as e:
        report.add("canonical_labeling", False, str(e))
        return report
    report.condition_report = conditions
    witness = conditions.condition1.witness
    report.add("condition1", conditions.condition1.passed,
               "" if witness is None else f"{render_tone(witness[0])}-{render_tone(witness[1])} not adjacent")
    report.add("condition2", conditions.condition2_passed,
               ", ".join(f"{name}: {shape.value}" for name, shape in conditions.failing_chords().items()))

    points = [t.points[d] for d in DEGREES]
    base = _figure_points(atlas, Isometry.translation(CycPoint()), lab)

    if atlas.h_glue is not None:
        _check_isometry(report, "h_glue_isometry", atlas.h_glue.isometry, points)
        fifth = _figure_points(atlas, atlas.h_glue.isometry, atlas.fifth_labeling)
        _check_shared(report, "h_glue_shared", atlas.h_glue.shared, base, fifth)

    if atlas.v_glue is not None:
        mirror = atlas.v_glue.isometry
        _check_isometry(report, "v_glue_isometry", mirror, points)
        minor_ok = scale_tones(atlas.minor_scale) == [atlas.minor_relabel.get(x, x) for x in scale_tones(scale)]
        report.add("minor_relabel", minor_ok, "" if minor_ok else f"relabel does not give {atlas.minor_scale}")
        minor = _figure_points(atlas, mirror, atlas.minor_labeling)
        _check_shared(report, "v_glue_shared", atlas.v_glue.shared, base, minor)

        on_line = [x for x in atlas.v_glue.shared if not mirror.mirror_contains(base[x])]
        report.add("v_glue_mirror_line", not on_line,
                   ", ".join(f"{render_tone(x)} at {base[x]} off the mirror line" for x in on_line))
        _check_apex(report, atlas, base, minor, mirror)

    return report


def _check_isometry(report, name, isometry, points):
    try:
        isometry.check_on(points)
        report.add(name, True)
    except IsometryError as e:
        report.add(name, False, str(e))


def _check_shared(report, name, shared, base, glued):
    missing = [x for x in shared if x not in base or x not in glued or base[x] != glued[x]]
    conflicts = _coincidence_conflicts(base, glued)
    detail = [f"{render_tone(x)} does not overlap" for x in missing]
    detail += [f"{render_tone(a)}/{render_tone(b)} meet at {p}" for a, b, p in conflicts]
    report.add(name, not detail, "; ".join(detail))


def _check_apex(report, atlas, base, minor, mirror):
    """The mediant tops the major figure and its flattened copy bottoms the minor one"""
    anchor = mirror.mirror or CycPoint()
    height = {tone: (p - anchor).imag_scaled() for tone, p in base.items()}
    depth = {tone: (p - anchor).imag_scaled() for tone, p in minor.items()}
    third = atlas.canonical_labeling.tone_at(atlas.template.apex_degree)
    flat_third = atlas.minor_relabel.get(third, third)

    top_ok = gs_sign(height[third]) > 0 and all(height[third] >= h for h in height.values())
    bottom_ok = gs_sign(depth[flat_third]) < 0 and all(depth[flat_third] <= h for h in depth.values())
    report.add("apex_top", top_ok, "" if top_ok else f"{render_tone(third)} is not the top of the figure")
    report.add("apex_bottom", bottom_ok,
               "" if bottom_ok else f"{render_tone(flat_third)} is not the bottom of the reflected figure")


def gluing_candidates(direction, atlas, root_domain=range(-7, 8)):
    """
    Scales that can be glued to the base figure along a direction.

    Horizontal: majors containing the h_glue shared tones. Vertical: majors
    containing the v_glue shared tones, each paired with its relative minor.

    Returns:
        list: Scales (horizontal) or (major, relative minor) pairs (vertical)
    """
    direction = Direction(direction)
    if direction == Direction.HORIZONTAL:
        shared = atlas.h_glue.shared if atlas.h_glue else ()
        return scales_containing(shared, ScaleKind.MAJOR, root_domain)
    shared = atlas.v_glue.shared if atlas.v_glue else ()
    return [(major, relative_minor(major)) for major in scales_containing(shared, ScaleKind.MAJOR, root_domain)]
