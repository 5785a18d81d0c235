"""
Spelled tones, scales, triads and Neo-Riemannian transformations.

A tone is a position on the line of fifths (C=0, G=+1, F=-1, ...), so E-flat
(-3) and D-sharp (+9) stay distinct. Spelling, naming and interval arithmetic
come from pitchtypes spelled pitch classes. Nothing here knows about geometry.
"""

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Tuple

from pitchtypes import Spelled

from .exceptions import ToneParseError, UnsupportedScaleError

LETTERS = "ABCDEFG"
ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII")
FIFTH = Spelled.IntervalClass("P5")

# Unicode accidentals are accepted on input and produced on request
_TO_ASCII = {"♯": "#", "♭": "b"}
_TO_UNICODE = {"#": "♯", "b": "♭"}


@lru_cache(maxsize=None)
def _pitch_class(fifth_index):
    return Spelled.PitchClass.from_fifths(fifth_index)


@dataclass(frozen=True, order=True)
class Tone:
    fifth_index: int

    @classmethod
    def from_pitch_class(cls, pc):
        return cls(pc.fifths())

    @property
    def pitch_class(self):
        return _pitch_class(self.fifth_index)

    @property
    def semitone_class(self):
        return (7 * self.fifth_index) % 12

    def __str__(self):
        return render_tone(self)


def semitone_class(t):
    return t.semitone_class


def parse_tone(text):
    """
    Parse a spelled note name such as "C", "Eb", "F#", "Cbb" or "E♭".

    Args:
        text: note-name string

    Returns:
        Tone

    Raises:
        ToneParseError: naming the offending character position
    """
    if not text:
        raise ToneParseError(text, 0, "empty note name")
    if text[0] not in LETTERS:
        raise ToneParseError(text, 0, f"expected a letter A-G, got {text[0]!r}")

    accidentals = ""
    for position, char in enumerate(text[1:], start=1):
        char = _TO_ASCII.get(char, char)
        if char not in "#b":
            raise ToneParseError(text, position, f"unexpected character {char!r}")
        if accidentals and char != accidentals[0]:
            raise ToneParseError(text, position, "mixed sharps and flats")
        accidentals += char
    return Tone.from_pitch_class(Spelled.PitchClass(text[0] + accidentals))


def render_tone(t, unicode=False):
    """Canonical spelling of a tone: ASCII by default, ♯/♭ on request"""
    name = str(t.pitch_class)
    if not unicode:
        return name
    return name[0] + "".join(_TO_UNICODE[char] for char in name[1:])


def transpose_fifths(t, k):
    return Tone.from_pitch_class(t.pitch_class + k * FIFTH)


class ScaleKind(str, Enum):
    MAJOR = "Major"
    NATURAL_MINOR = "NaturalMinor"
    LYDIAN = "Lydian"
    IONIAN = "Ionian"
    MIXOLYDIAN = "Mixolydian"
    DORIAN = "Dorian"
    AEOLIAN = "Aeolian"
    PHRYGIAN = "Phrygian"
    LOCRIAN = "Locrian"
    ACOUSTIC = "Acoustic"
    ALTERED = "Altered"

    @property
    def is_gregorian(self):
        return self in GREGORIAN_WINDOW


# Lowest line-of-fifths offset of each mode's 7-tone window
GREGORIAN_WINDOW = {
    ScaleKind.LYDIAN: 0,
    ScaleKind.IONIAN: -1,
    ScaleKind.MIXOLYDIAN: -2,
    ScaleKind.DORIAN: -3,
    ScaleKind.AEOLIAN: -4,
    ScaleKind.PHRYGIAN: -5,
    ScaleKind.LOCRIAN: -6,
}

# Degree-ordered offsets in fifths from the root
SCALE_OFFSETS = {
    ScaleKind.MAJOR: (0, 2, 4, -1, 1, 3, 5),
    ScaleKind.NATURAL_MINOR: (0, 2, -3, -1, 1, -4, -2),
    ScaleKind.ACOUSTIC: (0, 2, 4, 6, 1, 3, -2),
    ScaleKind.ALTERED: (0, -5, -3, -8, -6, -4, -2),
}

SCALE_KIND_NAMES = {
    "maj": ScaleKind.MAJOR,
    "min": ScaleKind.NATURAL_MINOR,
    "lydian": ScaleKind.LYDIAN,
    "ionian": ScaleKind.IONIAN,
    "mixolydian": ScaleKind.MIXOLYDIAN,
    "dorian": ScaleKind.DORIAN,
    "aeolian": ScaleKind.AEOLIAN,
    "phrygian": ScaleKind.PHRYGIAN,
    "locrian": ScaleKind.LOCRIAN,
    "acoustic": ScaleKind.ACOUSTIC,
    "altered": ScaleKind.ALTERED,
}


@dataclass(frozen=True)
class Scale:
    root: Tone
    kind: ScaleKind

    def __str__(self):
        return f"{render_tone(self.root)} {self.kind.value}"


def _gregorian_offsets(kind):
    low = GREGORIAN_WINDOW[kind]
    window = range(low, low + 7)
    return tuple(sorted(window, key=lambda k: (7 * k) % 12))


def scale_tones(s):
    """
    Degree-ordered spelled tones of a scale.

    Args:
        s: Scale

    Returns:
        list: 7 Tones, degree 1 first
    """
    if s.kind.is_gregorian:
        offsets = _gregorian_offsets(s.kind)
    else:
        offsets = SCALE_OFFSETS[s.kind]
    return [transpose_fifths(s.root, k) for k in offsets]


def tone_set(s):
    return frozenset(scale_tones(s))


def relative_minor(s):
    """Natural minor scale sharing the tone set of a major scale"""
    if s.kind not in (ScaleKind.MAJOR, ScaleKind.IONIAN):
        raise UnsupportedScaleError(f"{s} has no relative minor")
    return Scale(transpose_fifths(s.root, 3), ScaleKind.NATURAL_MINOR)


def mode_parent_major(kind, root):
    """The major scale whose rotation is the Gregorian mode on root"""
    if not kind.is_gregorian:
        raise UnsupportedScaleError(f"{kind.value} is not a Gregorian mode")
    return Scale(transpose_fifths(root, GREGORIAN_WINDOW[kind] + 1), ScaleKind.MAJOR)


class ChordQuality(str, Enum):
    MAJOR = "Major"
    MINOR = "Minor"
    DIMINISHED = "Diminished"


@dataclass(frozen=True)
class DiatonicTriad:
    degree: int
    tones: Tuple[Tone, Tone, Tone]
    quality: ChordQuality

    @property
    def roman(self):
        return ROMAN[self.degree - 1]


_QUALITY_BY_INTERVALS = {
    (4, 7): ChordQuality.MAJOR,
    (3, 7): ChordQuality.MINOR,
    (3, 6): ChordQuality.DIMINISHED,
}


def diatonic_triads(s):
    """
    The seven triads stacked in thirds on each degree of a major or natural minor scale.

    Raises:
        UnsupportedScaleError: for any other scale kind
    """
    if s.kind not in (ScaleKind.MAJOR, ScaleKind.NATURAL_MINOR):
        raise UnsupportedScaleError(f"diatonic triads need a major or natural minor scale, got {s.kind.value}")
    tones = scale_tones(s)
    triads = []
    for k in range(7):
        root, third, fifth = tones[k], tones[(k + 2) % 7], tones[(k + 4) % 7]
        intervals = ((third.semitone_class - root.semitone_class) % 12,
                     (fifth.semitone_class - root.semitone_class) % 12)
        triads.append(DiatonicTriad(k + 1, (root, third, fifth), _QUALITY_BY_INTERVALS[intervals]))
    return triads


class TriadQuality(str, Enum):
    MAJOR = "Major"
    MINOR = "Minor"


@dataclass(frozen=True, order=True)
class Triad:
    root: Tone
    quality: TriadQuality

    @property
    def tones(self):
        return triad_tones(self)

    def __str__(self):
        return f"{render_tone(self.root)} {self.quality.value}"


def triad_tones(t):
    """(root, third, fifth), spelled"""
    third = 4 if t.quality == TriadQuality.MAJOR else -3
    return (t.root, transpose_fifths(t.root, third), transpose_fifths(t.root, 1))


class PlrOp(str, Enum):
    P = "P"
    L = "L"
    R = "R"


def plr_apply(t, op):
    """
    Standard involutive Neo-Riemannian transformations.

    P keeps the root and flips the quality; R maps a major triad to its
    relative minor (root +3 fifths); L maps a major triad on r to the minor
    triad on r +4 fifths. Each op keeps two spelled tones.
    """
    op = PlrOp(op)
    major = t.quality == TriadQuality.MAJOR
    flipped = TriadQuality.MINOR if major else TriadQuality.MAJOR
    if op == PlrOp.P:
        shift = 0
    elif op == PlrOp.R:
        shift = 3 if major else -3
    else:
        shift = 4 if major else -4
    return Triad(transpose_fifths(t.root, shift), flipped)


def plr_word(t, word):
    """Trajectory of a triad under a word of P/L/R ops, start included"""
    trajectory = [t]
    for op in word:
        trajectory.append(plr_apply(trajectory[-1], op))
    return trajectory


def common_tones(a, b):
    return set(triad_tones(a)) & set(triad_tones(b))


def scales_containing(required, kind, root_domain=range(-7, 8)):
    """
    Scales of one kind whose spelled tone set holds every required tone.

    Args:
        required: iterable of Tones
        kind: ScaleKind
        root_domain: root fifth_index values to try (default: the 15 spelled keys)

    Returns:
        list: Scales ordered by root fifth_index
    """
    required = set(required)
    found = []
    for index in sorted(root_domain):
        scale = Scale(Tone(index), kind)
        if required <= tone_set(scale):
            found.append(scale)
    return found


_SCALE_PATTERN = re.compile(r"^(?P<note>[^-]+)-(?P<kind>.*)$")


def parse_scale(text):
    """Parse "<note>-<kind>", e.g. "C-maj", "F#-dorian" """
    match = _SCALE_PATTERN.match(text or "")
    if not match:
        raise ToneParseError(text, len(text or ""), "expected <note>-<kind>")
    root = parse_tone(match.group("note"))
    kind_name = match.group("kind").lower()
    if kind_name not in SCALE_KIND_NAMES:
        raise ToneParseError(text, match.start("kind"), f"unknown scale kind {match.group('kind')!r}")
    return Scale(root, SCALE_KIND_NAMES[kind_name])


def parse_triad(text):
    """Parse "<note>maj" or "<note>min", e.g. "Cmaj", "Ebmin" """
    text = text or ""
    for suffix, quality in (("maj", TriadQuality.MAJOR), ("min", TriadQuality.MINOR)):
        if text.endswith(suffix) and len(text) > len(suffix):
            return Triad(parse_tone(text[:-len(suffix)]), quality)
    raise ToneParseError(text, max(len(text) - 3, 0), "expected <note>maj or <note>min")


def parse_word(text):
    """Parse a PLR word such as "RPL" (the empty word is allowed)"""
    ops = []
    for position, char in enumerate(text or ""):
        if char not in "PLR":
            raise ToneParseError(text, position, f"expected P, L or R, got {char!r}")
        ops.append(PlrOp(char))
    return ops


def all_triads(root_domain=range(-7, 8)) -> List[Triad]:
    return [Triad(Tone(i), q) for i in root_domain for q in TriadQuality]


def format_tones(tones: Iterable[Tone], unicode=False):
    return " ".join(render_tone(t, unicode) for t in tones)
