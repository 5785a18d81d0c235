# Copyright (c) 2025, KAINOTOMO PH LTD and Contributors
# See license.txt

import unittest

from pitchtypes import Spelled

from golden_tonnetz.engine.exceptions import ToneParseError, UnsupportedScaleError
from golden_tonnetz.engine.tones import (
    GREGORIAN_WINDOW, ChordQuality, PlrOp, Scale, ScaleKind, Tone, Triad, TriadQuality, all_triads,
    common_tones, diatonic_triads, mode_parent_major, parse_scale, parse_tone, parse_triad, parse_word,
    plr_apply, plr_word, relative_minor, render_tone, scale_tones, scales_containing, semitone_class,
    tone_set, transpose_fifths,
)


def tones(text):
    return [parse_tone(name) for name in text.split()]


C_MAJOR = Scale(Tone(0), ScaleKind.MAJOR)


class TestToneSpelling(unittest.TestCase):
    def test_parse_examples(self):
        self.assertEqual(parse_tone("C"), Tone(0))
        self.assertEqual(parse_tone("Eb"), Tone(-3))
        self.assertEqual(parse_tone("F#"), Tone(6))
        self.assertEqual(parse_tone("Cbb"), Tone(-14))
        self.assertEqual(parse_tone("E♭"), Tone(-3))
        self.assertEqual(parse_tone("F♯"), Tone(6))

    def test_parse_errors_name_the_position(self):
        cases = {"": 0, "H": 0, "c": 0, "C#b": 2, "Cbx": 2, "Cx": 1, "Eb#": 2}
        for text, position in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(ToneParseError) as ctx:
                    parse_tone(text)
                self.assertEqual(ctx.exception.position, position)
                self.assertEqual(ctx.exception.code, "E_PARSE")

    def test_render_examples(self):
        self.assertEqual(render_tone(Tone(0)), "C")
        self.assertEqual(render_tone(Tone(-7)), "Cb")
        self.assertEqual(render_tone(Tone(5)), "B")
        self.assertEqual(render_tone(Tone(13)), "F##")
        self.assertEqual(render_tone(Tone(-3), unicode=True), "E♭")

    def test_round_trip(self):
        for index in range(-20, 21):
            self.assertEqual(parse_tone(render_tone(Tone(index))), Tone(index))

    def test_semitone_homomorphism(self):
        for index in range(-20, 21):
            for k in range(-8, 9):
                t = Tone(index)
                self.assertEqual(semitone_class(transpose_fifths(t, k)), (semitone_class(t) + 7 * k) % 12)
        self.assertEqual(semitone_class(parse_tone("C")), 0)
        self.assertEqual(semitone_class(parse_tone("Eb")), 3)
        self.assertEqual(semitone_class(parse_tone("D#")), 3)

    def test_pitch_class_spelling(self):
        self.assertEqual(parse_tone("Eb").pitch_class, Spelled.PitchClass("Eb"))
        self.assertNotEqual(parse_tone("Eb").pitch_class, parse_tone("D#").pitch_class)
        self.assertEqual(Tone.from_pitch_class(Spelled.PitchClass("D#")), Tone(9))
        self.assertEqual(transpose_fifths(parse_tone("C"), -3).pitch_class,
                         Spelled.PitchClass("C") - 3 * Spelled.IntervalClass("P5"))

    def test_transpose(self):
        self.assertEqual(transpose_fifths(Tone(0), 1), parse_tone("G"))
        self.assertEqual(transpose_fifths(parse_tone("Eb"), 7), parse_tone("E"))
        chain = [transpose_fifths(parse_tone("Eb"), k) for k in range(10)]
        self.assertEqual(chain, tones("Eb Bb F C G D A E B F#"))


class TestScales(unittest.TestCase):
    def test_scale_tones(self):
        expected = {
            ScaleKind.MAJOR: "C D E F G A B",
            ScaleKind.NATURAL_MINOR: "C D Eb F G Ab Bb",
            ScaleKind.LYDIAN: "C D E F# G A B",
            ScaleKind.IONIAN: "C D E F G A B",
            ScaleKind.MIXOLYDIAN: "C D E F G A Bb",
            ScaleKind.DORIAN: "C D Eb F G A Bb",
            ScaleKind.AEOLIAN: "C D Eb F G Ab Bb",
            ScaleKind.PHRYGIAN: "C Db Eb F G Ab Bb",
            ScaleKind.LOCRIAN: "C Db Eb F Gb Ab Bb",
            ScaleKind.ACOUSTIC: "C D E F# G A Bb",
            ScaleKind.ALTERED: "C Db Eb Fb Gb Ab Bb",
        }
        for kind, names in expected.items():
            with self.subTest(kind=kind):
                self.assertEqual(scale_tones(Scale(Tone(0), kind)), tones(names))

    def test_seven_distinct_semitone_classes(self):
        for kind in ScaleKind:
            for index in range(-7, 8):
                degrees = scale_tones(Scale(Tone(index), kind))
                self.assertEqual(len({t.semitone_class for t in degrees}), 7)

    def test_ionian_and_aeolian_alias_major_and_minor(self):
        for index in range(-7, 8):
            root = Tone(index)
            self.assertEqual(tone_set(Scale(root, ScaleKind.IONIAN)), tone_set(Scale(root, ScaleKind.MAJOR)))
            self.assertEqual(tone_set(Scale(root, ScaleKind.AEOLIAN)),
                             tone_set(Scale(root, ScaleKind.NATURAL_MINOR)))

    def test_relative_pairs_share_tone_sets(self):
        for index in range(-10, 11):
            major = Scale(Tone(index), ScaleKind.MAJOR)
            minor = Scale(Tone(index + 3), ScaleKind.NATURAL_MINOR)
            self.assertEqual(relative_minor(major), minor)
            self.assertEqual(tone_set(major), tone_set(minor))

    def test_modes_are_line_of_fifths_windows(self):
        root = Tone(2)
        windows = {frozenset(Tone(2 + k) for k in range(low, low + 7)) for low in range(-6, 1)}
        found = {tone_set(Scale(root, kind)) for kind in GREGORIAN_WINDOW}
        self.assertEqual(found, windows)

    def test_mode_parent_major(self):
        self.assertEqual(mode_parent_major(ScaleKind.LYDIAN, Tone(0)), Scale(Tone(1), ScaleKind.MAJOR))
        self.assertEqual(mode_parent_major(ScaleKind.DORIAN, parse_tone("D")), C_MAJOR)
        for kind in GREGORIAN_WINDOW:
            parent = mode_parent_major(kind, Tone(0))
            self.assertEqual(tone_set(parent), tone_set(Scale(Tone(0), kind)))
        with self.assertRaises(UnsupportedScaleError):
            mode_parent_major(ScaleKind.ACOUSTIC, Tone(0))

    def test_diatonic_triads(self):
        triads = diatonic_triads(C_MAJOR)
        self.assertEqual(triads[0].tones, tuple(tones("C E G")))
        self.assertEqual(triads[0].quality, ChordQuality.MAJOR)
        self.assertEqual(triads[5].tones, tuple(tones("A C E")))
        self.assertEqual(triads[5].quality, ChordQuality.MINOR)
        self.assertEqual(triads[6].tones, tuple(tones("B D F")))
        self.assertEqual(triads[6].quality, ChordQuality.DIMINISHED)
        self.assertEqual(triads[6].roman, "VII")

        minor = diatonic_triads(Scale(Tone(0), ScaleKind.NATURAL_MINOR))
        self.assertEqual([t.quality for t in minor], [
            ChordQuality.MINOR, ChordQuality.DIMINISHED, ChordQuality.MAJOR, ChordQuality.MINOR,
            ChordQuality.MINOR, ChordQuality.MAJOR, ChordQuality.MAJOR,
        ])
        with self.assertRaises(UnsupportedScaleError):
            diatonic_triads(Scale(Tone(0), ScaleKind.DORIAN))

    def test_scales_containing(self):
        self.assertEqual(scales_containing(tones("B C D E"), ScaleKind.MAJOR),
                         [C_MAJOR, Scale(Tone(1), ScaleKind.MAJOR)])
        found = scales_containing(tones("C G"), ScaleKind.MAJOR)
        self.assertEqual([s.root for s in found], tones("Ab Eb Bb F C G"))
        self.assertEqual(len(scales_containing([], ScaleKind.MAJOR)), 15)

    def test_scales_containing_stable_under_wider_domain(self):
        for required in (tones("B C D E"), tones("C G")):
            narrow = {tone_set(s) for s in scales_containing(required, ScaleKind.MAJOR)}
            wide = {tone_set(s) for s in scales_containing(required, ScaleKind.MAJOR, range(-10, 11))}
            self.assertEqual(narrow, wide)


class TestNeoRiemannian(unittest.TestCase):
    C = Triad(Tone(0), TriadQuality.MAJOR)

    def test_examples(self):
        self.assertEqual(plr_apply(self.C, PlrOp.R), Triad(parse_tone("A"), TriadQuality.MINOR))
        self.assertEqual(plr_apply(self.C, PlrOp.P), Triad(Tone(0), TriadQuality.MINOR))
        self.assertEqual(plr_apply(self.C, PlrOp.L), Triad(parse_tone("E"), TriadQuality.MINOR))
        self.assertEqual(plr_apply(Triad(parse_tone("E"), TriadQuality.MINOR), PlrOp.L), self.C)

    def test_tone_level_examples(self):
        self.assertEqual(set(plr_apply(self.C, "R").tones), set(tones("C E A")))
        self.assertEqual(set(plr_apply(self.C, "P").tones), set(tones("C Eb G")))
        self.assertEqual(set(plr_apply(self.C, "L").tones), set(tones("B E G")))

    def test_involutions_keep_two_tones(self):
        for triad in all_triads():
            for op in PlrOp:
                image = plr_apply(triad, op)
                self.assertEqual(plr_apply(image, op), triad)
                self.assertEqual(len(common_tones(triad, image)), 2)
                self.assertNotEqual(image.quality, triad.quality)

    def test_plr_word(self):
        self.assertEqual(plr_word(self.C, parse_word("")), [self.C])
        self.assertEqual(plr_word(self.C, "R"), [self.C, Triad(parse_tone("A"), TriadQuality.MINOR)])
        self.assertEqual(plr_word(self.C, "PP"), [self.C, Triad(Tone(0), TriadQuality.MINOR), self.C])
        trajectory = plr_word(self.C, parse_word("RPL"))
        self.assertEqual([str(t) for t in trajectory], ["C Major", "A Minor", "A Major", "C# Minor"])


class TestExpressions(unittest.TestCase):
    def test_parse_scale(self):
        self.assertEqual(parse_scale("C-maj"), C_MAJOR)
        self.assertEqual(parse_scale("F#-dorian"), Scale(Tone(6), ScaleKind.DORIAN))
        self.assertEqual(parse_scale("Bb-Altered"), Scale(Tone(-2), ScaleKind.ALTERED))
        with self.assertRaises(ToneParseError) as ctx:
            parse_scale("C-blues")
        self.assertEqual(ctx.exception.position, 2)
        with self.assertRaises(ToneParseError):
            parse_scale("Cmaj")

    def test_parse_triad(self):
        self.assertEqual(parse_triad("Cmaj"), Triad(Tone(0), TriadQuality.MAJOR))
        self.assertEqual(parse_triad("Ebmin"), Triad(Tone(-3), TriadQuality.MINOR))
        with self.assertRaises(ToneParseError):
            parse_triad("Cdim")

    def test_parse_word(self):
        self.assertEqual(parse_word("RPL"), [PlrOp.R, PlrOp.P, PlrOp.L])
        with self.assertRaises(ToneParseError) as ctx:
            parse_word("RXL")
        self.assertEqual(ctx.exception.position, 1)


if __name__ == "__main__":
    unittest.main()
