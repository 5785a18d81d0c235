# Copyright (c) 2025, KAINOTOMO PH LTD and Contributors
# See license.txt

import dataclasses
import json
import unittest

from golden_tonnetz.engine.config import EngineConfig
from golden_tonnetz.engine.exceptions import LabelConflictError, NotFoundError, UnsupportedScaleError
from golden_tonnetz.engine.figure import load_atlas
from golden_tonnetz.engine.goldenfield import ShapeClass, gs_sign
from golden_tonnetz.engine.tones import (
    GREGORIAN_WINDOW, PlrOp, Scale, ScaleKind, Tone, Triad, TriadQuality, parse_tone, scale_tones,
    tone_set, transpose_fifths,
)
from golden_tonnetz.engine.tonnetz import (
    HorizontalMode, LatticeVariant, TonnetzWindow, VerticalMode, build_window, dump_window, find_scale_figures,
    find_tone_triple_occurrences, find_triad_occurrences, mode_path, occurrence_counts, plr_realize,
    representable_scales, tones_connected, window_cells,
)

C = parse_tone("C")
C_MAJOR = Scale(C, ScaleKind.MAJOR)
C_MAJOR_TRIAD = Triad(C, TriadQuality.MAJOR)
SELF_MAJOR = LatticeVariant(HorizontalMode.SELF_REPEAT, VerticalMode.MAJOR_REFLECT)
FIFTH_MAJOR = LatticeVariant(HorizontalMode.FIFTH_SHIFT, VerticalMode.MAJOR_REFLECT)
SELF_MINOR = LatticeVariant(HorizontalMode.SELF_REPEAT, VerticalMode.RELATIVE_MINOR_REFLECT)


def tones(text):
    return [parse_tone(name) for name in text.split()]


def all_scales(kind):
    return {Scale(Tone(index), kind) for index in range(-7, 8)}


class TonnetzTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.atlas = load_atlas(EngineConfig().atlas_path)
        cls.golden = LatticeVariant.golden()

    def window(self, columns, rows, variant=None):
        return build_window(self.atlas, variant or self.golden, columns, rows)


class TestWindowAssembly(TonnetzTestCase):
    def test_cells_are_centered_row_major(self):
        self.assertEqual(window_cells(1, 1), [(0, 0)])
        self.assertEqual(window_cells(2, 1), [(0, 0), (1, 0)])
        self.assertEqual(window_cells(1, 2), [(0, -1), (0, 0)])
        self.assertEqual(window_cells(3, 2)[:3], [(-1, -1), (0, -1), (1, -1)])

    def test_single_figure(self):
        w = self.window(1, 1)
        self.assertEqual(len(w.vertices), 7)
        self.assertEqual(len(w.edges), 7)
        self.assertEqual(w.figures[0].scale, C_MAJOR)
        self.assertTrue(w.figures[0].golden)
        self.assertEqual(w.tone_inventory(), tone_set(C_MAJOR))

    def test_horizontal_pair_shares_four_tones(self):
        w = self.window(2, 1)
        self.assertEqual(len(w.vertices), 10)
        left, right = w.figure_at(0, 0), w.figure_at(1, 0)
        self.assertEqual(right.scale, Scale(parse_tone("G"), ScaleKind.MAJOR))
        shared = set(left.vertex_indices) & set(right.vertex_indices)
        self.assertEqual({w.tones[i] for i in shared}, set(tones("B C D E")))

    def test_vertical_pair_meets_on_the_mirror_line(self):
        w = self.window(1, 2)
        self.assertEqual(len(w.vertices), 10)
        upper, lower = w.figure_at(0, 0), w.figure_at(0, -1)
        self.assertEqual(lower.scale, Scale(C, ScaleKind.NATURAL_MINOR))
        self.assertTrue(lower.reflected)
        for tone in tones("C G"):
            self.assertEqual(upper.vertex_of_tone(tone), lower.vertex_of_tone(tone))
            self.assertTrue(w.points[upper.vertex_of_tone(tone)].is_real())

        e = w.points[upper.vertex_of_tone(parse_tone("E"))]
        e_flat = w.points[lower.vertex_of_tone(parse_tone("Eb"))]
        self.assertEqual(gs_sign(e.imag_scaled()), 1)
        self.assertEqual(gs_sign(e_flat.imag_scaled()), -1)
        self.assertEqual(e_flat, e.conj())

    def test_neighbour_relations(self):
        w = self.window(10, 6)
        cells = {fig.cell: fig for fig in w.figures}
        for fig in w.figures:
            column, row = fig.cell
            right = cells.get((column + 1, row))
            if right is not None:
                self.assertEqual(right.scale.root, transpose_fifths(fig.scale.root, 1))
                self.assertEqual(right.scale.kind, fig.scale.kind)
                self.assertEqual(len(set(fig.vertex_indices) & set(right.vertex_indices)), 4)
            if row % 2 == 0 and (column, row - 1) in cells:
                below = cells[(column, row - 1)]
                self.assertEqual(below.scale.kind, ScaleKind.NATURAL_MINOR)
                self.assertEqual(below.scale.root, fig.scale.root)
                for tone in (fig.scale.root, transpose_fifths(fig.scale.root, 1)):
                    self.assertEqual(fig.vertex_of_tone(tone), below.vertex_of_tone(tone))
            above = cells.get((column, row + 2))
            if above is not None:
                self.assertEqual(above.scale.root, transpose_fifths(fig.scale.root, 7))

    def test_golden_lattice_places_only_golden_figures(self):
        for variant in (self.golden, FIFTH_MAJOR):
            w = self.window(6, 4, variant)
            self.assertTrue(all(fig.golden for fig in w.figures), variant)

    def test_edges_follow_the_template(self):
        w = self.window(3, 3)
        for fig in w.figures:
            for a, b in self.atlas.template.edges:
                i, j = fig.vertex_of(a), fig.vertex_of(b)
                self.assertIn((min(i, j), max(i, j)), w.edges)
        self.assertEqual(w.edges, sorted(set(w.edges)))

    def test_figure_at(self):
        w = self.window(3, 3)
        self.assertEqual(w.figure_at(0, 0).scale, C_MAJOR)
        self.assertEqual(w.figure_at(-1, 0).scale, Scale(parse_tone("F"), ScaleKind.MAJOR))
        with self.assertRaises(NotFoundError):
            w.figure_at(5, 0)

    def test_export_is_deterministic(self):
        first = dump_window(self.window(4, 3))
        second = dump_window(self.window(4, 3))
        self.assertEqual(first, second)
        data = json.loads(first)
        self.assertEqual(data["format"], "golden-tonnetz-window")
        self.assertEqual(data["atlas_hash"], self.atlas.atlas_hash)
        self.assertEqual(data["variant"], {"horizontal": "FifthShift", "vertical": "RelativeMinorReflect"})
        self.assertEqual(len(data["figures"]), 12)

    def test_window_record_fields(self):
        names = [f.name for f in dataclasses.fields(TonnetzWindow)]
        self.assertEqual(names, ["points", "tones", "edges", "figures", "variant", "extent", "atlas_hash"])

    def test_windows_grow_monotonically(self):
        small, large = self.window(3, 3), self.window(5, 5)
        self.assertLessEqual(set(small.points), set(large.points))
        self.assertLessEqual(small.tone_inventory(), large.tone_inventory())
        self.assertLessEqual(representable_scales(small), representable_scales(large))

    def test_self_repeat_with_minor_reflection_conflicts(self):
        with self.assertRaises(LabelConflictError) as ctx:
            self.window(5, 3, SELF_MINOR)
        self.assertEqual(ctx.exception.code, "E_LABEL_CONFLICT")

    def test_rejects_empty_extent(self):
        with self.assertRaises(ValueError):
            self.window(0, 2)


class TestRepresentability(TonnetzTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.large = build_window(cls.atlas, cls.golden, 14, 8)

    def test_golden_lattice_represents_every_key(self):
        found = representable_scales(self.large)
        self.assertEqual(found, all_scales(ScaleKind.MAJOR) | all_scales(ScaleKind.NATURAL_MINOR))

    def test_every_chord_occurrence_is_a_golden_triangle(self):
        shapes = set()
        for counter in occurrence_counts(self.large).values():
            shapes |= set(counter)
        self.assertEqual(shapes, {ShapeClass.GOLDEN_TRIANGLE})
        for name in ("A", "E"):
            occurrences = find_triad_occurrences(self.large, Triad(parse_tone(name), TriadQuality.MINOR))
            self.assertTrue(occurrences)
            self.assertEqual({occ.shape for occ in occurrences}, {ShapeClass.GOLDEN_TRIANGLE})

    def test_self_repeat_represents_only_the_base_scale(self):
        w = build_window(self.atlas, SELF_MAJOR, 14, 8)
        self.assertEqual(representable_scales(w), {C_MAJOR})
        shifted = [fig for fig in w.figures if fig.column % 7]
        self.assertTrue(shifted)
        self.assertFalse(any(fig.golden for fig in shifted))

    def test_fifth_shift_without_minor_represents_majors_only(self):
        found = representable_scales(build_window(self.atlas, FIFTH_MAJOR, 15, 8))
        self.assertEqual(found, all_scales(ScaleKind.MAJOR))
        narrow = representable_scales(build_window(self.atlas, FIFTH_MAJOR, 14, 8))
        self.assertNotIn(Scale(parse_tone("Cb"), ScaleKind.MAJOR), narrow)

    def test_scale_figures(self):
        figures = find_scale_figures(self.large, C_MAJOR)
        self.assertIn((0, 0), [fig.cell for fig in figures])
        minor = find_scale_figures(self.large, Scale(parse_tone("A"), ScaleKind.NATURAL_MINOR))
        self.assertTrue(minor)
        self.assertTrue(all(fig.reflected for fig in minor))
        with self.assertRaises(UnsupportedScaleError):
            find_scale_figures(self.large, Scale(C, ScaleKind.DORIAN))

    def test_every_mode_on_every_pitch_class(self):
        for kind in GREGORIAN_WINDOW:
            for index in range(-5, 7):
                with self.subTest(kind=kind, root=index):
                    path = mode_path(self.large, kind, Tone(index))
                    self.assertEqual([self.large.tones[i] for i in path.vertex_indices],
                                     scale_tones(Scale(Tone(index), kind)))
                    for a, b in zip(path.vertex_indices, path.vertex_indices[1:]):
                        self.assertTrue(self.large.graph.has_edge(a, b))

    def test_mode_needs_room(self):
        with self.assertRaises(NotFoundError):
            mode_path(self.window(1, 1), ScaleKind.LYDIAN, C)
        with self.assertRaises(UnsupportedScaleError):
            mode_path(self.large, ScaleKind.ACOUSTIC, C)

    def test_acoustic_and_altered_are_connected(self):
        for kind in (ScaleKind.ACOUSTIC, ScaleKind.ALTERED):
            for root in tones("C G F D"):
                with self.subTest(kind=kind, root=root):
                    self._check_connected(Scale(root, kind))

    def _check_connected(self, scale):
        result = tones_connected(self.large, scale_tones(scale))
        self.assertTrue(result.connected)
        self.assertEqual({self.large.tones[i] for i in result.vertex_indices}, tone_set(scale))
        self.assertEqual(len(result.vertex_indices), 7)
        for a, b in result.edges:
            self.assertTrue(self.large.graph.has_edge(a, b))

    def test_missing_tones_are_reported(self):
        result = tones_connected(self.window(1, 1), scale_tones(Scale(C, ScaleKind.ACOUSTIC)))
        self.assertFalse(result.connected)
        self.assertEqual(result.missing, tuple(tones("Bb F#")))


class TestTriads(TonnetzTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.w = build_window(cls.atlas, cls.golden, 3, 3)

    def start(self):
        (occ,) = [o for o in find_triad_occurrences(self.w, C_MAJOR_TRIAD) if (0, 0) in o.figure_refs]
        return occ

    def test_triad_occurrences(self):
        occurrences = find_triad_occurrences(self.w, C_MAJOR_TRIAD)
        self.assertTrue(occurrences)
        for occ in occurrences:
            self.assertEqual(occ.tones, tuple(tones("C E G")))
            self.assertEqual([self.w.tones[i] for i in occ.vertex_indices], tones("C E G"))
            self.assertIn(occ.shape, (ShapeClass.GOLDEN_TRIANGLE, ShapeClass.GOLDEN_GNOMON))
        self.assertTrue(find_triad_occurrences(self.w, Triad(parse_tone("A"), TriadQuality.MINOR)))
        self.assertEqual(find_tone_triple_occurrences(self.w, tones("B D F")), [])

    def test_plr_moves_from_the_tonic(self):
        occ = self.start()

        relative = plr_realize(self.w, occ, PlrOp.R)
        self.assertEqual(relative.triad, Triad(parse_tone("A"), TriadQuality.MINOR))
        self.assertIn((0, 0), relative.figure_refs)
        for tone in tones("C E"):
            self.assertEqual(relative.vertex_for(tone), occ.vertex_for(tone))

        leading = plr_realize(self.w, occ, "L")
        self.assertEqual(leading.triad, Triad(parse_tone("E"), TriadQuality.MINOR))
        self.assertIn((0, 0), leading.figure_refs)
        for tone in tones("E G"):
            self.assertEqual(leading.vertex_for(tone), occ.vertex_for(tone))

        parallel = plr_realize(self.w, occ, PlrOp.P)
        self.assertEqual(parallel.triad, Triad(C, TriadQuality.MINOR))
        self.assertIn((0, -1), parallel.figure_refs)
        for tone in tones("C G"):
            self.assertEqual(parallel.vertex_for(tone), occ.vertex_for(tone))

    def test_moves_return_home(self):
        occ = self.start()
        for op in PlrOp:
            back = plr_realize(self.w, plr_realize(self.w, occ, op), op)
            self.assertEqual(back.triad, C_MAJOR_TRIAD)
            self.assertGreaterEqual(len(set(back.vertex_indices) & set(occ.vertex_indices)), 2)

    def test_move_outside_the_window(self):
        w = self.window(1, 1)
        (occ,) = find_triad_occurrences(w, C_MAJOR_TRIAD)
        with self.assertRaises(NotFoundError):
            plr_realize(w, occ, PlrOp.P)

    def test_occurrence_counts(self):
        counts = occurrence_counts(self.w)
        self.assertIn(C_MAJOR_TRIAD, counts)
        self.assertEqual(sum(counts[C_MAJOR_TRIAD].values()), len(find_triad_occurrences(self.w, C_MAJOR_TRIAD)))
        for counter in counts.values():
            self.assertNotIn(ShapeClass.DEGENERATE, counter)


if __name__ == "__main__":
    unittest.main()
