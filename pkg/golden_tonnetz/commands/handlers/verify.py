from golden_tonnetz.commands.base import BaseCommand
from golden_tonnetz.commands.registry import register_command
from golden_tonnetz.engine.exceptions import AtlasError, NotFoundError
from golden_tonnetz.engine.figure import (
    Direction, enumerate_labelings, extension_compatibility, filter_golden, gluing_candidates,
    validate_atlas,
)
from golden_tonnetz.engine.tonnetz import (
    HorizontalMode, LatticeVariant, VerticalMode, build_window, mode_path, representable_scales,
    tones_connected,
)
from golden_tonnetz.engine.tones import GREGORIAN_WINDOW, Scale, ScaleKind, Tone, scale_tones

# One spelling per pitch class, Db..F#
PITCH_CLASS_ROOTS = range(-5, 7)
# Column roots -7..7; MajorReflect rows do not transpose
FULL_EXTENT = (15, 8)
CONTRACT_EXTENT = (10, 6)


@register_command
class VerifyCommand(BaseCommand):
    name = "verify"
    help = "validate the atlas and re-derive every published count and representability claim"

    def handle(self, args) -> int:
        atlas = self.load_atlas(args)
        checks = []

        def record(name, passed, detail=""):
            checks.append({"name": name, "passed": bool(passed), "detail": detail})

        report = validate_atlas(atlas)
        for check in report.checks:
            record(f"atlas.{check.name}", check.passed, check.detail)

        counts = {}
        c_major = atlas.scale
        labelings = enumerate_labelings(atlas.template, c_major, atlas.symmetry_quotient)
        golden = filter_golden(atlas.template, c_major, labelings)
        counts["triangle_arrangements"] = len(labelings)
        counts["triangle_golden"] = len(golden)
        record("triangle.arrangements", len(labelings) == 7, f"{len(labelings)} arrangements")
        record("triangle.golden", golden == [atlas.canonical_labeling],
               f"{len(golden)} golden, canonical survives: {atlas.canonical_labeling in golden}")

        gnomon = self.load_gnomon()
        g_labelings = enumerate_labelings(gnomon.template, c_major, gnomon.symmetry_quotient)
        g_golden = filter_golden(gnomon.template, c_major, g_labelings)
        counts["gnomon_arrangements"] = len(g_labelings)
        counts["gnomon_golden"] = len(g_golden)
        record("gnomon.arrangements", len(g_labelings) == 7, f"{len(g_labelings)} arrangements")
        record("gnomon.golden", len(g_golden) == 1, f"{len(g_golden)} golden")
        for lab in g_golden:
            compat = extension_compatibility(gnomon.template, lab, c_major)
            record("gnomon.no_extension", not compat.horizontal and not compat.vertical,
                   f"horizontal={compat.horizontal} vertical={compat.vertical}")

        horizontal = gluing_candidates(Direction.HORIZONTAL, atlas, self.config.root_domain)
        vertical = gluing_candidates(Direction.VERTICAL, atlas, self.config.root_domain)
        counts["horizontal_extensions"] = len(horizontal)
        counts["vertical_extensions"] = len(vertical)
        record("extensions.horizontal", len(horizontal) == 2, ", ".join(str(s) for s in horizontal))
        record("extensions.vertical", len(vertical) == 6,
               ", ".join(f"{major}/{minor}" for major, minor in vertical))

        self._check_contract(atlas, record)
        self._check_representability(atlas, record)

        failed = [c["name"] for c in checks if not c["passed"]]
        passed = not failed
        self.log_activity("success" if passed else "completed", f"{len(checks)} checks, {len(failed)} failed")

        if args.json:
            self.emit_json({"atlas_hash": atlas.atlas_hash, "passed": passed, "counts": counts, "checks": checks})
        else:
            lines = [f"atlas: {atlas.atlas_hash}"]
            for c in checks:
                status = "ok" if c["passed"] else "FAIL"
                lines.append(f"{status:4} {c['name']}" + (f": {c['detail']}" if c["detail"] else ""))
            lines.append("counts: " + " ".join(str(v) for v in counts.values()))
            lines.append(f"result: {'PASS' if passed else 'FAIL'}")
            self.emit("\n".join(lines))
        if failed:
            raise AtlasError(f"verification failed: {len(failed)} checks failed (" + ", ".join(failed) + ")", failed)
        return 0

    def _check_contract(self, atlas, record):
        window = build_window(atlas, LatticeVariant.golden(), *CONTRACT_EXTENT)
        cells = {fig.cell: fig for fig in window.figures}
        bad_columns, bad_rows = [], []
        for (column, row), fig in cells.items():
            right = cells.get((column + 1, row))
            if right and right.scale.root.fifth_index - fig.scale.root.fifth_index != 1:
                bad_columns.append((column, row))
            above = cells.get((column, row + 2))
            if above and above.scale.root.fifth_index - fig.scale.root.fifth_index != 7:
                bad_rows.append((column, row))
        record("contract.columns_fifth", not bad_columns, f"offending cells {bad_columns}" if bad_columns else "")
        record("contract.rows_semitone", not bad_rows, f"offending cells {bad_rows}" if bad_rows else "")
        record("contract.figures_golden", all(fig.golden for fig in window.figures))

    def _check_representability(self, atlas, record):
        domain = self.config.root_domain
        majors = {Scale(Tone(i), ScaleKind.MAJOR) for i in domain}
        minors = {Scale(Tone(i), ScaleKind.NATURAL_MINOR) for i in domain}

        golden = build_window(atlas, LatticeVariant.golden(), *FULL_EXTENT)
        found = representable_scales(golden, domain)
        record("representable.golden", found == majors | minors, f"{len(found)} scales")

        self_major = build_window(atlas, LatticeVariant(HorizontalMode.SELF_REPEAT, VerticalMode.MAJOR_REFLECT),
                                  *FULL_EXTENT)
        found = representable_scales(self_major, domain)
        record("representable.self_repeat_major_reflect", found == {atlas.scale},
               ", ".join(sorted(str(s) for s in found)))

        fifth_major = build_window(atlas, LatticeVariant(HorizontalMode.FIFTH_SHIFT, VerticalMode.MAJOR_REFLECT),
                                   *FULL_EXTENT)
        found = representable_scales(fifth_major, domain)
        record("representable.fifth_shift_major_reflect", found == majors, f"{len(found)} scales")

        missing = []
        for kind in GREGORIAN_WINDOW:
            for index in PITCH_CLASS_ROOTS:
                try:
                    mode_path(golden, kind, Tone(index))
                except NotFoundError:
                    missing.append(str(Scale(Tone(index), kind)))
        record("modes.all_roots", not missing, ", ".join(missing))

        for kind in (ScaleKind.ACOUSTIC, ScaleKind.ALTERED):
            result = tones_connected(golden, scale_tones(Scale(Tone(0), kind)))
            record(f"connected.{kind.value.lower()}", result.connected,
                   "missing " + ", ".join(str(t) for t in result.missing) if result.missing else "")
