from golden_tonnetz.commands.base import BaseCommand
from golden_tonnetz.commands.registry import register_command
from golden_tonnetz.engine.figure import check_condition2, enumerate_labelings, extension_compatibility
from golden_tonnetz.engine.tones import parse_scale


@register_command
class EnumerateCommand(BaseCommand):
    name = "enumerate"
    help = "list the arrangements of a scale on a base-figure template"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--shape", choices=["triangle", "gnomon"], default="triangle")
        parser.add_argument("--scale", default="C-maj", help="scale as <note>-<kind>, major or minor")
        parser.add_argument("--no-quotient", action="store_true",
                            help="keep mirror-image arrangements apart")

    def handle(self, args) -> int:
        scale = parse_scale(args.scale)
        atlas = self.load_atlas(args) if args.shape == "triangle" else self.load_gnomon()
        self.atlas_hash = atlas.atlas_hash
        template = atlas.template

        rows = []
        for lab in enumerate_labelings(template, scale, atlas.symmetry_quotient and not args.no_quotient):
            report = check_condition2(template, lab, scale)
            compat = extension_compatibility(template, lab, scale)
            rows.append({
                "slots": list(lab.slots_for(scale)),
                "labeling": lab.to_dict(),
                "golden": report.condition2_passed,
                "chords": {name: shape.value for name, shape in report.condition2.items()},
                "horizontal_extension": compat.horizontal,
                "vertical_extension": compat.vertical,
            })
        golden = sum(row["golden"] for row in rows)
        self.log_activity("success", f"{len(rows)} arrangements of {scale}, {golden} golden")

        if args.json:
            self.emit_json({"atlas_hash": atlas.atlas_hash, "shape": template.shape_kind.value,
                            "scale": str(scale), "arrangements": rows, "golden": golden})
            return 0

        lines = [f"atlas: {atlas.atlas_hash}", f"{template.shape_kind.value} arrangements of {scale}: {len(rows)}"]
        for number, row in enumerate(rows, start=1):
            flag = "golden" if row["golden"] else "      "
            chords = " ".join(f"{name}={shape}" for name, shape in row["chords"].items())
            lines.append(f"{number}. {flag} slots={''.join(map(str, row['slots']))} {chords}")
        lines.append(f"golden: {golden}")
        self.emit("\n".join(lines))
        return 0
