from golden_tonnetz.commands.base import BaseCommand
from golden_tonnetz.commands.registry import register_command
from golden_tonnetz.engine.figure import Direction, gluing_candidates
from golden_tonnetz.engine.tones import format_tones


@register_command
class ExtensionsCommand(BaseCommand):
    name = "extensions"
    help = "list the scales that can be glued to the base figure"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--direction", choices=["horizontal", "vertical", "both"], default="both")

    def handle(self, args) -> int:
        atlas = self.load_atlas(args)
        result = {}
        if args.direction in ("horizontal", "both"):
            shared = atlas.h_glue.shared if atlas.h_glue else ()
            scales = gluing_candidates(Direction.HORIZONTAL, atlas, self.config.root_domain)
            result["horizontal"] = {"shared": format_tones(shared).split(),
                                    "scales": [str(s) for s in scales]}
        if args.direction in ("vertical", "both"):
            shared = atlas.v_glue.shared if atlas.v_glue else ()
            pairs = gluing_candidates(Direction.VERTICAL, atlas, self.config.root_domain)
            result["vertical"] = {"shared": format_tones(shared).split(),
                                  "scales": [[str(major), str(minor)] for major, minor in pairs]}

        if args.json:
            self.emit_json({"atlas_hash": atlas.atlas_hash, **result})
            return 0

        lines = [f"atlas: {atlas.atlas_hash}"]
        for direction, entry in result.items():
            names = [" / ".join(s) if isinstance(s, list) else s for s in entry["scales"]]
            lines.append(f"{direction} (shared {' '.join(entry['shared'])}): {len(names)} kinds")
            lines.extend(f"  {name}" for name in names)
        self.emit("\n".join(lines))
        return 0
