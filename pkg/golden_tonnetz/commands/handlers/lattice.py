from golden_tonnetz.commands.base import BaseCommand
from golden_tonnetz.commands.registry import register_command
from golden_tonnetz.engine.tonnetz import dump_window, occurrence_counts


@register_command
class LatticeCommand(BaseCommand):
    name = "lattice"
    help = "build a window of the lattice and export it"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--counts", action="store_true",
                            help="print per-triad shape counts instead of the window export")

    def handle(self, args) -> int:
        window = self.build_window(args)
        if not args.counts:
            self.emit(dump_window(window))
            return 0

        counts = occurrence_counts(window)
        if args.json:
            self.emit_json({
                "atlas_hash": window.atlas_hash,
                "counts": {str(triad): {shape.value: n for shape, n in sorted(c.items())}
                           for triad, c in counts.items()},
            })
            return 0
        lines = [f"atlas: {window.atlas_hash}"]
        for triad, c in counts.items():
            lines.append(f"{triad}: " + ", ".join(f"{shape.value} {n}" for shape, n in sorted(c.items())))
        self.emit("\n".join(lines))
        return 0
