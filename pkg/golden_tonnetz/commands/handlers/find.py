from golden_tonnetz.commands.base import BaseCommand
from golden_tonnetz.commands.registry import register_command
from golden_tonnetz.commands.utils import describe, run_query
from golden_tonnetz.engine.tones import render_tone


@register_command
class FindCommand(BaseCommand):
    name = "find"
    help = "locate a scale, triad, mode or tone set in a window"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("kind", choices=["scale", "triad", "mode", "toneset"])
        parser.add_argument("expression", help='e.g. "G-maj", "Amin", "C-lydian", "C-acoustic" or "C,E,G"')

    def handle(self, args) -> int:
        window = self.build_window(args)
        results = run_query(window, args.kind, args.expression)
        found = [describe(window, kind, payload) for kind, payload in results]
        self.log_activity("success", f"{len(found)} results for {args.kind} {args.expression}")

        if args.json:
            self.emit_json({"atlas_hash": window.atlas_hash, "query": {"kind": args.kind,
                            "expression": args.expression}, "results": found})
            return 0

        lines = [f"atlas: {window.atlas_hash}", f"{args.kind} {args.expression}: {len(found)} found"]
        for entry in found:
            vertices = entry.get("vertices", [])
            if vertices and isinstance(vertices[0], dict):
                vertices = [v["index"] for v in vertices]
            tones = " ".join(render_tone(window.tones[i]) for i in vertices)
            where = f" cell {tuple(entry['cell'])}" if "cell" in entry else ""
            shape = f" {entry['shape']}" if entry.get("shape") else ""
            lines.append(f"  {tones}{where}{shape} vertices {vertices}")
        self.emit("\n".join(lines))
        return 0
