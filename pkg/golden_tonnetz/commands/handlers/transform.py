from golden_tonnetz.commands.base import BaseCommand
from golden_tonnetz.commands.registry import register_command
from golden_tonnetz.commands.utils import start_occurrence
from golden_tonnetz.engine.tonnetz import plr_realize
from golden_tonnetz.engine.tones import parse_triad, parse_word, plr_word, render_tone


@register_command
class TransformCommand(BaseCommand):
    name = "transform"
    help = "apply a P/L/R word to a triad, symbolically and on the lattice"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--start", required=True, help='starting triad, e.g. "Cmaj"')
        parser.add_argument("--word", default="", help='P/L/R word, e.g. "RPL"')

    def handle(self, args) -> int:
        triad = parse_triad(args.start)
        word = parse_word(args.word)
        trajectory = plr_word(triad, word)
        window = self.build_window(args)

        occurrences = [start_occurrence(window, triad)]
        for op in word:
            occurrences.append(plr_realize(window, occurrences[-1], op))

        steps = []
        for number, occ in enumerate(occurrences):
            entry = occ.to_dict()
            entry["op"] = word[number - 1].value if number else None
            entry["points"] = [window.points[i].to_list() for i in occ.vertex_indices]
            steps.append(entry)
        self.log_activity("success", f"{args.start} {args.word}: {len(steps)} steps")

        if args.json:
            self.emit_json({"atlas_hash": window.atlas_hash, "start": str(triad),
                            "word": args.word, "trajectory": steps})
            return 0

        lines = [f"atlas: {window.atlas_hash}", "trajectory: " + ", ".join(str(t) for t in trajectory)]
        for step_triad, occ, entry in zip(trajectory, occurrences, steps):
            op = f"{entry['op']} -> " if entry["op"] else ""
            tones = " ".join(render_tone(window.tones[i]) for i in occ.vertex_indices)
            lines.append(f"  {op}{step_triad}: {tones} {occ.shape.value} vertices {list(occ.vertex_indices)} "
                         f"cells {[tuple(c) for c in occ.figure_refs]}")
        self.emit("\n".join(lines))
        return 0
