from golden_tonnetz.commands.base import BaseCommand
from golden_tonnetz.commands.registry import register_command
from golden_tonnetz.commands.utils import QUERY_KINDS, run_query
from golden_tonnetz.engine.exceptions import UsageError
from golden_tonnetz.engine.render import Highlight, render_svg


@register_command
class RenderCommand(BaseCommand):
    name = "render"
    help = "draw a template or window as SVG"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--subject", choices=["window", "triangle", "gnomon"], default="window")
        parser.add_argument("--highlight", action="append", default=[], metavar="KIND:EXPR",
                            help=f"overlay a query, KIND one of {', '.join(QUERY_KINDS)}; "
                                 'e.g. "scale:G-maj" or "plr:Cmaj:RPL"')
        parser.add_argument("--precision", type=int, default=None)
        parser.add_argument("--unicode", action="store_true", help="label tones with ♯ and ♭")

    def handle(self, args) -> int:
        precision = self.config.precision if args.precision is None else args.precision
        unicode = args.unicode or self.config.unicode_accidentals

        if args.subject != "window":
            if args.highlight:
                raise UsageError("highlights need --subject window")
            atlas = self.load_atlas(args) if args.subject == "triangle" else self.load_gnomon()
            self.emit(render_svg(atlas.template, precision=precision, unicode=unicode,
                                 labeling=atlas.canonical_labeling, atlas_hash=atlas.atlas_hash))
            return 0

        window = self.build_window(args)
        highlights = []
        for entry in args.highlight:
            kind, sep, expression = entry.partition(":")
            if not sep or kind not in QUERY_KINDS:
                raise UsageError(f"highlight {entry!r} must look like KIND:EXPR with KIND in {', '.join(QUERY_KINDS)}")
            highlights.extend(Highlight(h_kind, payload) for h_kind, payload in run_query(window, kind, expression))
        self.emit(render_svg(window, highlights, precision=precision, unicode=unicode))
        self.log_activity("success", f"Rendered window with {len(highlights)} highlights")
        return 0
