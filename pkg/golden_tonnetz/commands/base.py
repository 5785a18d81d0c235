import json
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional

from golden_tonnetz.commands.log_utils import log_activity
from golden_tonnetz.engine.config import EngineConfig
from golden_tonnetz.engine.figure import load_atlas
from golden_tonnetz.engine.tonnetz import HorizontalMode, LatticeVariant, VerticalMode, build_window
from golden_tonnetz.engine.utils import parse_extent

HORIZONTAL_CHOICES = {"fifth": HorizontalMode.FIFTH_SHIFT, "self": HorizontalMode.SELF_REPEAT}
VERTICAL_CHOICES = {"relative": VerticalMode.RELATIVE_MINOR_REFLECT, "major": VerticalMode.MAJOR_REFLECT}


class BaseCommand(ABC):
    """Base class for all subcommands"""

    name = ""
    help = ""

    def __init__(self, config: Optional[EngineConfig] = None, stdout=None) -> None:
        self.config = config or EngineConfig.from_settings()
        self.stdout = stdout
        self.output_path = None
        self.atlas_hash = None

    @classmethod
    def add_arguments(cls, parser) -> None:
        """Add subcommand-specific arguments"""

    def log_activity(self, status: str, message: str, data: Optional[Dict] = None) -> None:
        """Log command activity"""
        log_activity(command=self.name, status=status, message=message, data=data,
                     atlas_hash=self.atlas_hash)

    def load_atlas(self, args):
        atlas = load_atlas(getattr(args, "atlas", None) or self.config.atlas_path)
        self.atlas_hash = atlas.atlas_hash
        return atlas

    def load_gnomon(self):
        return load_atlas(self.config.gnomon_path)

    @staticmethod
    def variant(args) -> LatticeVariant:
        return LatticeVariant(HORIZONTAL_CHOICES[args.horizontal], VERTICAL_CHOICES[args.vertical])

    def extent(self, args):
        return parse_extent(args.window) if args.window else self.config.default_extent

    def build_window(self, args, atlas=None):
        atlas = atlas or self.load_atlas(args)
        columns, rows = self.extent(args)
        window = build_window(atlas, self.variant(args), columns, rows)
        self.log_activity("success", f"Built {columns}x{rows} window",
                          {"vertices": len(window.points), "figures": len(window.figures)})
        return window

    def emit(self, text: str) -> None:
        """Write output to --output when given, standard output otherwise"""
        if not text.endswith("\n"):
            text += "\n"
        if self.output_path:
            Path(self.output_path).write_text(text, encoding="utf-8")
            self.log_activity("info", f"Wrote {self.output_path}")
        else:
            self.stdout.write(text)

    def emit_json(self, data: Dict[str, Any]) -> None:
        self.emit(json.dumps(data, indent=2, ensure_ascii=False))

    @abstractmethod
    def handle(self, args) -> int:
        """Run the subcommand and return its exit status"""
