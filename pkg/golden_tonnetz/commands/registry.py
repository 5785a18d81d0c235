import importlib
import os
from typing import Optional, Type

from golden_tonnetz.commands.log_utils import logger

# Single registry for all subcommands
COMMAND_REGISTRY = {}


def register_command(cls):
    """Decorator to register command classes under their subcommand name"""
    COMMAND_REGISTRY[cls.name] = cls
    return cls


def get_command_class(name: str) -> Optional[Type]:
    """Get a command class by subcommand name"""
    if not COMMAND_REGISTRY:
        load_handlers()
    return COMMAND_REGISTRY.get(name)


def load_handlers():
    """Import every handler module so its command registers itself"""
    handlers_dir = os.path.join(os.path.dirname(__file__), "handlers")
    for filename in sorted(os.listdir(handlers_dir)):
        if filename.endswith(".py") and filename != "__init__.py" and not filename.startswith("test_"):
            module_path = f"golden_tonnetz.commands.handlers.{filename[:-3]}"
            try:
                importlib.import_module(module_path)
            except ImportError as e:
                logger.error(f"Error loading command: {module_path}\n{e}")
    return COMMAND_REGISTRY
