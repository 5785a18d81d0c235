"""
Configuration settings for the golden Tonnetz engine.
"""

import os

from .utils import logger, DATA_DIR


class EngineConfig:
    """
    Configuration class for the golden Tonnetz engine.
    """

    def __init__(self, **kwargs):
        """
        Initialize engine configuration with defaults or provided values.

        Args:
            **kwargs: Configuration parameters
        """
        self.atlas_path = str(kwargs.get('atlas_path', DATA_DIR / "atlas.json"))
        self.gnomon_path = str(kwargs.get('gnomon_path', DATA_DIR / "gnomon.json"))

        # Rendering
        self.precision = kwargs.get('precision', 6)
        self.unicode_accidentals = kwargs.get('unicode_accidentals', False)

        # The 15 spelled keys, Cb..C#
        self.root_domain = kwargs.get('root_domain', range(-7, 8))
        self.default_extent = kwargs.get('default_extent', (10, 6))

    @classmethod
    def from_settings(cls, environ=None):
        """
        Load configuration overlaid with environment variables.

        Args:
            environ (dict, optional): Mapping to read instead of os.environ

        Returns:
            EngineConfig: Configuration instance
        """
        environ = os.environ if environ is None else environ
        config = {}

        if environ.get('GOLDEN_TONNETZ_ATLAS'):
            config['atlas_path'] = environ['GOLDEN_TONNETZ_ATLAS']
        if environ.get('GOLDEN_TONNETZ_GNOMON'):
            config['gnomon_path'] = environ['GOLDEN_TONNETZ_GNOMON']

        precision = environ.get('GOLDEN_TONNETZ_PRECISION')
        if precision:
            try:
                config['precision'] = int(precision)
            except ValueError:
                logger.warning(f"Ignoring malformed GOLDEN_TONNETZ_PRECISION: {precision!r}")

        return cls(**config)
