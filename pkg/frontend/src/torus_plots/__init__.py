"""Figure rendering for torus-scan CSV/JSON output."""

from .figures import (FIGURE_KINDS, digits_histogram, proportions_vs_param,
                      render, rotation_scatter, staircase_3d, tongue_map)
from .reader import (CLASS_COLORS, Records, SchemaError, class_fractions,
                     read_records, read_summary)

__version__ = "0.1.0"
