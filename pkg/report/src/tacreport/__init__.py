"""Figure generator for tacbench benchmark outputs."""

from .figures import FIGURE_KINDS, FigureSpec, plot
from .io import ParseError, read_episode_log, read_metrics_csv, read_sweep_summary

__version__ = "0.1.0"
