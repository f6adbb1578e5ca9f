"""Exchange calculus interpreter, network simulator and case-study scenarios."""

__version__ = "0.1.0"
