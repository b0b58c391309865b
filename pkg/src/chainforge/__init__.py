"""Length, depth, chain difference and chain ratio of finite groups."""

__version__ = "0.1.0"
