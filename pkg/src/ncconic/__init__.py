"""ncconic: exact computation with noncommutative conics and their invariants."""

__version__ = "0.1.0"
