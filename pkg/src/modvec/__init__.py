"""Word-size prime-field modular multiplication and a small kernel generator."""

__version__ = "0.1.0"
