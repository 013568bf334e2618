"""Set-level higher groups: classifying groupoids, actions, covers and cohomology."""

__version__ = "0.1.0"
