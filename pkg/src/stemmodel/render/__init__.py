"""Diagram IR, SVG output, and the diagram/narrative/plot/animation builders."""

from .animation import AnimationSpec, animate, frame_times, write_frames
from .diagrams import instance_diagram, type_diagram
from .doc import Box, Circle, DiagramDoc, Line, TextBlock, to_svg
from .narrative import narrative
from .plot import PlotSpec, plot, sample_series

__all__ = [
    "AnimationSpec", "Box", "Circle", "DiagramDoc", "Line", "PlotSpec", "TextBlock",
    "animate", "frame_times", "instance_diagram", "narrative", "plot", "sample_series",
    "to_svg", "type_diagram", "write_frames",
]
