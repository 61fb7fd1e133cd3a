"""
Text and JSON rendering of computation reports.
"""

from .visualizer import ReportVisualizer

__all__ = ['ReportVisualizer']
