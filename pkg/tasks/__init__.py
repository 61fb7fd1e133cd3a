"""Command orchestration over parsed input documents."""

from .runner import EXIT_ERROR, EXIT_NOT_EXACT, EXIT_OK, ComputationRunner, RunFlags

__all__ = ['ComputationRunner', 'RunFlags', 'EXIT_OK', 'EXIT_ERROR', 'EXIT_NOT_EXACT']
