"""Corrected impulse-invariance sampling toolkit."""

try:
    from ._csamp import *  # noqa: F401,F403
except ImportError:  # in-tree builds put the module next to this package
    from _csamp import *  # noqa: F401,F403
