"""Semantic video-link simulator bindings.

The compiled extension exposes the core operations; this package re-exports
them under a stable name.
"""

try:
    from ._penme import *  # noqa: F401,F403  (installed wheel layout)
    from . import _penme as _impl
except ImportError:  # development tree: extension on PYTHONPATH
    from _penme import *  # noqa: F401,F403
    import _penme as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
