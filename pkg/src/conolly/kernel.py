"""Select the compiled kernel when available, else the pure-Python one.

Set ``CONOLLY_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("CONOLLY_PURE_PYTHON"):
    from . import _pykernel as _impl
else:
    try:
        from . import _ckernel as _impl
    except ImportError:  # extension not built
        from . import _pykernel as _impl

BACKEND = "cython" if _impl.__name__.endswith("_ckernel") else "python"

evaluate = _impl.evaluate
match_prefix = _impl.match_prefix
prepare_target = _impl.prepare_target
formal_satisfy = _impl.formal_satisfy

__all__ = ["BACKEND", "evaluate", "match_prefix", "prepare_target", "formal_satisfy"]
