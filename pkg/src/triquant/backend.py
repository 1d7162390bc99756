"""Kernel selection: compiled extension when built, pure Python otherwise.

``mul_terms`` and ``eval_terms`` are the hot inner loops of the whole
package (symbolic expansion and grid evaluation).  Both backends share one
interface and are cross-checked in the test suite; ``benchmarks/`` compares
their throughput.
"""

try:
    from . import _termops_c as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; the package stays fully functional
    from . import _termops as _impl

    BACKEND = "pure-python"

mul_terms = _impl.mul_terms
eval_terms = _impl.eval_terms


def active_backend() -> str:
    """Name of the kernel implementation selected at import time."""
    return BACKEND
