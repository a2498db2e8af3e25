"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension is preferred when it imported successfully; set
``KWAYPART_PURE_PYTHON=1`` to force the fallback (used by the benchmark and
the backend-equivalence tests).
"""
import os

from . import _pure

if os.environ.get("KWAYPART_PURE_PYTHON") == "1":
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

edge_cut = _impl.edge_cut
comm_volume = _impl.comm_volume
boundary_mask = _impl.boundary_mask
contract_csr = _impl.contract_csr
lp_sweep = _impl.lp_sweep

__all__ = [
    "BACKEND",
    "boundary_mask",
    "comm_volume",
    "contract_csr",
    "edge_cut",
    "lp_sweep",
]
