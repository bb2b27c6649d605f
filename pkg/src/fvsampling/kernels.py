"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy fallback in ``_pykernels`` is used.  Setting ``FVS_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("FVS_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

coset_dft = _impl.coset_dft
coset_members = _impl.coset_members
decode_one_sparse_batch = _impl.decode_one_sparse_batch


def backends():
    """Available kernel modules keyed by name (for tests and benchmarks)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out


def use(name: str):
    """Switch the active backend at runtime ("python" or "cython")."""
    global _impl, BACKEND, coset_dft, coset_members, decode_one_sparse_batch
    avail = backends()
    if name not in avail:
        raise ValueError(f"backend {name!r} is not available; have {sorted(avail)}")
    _impl = avail[name]
    BACKEND = name
    coset_dft = _impl.coset_dft
    coset_members = _impl.coset_members
    decode_one_sparse_batch = _impl.decode_one_sparse_batch
