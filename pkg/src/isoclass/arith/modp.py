"""Mod-p polynomial kernel selection.

The compiled ``_modp`` extension is used when it was built; otherwise the
pure-Python ``_modp_py`` with the same functions.  Set ``ISOCLASS_PURE=1`` to
force the fallback.
"""

import os

if os.environ.get("ISOCLASS_PURE"):
    from isoclass.arith._modp_py import pdivmod, pgcd, pmonic, pmul, pmulmod, ppowmod, prem

    BACKEND = "python"
else:
    try:
        from isoclass.arith._modp import pdivmod, pgcd, pmonic, pmul, pmulmod, ppowmod, prem

        BACKEND = "cython"
    except ImportError:
        from isoclass.arith._modp_py import pdivmod, pgcd, pmonic, pmul, pmulmod, ppowmod, prem

        BACKEND = "python"

__all__ = ["BACKEND", "pdivmod", "pgcd", "pmonic", "pmul", "pmulmod", "ppowmod", "prem"]
