"""One-class ensemble toolkit.

Everything public lives in the compiled :mod:`ocen._core` extension — base
detectors trained on positives only, the fixed combining rules, the ESBE and
TUPSO ensembles, positives-only performance estimation, evaluation statistics,
and the config-driven experiment harness. This package re-exports it all.
"""

from . import _core as _core
from ._core import *  # noqa: F401,F403
from ._core import __version__ as __version__

__all__ = sorted(name for name in dir(_core) if not name.startswith("_"))
