"""Exact growth experiments in SL_2(F_p) and SL_3(F_p)."""

from ._growthlab import *  # noqa: F401,F403
from ._growthlab import __version__  # noqa: F401
