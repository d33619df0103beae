"""Criteria, brute-force dynamics and constructions for 1-Lipschitz maps on the p-adic integers."""

from ._padicdyn import *  # noqa: F401,F403
from ._padicdyn import __version__  # noqa: F401
