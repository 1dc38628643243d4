"""Risk-averse multi-armed bandits under the mean-variance measure."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
