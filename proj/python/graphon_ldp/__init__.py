"""Large-deviation rate quantities for dense stochastic block models."""

from graphon_ldp._core import *  # noqa: F401,F403
from graphon_ldp._core import __doc__  # noqa: F401
