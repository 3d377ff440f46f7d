"""Multilayer threshold dynamical systems.

Simulation of OR/AND threshold cascades on multilayer networks, the
consistent PAC/PMAC threshold learner with its sample-size calculators, and
the Natarajan-dimension toolkit (canonical sets, shattering oracle, Q-set and
PNN estimators).
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
