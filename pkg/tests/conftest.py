"""Shared test configuration.

Per-example deadlines are disabled: several property tests call slow
independent oracles (sympy expansions) whose timing varies with suite load,
and wall-clock budgets are enforced by the acceptance criteria instead.
"""

from hypothesis import settings

settings.register_profile("suite", deadline=None)
settings.load_profile("suite")
