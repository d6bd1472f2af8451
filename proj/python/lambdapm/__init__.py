"""Partial metrics on λ-terms, resource terms and finite domains.

Terms are passed as strings in the CLI syntax. Exact distances come back as
fractions.Fraction, brackets as (lower, upper) tuples.
"""

from ._core import *  # noqa: F401,F403
from ._core import ParseError, CapExceeded  # noqa: F401
