"""Masked-language-model sentence scoring behind a small HTTP API.

A sentence's score is its pseudo-log-likelihood: the sum over token
positions of the log-probability the model assigns to the true token when
that position is masked.  The wire protocol is POST /score with
{"sentences": [...]} returning {"scores": [...]} of equal length.
"""

from .app import create_app
from .tiny import TinyConfig, TinyMaskedScorer

__version__ = "0.1.0"
