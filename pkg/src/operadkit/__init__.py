"""Exact computations with the operads Dias_gamma, Dendr_gamma and relatives."""

from .lincomb import LinComb
from .words import DomainError, GammaWord, tm_compose, word

__all__ = ["DomainError", "GammaWord", "LinComb", "tm_compose", "word"]
__version__ = "0.1.0"
