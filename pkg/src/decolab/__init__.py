"""decolab - numerical laboratory for environment-induced decoherence"""

__version__ = "0.1.0"
__author__ = "decolab developers"
__description__ = "Grid-based decoherence, Wigner, Zeno and closed-form rate models"
