"""get runtime library versions for report metadata"""

import platform
from typing import Dict

import numpy
import pandas
import scipy

from bsgcomplexity import __version__


def get_runtime_info() -> Dict[str, str]:
    """Get bsgcomplexity runtime info"""
    return {
        "bsgcomplexity": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "pandas": pandas.__version__,
    }
