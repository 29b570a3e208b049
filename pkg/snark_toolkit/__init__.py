"""
snark-toolkit
立方图完美匹配指数、四面体流、(2,2)-极子转移关系与圆流数的计算工具包
"""

__version__ = "0.1.0"
__description__ = "立方图完美匹配指数与圆流数计算工具"

from .config import Config, config
from .exceptions import SnarkToolkitError
from .multipole import Multipole, Dipole

__all__ = [
    "Config",
    "config",
    "SnarkToolkitError",
    "Multipole",
    "Dipole",
    "__version__",
]
