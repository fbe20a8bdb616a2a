"""Floating-point bounded symmetric domains: kernels, the Bergmann cocycle,
Shilov boundary tests, the group action and cocycle searches."""

from .domains import *  # noqa: F401,F403
from .domains import __all__ as _domains_all
from .kernels import BACKEND, KernelVanishes, available_backends
from .search import *  # noqa: F401,F403
from .search import __all__ as _search_all

__all__ = list(_domains_all) + list(_search_all) + ["BACKEND", "KernelVanishes", "available_backends"]
