"""medianlab: median graphs, event structures and the lifted Burling counterexample."""

from importlib.metadata import PackageNotFoundError, version

__all__ = ["__version__"]

try:
    __version__ = version("medianlab")
except PackageNotFoundError:
    __version__ = "0.0.0+local"
