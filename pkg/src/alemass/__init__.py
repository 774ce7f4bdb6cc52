"""Mass of asymptotically locally Euclidean manifolds, computed three ways."""

__version__ = "0.1.0"
