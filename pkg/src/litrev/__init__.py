"""litrev: hybrid graph + vector retrieval engine for scientific literature QA."""

__version__ = "0.1.0"
