"""gcx - directed and undirected graph complexes with exact signs and exact ranks."""

__version__ = "0.1.0"
