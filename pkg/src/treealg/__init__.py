"""Exact computer algebra for tree operads, dendriform bialgebras and
brace algebras: planar-tree operad composition, the free dendriform
algebra with its coproduct, half-shuffle words, and enveloping
dendriform algebras of finite-dimensional brace algebras."""

__version__ = "0.1.0"
