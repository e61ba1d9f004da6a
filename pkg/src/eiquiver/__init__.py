"""Computational representation theory of finite EI categories: quivers
of category algebras, free covers, representation type, and the Morita
equivalence with path algebras."""

__version__ = "0.1.0"
