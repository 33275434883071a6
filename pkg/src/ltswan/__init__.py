"""Exact ramification filtrations, Swan conductors and radius profiles for GL_2 level covers."""

__version__ = "0.1.0"
