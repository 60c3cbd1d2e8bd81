"""Exact spectra of Dunkl and Heckman-Polychronakos operators."""
__version__ = "0.1.0"
