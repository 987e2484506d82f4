"""Element-order spectra of finite symplectic and orthogonal groups."""

__version__ = "0.1.0"
