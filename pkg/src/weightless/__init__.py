"""Exact verification of cuspidal versus weightless function spaces for
sl2(F_q) and PGL(2, F_q), with Gauss-sum witnesses and Fourier-restriction
experiments over extension towers."""

__version__ = "0.1.0"
