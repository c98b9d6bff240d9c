"""
WavePLA: wavelength-parallel optical programmable logic arrays.

This package compiles Boolean functions to wavelength-channel masks, simulates
the cascaded spectral-modulator chain with finite extinction and amplifier
noise, and runs decoder, arithmetic and cellular-automaton workloads on it.
"""

__version__ = "0.1.0"
