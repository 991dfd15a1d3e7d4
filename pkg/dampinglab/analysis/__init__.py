"""
Computational core

Pure functions and immutable values over the spectrum of A, the damping
f and the generator of the damped semigroup. Nothing here touches Flask.
"""
