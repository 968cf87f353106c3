"""Physical constants (SI, CODATA 2018 exact or recommended values)."""

__all__ = [
    "ELEMENTARY_CHARGE",
    "REDUCED_PLANCK",
    "BOLTZMANN",
    "ATOMIC_MASS",
]

ELEMENTARY_CHARGE = 1.602176634e-19  # C (exact)
REDUCED_PLANCK = 1.054571817e-34  # J s
BOLTZMANN = 1.380649e-23  # J/K (exact)
ATOMIC_MASS = 1.66053906660e-27  # kg; one nucleon for mass-proportional coupling
