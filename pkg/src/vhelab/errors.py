"""Exception hierarchy shared across the laboratory.

Every capability gate and arithmetic precondition raises one of these, so test
suites can assert the exact failure mode of an attack run under withheld key
material.
"""


class VheLabError(Exception):
    """Base class for all laboratory errors."""


# ---------------------------------------------------------------- arithmetic


class ModringError(VheLabError):
    """Base class for residue-arithmetic errors."""


class NonPrimeModulus(ModringError):
    """A prime-only routine was called with a prime-power modulus (r > 1)."""


class PrimeModulus(ModringError):
    """A prime-power-only routine was called with a prime modulus (r = 1)."""


class InvalidDivisor(ModringError):
    """The subgroup divisor d does not divide the required group order."""


class UnsupportedEvenPrime(ModringError):
    """Characteristic functions are undefined for p = 2."""


# ----------------------------------------------------------------- simulator


class SimulatorError(VheLabError):
    """Base class for evaluation-simulator errors."""


class UnknownKey(SimulatorError):
    """Referenced key id is not registered in the context."""


class AccessDenied(SimulatorError):
    """A trusted-only operation was invoked through the adversary facade."""


class KeyMismatch(SimulatorError):
    """Two vector ciphertexts under different keys were combined."""


class MissingRlk(SimulatorError):
    """Ciphertext-ciphertext multiplication without a relinearization key."""


class DepthExceeded(SimulatorError):
    """Multiplicative depth budget exhausted."""


class MissingRtk(SimulatorError):
    """Rotation requested for an index whose rotation key is absent."""

    def __init__(self, index: int):
        super().__init__(f"no rotation key for index {index}")
        self.index = index


class MixedModulus(SimulatorError):
    """Operands live in different plaintext moduli."""


class MixedKeyTag(SimulatorError):
    """Bit ciphertexts under different key tags were combined."""


class MissingBtk(SimulatorError):
    """Bootstrapping requested without the bootstrapping key."""


class WrongKeyTag(SimulatorError):
    """Bootstrapping requested on a ciphertext already under the post-bootstrap key."""


class BootstrapBudgetExceeded(SimulatorError):
    """A ciphertext lineage attempted more bootstraps than the budget allows."""


class NotDivisible(SimulatorError):
    """Exact-division rescaling hit a slot that is not divisible."""


class DegreeOverflow(SimulatorError):
    """A ciphertext-polynomial operation would exceed the degree cap."""


class MissingReqOracle(SimulatorError):
    """Requadratization requested but the oracle capability is withheld."""


# ------------------------------------------------------------------- schemes


class DuplicateInputs(VheLabError):
    """OPRF query construction received repeated input strings."""


# ------------------------------------------------------------------- harness


class ConfigError(VheLabError):
    """Invalid experiment configuration (unknown field, missing parameter...)."""


class InvariantViolation(VheLabError):
    """An internal consistency check failed; reported as exit code 3 by the CLI."""
