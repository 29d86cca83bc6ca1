"""
Error Types for the Directional Code Toolkit

Every domain failure raised by the tools derives from DirectionalCodeError.
The CLI maps each class to a process exit code through `exit_code`:
2 for usage/parse problems, 1 for domain failures.
"""

from typing import Optional


class DirectionalCodeError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class WordParseError(DirectionalCodeError):
    """A direction word failed to parse."""

    exit_code = 2

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SymmetryError(DirectionalCodeError):
    """A symmetry element does not apply to the given word."""


class LatticeError(DirectionalCodeError):
    """Coset machinery requested on an unsuitable lattice."""


class DegenerateLatticeError(LatticeError):
    """The lattice has rank < 2, so it has infinitely many cosets."""


class LatticeParityError(LatticeError):
    """A lattice generator has odd coordinate sum and mixes data and ancilla sites."""


class TorusError(DirectionalCodeError):
    """Torus dimensions are not even and positive."""

    exit_code = 2


class IncompatibleTorusError(DirectionalCodeError):
    """The torus periods do not lie in the lattice, so cosets are not well defined on it."""


class WrapCollisionError(DirectionalCodeError):
    """Strict-wrap mode: two offsets of a check land on the same torus site."""


class NonCommutingError(DirectionalCodeError):
    """H_X H_Z^T is nonzero for the requested instance."""


class CertificateNotApplicableError(DirectionalCodeError):
    """A structural certificate does not apply to the given word/torus."""


class RealizabilitySizeError(DirectionalCodeError):
    """The offset set is larger than the realizability search bound."""

    exit_code = 2


class ConfigError(DirectionalCodeError):
    """Invalid scan configuration, optionally tied to a config-file line."""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class RankMismatchError(DirectionalCodeError):
    """k from ranks disagrees with k from check dependencies."""
