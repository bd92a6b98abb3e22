"""Exception types shared across the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine failures."""


class InhomogeneousRelation(EngineError):
    def __init__(self, name: str, deg_a, deg_b):
        self.name = name
        self.degrees = (tuple(deg_a), tuple(deg_b))
        super().__init__(
            f"relation {name!r} mixes fine degrees {tuple(deg_a)} and {tuple(deg_b)}"
        )


class ZeroRelation(EngineError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"relation {name!r} is the zero polynomial")


class NonPositiveGrading(EngineError):
    """The fine degrees do not generate a pointed cone (or a variable has
    fine degree zero), so some fine degree carries infinitely many monomials.
    ``witness`` is a nonzero nonnegative exponent direction of fine degree 0
    when one could be certified."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class DegreeBoxOverflow(EngineError):
    def __init__(self, degree, count: int, limit: int):
        self.degree = tuple(degree)
        self.count = count
        self.limit = limit
        super().__init__(
            f"degree {tuple(degree)} carries {count} ambient monomials, over the "
            f"configured limit {limit}"
        )


class NotStabilized(EngineError):
    """Truncated localization failed to certify within the level cap."""

    def __init__(self, k_max: int, trajectory):
        self.k_max = k_max
        self.trajectory = trajectory
        super().__init__(
            f"no stabilization certificate up to level {k_max}; "
            f"dimension trajectory {trajectory}"
        )


class EmptySide(EngineError):
    def __init__(self, side: str):
        self.side = side
        super().__init__(f"the {side} irrelevant ideal has no generators")


class RelationsPresent(EngineError):
    def __init__(self):
        super().__init__("closed-form counts only apply to relation-free rings")


class SeriesMismatch(EngineError):
    def __init__(self, degree, expected: int, got: int):
        self.degree = tuple(degree)
        self.expected = expected
        self.got = got
        super().__init__(
            f"series expansion gives {expected} at degree {tuple(degree)} but "
            f"linear algebra gives {got}; the regular-sequence assertion is refuted"
        )


class BoxTooSmall(EngineError):
    def __init__(self, detail: str):
        super().__init__(detail)


class InconclusiveInfinitePiece(EngineError):
    def __init__(self, weight: int):
        self.weight = weight
        super().__init__(
            f"weight {weight} piece is not certified finite inside the fine box; "
            "rerun in fine mode or enlarge the box"
        )


class PreconditionNotMet(EngineError):
    pass


class ConfigError(EngineError):
    """Schema violation; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
