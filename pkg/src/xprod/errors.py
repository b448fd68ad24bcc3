"""Exception types shared across the package."""

from __future__ import annotations


class XprodError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(XprodError):
    """Dimensions of maps, vectors or shapes do not line up."""


class FieldMismatch(XprodError):
    """Operands live over different fields."""


class NotAssociative(XprodError):
    """Structure constants fail associativity on a basis triple."""

    def __init__(self, witness, left, right):
        self.witness = tuple(witness)
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(f"associativity fails at basis triple {self.witness}")


class NotUnital(XprodError):
    """The designated unit fails a unit law on a basis vector."""

    def __init__(self, witness, side, left, right):
        self.witness = witness
        self.side = side
        self.left = tuple(left)
        self.right = tuple(right)
        super().__init__(f"{side} unit law fails at basis vector {witness}")


class NotCoassociative(XprodError):
    """Comultiplication fails coassociativity on a basis vector."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"coassociativity fails at basis vector {witness}")


class CounitFail(XprodError):
    """Counit law fails on a basis vector."""

    def __init__(self, witness, side):
        self.witness = witness
        self.side = side
        super().__init__(f"{side} counit law fails at basis vector {witness}")


class UnitNotGrouplike(XprodError):
    """The distinguished coalgebra element is not grouplike or not counital."""


class AxiomFailure(XprodError):
    """A precondition check produced a failing report."""

    def __init__(self, report, message="axiom check failed"):
        self.report = report
        failed = ", ".join(e.name for e in report.entries if not e.passed)
        super().__init__(f"{message}: {failed}")


class UnitMismatch(XprodError):
    """The algebra unit is not the expected tensor of component units."""


class NotAlgebraMap(XprodError):
    """A map required to be a unital algebra map is not one."""

    def __init__(self, which, report):
        self.which = which
        self.report = report
        super().__init__(f"{which} is not a unital algebra map")


class SplitFail(XprodError):
    """A product escapes the subspace required by a splitting condition."""

    def __init__(self, which, witness):
        self.which = which
        self.witness = witness
        super().__init__(f"splitting condition {which} fails at {witness.indices}")


class RoundTripMismatch(XprodError):
    """Extraction followed by rebuilding did not reproduce the input algebra."""


class PremiseFail(XprodError):
    """A premise of the universal factorization does not hold."""

    def __init__(self, which, witness):
        self.which = which
        self.witness = witness
        super().__init__(f"premise {which} fails at {witness.indices}")


class NotAlgebraMapResult(XprodError):
    """Internal bug signal: the induced map failed its guaranteed property."""


class SearchSpaceTooLarge(XprodError):
    """Exhaustive enumeration would exceed the configured cap."""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"search space has {size} candidates, cap is {cap}")


class PreconditionFail(XprodError):
    """An operation was called on data outside its stated domain."""


class InternalCheckError(XprodError):
    """Two internally redundant evaluation routes disagreed."""


class DocumentError(XprodError):
    """Input document is syntactically or semantically invalid."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
