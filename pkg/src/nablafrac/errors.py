"""Exception types shared across the package."""


class OffGridError(ValueError):
    """A point or offset falls outside a grid (or is not a unit-step point)."""


class NearSingularError(ValueError):
    """The boundary-condition matrix D is singular to working precision; the
    homogeneous BVP admits nontrivial solutions in the basis span."""


class DegenerateDenominatorError(ValueError):
    """The closed-form conjugate Green's function denominator vanishes."""


class SingularSystemError(ValueError):
    """Dense elimination hit a pivot that is zero to working precision."""
