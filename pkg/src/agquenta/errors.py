"""Exception types shared by the construction layers."""


class ConstraintViolation(ValueError):
    """Inputs violate a stated hypothesis of a construction.

    hypothesis carries the condition verbatim, suitable for user-facing
    diagnostics.
    """

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(hypothesis + (f" ({detail})" if detail else ""))


class PropositionFalsified(AssertionError):
    """A verified identity failed on inputs satisfying its hypotheses."""
