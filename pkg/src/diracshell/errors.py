"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ScenarioError(ValueError):
    """A scan scenario violates one or more constraints.

    All violations are collected in ``problems`` so that callers can report
    them at once instead of failing on the first.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
