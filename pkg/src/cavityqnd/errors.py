class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class TruncationError(DomainError):
    """Photon-number window drops more probability than allowed."""


class ConfigError(ValueError):
    """Invalid or incomplete configuration.

    ``problems`` lists every violated constraint, not only the first one.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
