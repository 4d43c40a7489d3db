class ArgumentError(ValueError):
    pass


class DomainError(ValueError):
    pass


class DegenerateMeasureError(DomainError):
    pass
