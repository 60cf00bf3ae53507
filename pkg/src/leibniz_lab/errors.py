"""Exception hierarchy shared by every module."""


class LeibnizLabError(Exception):
    pass


class FieldError(LeibnizLabError, ValueError):
    """Bad field descriptor or a scalar that does not live in the field."""


class DimensionError(LeibnizLabError, ValueError):
    """Array shapes or dimensions do not fit together."""


class BudgetError(LeibnizLabError):
    """An exhaustive search would exceed the enumeration cap."""

    def __init__(self, what, count, cap):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} candidates exceed the enumeration cap {cap}")


class UnsupportedError(LeibnizLabError):
    """No decision procedure is available for this input (e.g. infinite field search)."""


class NotLeibnizError(LeibnizLabError, ValueError):
    def __init__(self, defects):
        self.defects = defects
        i, j, k, _ = defects[0]
        super().__init__(
            f"bracket violates the Leibniz law at {len(defects)} basis triple(s), "
            f"first at (e{i + 1}, e{j + 1}, e{k + 1})"
        )


class InvalidSystemError(LeibnizLabError, ValueError):
    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failed_axioms())
        super().__init__(f"pre-crossed datum is not a crossed system (failed: {failed})")


class NotSurjectiveError(LeibnizLabError, ValueError):
    pass


class NotMorphismError(LeibnizLabError, ValueError):
    pass


class NotSectionError(LeibnizLabError, ValueError):
    pass


class FormatError(LeibnizLabError, ValueError):
    """Malformed input file; ``where`` locates the offending entry."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
