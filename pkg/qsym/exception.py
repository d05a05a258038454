class QsymError(Exception):
    pass


class RejectedInput(QsymError, ValueError):
    """An operation was called outside its precondition."""


class BudgetExhausted(QsymError):
    """A bounded witness search ran out of budget.

    Args:
        message (str): What was searched for.
        budget (int | None): The budget that was exhausted.
    """

    def __init__(self, message, budget=None):
        super().__init__(message if budget is None else f'{message} (budget: {budget})')
        self.budget = budget


class Inconclusive(QsymError):
    """Sampling could not certify that the colour classes are dense."""


class OrderCapExceeded(QsymError):
    def __init__(self, cap):
        super().__init__(f'Automorphism group has more than {cap} elements, enumeration aborted.')
        self.cap = cap


class SearchCapExceeded(QsymError):
    def __init__(self, cap):
        super().__init__(f'Distinguishing search tested more than {cap} colourings, search aborted.')
        self.cap = cap
