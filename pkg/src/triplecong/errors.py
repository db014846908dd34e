class BudgetExceeded(RuntimeError):
    """A requested computation is larger than the configured resource budget."""

    def __init__(self, what: str, size: int, budget: int) -> None:
        super().__init__(f"{what}: {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget
