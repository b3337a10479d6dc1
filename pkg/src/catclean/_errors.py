"""Exception types shared by the kernels and the public modules."""


class LexError(ValueError):
    """Raised for unterminated comments and string literals."""

    def __init__(self, what: str, line: int, col: int):
        self.what = what
        self.line = line
        self.col = col
        super().__init__(f"unterminated {what} at line {line}, col {col}")

    def __reduce__(self):
        return (type(self), (self.what, self.line, self.col))
