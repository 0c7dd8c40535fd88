"""Default resource caps shared across the verification modules."""

# largest hyperspace carrier built without an explicit override
CARRIER_CAP = 1 << 16

# largest pointwise sweep run exhaustively
SWEEP_CAP = 10**6

# largest open-set lattice whose Scott-open families are swept exhaustively
FAMILY_CAP = 16

# largest compact-family count for the exhaustive well-filteredness sweep
FILTER_BASIS_CAP = 12

# labelled-poset generation cap (2^(n(n-1)) candidates are filtered)
GENERATION_CAP = 4


class SizeCapExceeded(RuntimeError):
    """A carrier or sweep outgrew its cap; sampling or a higher cap helps."""

    def __init__(self, stage: str, cap: int):
        self.stage = stage
        self.cap = cap
        super().__init__(f"{stage} exceeds cap {cap}")
