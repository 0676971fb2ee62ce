"""Resource budgets. Values can be overridden through environment variables."""

import os

# Largest field size q = p^n that may be enumerated.
FIELD_BUDGET = int(os.environ.get("SYMKL_FIELD_BUDGET", 2_000_000))

# Largest (q - 1) * p cell count for the trace-count table.
COUNT_TABLE_BUDGET = int(os.environ.get("SYMKL_COUNT_TABLE_BUDGET", 40_000_000))

# Digits of double precision the float moment path may consume.
FLOAT_DIGITS = 14.0
