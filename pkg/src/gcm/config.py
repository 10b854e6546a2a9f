"""Default size caps. Every cap can be overridden per call or from the CLI."""

GROUP_CAP = 24
MATERIALIZE_CAP = 4096
ORACLE_CAP = 10**6
EXACT_CAP = 2048
NUMERIC_CAP = 50_000
IR_CAP = 2000
