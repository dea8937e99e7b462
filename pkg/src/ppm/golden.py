"""Embedded reference values backing the CLI --verify mode.

This is the single source of truth for the bundled verification tables;
the CLI compares freshly computed results against these constants and
exits nonzero on any mismatch.
"""
# Decade checkpoints shared by the prime-count comparison table.
PI_TABLE_CHECKPOINTS = (10, 100, 1_000, 10_000, 100_000, 1_000_000)

# Exact prime counts at the checkpoints.
PI_EXACT = (4, 25, 168, 1_229, 9_592, 78_498)

# Expected model prime-count estimates at the checkpoints.
PI_ESTIMATES_MODEL1 = (4, 27, 184, 1_352, 10_602, 86_739)
PI_ESTIMATES_MODEL2 = (4, 26, 168, 1_212, 9_435, 77_322)
PI_ESTIMATES_MODEL2_STAR = (4, 27, 171, 1_233, 9_618, 78_740)

# Gap comparison table for the first 25 prime indices: actual gaps,
# model-1 gaps, and the indices where the two disagree.
GAP_TABLE_N_MAX = 25
GAP_ACTUAL = (1, 2, 2, 4, 2, 4, 2, 4, 6, 2, 6, 4, 2, 4, 6, 6, 2, 6, 4, 2, 6, 4, 6, 8, 4)
GAP_MODEL1 = (1, 2, 2, 4, 2, 4, 2, 4, 4, 4, 2, 6, 2, 4, 4, 6, 2, 6, 2, 6, 4, 4, 2, 8, 4)
GAP_MISMATCH_INDICES = (9, 10, 11, 12, 15, 19, 20, 21, 23)

# Twin-pair counts by smaller member, with the prime-indexed subset,
# at the decade bounds: (bound, twin pairs, prime-indexed twin pairs).
TWIN_TABLE = (
    (10, 2, 2),
    (100, 8, 6),
    (1_000, 35, 12),
    (10_000, 205, 30),
    (100_000, 1_224, 154),
    (1_000_000, 8_169, 816),
)

# Merit census percentages over indices up to one million:
# (M>1, M<1, M1>1, M1<1, simultaneous agreement). The published prose
# attached the first two pairs to the opposite statistics; the values
# themselves are reproduced exactly by the index-mode census.
MERIT_ALL_PERCENTS = (36.01, 63.99, 37.94, 62.06, 53.34)

# Merit percentages restricted to prime indices up to 78,498: (M>1, M<1).
MERIT_PRIMES_ONLY_PERCENTS = (37.39, 62.61)

# Co-occurrence percentages at one million: share of prime-indexed gaps
# that are twin pairs, and share of twin pairs starting prime-indexed.
CO_OCCURRENCE_PERCENTS = (10.59, 9.98)
