"""The two classification tables.

``MINIMAL_INFINITE`` maps each minimal infinite triple to its witnessing
dimension vector and the common value dim P/Q_u = dim q_u/q_u'.  Three of the
printed vectors are longer than t = a1 + a2 + a3; they are stored truncated to
length t.  The truncations are the primitive radical vectors of the
corresponding quadratic forms (checked in the test-suite).

``MAXIMAL_FINITE`` lists the maximal finite patterns; ``None`` marks a free
parameter, compared as +infinity.
"""

MINIMAL_INFINITE = {
    (1, 3, 5): ((3, 2, 2, 2, 1, 1, 1, 1, 1), 48),
    (1, 4, 3): ((2, 1, 1, 1, 1, 1, 1, 1), 20),
    (1, 6, 2): ((3, 1, 1, 1, 1, 1, 1, 2, 2), 42),
    (2, 2, 5): ((2, 2, 3, 3, 1, 1, 1, 1, 1), 54),
    (2, 3, 2): ((1, 1, 1, 1, 1, 1, 1), 12),
    (3, 2, 3): ((1, 1, 1, 2, 2, 1, 1, 1), 24),
}

MAXIMAL_FINITE = (
    (1, 2, None),
    (1, None, 1),
    (None, 1, None),
    (1, 3, 4),
    (1, 5, 2),
    (2, 2, 4),
)
