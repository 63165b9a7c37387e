"""Independent reference computations for frozen test values.

Plain nested lists of ``Fraction`` with triple-loop products, so nothing here
shares code paths with numpy or the package.
"""

from fractions import Fraction as F


def diag(*vals):
    n = len(vals)
    return [[F(vals[i]) if i == j else F(0) for j in range(n)] for i in range(n)]


def mat(rows):
    return [[F(x) for x in row] for row in rows]


def mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def tr(a):
    return sum(a[i][i] for i in range(len(a)))


def word_trace(word, mats):
    prod = mats[word[0] - 1]
    for i in word[1:]:
        prod = mul(prod, mats[i - 1])
    return tr(prod)


def hs_sq(a):
    return sum(x * x for row in a for x in row)


# exact matrices of the two separating pairs
PROP1_RHO0 = diag(F(1, 2), F(1, 2), 0)
PROP1_SIGMA0 = diag(F(1, 2), 0, F(1, 2))
PROP1_RHO1 = diag(F(1, 2), F(1, 2), 0)
PROP1_SIGMA1 = mat([[F(1, 4), 0, F(1, 4)], [0, F(1, 4), 0], [F(1, 4), 0, F(1, 2)]])

PROP3_RHO = diag(F(1, 2), F(1, 2), 0, 0)
PROP3_SIGMA0 = diag(F(1, 2), 0, F(1, 2), 0)
PROP3_SIGMA1 = mat(
    [
        [F(1, 4), 0, F(1, 4), 0],
        [0, F(1, 4), 0, F(1, 4)],
        [F(1, 4), 0, F(1, 4), 0],
        [0, F(1, 4), 0, F(1, 4)],
    ]
)
