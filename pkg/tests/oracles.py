"""Independent reference computations built on sympy."""

import itertools

from sympy import GF, Matrix, Poly, symbols

X = symbols("x")


def to_sympy(f, p):
    return Poly(list(reversed([int(v) for v in f.values])) or [0], X, domain=GF(p))


def monic_coeffs(poly, p):
    if poly.is_zero:
        return []
    return [int(c) % p for c in reversed(poly.monic().all_coeffs())]


def determinantal_divisors(M, p):
    """Monic gcd of all j x j minors for j = 1..min(rows, cols), commutative case."""
    grid = Matrix(M.rows, M.cols, lambda i, j: to_sympy(M[i, j], p).as_expr())
    out = []
    for j in range(1, min(M.rows, M.cols) + 1):
        g = Poly(0, X, domain=GF(p))
        for rs in itertools.combinations(range(M.rows), j):
            for cs in itertools.combinations(range(M.cols), j):
                det = grid.extract(list(rs), list(cs)).det(method="berkowitz")
                g = g.gcd(Poly(det, X, domain=GF(p)))
        if g.is_zero:
            break
        out.append(monic_coeffs(g, p))
    return out


def snf_matches_determinantal(M, diagonal, p):
    """prod_{i<=j} e_i equals the j-th determinantal divisor for every j."""
    dets = determinantal_divisors(M, p)
    if len(dets) != len(diagonal):
        return False
    acc = Poly(1, X, domain=GF(p))
    for e, d in zip(diagonal, dets):
        acc = acc * to_sympy(e, p)
        if monic_coeffs(acc, p) != d:
            return False
    return True
