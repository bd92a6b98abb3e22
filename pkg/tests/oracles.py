"""Brute-force oracles, kept deliberately independent of the package:
plain loops over bounded exponent boxes, no shared enumeration code."""

from itertools import product


def count_monomial_classes(weights, signs, target_weight, radius=12):
    """Exponent tuples with e_k <= -1 where signs[k] is True and e_k >= 0
    elsewhere, of the given weight; scanned over a box of the given radius."""
    count = 0
    ranges = [range(-radius, 0) if s else range(0, radius + 1) for s in signs]
    for e in product(*ranges):
        if sum(a * w for a, w in zip(e, weights)) == target_weight:
            count += 1
    return count


def plus_side_count(weights, i, radius=12):
    signs = [w > 0 for w in weights]
    return count_monomial_classes(weights, signs, i, radius)


def minus_side_count(weights, i, radius=12):
    signs = [w < 0 for w in weights]
    return count_monomial_classes(weights, signs, i, radius)


def polynomial_piece_count(fine_degrees, mu, radius=12):
    """Monomials of a polynomial ring in a fine degree, by direct scan."""
    count = 0
    for e in product(range(radius + 1), repeat=len(fine_degrees)):
        deg = [sum(e[k] * fine_degrees[k][j] for k in range(len(e)))
               for j in range(len(mu))]
        if tuple(deg) == tuple(mu):
            count += 1
    return count


def cubic_coarse_dims(max_degree):
    """Dimension of the degree-3m part of a polynomial ring in 2 variables,
    for m = 0..max_degree (the twisted-cubic coarse Hilbert function)."""
    out = []
    for m in range(max_degree + 1):
        n = 0
        for a in range(3 * m + 1):
            b = 3 * m - a
            if b >= 0:
                n += 1
        out.append(n)
    return out
