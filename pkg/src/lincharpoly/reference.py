"""Known results used by the self-test and the test suite."""

# L = Z^343 + Z^49 + Z^7 + Z over F_49, q = 7: the level sequence of its
# characteristic polynomials has a minimal relation of the largest possible
# order 2^r = 8.
ORDER8_INSTANCE = "p=7 e=1 m=2 t=1|1|1|1"

# X-coefficients of the minimal polynomial, X^0 first; each entry lists the
# F_7[T] coefficients T^0 first.
ORDER8_MINPOLY = (
    (1, 6, 0, 0, 0, 0, 0, 6, 1),
    (0, 0, 6, 6, 6, 6, 6, 6, 6),
    (3, 3, 1, 6, 4, 2, 0, 2),
    (0, 0, 1, 3, 5, 5),
    (6, 4, 5, 6, 6, 1, 1),
    (0, 0, 1, 5),
    (3, 1, 1, 2),
    (0, 0, 6),
    (1,),
)


def order8_recurrence_coeffs() -> list[tuple[int, ...]]:
    """c_0..c_7 with ``a_{k+8} = sum c_i a_{k+i}``, i.e. negated X-coefficients."""
    return [tuple((-c) % 7 for c in poly) for poly in ORDER8_MINPOLY[:8]]
