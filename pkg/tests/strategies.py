import cmath
import math

import hypothesis.strategies as st


def disc_points(max_modulus=0.95):
    return st.builds(lambda r, t: r * cmath.exp(1j * t),
                     st.floats(0, max_modulus), st.floats(0, 2 * math.pi))


def angles():
    return st.floats(-math.pi, math.pi, allow_nan=False)
