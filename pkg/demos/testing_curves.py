"""The family of valuations attached to the lines y + t x = 0.

Each smooth curve through the origin takes the value 2 at the single member
whose line is its tangent and 1 at all others, so no one curve detects
every member.

Run with ``python3 demos/testing_curves.py``.
"""

from reesval.plane import demo_testing_curve

table = demo_testing_curve(["0", "1", "2", "3", "inf"],
                           ["Y", "X", "Y + X", "Y + 2*X", "Y + X^2", "X + Y^2", "Y + 5*X"])
print(table.text())
print("\nY + 5*X has its tangent at t = 5, which is not sampled: every value is 1.")
