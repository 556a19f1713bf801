"""Integer kind codes shared by both kernel backends."""

LINEAR = 0
QUADRATIC = 1
DISCRETE = 2
EXAMPLE2 = 3
EXAMPLE3 = 4
EXAMPLE4 = 5

# 1 + a w within a few ulp of zero is read as a = -1/w exactly
SNAP_ULPS = 4.0 * 2.220446049250313e-16
