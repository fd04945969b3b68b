"""Published quasi-exact critical values used as reference data in tests.

Rows are n = 10, 15, 20, 30, 50, 100; columns are the coverages in
``COVERAGES``; ``None`` marks cells published as NA.
"""

COVERAGES = (0.7, 0.8, 0.85, 0.9, 0.95, 0.96, 0.97, 0.98, 0.99)
N_ROWS = (10, 15, 20, 30, 50, 100)

ASYMPTOTIC = (1.074, 1.642, 2.072, 2.706, 3.841, 4.218, 4.709, 5.412, 6.635)

NORMAL = (
    (1.342, 2.134, 2.777, 3.831, 6.054, 6.953, 8.183, 10.285, None),
    (1.226, 1.905, 2.444, 3.265, 4.873, 5.469, 6.267, 7.444, 9.82),
    (1.181, 1.824, 2.321, 3.076, 4.491, 4.986, 5.624, 6.607, 8.461),
    (1.138, 1.75, 2.216, 2.911, 4.183, 4.612, 5.204, 6.017, 7.54),
    (1.11, 1.699, 2.147, 2.812, 4.01, 4.416, 4.925, 5.712, 7.046),
    (1.093, 1.666, 2.11, 2.752, 3.902, 4.307, 4.801, 5.502, 6.785),
)

EXPONENTIAL = (
    (1.584, 2.58, 3.442, 4.976, 9.019, None, None, None, None),
    (1.389, 2.202, 2.884, 3.953, 6.243, 7.163, 8.496, 10.76, None),
    (1.303, 2.046, 2.639, 3.558, 5.414, 6.105, 7.055, 8.552, None),
    (1.221, 1.897, 2.429, 3.224, 4.758, 5.301, 6.042, 7.133, 9.283),
    (1.158, 1.789, 2.266, 2.977, 4.224, 4.801, 5.39, 6.303, 7.91),
    (1.115, 1.71, 2.164, 2.836, 4.056, 4.474, 5.007, 5.79, 7.156),
)

UNIFORM = (
    (1.207, 1.875, 2.418, 3.265, 5.093, 5.831, 6.913, 8.805, None),
    (1.152, 1.768, 2.242, 2.955, 4.281, 4.742, 5.402, 6.399, 8.35),
    (1.126, 1.734, 2.186, 2.873, 4.11, 4.519, 5.093, 5.894, 7.375),
    (1.111, 1.698, 2.144, 2.81, 3.978, 4.367, 4.884, 5.645, 6.921),
    (1.097, 1.671, 2.114, 2.758, 3.921, 4.308, 4.81, 5.525, 6.785),
    (1.083, 1.655, 2.094, 2.734, 3.891, 4.259, 4.757, 5.453, 6.696),
)

GAMMA21 = (
    (1.463, 2.35, 3.099, 4.347, 7.301, 8.61, 10.595, None, None),
    (1.312, 2.058, 2.656, 3.597, 5.508, 6.234, 7.275, 8.905, None),
    (1.241, 1.94, 2.481, 3.312, 4.935, 5.531, 6.327, 7.547, 9.988),
    (1.177, 1.826, 2.334, 3.067, 4.495, 4.96, 5.606, 6.591, 8.391),
    (1.133, 1.743, 2.21, 2.891, 4.184, 4.609, 5.181, 6.014, 7.47),
    (1.1, 1.691, 2.133, 2.789, 3.979, 4.368, 4.883, 5.66, 6.958),
)

CHISQ1 = (
    (1.829, 3.086, 4.26, 6.563, None, None, None, None, None),
    (1.547, 2.504, 3.298, 4.69, 7.978, 9.451, None, None, None),
    (1.419, 2.258, 2.94, 4.054, 6.428, 7.385, 8.74, None, None),
    (1.295, 2.033, 2.626, 3.519, 5.342, 5.983, 6.917, 8.313, None),
    (1.205, 1.869, 2.38, 3.175, 4.636, 5.165, 5.836, 6.86, 8.854),
    (1.135, 1.746, 2.217, 2.915, 4.191, 4.62, 5.205, 6.052, 7.549),
)
