# # Orders on Z^2 branch without end
#
# Every left order on Z^2 comes from a line through the origin, plus a
# tie-break along the line when its slope is rational.
# Up to radius 6 the admissible cones are exactly the ways such a line
# can cut the ball, and each new radius splits most of them again.

# +
import numpy as np

from leftorders import build_tree, dichotomy_report, parse_group_spec

z2 = parse_group_spec("Z^2")
tree = build_tree(z2, 6)
counts = np.array(tree.counts())
print("cones per radius:", counts)

# +
# growth factor from one radius to the next
print("ratios:", np.round(counts[1:] / counts[:-1], 2))

# +
# how many radius-6 cones lie above each radius-2 node
above = tree.descendant_counts(2, 6)
print("descendants of the 8 radius-2 nodes:", above)

# +
# the finite-horizon report: no node stays rigid, so the space looks perfect
report = dichotomy_report(z2, 2, 4)
print(report.table())
