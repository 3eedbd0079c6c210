# # Branching in the free group of rank two
#
# F2 has far more room than Z^2: the number of admissible cones on the
# ball of radius r grows very fast, and the brute force oracle agrees
# with the search wherever it is affordable.

# +
import time

from leftorders import build_tree, dichotomy_report, oracle_enumerate, parse_group_spec

f2 = parse_group_spec("F2")
start = time.perf_counter()
tree = build_tree(f2, 4)
print("cones per radius:", tree.counts(), f"({time.perf_counter() - start:.1f}s)")
print("search nodes per level:", tree.nodes_visited)

# +
# 2^16 raw sign patterns on ball(2), filtered with numpy
assert oracle_enumerate(f2, 2) == tree.levels[2]
print("oracle agrees at radius 2")

# +
# capped extension search keeps the horizon affordable
report = dichotomy_report(f2, 3, 5)
print(report.table())
