# # The Klein bottle group has four orders
#
# In KB = <x, y | x y x^-1 = y^-1> the sign of x decides everything else
# up to the sign of y.  The prefix tree settles into four paths after the
# first level and never branches again.

# +
from leftorders import build_tree, dichotomy_report, parse_group_spec
from leftorders.dynamics import orbits_at_level

kb = parse_group_spec("KB")
tree = build_tree(kb, 8)
print("cones per radius:", tree.counts())

# +
for cone in tree.levels[1]:
    print(cone.describe())

# +
report = dichotomy_report(kb, 4, 8)
print(report.table())

# +
# conjugating by x swaps the sign of y, so the four orders fall into two orbits
tree7 = build_tree(kb, 7)
partition = orbits_at_level(tree7, 5)
print(partition.mode, [[tree7.node_id(5, i) for i in orbit] for orbit in partition.orbits])
