# # Conjugation moves orders around
#
# The group acts on its own orders: x is positive for the moved order
# when g x g^-1 was positive before.  Abelian groups act trivially; the
# Heisenberg group does not.

# +
from leftorders import act, build_tree, parse_group_spec, verify_cocycle
from leftorders.dynamics import is_biorder_candidate, orbits_at_level

z2 = parse_group_spec("Z^2")
tree = build_tree(z2, 4)
partition = orbits_at_level(tree, 2)
print("Z^2 orbit sizes:", [len(o) for o in partition.orbits])

# +
h3 = parse_group_spec("H3")
tree = build_tree(h3, 4)
x, y = h3.generators[:2]
cone = tree.levels[4][0]
moved = act(cone, x)
print("radius", cone.radius, "->", moved.radius)
print("cocycle holds:", verify_cocycle(cone, x, y))

# +
candidates = sum(is_biorder_candidate(c) for c in tree.levels[4])
print(f"{candidates} of {len(tree.levels[4])} radius-4 cones are fixed by every generator")

# +
partition = orbits_at_level(tree, 1)
print("H3 level-1 orbits:", partition.orbits, partition.mode)
