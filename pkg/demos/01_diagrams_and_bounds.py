"""Ferrers diagrams and the dimension bound.

A diagram is a top-aligned dot pattern encoded by its column cardinalities.
For a chosen rank distance delta, no linear code supported on the diagram
can have dimension above min_i v_i, where v_i counts the dots left after
deleting the first i rows and the rightmost delta-1-i columns.
"""

from fdrm import FerrersDiagram, combine_diagrams, full_diagram, singleton_bound

d = FerrersDiagram.parse("[2,3,3,5]")
print(f"diagram {d} has {d.m} rows, {d.n} columns, {d.dots} dots:")
print(d.render())
print()

for delta in range(1, d.n + 1):
    bound, v = singleton_bound(d, delta)
    print(f"delta={delta}: bound={bound} v={v}")
print()

full = full_diagram(4, 4)
bound, _ = singleton_bound(full, 2)
print(f"full 4x4 diagram, delta=2: bound={bound} "
      f"(= max(m,n)*(min(m,n)-delta+1) = {4 * 3})")
print()

left = FerrersDiagram.parse("[2,3,3]")
right = FerrersDiagram.parse("[2]")
combined = combine_diagrams(left, right, m3=3, n3=1)
print(f"{left} over {right} with a full 3x1 spacer -> {combined}:")
print(combined.render())
