"""Finding (s,k)-configurations and telling f-freeness from g-freeness.

Run:  python3 demos/01_configurations.py
"""

from configlab import Hypergraph, fano_plane, find_configuration, freeness_report

# Two triples sharing a pair span four vertices: a (4,2)-configuration.
pair = Hypergraph(5, ((0, 1, 2), (0, 1, 3)))
print("pair:", find_configuration(pair, 4, 2))

# The Fano plane is linear, so no two lines span fewer than five points.
fano = fano_plane()
print("Fano (4,2):", find_configuration(fano, 4, 2))

# Yet four lines missing a common point live on six points.
print("Fano (6,4):", find_configuration(fano, 6, 4))

# Three triples on four points are harmless for f at k=4 but break g.
k4minus = Hypergraph(8, ((0, 1, 2), (0, 1, 3), (0, 2, 3), (5, 6, 7)))
rep = freeness_report(k4minus, 4)
print(f"k=4: f-free={rep.is_f_free} g-free={rep.is_g_free} witness={rep.first_violation}")

# On multi-hypergraphs a repeated edge is a (3,2)-configuration.
twin = Hypergraph(6, ((0, 1, 2), (0, 1, 2), (3, 4, 5)), multi_allowed=True)
print("twin, k=3:", freeness_report(twin, 3).to_json())
