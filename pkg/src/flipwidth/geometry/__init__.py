from .cubes import (
    gen_hypercube,
    gen_rig_points,
    gen_subdivided_bipartite,
    gen_subdivided_complete,
    hypercube_interchange,
    rig_graph,
)
from .delaunay import (
    delaunay_graph,
    delaunay_graph_bruteforce,
    even_subgraph,
    even_vertices,
    gen_delaunay_points,
    stereographic_project,
    torus_pole,
)
from .families import FAMILIES, Realization, realize
from .intervals import (
    chord_intersection_graph,
    gen_intervals,
    gen_segments,
    gen_unit_squares,
    interval_containment_graph,
    interval_intersection_graph,
    permutation_to_chords,
    segment_intersection_graph,
    square_intersection_graph,
)
from .metric import (
    beta_skeleton_graph,
    gen_beta_skeleton,
    gen_unit_disks,
    gen_unit_distance,
    lune_contains,
    unit_disk_graph,
    unit_distance_graph,
)
from .scene import Scene, scene_from_dict, scene_to_dict
from .svg import render_grid_pairs, render_svg
from .visibility import Polygon, designated_view, gen_visibility_polygon, visibility_graph
