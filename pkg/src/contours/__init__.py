from .geometry import (Contour, Crossing, NonCrossingDecomposition, clusters, contour_from_bonds,
                       decompose_noncrossing, edge_boundary, epsilon_contours_at, fill, inner_components,
                       is_contour, is_crossing, is_l1_connected, outer_contour)
from .energy import delta_H, flip_map, half_delta_identity, theta_mask
from .trap import TrapEvent, midpoint_delta_1, trap_indicator, trap_members
from .counting import (MAX_COUNT_LENGTH, connected_sets_containing, contours_enclosing, count_contours_through,
                       counting_bound, peierls_sum)
from .lemmas import (LemmaReport, check_center_energy, check_interval_energy, check_lemma31, check_lemma32,
                     check_multi_contour_energy, check_noncrossing_energy, check_single_side_energy,
                     lemma31_constant)
from .sampling import random_contour, random_contour_instance
from .textio import contour_from_text, contour_to_text
