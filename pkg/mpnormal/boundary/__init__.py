from .functions import TestFunction, BoundaryPair, l2_pairing, l2_norm_squared, phi1
from .triplet import (
	boundary_maps_halfline, boundary_maps_interval, apply_expression, green_form, green_form_interval,
	green_identity_residual, green_identity_residual_interval, surjectivity_witness, sobolev_norms
)
