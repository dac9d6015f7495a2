from .sets import SpectralSet, EmptySet, ImaginaryAxis, PointSet, EigenvalueLattice, AxisComplement, Union, set_from_dict, merge_points
from .result import SpectrumResult
from .interval import (
	BranchWindow, IntervalEigenvalue, ResolventSolution, branch_range, monodromy, characteristic_residual,
	interval_eigenvalues, eigenvalue_lattice, eigenfunction, resolvent_apply
)
from .halfline import (
	PointSpectrumVerdict, ContinuousSpectrumCertificate, NonSurjectivityWitness, point_spectrum_check,
	halfline_resolvent_norms, continuous_spectrum, nonsurjectivity_witness, full_halfline_spectrum
)
from .composite import (
	interval_spectrum, direct_sum_point, block_diagonal_point, full_spectrum, membership, componentwise_membership
)
