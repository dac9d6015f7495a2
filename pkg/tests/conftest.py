import numpy as np
import pytest
import scipy.linalg as la

from mpnormal.extensions import ExtensionParams, build_problem, scalar_extension
from mpnormal.operators import UnitaryOperator


def make_hermitian(rng:np.random.Generator, dim:int) -> np.ndarray:
	matrix = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
	return (matrix + matrix.conj().T) / 2


def make_psd(rng:np.random.Generator, dim:int, rank:int=None) -> np.ndarray:
	rank = dim if rank is None else rank
	factor = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
	return factor @ factor.conj().T


def make_unitary(rng:np.random.Generator, dim:int) -> np.ndarray:
	matrix = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
	unitary, upper = la.qr(matrix)
	# fix the phases so the distribution is Haar
	return unitary * (np.diag(upper) / np.abs(np.diag(upper)))


def make_vector(rng:np.random.Generator, dim:int) -> np.ndarray:
	return rng.normal(size=dim) + 1j * rng.normal(size=dim)


@pytest.fixture
def rng():
	return np.random.default_rng(1234)


@pytest.fixture
def scalar_periodic():
	problem = build_problem(-1., 0., 1., 2., A1=[[0.]], A2=[[0.]], A3=[[0.]])
	return problem, scalar_extension(0., 0.)


@pytest.fixture
def scalar_phase():
	problem = build_problem(-1., 0., 1., 2., A1=[[0.]], A2=[[2.]], A3=[[0.]])
	return problem, scalar_extension(0., np.pi / 2)


@pytest.fixture
def diag_2x2():
	problem = build_problem(
		-1., 0., .5, 1.5,
		A1=np.diag([-1., 0.]), A2=np.diag([1., 3.]), A3=np.diag([0., 2.])
	)
	params = ExtensionParams(
		W1=UnitaryOperator([[0., 1.], [1., 0.]], name='W1'),
		W2=UnitaryOperator(np.eye(2), name='W2')
	)
	return problem, params
