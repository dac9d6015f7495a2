from typing import Optional


class MPNormalError(ValueError):
	def __init__(self, message:str):
		super().__init__(message if message.startswith('[Error]') else f'[Error] {message}')


class ValidationError(MPNormalError):
	pass


class SignConstraintError(MPNormalError):
	pass


class InconsistentCoefficientsError(MPNormalError):
	pass


class IntegrabilityError(MPNormalError):
	pass


class NoWitnessError(MPNormalError):
	pass


class ConfigError(MPNormalError):
	def __init__(self, message:str, line:Optional[int]=None, column:Optional[int]=None):
		self.line = line
		self.column = column
		if line is not None:
			message = f'{message} (line {line}, column {column})'
		super().__init__(message)


#
# numerical failures
#

class NumericalError(ArithmeticError):
	def __init__(self, message:str):
		super().__init__(message if message.startswith('[Error]') else f'[Error] {message}')


class RangeError(NumericalError):
	pass


class PrecisionLossError(NumericalError):
	def __init__(self, message:str, mu:Optional[complex]=None):
		self.mu = mu
		super().__init__(message)


class NearSingularError(NumericalError):
	def __init__(self, message:str, mu:Optional[complex]=None, branch:Optional[int]=None):
		self.mu = mu
		self.branch = branch
		super().__init__(message)


class PrecisionWarning(RuntimeWarning):
	pass
