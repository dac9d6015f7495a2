import json

from json.decoder import scanstring

from mpnormal.errors import ConfigError


class FormatParser:
	def __init__(self, source:str='<config>'):
		self.source = source

	def parse(self, text:str):
		raise NotImplementedError


class PositionedJSON:
	"""Decoded JSON document that remembers where every value starts in the source text.

	Values are addressed by their path, a tuple of object keys and array indices.
	"""
	def __init__(self, text:str):
		try:
			self.data = json.loads(text)
		except json.JSONDecodeError as error:
			raise ConfigError(f"Malformed JSON: {error.msg}", line=error.lineno, column=error.colno)
		self.text = text
		self.positions = {}
		self._decoder = json.JSONDecoder()
		self._walk(self._skip(0), ())

	def _skip(self, index:int) -> int:
		while index < len(self.text) and self.text[index] in ' \t\r\n':
			index += 1
		return index

	def _walk(self, index:int, path:tuple) -> int:
		# the text already decoded once, so the scan can rely on well-formed input
		self.positions[path] = index
		opening = self.text[index]
		if opening == '{':
			index = self._skip(index + 1)
			if self.text[index] == '}':
				return index + 1
			while True:
				key, index = scanstring(self.text, index + 1)
				index = self._skip(self._skip(index) + 1)  # past ':'
				index = self._skip(self._walk(index, path + (key,)))
				if self.text[index] == '}':
					return index + 1
				index = self._skip(index + 1)  # past ','
		if opening == '[':
			index = self._skip(index + 1)
			if self.text[index] == ']':
				return index + 1
			position = 0
			while True:
				index = self._skip(self._walk(index, path + (position,)))
				position += 1
				if self.text[index] == ']':
					return index + 1
				index = self._skip(index + 1)
		_, end = self._decoder.raw_decode(self.text, index)
		return end

	def locate(self, path:tuple) -> tuple:
		# (line, column) of the longest known prefix of path
		path = tuple(path)
		while path not in self.positions and path:
			path = path[:-1]
		offset = self.positions.get(path, 0)
		line = self.text.count('\n', 0, offset) + 1
		column = offset - self.text.rfind('\n', 0, offset)
		return line, column

	def error(self, message:str, path:tuple) -> ConfigError:
		line, column = self.locate(path)
		return ConfigError(f"{message} at '{'/'.join(str(part) for part in path)}'", line=line, column=column)
