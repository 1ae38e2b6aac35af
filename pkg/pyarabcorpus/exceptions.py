import logging

logger = logging.getLogger(__name__)


class PyArabCorpusError(Exception):
    def __reduce__(self):
        # Subclasses take extra constructor arguments; rebuild from the final message and attributes instead so
        # errors raised in worker processes survive pickling.
        return (_restore_error, (self.__class__, str(self), dict(self.__dict__)))


def _restore_error(cls, message, state):
    exc = Exception.__new__(cls)
    Exception.__init__(exc, message)
    exc.__dict__.update(state)
    return exc


class ConfigError(PyArabCorpusError, ValueError):
    pass


class ProcessorNotRegisteredError(ConfigError, KeyError):
    def __str__(self):
        # KeyError quotes its argument; keep the plain message.
        return str(self.args[0]) if self.args else ""


class ContextNotAvailableError(ConfigError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DataError(PyArabCorpusError):
    pass


class ManifestError(DataError):
    def __init__(self, message, path=None, line=None, byte_offset=None):
        self.path = path
        self.line = line
        self.byte_offset = byte_offset
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append("line {}".format(line))
        if byte_offset is not None:
            where.append("byte {}".format(byte_offset))
        if where:
            message = "{}: {}".format(", ".join(where), message)
        super(ManifestError, self).__init__(message)


class ManifestSchemaError(ManifestError):
    def __init__(self, message, field, path=None, line=None, byte_offset=None):
        self.field = field
        super(ManifestSchemaError, self).__init__(
            "field `{}`: {}".format(field, message), path=path, line=line, byte_offset=byte_offset
        )


class MissingHypothesisError(DataError):
    def __init__(self, line):
        self.line = line
        super(MissingHypothesisError, self).__init__("line {}: `pred_text` is required for scoring".format(line))


class VttParseError(DataError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        prefix = ""
        if source is not None:
            prefix += "{}: ".format(source)
        if line is not None:
            prefix += "line {}: ".format(line)
        super(VttParseError, self).__init__(prefix + message)


__all__ = [
    "PyArabCorpusError",
    "ConfigError",
    "ProcessorNotRegisteredError",
    "ContextNotAvailableError",
    "DataError",
    "ManifestError",
    "ManifestSchemaError",
    "MissingHypothesisError",
    "VttParseError",
]
