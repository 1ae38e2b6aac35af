import logging

from six import string_types

from . import exceptions
from .utils import split_words

logger = logging.getLogger(__name__)

_PROCESSORS = {}


class NoParams(object):
    """Params class for steps that take no params."""

    @classmethod
    def from_params(cls, params):
        if params:
            raise exceptions.ConfigError("This step takes no params, got: {}".format(", ".join(sorted(params))))
        return None


class Processor(object):
    def __init__(self, name, func, params=None, requires=None):
        self.name = name
        self.func = func
        self.params = params or NoParams
        self.requires = split_words(requires) if requires else []

    def parse_params(self, params):
        if params is not None and not isinstance(params, dict):
            raise exceptions.ConfigError("Params of step `{}` must be a mapping.".format(self.name))
        try:
            return self.params.from_params(params or {})
        except exceptions.ConfigError as exc:
            raise exceptions.ConfigError("Step `{}`: {}".format(self.name, exc))

    def bind(self, params, context):
        """
        Resolve `requires` against `context` and return a `BoundStep`.

        Params objects with a `prepare()` method get it called here, once, so shared read-only state (such as the
        dedup reference keys) is built before any worker starts.
        """
        kwargs = {}
        for item in self.requires:
            try:
                kwargs[item] = context[item]
            except (KeyError, TypeError):
                raise exceptions.ContextNotAvailableError(
                    "{} is not available in the context of step `{}`.".format(item, self.name)
                )
        if hasattr(params, "prepare"):
            params = params.prepare()
        return BoundStep(self.name, self.func, params, kwargs)

    def __repr__(self):
        return "<Processor {}>".format(self.name)


class BoundStep(object):
    """A processor with its params and context resolved.  Picklable, so compiled pipelines can ship to workers."""

    def __init__(self, name, func, params, kwargs):
        self.name = name
        self.func = func
        self.params = params
        self.kwargs = kwargs

    def __call__(self, sample):
        return self.func(sample, self.params, **self.kwargs)


def processor(name, params=None, requires=None):
    """
    Decorator registering a pipeline step.

    The decorated function is called as `func(sample, params, **context_items)` and returns `None` (keep as is),
    a replacement `Sample`, a `DropDecision`, a flag message string, or a list of those.
    `params` (optional) is a class with a `from_params(mapping)` constructor validating the step's params.
    `requires` (optional) names context items, such as `alphabet`, to inject as keyword arguments.
    """

    def decorator(processor_func):
        if name in _PROCESSORS:
            raise ValueError("Processor `{}` is already registered.".format(name))
        _PROCESSORS[name] = Processor(name, processor_func, params, requires)
        return processor_func

    return decorator


def get_processor(name):
    if not isinstance(name, string_types):
        raise exceptions.ConfigError("Step name must be a string, got {!r}".format(name))
    try:
        return _PROCESSORS[name]
    except KeyError:
        raise exceptions.ProcessorNotRegisteredError(
            "No processor named `{}` (available: {}).".format(name, ", ".join(sorted(_PROCESSORS)))
        )


def registered_processors():
    return sorted(_PROCESSORS)


__all__ = ["NoParams", "Processor", "BoundStep", "processor", "get_processor", "registered_processors"]
