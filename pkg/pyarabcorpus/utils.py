from six import string_types


def yield_all(str_or_iter):
    """Yield the items of a list-like value, or the value itself if it is a string or scalar.

    Config values such as `requires` or `reference` may be given as one string or a list of strings.
    """

    def list_like(v):
        return hasattr(v, "__iter__") and not isinstance(v, (string_types, dict))

    if str_or_iter is None:
        return
    if list_like(str_or_iter):
        for item in str_or_iter:
            yield item
    else:
        yield str_or_iter


def split_words(str_or_iter):
    """`"a b"` -> `["a", "b"]`; lists pass through."""
    if isinstance(str_or_iter, string_types):
        return str_or_iter.split()
    return list(yield_all(str_or_iter))


def chunked(iterable, size):
    batch = []
    for item in iterable:
        batch.append(item)
        if len(batch) >= size:
            yield batch
            batch = []
    if batch:
        yield batch


__all__ = ["yield_all", "split_words", "chunked"]
