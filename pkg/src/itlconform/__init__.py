"""Conformance testing for IEEE 1788 interval arithmetic libraries."""
from importlib import resources

__version__ = '0.1.0'


def data_path(name: str):
    """Path to a bundled data file such as ``sample.itl``."""
    return resources.files(__name__) / 'data' / name
