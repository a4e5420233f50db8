from . import utils  # registers the STEP and PROGRESS logger methods
from .config import Settings, settings
from .log_level import LogLevel


def __getattr__(name):
    if name in ('SignedOSR', 'Superoperator', 'ChoiMatrix', 'MapReport', 'Signature'):
        from . import maps
        return getattr(maps, name)
    elif name in ('Metric', 'EquivalenceResult', 'find_equivalence', 'transform_osr'):
        from . import equivalence
        return getattr(equivalence, name)
    elif name in ('MapDocument', 'load_map', 'save_map', 'gen_fixture'):
        from . import mapio
        return getattr(mapio, name)
    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")

__all__ = [
    'Settings', 'settings', 'LogLevel',
    'SignedOSR', 'Superoperator', 'ChoiMatrix', 'MapReport', 'Signature',
    'Metric', 'EquivalenceResult', 'find_equivalence', 'transform_osr',
    'MapDocument', 'load_map', 'save_map', 'gen_fixture',
]
