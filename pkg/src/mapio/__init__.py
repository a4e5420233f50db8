_DOCUMENT = (
    'FILE_SUFFIX', 'MapDocument', 'MatrixObject', 'OSRTermObject', 'WitnessDocument',
    'analyze_document', 'check_shapes', 'choi_from_document', 'document_from_choi', 'document_from_matrix',
    'document_from_osr', 'document_from_superop', 'dumps_map', 'dumps_witness', 'load_map', 'loads_map',
    'map_from_document', 'matrix_from_document', 'osr_from_document', 'save_map',
    'save_witness', 'superop_from_document',
)
_FIXTURES = ('FIXTURES', 'MapFixture', 'gen_fixture')


def __getattr__(name):
    if name in _DOCUMENT:
        from . import document
        return getattr(document, name)
    elif name in _FIXTURES:
        from . import fixtures
        return getattr(fixtures, name)
    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")


__all__ = list(_DOCUMENT + _FIXTURES)
