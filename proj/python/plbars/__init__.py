"""Exact action spectra, barcode certificates, and bottleneck distances.

Thin wrappers around the C++ extension module.  Profiles and scenarios are
passed as plain text (the same formats the command line tool reads); barcodes
and certificates travel as JSON.
"""

import json as _json

from ._plbars import (
    barcode_svg as _barcode_svg,
    bottleneck,
    case_of,
    certificate_json,
    oscillation,
    reduce_complex as _reduce_complex,
    spectrum_json,
    sup_distance,
)

__all__ = [
    "spectrum",
    "spectrum_json",
    "certificate",
    "certificate_json",
    "bottleneck",
    "reduce_complex",
    "barcode_svg",
    "sup_distance",
    "oscillation",
    "case_of",
]


def spectrum(profile, **kwargs):
    """Indexed action spectrum of a profile text, as a list of dicts."""
    return _json.loads(spectrum_json(profile, **kwargs))


def certificate(scenario):
    """Depth-bound certificate for a key=value scenario text, as a dict."""
    return _json.loads(certificate_json(scenario))


def reduce_complex(complex_data):
    """Barcodes of a filtered complex (dict or JSON text), as a list of dicts."""
    if not isinstance(complex_data, str):
        complex_data = _json.dumps(complex_data)
    return _json.loads(_reduce_complex(complex_data))


def barcode_svg(barcodes):
    """SVG rendering of a list of barcode dicts (or their JSON text)."""
    if not isinstance(barcodes, str):
        barcodes = _json.dumps(barcodes)
    return _barcode_svg(barcodes)
