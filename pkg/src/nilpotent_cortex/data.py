import json
import logging
import os
import re
import sys

from nilpotent_cortex import parameters
from nilpotent_cortex.errors import ParseError
from nilpotent_cortex.liealg import LieAlgebra
from nilpotent_cortex.utils import format_rational, parse_rational

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r'[,\s]+')

def _find(name, path):
    for root, dirs, files in os.walk(path):
        if name in files:
            return os.path.join(root, name)

def _file_path(name, data_type=None):
    if os.path.isfile(name):
        return name
    if data_type is None:
        file_path = _find(os.path.basename(name), parameters.DATA_PATH)
        if file_path is None:
            raise ParseError("no such file", name)
    else:
        file_path = os.path.join(parameters.DATA_PATH, data_type, name)
    return file_path

# ----------------------------------------------------------------------------
# structure constants
# ----------------------------------------------------------------------------

def algebra_to_record(alg):
    """
    {"dim", "basis", "brackets": [{"i", "j", "coeffs": {k: "p/q"}}]} with 1-based indices.
    """
    brackets = []
    for (i, j), c in alg.brackets:
        coeffs = {str(k + 1): format_rational(v) for k, v in enumerate(c) if v}
        brackets.append({'i': i + 1, 'j': j + 1, 'coeffs': coeffs})
    return {'dim': alg.dim, 'basis': list(alg.basis), 'brackets': brackets}

def _index(value, n, location):
    if isinstance(value, bool) or not isinstance(value, int):
        try:
            value = int(value)
        except (TypeError, ValueError):
            raise ParseError(f"index {value!r} is not an integer", location) from None
    if not 1 <= value <= n:
        raise ParseError(f"index {value} out of range 1..{n}", location)
    return value - 1

def algebra_from_record(record, location='<record>'):
    """
    Build a LieAlgebra from a parsed structure-constants record.

    Parameters:
    - record (dict): Parsed JSON.
    - location (str): Source name used in error messages.

    Returns:
    - LieAlgebra
    """
    if not isinstance(record, dict):
        raise ParseError("top level must be a record", location)
    try:
        n = record['dim']
        basis = record['basis']
        entries = record.get('brackets', [])
    except KeyError as missing:
        raise ParseError(f"missing field {missing}", location) from None
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError(f"dim must be a non-negative integer, got {n!r}", location)
    if not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis):
        raise ParseError(f"basis must list {n} labels", location)
    if len(set(basis)) != n:
        raise ParseError("basis labels must be distinct", location)
    if not isinstance(entries, list):
        raise ParseError("brackets must be a list", location)

    brackets = {}
    for number, entry in enumerate(entries, start=1):
        where = f"{location}: bracket {number}"
        if not isinstance(entry, dict) or not {'i', 'j', 'coeffs'} <= set(entry):
            raise ParseError("bracket needs fields i, j, coeffs", where)
        i = _index(entry['i'], n, where)
        j = _index(entry['j'], n, where)
        if i == j:
            raise ParseError(f"bracket of U{i + 1} with itself", where)
        if (i, j) in brackets or (j, i) in brackets:
            raise ParseError(f"bracket [U{i + 1}, U{j + 1}] given twice", where)
        coeffs = entry['coeffs']
        if not isinstance(coeffs, dict):
            raise ParseError("coeffs must map basis index to rational string", where)
        brackets[i, j] = {_index(k, n, where): parse_rational(str(v), where)
                          for k, v in coeffs.items()}
    return LieAlgebra.from_brackets(tuple(basis), brackets)

def dump_algebra(alg):
    return json.dumps(algebra_to_record(alg), indent=2) + "\n"

def load_algebra(name, data_type=None):
    """
    Read a structure-constants file, given as a path or a file name under data/.
    """
    file_path = _file_path(name, data_type)
    try:
        with open(file_path, encoding='utf-8') as handle:
            record = json.load(handle)
    except OSError as error:
        raise ParseError(error.strerror or str(error), file_path) from None
    except UnicodeDecodeError as error:
        raise ParseError(f"not valid UTF-8: {error.reason}", file_path) from None
    except json.JSONDecodeError as error:
        raise ParseError(f"invalid JSON: {error.msg}",
                         f"{file_path}:{error.lineno}:{error.colno}") from None
    alg = algebra_from_record(record, file_path)
    logger.debug("Loaded %s: dim %d, %d brackets", file_path, alg.dim, len(alg.brackets))
    return alg

def save_algebra(alg, name, data_type='processed'):
    file_path = os.path.join(parameters.DATA_PATH, data_type, name)
    write_output(dump_algebra(alg), file_path)
    return file_path

# ----------------------------------------------------------------------------
# covectors, rational lists, clouds
# ----------------------------------------------------------------------------

def parse_rational_list(text, name='list'):
    """
    Comma- or whitespace-separated rational strings; "@path" reads them from a file.
    """
    location = name
    if text.startswith('@'):
        location = text[1:]
        try:
            with open(location, encoding='utf-8') as handle:
                text = handle.read()
        except OSError as error:
            raise ParseError(error.strerror or str(error), location) from None
        except UnicodeDecodeError as error:
            raise ParseError(f"not valid UTF-8: {error.reason}", location) from None
    items = [item for item in _SEPARATORS.split(text.strip()) if item]
    return tuple(parse_rational(item, f"{location}: entry {k}")
                 for k, item in enumerate(items, start=1))

def parse_covector(text, n=None):
    values = parse_rational_list(text, 'covector')
    if n is not None and len(values) != n:
        raise ParseError(f"covector has {len(values)} entries, expected {n}", 'covector')
    return values

def format_covector(values):
    return ",".join(format_rational(v) for v in values)

def cloud_to_csv(df):
    """Point cloud CSV, one point per row, 17 significant digits."""
    return df.to_csv(sep=',', index=False, float_format=parameters.CSV_FLOAT_FORMAT)

def save_cloud(df, file_path):
    write_output(cloud_to_csv(df), file_path)

def save_data(df, name, data_type='processed', index=False):
    file_path = os.path.join(parameters.DATA_PATH, data_type, name)
    os.makedirs(os.path.dirname(file_path), exist_ok=True)
    df.to_csv(file_path, sep=',', index=index, float_format=parameters.CSV_FLOAT_FORMAT)
    return file_path

def write_output(text, file_path=None, stream=None):
    """Write text to a file, or to stream (stdout) when no path is given."""
    if file_path is None:
        (sys.stdout if stream is None else stream).write(text)
        return
    folder = os.path.dirname(file_path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(file_path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(text)
