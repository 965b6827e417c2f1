"""JSON encodings shared by the CLI.

Field elements are prime-field coefficient lists (lowest first, trailing zeros
trimmed, zero is ``[0]``); skew polynomials are lists of elements, lowest
degree first, with ``[]`` for zero.
"""

from .errors import DescriptorError, SkewCodesError
from .galois import FieldElement, Level, make_tower, normal_basis_from
from .nrscode import NrsCode
from .skewpoly import SkewPoly
from .smithform import SkewMatrix, SnfResult
from .sqccode import SqcCode


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise DescriptorError("missing field %r" % key)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise DescriptorError("field %r must be %s" % (key, kind.__name__))
    return value


def _int(obj, key):
    v = _require(obj, key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise DescriptorError("field %r must be an integer" % key)
    return v


# -- fields ------------------------------------------------------------------

def field_to_json(tower):
    return {"p": tower.p, "a": tower.a, "m": tower.m, "modulus": list(tower.modulus)}


def field_from_json(obj):
    p, a, m = _int(obj, "p"), _int(obj, "a"), _int(obj, "m")
    modulus = obj.get("modulus")
    if modulus is not None and (not isinstance(modulus, list)
                                or not all(isinstance(c, int) for c in modulus)):
        raise DescriptorError("modulus must be a list of integers")
    try:
        return make_tower(p, a, m, modulus)
    except SkewCodesError:
        raise
    except (TypeError, ValueError) as exc:
        raise DescriptorError(str(exc)) from exc


def element_to_json(x):
    T = x.tower
    d = T.digits(x.value)
    while len(d) > 1 and d[-1] == 0:
        d.pop()
    return d


def element_from_json(tower, data):
    if isinstance(data, bool) or not isinstance(data, list) or not data:
        raise DescriptorError("field element must be a nonempty coefficient list, got %r" % (data,))
    if not all(isinstance(c, int) and not isinstance(c, bool) for c in data):
        raise DescriptorError("field element coefficients must be integers: %r" % (data,))
    if len(data) > tower.m:
        raise DescriptorError("field element %r has more than m = %d coefficients" % (data, tower.m))
    return tower.element(data)


def value_to_json(tower, v):
    return element_to_json(FieldElement(tower, v))


# -- skew polynomials and matrices ---------------------------------------------

def poly_to_json(f):
    return f.to_json()


def poly_from_json(tower, data, level=None):
    if not isinstance(data, list):
        raise DescriptorError("skew polynomial must be a list of elements, got %r" % (data,))
    try:
        return SkewPoly(tower, [element_from_json(tower, c) for c in data], level)
    except DescriptorError:
        raise
    except SkewCodesError as exc:
        raise DescriptorError(str(exc)) from exc


def matrix_to_json(M):
    return {"rows": M.rows, "cols": M.cols,
            "entries": [[poly_to_json(e) for e in row] for row in M.entries]}


def matrix_from_json(tower, obj, level=Level.MIDDLE):
    rows, cols = _int(obj, "rows"), _int(obj, "cols")
    entries = _require(obj, "entries", list)
    if len(entries) != rows or any(not isinstance(r, list) or len(r) != cols for r in entries):
        raise DescriptorError("entries do not form a %dx%d grid" % (rows, cols))
    grid = [[poly_from_json(tower, e) for e in r] for r in entries]
    try:
        return SkewMatrix(tower, rows, cols, grid, level)
    except SkewCodesError as exc:
        raise DescriptorError(str(exc)) from exc


def snf_to_json(res):
    return {"S": matrix_to_json(res.S), "T": matrix_to_json(res.T), "J": matrix_to_json(res.J),
            "S_inv": matrix_to_json(res.S_inv), "T_inv": matrix_to_json(res.T_inv),
            "diagonal": [poly_to_json(e) for e in res.diagonal]}


def snf_from_json(tower, obj, level=Level.MIDDLE):
    mats = {k: matrix_from_json(tower, _require(obj, k, dict), level)
            for k in ("S", "T", "J", "S_inv", "T_inv")}
    diag = tuple(poly_from_json(tower, e, level) for e in _require(obj, "diagonal", list))
    return SnfResult(diagonal=diag, **mats)


# -- codes ---------------------------------------------------------------------

def code_to_json(code):
    return {"field": field_to_json(code.tower),
            "alpha": [element_to_json(a) for a in code.alpha],
            "k": code.k, "ell": code.ell}


def code_from_json(obj):
    T = field_from_json(_require(obj, "field", dict))
    alpha = [element_from_json(T, a) for a in _require(obj, "alpha", list)]
    k = _int(obj, "k")
    ell = obj.get("ell", 1)
    if isinstance(ell, bool) or not isinstance(ell, int):
        raise DescriptorError("field 'ell' must be an integer")
    return NrsCode(T, tuple(alpha), k, ell)


def sqc_to_json(code):
    return {"field": field_to_json(code.tower), "n": code.n, "ell": code.ell,
            "generators": [[poly_to_json(f) for f in g] for g in code.generators]}


def sqc_from_json(obj):
    T = field_from_json(_require(obj, "field", dict))
    n, ell = _int(obj, "n"), _int(obj, "ell")
    gens = []
    for g in _require(obj, "generators", list):
        if not isinstance(g, list) or len(g) != ell:
            raise DescriptorError("each generator needs %d coordinates" % ell)
        gens.append(tuple(poly_from_json(T, f, Level.TOP) for f in g))
    return SqcCode(T, n, ell, tuple(gens))


def normal_basis_to_json(basis):
    return element_to_json(basis.generator)


def normal_basis_from_json(tower, data):
    x = element_from_json(tower, data)
    try:
        return normal_basis_from(x)
    except SkewCodesError as exc:
        raise DescriptorError(str(exc)) from exc


def rows_to_json(rows):
    return [[poly_to_json(f) for f in row] for row in rows]


def rows_from_json(tower, data, level=Level.MIDDLE):
    if not isinstance(data, list):
        raise DescriptorError("expected a list of polynomial rows")
    return tuple(tuple(poly_from_json(tower, f, level) for f in row) for row in data)

