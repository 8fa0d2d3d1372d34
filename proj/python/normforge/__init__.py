"""Python front end for the normforge core. Reports come back as dicts."""

import json

from . import _core
from ._core import CoreError, SCHEMA_VERSION

__all__ = [
    "CoreError",
    "SCHEMA_VERSION",
    "run",
    "field_factor",
    "field_info",
    "tower_grow",
    "tower_classify",
    "verify_prop",
    "verify_sample",
    "normeq_analyze",
    "normeq_battery",
    "compile_definition",
    "coordinate_norm_poly",
    "cyclic_construct",
    "ec_mul",
    "ec_lemmas",
]


def _j(value):
    # rationals may be given as Fraction or str
    return json.dumps(value, default=str)


def _r(text):
    return json.loads(text)


def run(*args):
    """Run the command-line front end in process; returns (exit code, report dict or None, stderr)."""
    rc, out, err = _core.run([str(a) for a in args])
    return rc, (json.loads(out) if out.strip() else None), err


def field_factor(field, p):
    return _r(_core.field_factor(_j(field), str(p)))


def field_info(field):
    return _r(_core.field_info(_j(field)))


def tower_grow(recipe, p, depth=3, max_nodes=10000):
    if isinstance(recipe, str):
        recipe = {"catalog": recipe, "params": {"depth": depth}}
    return _r(_core.tower_grow(_j(recipe), str(p), depth, max_nodes))


def tower_classify(recipe, p, q, depth=3, max_nodes=10000):
    if isinstance(recipe, str):
        recipe = {"catalog": recipe, "params": {"depth": depth}}
    return _r(_core.tower_classify(_j(recipe), str(p), depth, q, max_nodes))


def verify_prop(kind, field, q, x, y, z, variant="xbc", prime=None, strict=True):
    return _r(_core.verify_prop(kind, _j(field), q, variant, _j(x), _j(y), _j(z), _j(prime), strict))


def verify_sample(kind, field, q, seed=1, strict=True):
    return _r(_core.verify_sample(kind, _j(field), q, seed, strict))


def normeq_analyze(instance):
    return _r(_core.normeq_analyze(_j(instance)))


def normeq_battery(field, x, q, S=(), size=4, seed=1):
    return _r(_core.normeq_battery(_j(field), _j(x), q, _j(list(S)), size, seed))


def compile_definition(variant="eqC", q=2, S=(), real_embeddings=True, roots_of_unity=True,
                       term_budget=2000000, include_system=False):
    return _r(_core.compile(variant, q, list(S), real_embeddings, roots_of_unity, term_budget, include_system))


coordinate_norm_poly = _core.coordinate_norm_poly


def cyclic_construct(q, m=1):
    return _r(_core.cyclic_construct(q, m))


def ec_mul(curve, point, n):
    return _r(_core.ec_mul(_j(curve), _j(point), n))


def ec_lemmas(curve, point, bounds=None):
    return _r(_core.ec_lemmas(_j(curve), _j(point), _j(bounds or {})))
