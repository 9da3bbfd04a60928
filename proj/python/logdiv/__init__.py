"""Exact calculus for fans, their subdivisions, and the monoids behind log structures.

Every operation speaks the same JSON document dialect as the ``logdiv`` command-line
tool.  Documents are plain dicts; oversized integers are encoded as decimal strings
by the core and decoded back to ``int`` here.
"""

import json

from logdiv._core import _canonical_json, _dispatch, _run_cli

__all__ = [
    "LogdivError",
    "canonical_json",
    "run_cli",
    "dispatch",
    "saturate",
    "hilbert_basis",
    "sharpen",
    "pushout",
    "is_exact",
    "is_kummer",
    "self_pushout",
    "validate_fan",
    "is_subdivision",
    "star_subdivision",
    "common_refinement",
    "cone_monoid",
    "log_blowup",
    "divided_hom",
    "divided_eq",
    "divided_compose",
    "divided_iso",
    "exactify",
    "deformation",
    "generic_fiber",
    "zero_fiber",
    "square_check",
    "validate_space",
    "glue",
    "is_cover",
    "union_opens",
]


class LogdivError(Exception):
    """Domain or validation failure reported by the core.

    ``code`` carries the machine-readable error code; ``detail`` the full error object.
    """

    def __init__(self, code, message, detail=None):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.detail = detail or {}


def _decode_ints(value):
    if isinstance(value, str):
        stripped = value[1:] if value.startswith("-") else value
        if stripped.isdigit():
            return int(value)
        return value
    if isinstance(value, list):
        return [_decode_ints(v) for v in value]
    if isinstance(value, dict):
        return {k: _decode_ints(v) for k, v in value.items()}
    return value


def canonical_json(document):
    """Serialize ``document`` exactly as the command-line tool would."""
    return _canonical_json(json.dumps(document))


def run_cli(args, stdin_text=""):
    """Invoke the command-line entry point; returns ``(exit_code, out, trace)``."""
    return _run_cli(list(args), stdin_text)


def dispatch(command, documents, flags=None):
    """Run one verb on parsed documents; raises :class:`LogdivError` on failure."""
    code, out, _trace = _dispatch(list(command), json.dumps(list(documents)), json.dumps(flags or {}))
    result = json.loads(out)
    if code != 0:
        err = result.get("error", {})
        raise LogdivError(err.get("code", "InternalError"), err.get("message", out), err)
    return _decode_ints(result)


def saturate(monoid):
    return dispatch(["monoid", "saturate"], [monoid])


def hilbert_basis(monoid):
    return dispatch(["monoid", "hilbert"], [monoid])["hilbert_basis"]


def sharpen(monoid):
    return dispatch(["monoid", "sharpen"], [monoid])


def pushout(hom1, hom2):
    return dispatch(["monoid", "pushout"], [hom1, hom2])


def is_exact(hom):
    return dispatch(["monoid", "exact"], [hom])["exact"]


def is_kummer(hom):
    return dispatch(["monoid", "kummer"], [hom])["kummer"]


def self_pushout(hom):
    return dispatch(["monoid", "self-pushout"], [hom])


def validate_fan(fan):
    return dispatch(["fan", "validate"], [fan])


def is_subdivision(base, fine):
    return dispatch(["fan", "subdivision-check"], [base, fine])["is_subdivision"]


def star_subdivision(fan, ray):
    return dispatch(["fan", "star"], [fan], {"ray": list(ray)})


def common_refinement(fan1, fan2):
    return dispatch(["fan", "refine"], [fan1, fan2])


def cone_monoid(fan, cone=0):
    return dispatch(["fan", "cone-monoid"], [fan], {"cone": cone})


def log_blowup(fan, ideal):
    return dispatch(["blowup"], [fan, ideal])


def divided_hom(source, target, matrix):
    """Canonical representative for ``matrix``, or ``None`` when no certificate exists."""
    result = dispatch(["divided", "hom"], [source, target], {"matrix": [list(r) for r in matrix]})
    if result.get("exists") is False:
        return None
    return result


def divided_eq(rep1, rep2):
    return dispatch(["divided", "eq"], [rep1, rep2])["equal"]


def divided_compose(rep1, rep2):
    return dispatch(["divided", "compose"], [rep1, rep2])


def divided_iso(rep):
    return dispatch(["divided", "iso"], [rep])["iso"]


def exactify(rep):
    return dispatch(["divided", "exactify"], [rep])


def deformation(monoid, ideal):
    return dispatch(["deform", "build"], [monoid, ideal])


def generic_fiber(monoid, ideal):
    return dispatch(["deform", "generic-fiber"], [monoid, ideal])


def zero_fiber(monoid, ideal, n_max=3, deg_max=6):
    return dispatch(["deform", "zero-fiber"], [monoid, ideal], {"n_max": n_max, "deg_max": deg_max})


def square_check(monoid, inner, outer, n_max=3, deg_max=6):
    return dispatch(
        ["deform", "square-check"], [monoid, inner, outer], {"n_max": n_max, "deg_max": deg_max}
    )


def validate_space(space):
    return dispatch(["space", "validate"], [space])


def glue(space):
    return dispatch(["space", "glue"], [space])


def is_cover(space, opens):
    return dispatch(["space", "cover"], [space], {"opens": list(opens)})["cover"]


def union_opens(space, opens):
    return dispatch(["space", "union"], [space], {"opens": list(opens)})
