"""Bundled ring presentations, addressable from the CLI as ``corpus:<name>``.

The corpus covers the rings that the tests and the worked reproductions
lean on: regular polynomial rings in up to three variables over F_2, F_3,
and F_5; the A_1 quadric in both its characteristic-two and odd-
characteristic forms; the coordinate axes ("node"); the Whitney umbrella
over F_3; the Fermat cubic over F_7; the quartic family

    z^4 + x*y*z^2 + (x^3 + y^3)*z + alpha*x^2*y^2

for alpha in {0, 1, t} (the alpha = 0 member is listed twice: the product
presentation z*(x+y+z)*((x+y+z)^2+z*y), whose Hilbert-Kunz multiplicity is
7/2, and the degenerate plain quartic with the alpha-term dropped, which
factors into four planes over F_4 and has multiplicity 4); and the
four-variable ring over F_4 whose fibers over the t-line display a jump
between the localized and the origin Hilbert-Kunz multiplicities.

Each entry is a script in the small ring-description language understood
by :func:`frobinv.cli.parse_spec`.
"""

_REGULAR_VARS = ("x", "y", "z")


def _regular(p, d):
    names = _REGULAR_VARS[:d]
    return "char %d; vars %s; ideal m = (%s);" % (p, " ".join(names), ", ".join(names))


CORPUS = {}

for _p in (2, 3, 5):
    for _d in (1, 2, 3):
        CORPUS["regular-p%d-d%d" % (_p, _d)] = _regular(_p, _d)

CORPUS.update(
    {
        "a1-char2": "char 2; vars x y z; rel x^2 + z*y; ideal m = (x, y, z);",
        "a1-odd": "char 3; vars x y z; rel x*y + 2*z^2; ideal m = (x, y, z);",
        "node": "char 2; vars x y; rel x*y; ideal m = (x, y);",
        "whitney": "char 3; vars x y z; rel x^2 + 2*y^2*z; ideal m = (x, y, z);",
        "fermat-cubic": "char 7; vars x y z; rel x^3 + y^3 + z^3; ideal m = (x, y, z);",
        "monsky-0": (
            "char 2; vars x y z; "
            "rel z*(x+y+z)*((x+y+z)^2 + z*y); "
            "ideal m = (x, y, z);"
        ),
        "monsky-0-degenerate": (
            "char 2; vars x y z; "
            "rel z^4 + x*y*z^2 + (x^3 + y^3)*z; "
            "ideal m = (x, y, z);"
        ),
        "monsky-1": (
            "char 2; vars x y z; "
            "rel z^4 + x*y*z^2 + (x^3 + y^3)*z + x^2*y^2; "
            "ideal m = (x, y, z);"
        ),
        "monsky-t": (
            "char 2; param t; vars x y z; "
            "rel z^4 + x*y*z^2 + (x^3 + y^3)*z + t*x^2*y^2; "
            "ideal m = (x, y, z);"
        ),
        "brenner-monsky": (
            "char 2; ext a^2 + a + 1; vars x y z t; "
            "rel z^4 + x*y*z^2 + (x^3 + y^3)*z + t*x^2*y^2; "
            "ideal p = (x, y, z); ideal m = (x, y, z, t); elem h = t;"
        ),
    }
)


def corpus_names():
    """Names of the bundled presentations, in a fixed deterministic order."""
    return tuple(CORPUS)


def corpus_text(name):
    """The ring-description script for a bundled presentation."""
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(
            "unknown corpus entry %r (known: %s)" % (name, ", ".join(CORPUS))
        ) from None
