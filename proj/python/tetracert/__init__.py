"""Exact moments of the centroid-pinned random tetrahedron and the certificate
that bounds its mean volume. Rationals are returned as fractions.Fraction."""

from fractions import Fraction

from . import _core

__all__ = [
    "even_moment",
    "moment_table",
    "read_moment_cache",
    "write_moment_cache",
    "reference_nodes",
    "read_nodes",
    "write_nodes",
    "onesided_poly",
    "target_enclosure",
    "certify",
    "search",
    "rationalize",
    "estimate",
]


def _fracs(items):
    return [Fraction(s) for s in items]


def _strs(items):
    return [f"{q.numerator}/{q.denominator}" for q in map(Fraction, items)]


def _table_in(table):
    return {int(k): f"{Fraction(v).numerator}/{Fraction(v).denominator}" for k, v in table.items()}


def _table_out(table):
    return {k: Fraction(v) for k, v in table.items()}


def even_moment(k, method="fast", threads=0):
    """E V^{2k}. method is "fast" or "direct" (k <= 5 in practice)."""
    if method == "fast":
        return Fraction(_core.even_moment_fast(k, threads))
    if method == "direct":
        return Fraction(_core.even_moment_direct(k, threads))
    raise ValueError(f"unknown method {method!r}")


def moment_table(k_max, cache=None, threads=0):
    return _table_out(_core.moment_table(k_max, "" if cache is None else str(cache), threads))


def read_moment_cache(path):
    return _table_out(_core.read_moment_cache(str(path)))


def write_moment_cache(path, table):
    _core.write_moment_cache(str(path), _table_in(table))


def reference_nodes():
    return _fracs(_core.reference_nodes())


def read_nodes(path):
    return _fracs(_core.read_nodes(str(path)))


def write_nodes(path, nodes):
    _core.write_nodes(str(path), _strs(nodes))


def onesided_poly(nodes, construction="hermite"):
    """Coefficients a_i of P(x) = sum a_i x^{2i}."""
    if construction == "hermite":
        return _fracs(_core.hermite_onesided(_strs(nodes)))
    if construction == "endpoint":
        return _fracs(_core.endpoint_onesided(_strs(nodes)))
    raise ValueError(f"unknown construction {construction!r}")


def target_enclosure():
    lo, hi = _core.target_enclosure()
    return Fraction(lo), Fraction(hi)


def certify(nodes, moments, construction="hermite"):
    d = _core.certify(_strs(nodes), _table_in(moments), construction)
    for key in ("bound", "target_lo", "target_hi"):
        d[key] = Fraction(d[key])
    d["coefficients"] = _fracs(d["coefficients"])
    return d


def search(moments, degree=13, grid=1000, max_den=100):
    d = _core.search(_table_in(moments), degree, grid, max_den)
    d["nodes"] = _fracs(d["nodes"])
    return d


def rationalize(x, max_den):
    return Fraction(_core.rationalize(x, max_den))


def estimate(mode="four", power=1, samples=1_000_000, seed=1, threads=0, frame="unit"):
    """(mean, standard error) of V^power."""
    if frame not in ("unit", "standard"):
        raise ValueError(f"unknown frame {frame!r}")
    return _core.estimate(mode, power, samples, seed, threads, frame)
