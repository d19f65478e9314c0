"""Smoke test for the Python bindings.

Build and install first, e.g.
    maturin build --release -m crates/py/Cargo.toml && pip install target/wheels/flightdist_py-*.whl
"""

import math

import flightdist_py as fd


def main():
    pair = fd.PairParams(1.0, 2.0, 2.0, 1.0)
    assert pair.first.speed == 2.0, "faster flight comes first"
    assert pair.speed_class == "double"
    law = fd.DistanceLaw(pair)
    t = 1.0
    top = pair.max_distance(t)
    assert law.junctions(t) == [0.0, 1.0, 1.0, 2.0, 3.0]

    assert law.phi(0.0, t).value == 0.0
    assert abs(law.phi(top, t).value - 1.0) < 1e-12
    v = law.phi(1.3, t)
    assert v.regime == "Q" and v.consistent
    parts = dict(law.components(1.3, t))
    assert abs(sum(p[0] for p in parts.values()) - v.raw) < 1e-6

    rs = [top * k / 50 for k in range(51)]
    vals = [float(x) for x in law.grid(rs, t)]
    assert all(b >= a - 1e-7 for a, b in zip(vals, vals[1:]))

    sup, dkw = fd.ks_check(pair, t, rs, 200_000, 7)
    assert sup <= dkw + 1e-6, (sup, dkw)
    d = fd.sample_distances(pair, t, 1000, 7)
    assert d == fd.sample_distances(pair, t, 1000, 7)
    assert all(0.0 < x <= top for x in d)

    f = fd.FlightParams(1.0, 1.0)
    assert abs(f.singular_mass(1.0) - math.exp(-1.0)) < 1e-15
    assert abs(f.radial_cdf(0.5, 1.0) - (1 - math.exp(-1 + math.sqrt(0.75)))) < 1e-14

    for bad in [lambda: fd.FlightParams(-1.0, 1.0), lambda: law.phi(1.0, -1.0)]:
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    assert issubclass(fd.ConvergenceError, RuntimeError)
    print("smoke test passed:", v)


if __name__ == "__main__":
    main()
