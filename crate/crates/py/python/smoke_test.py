"""Smoke test for the qtop_py extension.

Build first, then run with the build directory on the path:

    cargo build --release -p qtop-py --features extension-module
    cp target/release/libqtop_py.so target/release/qtop_py.so
    PYTHONPATH=target/release python3 crates/py/python/smoke_test.py
"""

import json

import qtop_py as q


def main():
    bool_lat = q.Algebra.builtin("BOOL_LAT")
    meet = q.Algebra.builtin("MEET_SL")
    assert bool_lat.size == 2

    s = q.Space.sierpinski(bool_lat)
    assert s.opens == [[0, 0], [0, 1], [1, 1]]
    assert s.is_sober()
    assert len(s.spectrum()["homs"]) == 2

    x = q.Space(meet, 2, [[0, 0], [0, 1], [1, 0], [1, 1]])
    assert x.is_t0() and not x.is_sober()
    eta = x.sobrify()
    assert eta.cod.points == 3
    assert eta.is_embedding() and eta.is_epi() and not eta.is_extremal_mono()
    assert eta.firmness_inverse().values is not None

    closure = eta.cod.closure(eta.values)
    assert len(closure["closure"]["members"]) == 3

    assert len(q.enumerate(bool_lat, 1)) == 2
    again = q.Space.from_json(x.to_json())
    assert again.opens == x.opens

    for name in q.SUITES:
        report = q.run_suite(name, meet, 2)
        assert report["failures"] == [], json.dumps(report)
        assert report["instances_tried"] > 0
    print("qtop_py smoke test passed:", len(q.SUITES), "suites")


if __name__ == "__main__":
    main()
