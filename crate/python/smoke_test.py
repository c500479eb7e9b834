"""Smoke test for the pynilws extension module."""

import json
import math

import pynilws


def main():
    pair = pynilws.build(json.dumps({"kind": "dim6_theta", "theta": math.pi / 4}))
    assert (pair.dim_v, pair.dim_a) == (6, 8)
    assert pair.eigenvalue_type() == [6]
    assert pair.normalizer_dims() == (10, 0, 10)

    back = pynilws.MetricPair.from_json(pair.to_json())
    assert back.dim_v == 6

    z, x = pair.bracket([0.0] * 6, [1.0] + [0.0] * 7, [0.0] * 6, [0.0, 1.0] + [0.0] * 6)
    assert len(z) == 6 and not any(x)

    js = pynilws.octonion_structures()
    assert len(js) == 7 and len(js[0]) == 8

    report = pynilws.verify_ws(json.dumps({"kind": "dim2", "a": [[1, 0, 0]], "b": [[0, 1, 0]]}), samples=10, seed=3)
    assert report["verdict"] == "ws", report["verdict"]
    assert report["max_residual"] <= 1e-8

    report = pynilws.verify_ws(json.dumps({"kind": "dim7_theta", "theta": math.pi / 4}), samples=2)
    assert report["verdict"] == "not_ws"

    rows = pynilws.catalog(samples=4)
    assert len(rows) == 5 and all(r["matches"] for r in rows)

    warnings = pynilws.build_warnings(json.dumps({"kind": "dim2", "a": [[1, 0, 0], [1, 0, 0]], "b": [[2, 0, 0], [0, 1, 0]]}))
    assert any("singular family degeneration" in w for w in warnings)

    print("pynilws", pynilws.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
