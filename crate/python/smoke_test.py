"""Quick check of the Python bindings: python python/smoke_test.py"""

import json
import math

import polyzeta_py as pz


def main():
    lyndon = [str(w) for w in pz.lyndon_words("Y", 3)]
    assert sorted(lyndon) == sorted(["y1", "y2", "y3", "y2y1"]), lyndon

    w = pz.Word("x0x1x0x1")
    assert w.weight == 4 and not w.is_lyndon()
    assert [str(f) for f in w.lyndon_factorization()] == ["x0x1", "x0x1"]
    assert str(pz.Word("y2y1").transcode()) == "x0x1x1"

    p = pz.product("stuffle", pz.Word("y1"), pz.Word("y2"))
    assert p == pz.Poly("y1y2 + y2y1 + y3"), str(p)
    assert pz.regularize("stuffle", pz.Word("y1y1")) == "-1/2·z(2)"
    assert pz.Poly("x0x1").shuffle(pz.Poly("x0x1")).coeff(pz.Word("x0x0x1x1")) == "4"

    table = pz.relation_table(4)
    assert ("z(2,1)", "z(3)") in table.rewrites()
    assert table.irreducibles(4) == []
    assert table.normalize("z(4)") == "2/5·z(2)^2"
    assert json.loads(table.to_json())["max_weight"] == 4

    value, bound = pz.zeta("2", 40)
    assert abs(float(value) - math.pi ** 2 / 6) < 1e-15 and bound < 1e-38
    assert pz.zeta("2,1")[0] == pz.zeta("3")[0]
    ok, residual = pz.verify("z(2) + 1/6·ipi^2")
    assert ok and residual < 1e-30
    assert not pz.verify("z(2) - z(3)")[0]
    re, im = pz.evaluate("ipi")
    assert re == 0 and abs(im - math.pi) < 1e-15
    assert abs(pz.finite_part(pz.Word("y1"), 1_000_000) - 0.5772156649) < 1e-6

    print("python smoke test passed")


if __name__ == "__main__":
    main()
