"""Smoke test for the daha_lab_py extension module."""

import math

import daha_lab_py as dl


def main():
    a2 = dl.RootSystem("A", 2)
    assert a2.label == "A2"
    assert len(a2.positive_roots()) == 3
    assert a2.translation_length([1, 1]) == 4
    r, word = a2.translation_word([1, 0])
    assert r == 1 and len(word) == 2
    assert dl.RootSystem("G", 2).special_nodes() == []

    checks = dl.verify("A", 1, "daha-relations", points=2, seed=7)
    assert checks and all(c["status"] == "pass" for c in checks), checks

    doc = dl.emit("nsmac", "A", 1, weight=[1])
    assert doc["polynomial"]["terms"] == [{"exps": [1], "coeff": "1"}]
    doc = dl.emit("lambda-op", "A", 2, r=1, degree=2)
    assert doc["image_of_one"] == [{"exps": [0, 0], "coeff": "3"}]

    # D_{b_1} X_1 = (1 + kappa)/2 X_1 in A1
    assert dl.dunkl_apply("A", 1, "1/3", [1], [([1], "1")]) == [([1], "2/3")]

    (u, v), = dl.solve_g(0.7, 0.0, [1.0])
    assert abs(u - math.exp(0.7)) < 1e-8 and abs(v - math.exp(-0.7)) < 1e-8
    assert dl.main_theorem_residual(0.4, 1.0, 1.0) <= 1e-6
    s1, s0 = dl.intertwiner_residuals(0.3, 1.0, 0.8)
    assert s1 <= 5e-7 and s0 <= 5e-7
    # sigma at k = 1 in terms of lambda_alpha
    la = 0.37 + 0.2j
    assert abs(dl.sigma(la, 1.0) - la * (1 - la)) < 1e-12

    try:
        dl.RootSystem("B", 1)
    except ValueError:
        pass
    else:
        raise AssertionError("B1 must be rejected")
    print("daha_lab_py", dl.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
