"""Quick check that the ztorsion extension module imports and reproduces the worked examples."""

import json

import ztorsion


def main():
    m1 = ztorsion.Realization(2, [[2, 0], [0, 1]])
    m2 = ztorsion.Realization(2, [[1, 1], [1, -1]])
    m3 = ztorsion.Realization.parse("1 1 1\n1 -1 0\n")

    assert m1.tutte() == "x^2 + x", m1.tutte()
    assert m2.tutte() == "x^2 + 1", m2.tutte()
    assert m3.tutte() == "x^2 + x + y + 1", m3.tutte()
    assert m3.tutte_terms() == {(2, 0): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1}

    assert m3.hilbert() == "(1 + t + 2*t^2) / (1 - t)^2"
    assert m3.dual().hilbert() == "(1 + 3*t) / (1 - t)^1"
    assert m3.hilbert_parts() == ([1, 1, 2], 2)
    assert m3.main_theorem_holds()

    poset = json.loads(m3.poset_json())
    assert len(poset["elements"]) == 8 and len(poset["covers"]) == 11
    assert poset["f_vector_per_component"] == [[1, 3, 4]]

    ok, lines = m3.verify()
    assert ok and all(line.startswith("PASS") for line in lines), lines

    torsion = ztorsion.Realization(1, [[1]], relations=[[2]])
    assert torsion.initial_multiplicity == 2
    try:
        torsion.dual()
    except ValueError:
        pass
    else:
        raise AssertionError("dual of a realization with initial torsion must fail")

    assert ztorsion.snf([[2, 0], [0, 3]]) == [1, 6]
    assert ztorsion.hnf([[2, 4], [1, 1]]) == [[1, 1], [0, 2]]

    try:
        ztorsion.Realization(2, [[1]])
    except ValueError:
        pass
    else:
        raise AssertionError("short generator must be rejected")

    print("smoke test OK")


if __name__ == "__main__":
    main()
