"""Smoke test for the asymhecke_py extension.

Build it first:  pip install -e crates/py --no-build-isolation
"""

import asymhecke_py as ah


def main():
    a1 = ah.Group("A1")
    assert a1.order() == 2
    assert sorted(a for a, _ in a1.cells()) == [0, 1]

    g2 = ah.Group("G2")
    assert g2.lif([1, 2, 1, 2, 1], 2, [1, 2, 1, 2]) == "-1/3"
    assert g2.lif(ah.parse_word("12121"), 2, ah.parse_word("1212"), method="recursive") == "-1/3"

    a3 = ah.Group("A3")
    assert a3.order() == 24
    assert a3.longest_element() == [1, 2, 1, 3, 2, 1]
    # Soergel normalization: p_{w,y} has degree l(w) - l(y) in v.
    assert a3.kl([1, 3, 2, 1], [1]) == [(3, "1")]
    assert a3.kl([2, 1, 3, 2], [2]) == [(1, "1"), (3, "1")]
    assert len(a3.cells()) == 5

    h3 = ah.Group("H3")
    assert h3.dimension([2, 3], [1, 2, 3]) == "-1"
    assert h3.dimension([2, 3], [1, 2, 3], engine="abc") == "-1"
    assert h3.classify([2, 3, 2, 1, 2, 3]) == "linear"

    try:
        ah.Group("H3", realization="crystallographic")
    except RuntimeError as e:
        assert "not_crystallographic" in str(e)
    else:
        raise AssertionError("H3 has no crystallographic realization")

    try:
        a3.kl([1, 1, 7], [1])
    except ValueError:
        pass
    else:
        raise AssertionError("generator 7 is out of range")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
