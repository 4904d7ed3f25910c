"""Smoke test for the Python bindings.

Build first, e.g. `pip install --no-build-isolation ./crates/py` or
`maturin develop -m crates/py/Cargo.toml`, then run `python python/smoke_test.py`.
"""

import superschur_py as ss


def main():
    gl11 = ss.SpaceSpec(1, 1)
    assert gl11.dim == 2 and gl11.parity(2) == 1
    assert repr(gl11) == "SpaceSpec(1, 1)"

    # E11 E11 -> E11^2 + E11, and the odd square vanishes
    assert ss.sigma_tilde(gl11, [(1, 1), (1, 1)]) == [(1, [(1, 1)]), (1, [(1, 1), (1, 1)])]
    assert ss.sigma_tilde(gl11, [(1, 2), (1, 2)]) == []
    assert ss.sigma_tilde_iter(gl11, [(1, 2), (2, 1), (1, 1)]) == ss.sigma_tilde(gl11, [(1, 2), (2, 1), (1, 1)])

    a = [(3, [(1, 1), (1, 2)]), (-2, [(2, 2)])]
    assert ss.sigma_tilde_sum(gl11, ss.sigma(gl11, a)) == a

    assert len(ss.regular_partitions(4)) == 15

    assert ss.i_rho(gl11, [1]) == [(1, [(1, 1)]), (1, [(2, 2)])]
    a2 = ss.a_rho([2], 3)
    assert len(a2) == 3 and all(c == 2 for c, _ in a2)
    assert ss.j_rho(ss.SpaceSpec.queer(1), [1]) == [(2, [(1, 1)]), (2, [(2, 2)])]
    assert ss.q_rho([1], 2) == [(4, False, [False, False], [1, 2])]

    assert ss.verify_thm24(gl11, 2, [2])
    assert ss.verify_thm24(ss.SpaceSpec(2, 1), 3, [2, 1])
    assert ss.verify_thm25(1, 2, [2])

    d = ss.verify_duality(gl11, 2, "sergeev")
    assert d["pass"] and d["group_span"] == d["commutant_of_algebra"]

    for bad in (lambda: ss.SpaceSpec(0, 0), lambda: ss.sigma_tilde(gl11, [(3, 1)]), lambda: ss.a_rho([3], 2)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
