"""Smoke test for the Python bindings: a few known counts and one identity."""

import mapenum

h = mapenum.maps(16, "4")
assert h[(4, 4)] == 509
assert h[(16, 8)] == 783804517126931727890

assert mapenum.bipartite(9, "4")[(9, 8)] == 2998656
assert mapenum.triangulations(7, "4")[(7, 8)] == 45877917085

h2 = mapenum.maps_polynomials(2)[(2, 0)]
assert h2.terms() == {(3, 1, 0): 2, (2, 2, 0): 5, (1, 3, 0): 2}, h2
assert h2.total() == 9 and h2.evaluate(1, 1) == 9
assert mapenum.maps_polynomials(6, engine="kz") == mapenum.maps_polynomials(6, engine="cc")

oracle = mapenum.flag_oracle(3)
assert [oracle[(3, g2)].total() for g2 in range(4)] == [54, 98, 104, 41]
assert mapenum.flag_oracle(3, "triangulation")[(1, 2)].total() == 7

assert mapenum.bip_oneface(4)[(4, 2, 2)] == 17

report = mapenum.verify("ode-maps", 12)
assert report["passed"], report

try:
    mapenum.verify("nope", 4)
except ValueError:
    pass
else:
    raise AssertionError("unknown identity accepted")

print("smoke ok:", repr(h2), report["window"])
