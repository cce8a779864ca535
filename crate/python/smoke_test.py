"""Smoke test for the ncg_forge_py extension.

Build with `cargo build -p ncg-forge-py --release`, then run this script; it
copies target/release/libncg_forge_py.so next to itself as ncg_forge_py.so
when the module is not already importable.
"""

import json
import math
import pathlib
import shutil
import sys

here = pathlib.Path(__file__).resolve().parent
root = here.parent

try:
    import ncg_forge_py as nf
except ImportError:
    lib = root / "target" / "release" / "libncg_forge_py.so"
    shutil.copy(lib, here / "ncg_forge_py.so")
    sys.path.insert(0, str(here))
    import ncg_forge_py as nf


def close(a, b, tol=1e-6):
    assert abs(a - b) <= tol * max(1.0, abs(b)), (a, b)


sm = nf.Triple.standard_model()
print(sm, "dim", sm.dim)
form, det = sm.intersection_form()
assert det == 216 and form[0] == [6, -6, 6]
report = sm.validate()
assert report["all_pass"], report

lq = nf.Triple.leptoquark(0.3).validate()
failed = [c["name"] for c in lq["checks"] if not c["pass"]]
assert failed == ["s0_reality"], failed



def axioms_pass(r):
    return all(c["pass"] for c in r["checks"] if c["name"] != "s0_reality")


assert axioms_pass(nf.Triple.commutative([1, -1]).validate())
assert not axioms_pass(nf.Triple.commutative([1, -1], [[0, 0.5], [0.5, 0]]).validate())

again = nf.Triple.from_json(sm.to_json())
assert again.mu == sm.mu

model = sm.model(charges=[3.0, 1.0])
assert model["anomaly"]["anomaly_free"]
assert model["mass_bound"]["holds"]

d = nf.distance_numeric([[0, 1, 0], [1, 0, 2], [0, 2, 0]], 0, 2)
close(d, nf.distance_three_point(1.0, 0.0, 2.0)[1])
close(nf.distance_chain4(1.0, 0.5, 2.0), nf.distance_numeric(
    [[0, 1, 0, 0], [1, 0, 0.5, 0], [0, 0.5, 0, 2], [0, 0, 2, 0]], 0, 3))
close(nf.chain_uniform(2, 1.0), 1.0)

integral, defect, c12 = nf.powers_rieffel(0.4, 32)
close(integral, 0.4)
close(c12, 1.0, 1e-6)
assert defect < 1e-3

assert nf.orientability_residual([[0, 0.3], [-0.3, 0]]) < 1e-12

problem = (root / "fixtures" / "three_point.dist").read_text()
code, out = nf.run(problem, "distance", i=1, j=2)
assert code == 0
close(out["report"]["value"], math.sqrt(2.0 / 3.0))

try:
    nf.run(problem, "distance", i=1, j=9)
except ValueError as e:
    print("rejected:", e)
else:
    raise AssertionError("out-of-range index accepted")

print(json.dumps({"c12": c12, "d13": d}))
print("smoke test ok")
