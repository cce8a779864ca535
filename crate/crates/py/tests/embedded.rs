use std::ffi::CString;

use ncg_forge_py::ncg_forge_py;
use pyo3::prelude::*;

fn exec(code: &str) -> PyResult<()> {
    pyo3::append_to_inittab!(ncg_forge_py);
    Python::initialize();
    Python::attach(|py| py.run(&CString::new(code).unwrap(), None, None))
}

#[test]
fn bindings_work_from_python() {
    exec(
        r#"
import math
import ncg_forge_py as nf

sm = nf.Triple.standard_model()
assert sm.intersection_form()[1] == 216
assert sm.validate()["all_pass"]
assert nf.Triple.from_json(sm.to_json()).mu == sm.mu
assert sm.model(charges=[3.0, 1.0])["anomaly"]["anomaly_free"]

d = nf.distance_numeric([[0, 1, 1], [1, 0, 1], [1, 1, 0]], 0, 1)
assert abs(d - math.sqrt(2 / 3)) < 1e-8, d

try:
    nf.Triple.commutative([2])
except ValueError:
    pass
else:
    raise AssertionError("bad sign accepted")
"#,
    )
    .unwrap();
}
