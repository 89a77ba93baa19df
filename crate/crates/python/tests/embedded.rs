use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals.set_item("q", wrap_pymodule!(pyqdyn::pyqdyn)(py)).unwrap();
        let src = std::ffi::CString::new(code).unwrap();
        py.run(&src, Some(&globals), None).unwrap_or_else(|e| {
            e.display(py);
            panic!("python check failed");
        });
    });
}

#[test]
fn worked_example_through_python() {
    run(r#"
H = q.Algebra("quat:-1,-1@Q")
f = H.poly("x^2 + (i+1)*x + 1 + i*j")
pts = [str(s["point"]) for s in q.fixed_points(f) if s["variant"] == "point"]
assert pts == ["-j", "-i - j"], pts
assert q.companion(f - H.poly("x")) == "x^4 + 3*x^2 + 2"
"#);
}

#[test]
fn element_arithmetic_and_errors() {
    run(r#"
H = q.hamilton()
i, j = H.element("i"), H.element("j")
assert i * j == H.element("k") and j * i == -(i * j)
assert (i + j) * (i + j).inverse() == H.element("1")
try:
    H.poly("x + l")
    raise AssertionError("accepted l")
except ValueError:
    pass
try:
    H.element("0").inverse()
    raise AssertionError("inverted zero")
except ArithmeticError:
    pass
"#);
}

#[test]
fn octonion_check_through_python() {
    run(r#"
O = q.Algebra("oct:-1,-1,-1@Q")
f = O.poly("l*x^2 + (1 - i*l)*x + l - (i*j)*l")
rep = q.octonion_fixed_check(f, O.element("j"), 3)
assert rep["fixed"] and rep["first_failure"] == 2, rep
v = q.certify_periodic(q.hamilton().poly("x^2 + i"), q.hamilton().element("-i"), 2)
assert v["status"] == "certified-periodic", v
"#);
}
