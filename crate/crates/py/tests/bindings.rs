use pyo3::prelude::*;
use secant_py::secant_py;

static INIT: std::sync::Once = std::sync::Once::new();

fn run(code: &str) {
    INIT.call_once(|| {
        pyo3::append_to_inittab!(secant_py);
        pyo3::prepare_freethreaded_python();
    });
    Python::with_gil(|py| {
        if let Err(e) = py.run_bound(code, None, None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn descriptors_and_classification() {
    run(r#"
import secant_py as s
g = s.GroupDescriptor("A5[0,0,1,0,0]")
assert str(g) == "A5[0,0,1,0,0]" and g.height() == 1
assert not g.is_tame()
assert g.wild_certificate()["base_case"] == "A5-pi3"
assert s.GroupDescriptor("D3[1,0,0]") == s.GroupDescriptor("A3[0,1,0]")
assert s.GroupDescriptor("C4[1,0,0,0]").max_rank()["max_rank"] == 1
assert s.classify("E6[1,0,0,0,0,0]")["status"] == "tame"
try:
    s.GroupDescriptor("Q2[1]")
    raise AssertionError("parse error expected")
except ValueError:
    pass
rows = s.tame_table(3)
assert all(r["descriptor"] for r in rows) and len(rows) > 10
"#);
}

#[test]
fn ranks_and_jordan() {
    run(r#"
from fractions import Fraction as F
import secant_py as s
psi = s.wedge3_from_terms([(1, 1, 2, 4), (1, 1, 5, 3), (1, 6, 2, 3)])
assert s.wedge3_rank(psi) == 3
assert s.wedge3_rank(s.wedge3_from_terms([(1, 1, 2, 3), (1, 4, 5, 6)])) == 2
t = s.Tensor("matrix", ["1", "1/2", 0, 2, 1, 1], dims=[2, 3])
assert t.rank() == 2 and t.coords[1] == F(1, 2)
assert s.Tensor.from_json(t.to_json()).rank() == 2
w = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
assert len(s.coform_decompose(w)) == 2
one = s.AlbertElement([1] + [0] * 26)
assert one.rank() == 1 and one.det() == 0
x = s.AlbertElement([1, 1, 0] + [0] * 24)
assert x.rank() == 2
d, a, b = x.rank2_split()
assert a + a == x
assert s.AlbertElement([1, 1, 1] + [0] * 24).det() == 1
"#);
}

#[test]
fn lie_and_oracle() {
    run(r#"
import secant_py as s
assert [d for _, d in s.grading("E8", 1)] == [1, 56, 134, 56, 1]
assert s.orbit_dim("E8", "e(1,0,0,0,0,0,0,0)") == 58
t = s.RankTable("segre:2x2", 3)
assert t.max_rank() == 2 and t.dim == 4
assert t.histogram() == {1: 16, 2: 24}
assert t.rank_of([1, 0, 0, 1]) == 2
assert t.check()["below_bfs"] == 0
assert s.is_pure_spinor([1] + [0] * 15)
try:
    s.RankTable("gr:2,8", 13)
    raise AssertionError("resource error expected")
except MemoryError:
    pass
"#);
}
