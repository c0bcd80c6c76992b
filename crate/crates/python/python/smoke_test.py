"""Smoke test for the rfn extension module.

Build it with `maturin develop` in crates/python, or copy
target/debug/librfn.so next to this file as rfn.so, then run this script.
"""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import rfn

ROOT = pathlib.Path(__file__).resolve().parents[3]

even = rfn.Type.parse("{v: Int32 with v % 2 == 0}")
assert str(even) == "{x0: Int32 with x0 % 2 == 0}", str(even)
rfn.Term.parse("42").check(even)
try:
    rfn.Term.parse("41").check(even)
except rfn.TypeCheckError as e:
    assert "E-ENTAIL" in str(e)
else:
    raise AssertionError("41 checked as even")

pos = rfn.Type.parse("{x: Int32 with x > 0}")
big = rfn.Type.parse("{x: Int32 with x > 1}")
assert rfn.subtype(big, pos) and not rfn.subtype(pos, big)

lst = rfn.Type.parse("mu X. Unit + (Sig(h: Int32) * X)")
assert lst.is_subtype_of(lst.unfold()) and lst.unfold().is_subtype_of(lst)

v = rfn.entails(["y == 2*x + 3*x"], "y == 5*x")
assert v.entailed and v.reason == "Proved", v
assert not rfn.entails(["x > 0"], "x > 1")
assert rfn.countermodel(["x > 0"], "x > 1") == {"x": 1}
assert rfn.countermodel(["x > 1"], "x > 0") is None

out = rfn.Term.parse("(fun(x: Int32) => x + 1) 2147483647").eval()
assert out.kind == "value" and out.as_int() == -2147483648, out
assert rfn.Term.parse("loop(0) i => inl i").eval(fuel=50).kind == "timeout"

prog = rfn.Program.parse((ROOT / "programs" / "collect.rfn").read_text())
report = prog.check()
assert report.ok, report.diagnostics
assert "positive" in report.main_type
assert prog.eval(1000).as_int_list() == [5, 4, 3]

bad = rfn.Program.parse("def x : {v: Int32 with v > 0} = 0 - 3")
report = bad.check()
assert not report.ok and report.diagnostics[0].code == "E-ENTAIL"
assert '"code":"E-ENTAIL"' in report.diagnostics[0].to_json()

try:
    rfn.Program.parse("def x : Int32 = (1 +")
except rfn.ParseError:
    pass
else:
    raise AssertionError("parse error not raised")

print("python smoke test: ok")
