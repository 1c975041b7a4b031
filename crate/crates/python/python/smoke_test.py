"""Smoke test for the compiled `vogan` module.

    cd crates/python && maturin develop && python python/smoke_test.py
"""

import json

import vogan

STEINBERG = '{"dual_group":{"family":"GL","size":2},"unit_modulus":4,"summands":[{"u":0,"e":"0","a":2}]}'
GAP2 = '{"dual_group":{"family":"GL","size":2},"summands":[{"u":0,"e":1,"a":1},{"u":0,"e":-1,"a":1}]}'
CHAIN3 = (
    '{"dual_group":{"family":"GL","size":3},"grading":'
    '[{"u":0,"e":"1","mult":1},{"u":0,"e":"0","mult":1},{"u":0,"e":"-1","mult":1}]}'
)


def main():
    st = vogan.Parameter(STEINBERG)
    assert st.group == "GL_2"
    assert st.summands == [(0, "0", 2)]
    assert st.is_open() and st.is_tempered() and st.l_adjoint_order() == 0
    assert st.arthur_type() == [(0, 2, 1)]
    assert vogan.Parameter(st.to_json()) == st

    report = json.loads(vogan.analyze(GAP2))
    assert report["schema_version"] == vogan.SCHEMA_VERSION == 1
    assert report["open"] and not report["tempered"] and not report["arthur_type"]

    table = json.loads(vogan.survey(CHAIN3))
    assert len(table["orbits"]) == 4
    assert sum(r["open"] for r in table["orbits"]) == 1

    d = json.loads(vogan.dual(STEINBERG))
    assert d["dual"]["closed"]

    try:
        vogan.Parameter('{"dual_group":{"family":"GL","size":3},"summands":[{"u":0,"e":"0","a":2}]}')
    except ValueError as e:
        assert "size" in str(e)
    else:
        raise AssertionError("size mismatch accepted")

    small = '{"families":["GL","Sp"],"max_size":3,"max_abs_exponent":"1","unit_modulus":2}'
    corpus = json.loads(vogan.corpus_check(small))
    assert corpus["violations"] == []
    print("smoke test passed:", repr(st))


if __name__ == "__main__":
    main()
