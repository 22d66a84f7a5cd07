import os
import pathlib

import pytest

import gcm

CORPUS = pathlib.Path(os.environ.get("GCM_CORPUS", pathlib.Path(__file__).parents[2] / "corpus"))


def test_kodaira_thurston_betti():
    m = gcm.parse_model("dim = 4\nd e4 = 1 e1^e2\nH = 0")
    assert m.dim == 4
    assert m.betti() == [1, 3, 4, 3, 1]
    assert m.twisted_dims() == (6, 6)


def test_parse_errors_raise():
    with pytest.raises(gcm.GcmError, match="DimensionOdd"):
        gcm.parse_model("dim = 3")


def test_structures_from_corpus():
    m = gcm.load_model(str(CORPUS / "torus4-complex.gcm"))
    assert m.structures == ["std"]
    assert m.delbar_dims("std") == [1, 4, 6, 4, 1]
    assert m.ddbar_holds("std")
    assert gcm.parse_model(m.emit()).emit() == m.emit()


def test_reports():
    code, rep = gcm.report("ddbar", str(CORPUS / "kt-symplectic.gcm"))
    assert code == 1
    assert rep["schema"] == 1
    assert rep["status"] == "fail"
    code, rep = gcm.report("hodge", str(CORPUS / "torus4-symplectic.gcm"))
    assert code == 0
    dims = rep["checks"][0]["details"]["dims"]
    assert [dims[k]["dim"] for k in ("F^-2", "F^0", "F^2")] == [1, 7, 8]


def test_commands_listed():
    assert "gk" in gcm.commands()
