import os
import pathlib

import pytest

import sdcat

CORPUS = pathlib.Path(
    os.environ.get("SDCAT_CORPUS_DIR", pathlib.Path(__file__).parents[2] / "tests" / "corpus")
)


def test_golden_words():
    x = sdcat.Shift.load(str(CORPUS / "golden.shift"))
    assert x.alphabet == ["0", "1"]
    assert len(x.words(4)) == 8
    assert not x.contains_word("11")


def test_xor3():
    f = sdcat.BlockMap.load(str(CORPUS / "xor3.bmap"))
    assert f.radius == 1
    assert f.apply("0111") == "01"
    assert sdcat.check("epic", f, "K3")["answer"] == "YES"
    row = sdcat.classify(f, "M2")
    assert row["monic"]["answer"] == "YES"
    assert row["split_epic"]["answer"] == "NO"


def test_cli_exit_codes():
    code, out, _ = sdcat.run_cli(["check", "epic", "--category", "K3", str(CORPUS / "xor3.bmap")])
    assert code == 0
    code, _, _ = sdcat.run_cli(["check", "epic", str(CORPUS / "xor3.bmap")])
    assert code == 64


def test_errors():
    with pytest.raises(ValueError):
        sdcat.Shift.parse("alphabet: 0 1\nforbidden: 2\n")
    with pytest.raises(ValueError):
        sdcat.check("epic", sdcat.BlockMap.load(str(CORPUS / "xor3.bmap")), "Z9")
