import os
from pathlib import Path

import pytest

import activedl

CORPUS = Path(os.environ.get("ACTIVEDL_CORPUS_DIR", Path(__file__).resolve().parents[2] / "corpus"))


def read(name):
    return (CORPUS / name).read_text()


def case(base):
    return read(base + ".adl"), read(base + ".adb"), read(base + ".adu")


def test_rewrite_matches_golden():
    program, _, delta = case("manager_livelock")
    assert activedl.rewrite(program, delta) == read("golden/manager_livelock.st.adl")
    program, _, delta = case("confirm_manager")
    assert activedl.rewrite(program, delta, mode="bm") == read("golden/confirm_manager.bm.adl")


def test_well_founded_and_models():
    assert activedl.well_founded(read("choice_loops.adl")) == "a. b? c? d? e? p? q?"
    doc = activedl.models(read("det_lattice.adl"))
    assert doc["counts"]["models"] == 4
    assert doc["counts"]["t_stable"] == 2


def test_run_and_seed():
    program, db, delta = case("emp_or_mgr")
    lex = activedl.run(program, db, delta, "ms")
    seeded = activedl.run(program, db, delta, "ms", seed=2)
    assert lex["status"] == "applied"
    assert "worker(a)" in lex["output"]["true"]
    assert lex["output"] != seeded["output"]
    assert seeded == activedl.run(program, db, delta, "ms", seed=2)


def test_rejection_and_compare():
    program, db, delta = case("worker_idb")
    assert activedl.run(program, db, delta, "twfs")["status"] == "rejected-unchanged"
    rows = activedl.compare(*case("worker_choice"))["rows"]
    assert len(rows) == 9


def test_errors():
    with pytest.raises(activedl.ParseError):
        activedl.parse_program("p(X :- q.")
    program, _, delta = case("emp_or_mgr")
    with pytest.raises(activedl.PreconditionError):
        activedl.run(program, read("worker_partial.adb"), delta, "ts")
    with pytest.raises(activedl.ResourceError):
        activedl.run(*case("worker_choice"), "ms", cap=1)
    with pytest.raises(ValueError):
        activedl.run(*case("worker_choice"), "nope")


def test_info_leq():
    assert activedl.info_leq("p(a)?", "p(a).")
    assert not activedl.info_leq("p(a).", "p(a)?")
