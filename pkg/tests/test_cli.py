import io
import json
import subprocess
import sys

import pytest

from conftest import A_N_TEXT, A8_LISTS
from posetforge.cli import (
    EXIT_CAPACITY,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    CommandConfig,
    main,
    run,
)
from posetforge.posetcore import parse_matrices
from posetforge.topology import parse_nlt, stream


@pytest.fixture
def a_n_file(tmp_path):
    p = tmp_path / "an.txt"
    p.write_text(A_N_TEXT)
    return str(p)


@pytest.fixture
def a8_file(tmp_path):
    p = tmp_path / "a8.txt"
    p.write_text("\n".join("".join(map(str, r)) for r in A8_LISTS) + "\n")
    return str(p)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    fields = {"command": argv[0]}
    # go through the real parser, but capture output
    from posetforge.cli import build_parser, UsageError
    try:
        args = vars(build_parser().parse_args(argv))
    except UsageError as exc:
        return EXIT_USAGE, "", str(exc)
    args.pop("verbose")
    fields.update(args)
    code = run(CommandConfig(**fields), out, err)
    return code, out.getvalue(), err.getvalue()


def test_count():
    code, out, _ = call("count", "--n", "5")
    assert code == EXIT_OK
    header, row = out.splitlines()
    assert header.startswith("n,nl_extension,nl_stream,nip,orbit_sum,gap")
    assert row.startswith("5,357,357,63,")


def test_count_without_nip():
    code, out, _ = call("count", "--n", "4", "--no-nip")
    assert code == EXIT_OK and out.splitlines()[1].startswith("4,40,40,,,")


def test_list_matrices_and_topologies():
    code, out, _ = call("list", "--n", "3")
    assert code == EXIT_OK and len(parse_matrices(out)) == 7
    code, out, _ = call("list", "--n", "3", "--kind", "nlt", "--limit", "2")
    assert out.splitlines() == ["e 0 1 2 0,1 0,2 1,2 0,1,2", "e 0 1 0,1 0,2 0,1,2"]
    code, out, _ = call("list", "--n", "0")
    assert out == "e\n"


def test_extend(a_n_file):
    code, out, _ = call("extend", "--input", a_n_file)
    children = parse_matrices(out)
    assert code == EXIT_OK and len(children) == 8
    assert all(C.n == 5 for C in children)


def test_ideals(a_n_file):
    code, out, _ = call("ideals", "--input", a_n_file)
    records = [json.loads(line) for line in out.splitlines()]
    assert records[0] == {"n": 4, "size": 8}
    assert sum("edge" in r for r in records) == 10


def test_aut(a8_file):
    code, out, _ = call("aut", "--input", a8_file)
    lines = dict(line.split(" ", 1) for line in out.splitlines() if not line.startswith("orbit "))
    assert lines["order"] == "12" and lines["order_via_twins"] == "12"
    assert lines["classes"] == "0 | 1,2 | 3,5,6 | 4 | 7"
    assert lines["quotient"] == "10000 11000 11100 11010 11011"
    assert int(lines["orbit_count"]) == sum(line.startswith("orbit ") for line in out.splitlines())


def test_nlt_resume_equals_single_run():
    code, full, _ = call("nlt", "--n", "4")
    lines = full.splitlines()
    assert len(lines) == 40
    head = call("nlt", "--n", "4", "--limit", "13")[1].splitlines()
    tail = call("nlt", "--resume", head[-1])[1].splitlines()
    assert head + tail == lines
    assert call("nlt", "--resume", lines[-1])[1] == ""
    assert [parse_nlt(x) for x in lines] == list(stream(4))


def test_resume_size_mismatch():
    code, _, err = call("nlt", "--n", "3", "--resume", "e 0 0,1")
    assert code == EXIT_USAGE and "size" in err


def test_verify():
    code, out, _ = call("verify", "--n", "3")
    assert code == EXIT_OK
    assert out and all(line.startswith("PASS") for line in out.splitlines())


def test_dot(a_n_file):
    code, out, _ = call("dot", "--input", a_n_file)
    assert code == EXIT_OK and "1 -> 3;" in out
    code, out, _ = call("dot", "--input", a_n_file, "--lattice")
    assert out.count("->") == 10


def test_output_file(tmp_path, a_n_file):
    target = tmp_path / "out.jsonl"
    assert call("ideals", "--input", a_n_file, "--output", str(target))[0] == EXIT_OK
    assert target.read_text().startswith('{"n": 4')


@pytest.mark.parametrize("argv, code", [
    (("count",), EXIT_USAGE),
    (("count", "--n", "-1"), EXIT_USAGE),
    (("count", "--n", "65"), EXIT_CAPACITY),
    (("count", "--n", "3", "--format", "json"), EXIT_USAGE),
    (("count", "--n", "3", "--shards", "0"), EXIT_USAGE),
    (("list", "--n", "3", "--limit", "-2"), EXIT_USAGE),
    (("extend",), EXIT_USAGE),
    (("nlt",), EXIT_USAGE),
    (("nlt", "--resume", "e 1 0,1"), EXIT_PARSE),
    (("bogus",), EXIT_USAGE),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_parse_error_exit(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("100\n110\n011\n")
    code, _, err = call("aut", "--input", str(bad))
    assert code == EXIT_PARSE and "line 3" in err
    assert call("aut", "--input", str(tmp_path / "missing.txt"))[0] == EXIT_PARSE


def test_main_and_console_entry(a_n_file, capsys):
    assert main(["extend", "--input", a_n_file, "--limit", "1"]) == EXIT_OK
    assert capsys.readouterr().out == "10000\n01000\n11100\n01010\n00001\n"
    assert main(["nope"]) == EXIT_USAGE
    proc = subprocess.run([sys.executable, "-m", "posetforge.cli", "count", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1].startswith("3,7,7,5,6,1,")
