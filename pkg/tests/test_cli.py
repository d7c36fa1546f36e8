import json
import textwrap
from fractions import Fraction

import pytest

from odograph import (
    GraphFormatError,
    Odometer,
    is_valid_nb_walk,
    parse_graph_text,
    verify_certificate,
)
from odograph.cli import main
from odograph.revealer import RevealCertificate

K4_TEXT = textwrap.dedent(
    """\
    odometry-graph v1
    # complete graph on four vertices
    n 4
    e 0 1 1
    e 0 2 2
    e 0 3 3
    e 1 2 4
    e 1 3 5
    e 2 3 6
    """
)

C5_TEXT = textwrap.dedent(
    """\
    odometry-graph v1
    n 5
    e 0 1 2
    e 1 2 3
    e 2 3 5
    e 3 4 7
    e 0 4 11
    """
)

SUBDIV_K4_TEXT = textwrap.dedent(
    """\
    odometry-graph v1
    n 5
    e 0 1 1
    e 0 2 1
    e 0 3 1
    e 1 2 1
    e 1 3 1
    e 2 4 1
    e 3 4 1
    """
)

TWO_K4S_TEXT = textwrap.dedent(
    """\
    odometry-graph v1
    n 8
    e 0 1 1
    e 0 2 1
    e 0 3 1
    e 1 2 1
    e 1 3 1
    e 2 3 1
    e 4 5 1
    e 4 6 1
    e 4 7 1
    e 5 6 1
    e 5 7 1
    e 6 7 1
    """
)


@pytest.fixture
def graph_file(tmp_path):
    def write(text, name="g.graph"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


# ------------------------------------------------------------------ parsing


def test_parse_k4(k4):
    g = parse_graph_text(K4_TEXT)
    assert g.vertex_count == 4 and g.edge_count == 6
    assert g.edges == k4.edges
    assert [g.weight(e) for e in range(6)] == [1, 2, 3, 4, 5, 6]


def test_parse_fraction_and_sign():
    g = parse_graph_text("odometry-graph v1\nn 3\ne 0 1 7/3\ne 1 2 -2\ne 0 2 +9/4\n")
    assert g.weight(0) == Fraction(7, 3)
    assert g.weight(g.edge_id(1, 2)) == -2
    assert g.weight(g.edge_id(0, 2)) == Fraction(9, 4)


def test_parse_comments_and_blank_lines():
    text = "# leading comment\n\nodometry-graph v1\n\nn 2 # trailing\ne 0 1 5\n"
    g = parse_graph_text(text)
    assert g.edge_count == 1 and g.weight(0) == 5


@pytest.mark.parametrize(
    "text,lineno,needle",
    [
        ("odograph v2\nn 2\ne 0 1 1\n", 1, "expected header"),
        ("odometry-graph v1\nn 2\ne 0 0 1\n", 3, "self-loop"),
        ("odometry-graph v1\nn 2\ne 0 1 1\ne 1 0 2\n", 4, "duplicate edge {0,1}"),
        ("odometry-graph v1\nn 2\ne 0 1 1.5\n", 3, "malformed weight"),
        ("odometry-graph v1\nn 2\ne 0 1 x\n", 3, "malformed weight"),
        ("odometry-graph v1\nn 2\ne 0 1 1/0\n", 3, "zero denominator"),
        ("odometry-graph v1\nn 2\nq 0 1 1\n", 3, "unknown directive"),
        ("odometry-graph v1\ne 0 1 1\n", 2, "edge line before vertex-count"),
        ("odometry-graph v1\nn 2\ne 0 5 1\n", 3, "out of range"),
        ("odometry-graph v1\nn 2\nn 3\n", 3, "repeated vertex-count"),
        ("odometry-graph v1\nn two\n", 2, "expected 'n <vertex_count>'"),
        ("odometry-graph v1\nn 2\ne 0 1\n", 3, "expected 'e <u> <v> <weight>'"),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno, needle):
    with pytest.raises(GraphFormatError) as info:
        parse_graph_text(text)
    assert needle in str(info.value)
    assert f"line {lineno}:" in str(info.value)


def test_parse_missing_header():
    with pytest.raises(GraphFormatError):
        parse_graph_text("# only a comment\n")


def test_parse_missing_vertex_count():
    with pytest.raises(GraphFormatError) as info:
        parse_graph_text("odometry-graph v1\n")
    assert "missing vertex-count" in str(info.value)


def test_parse_error_exit_code(graph_file, capsys):
    path = graph_file("odometry-graph v1\nn 2\ne 0 0 1\n")
    assert main(["check", path]) == 2
    err = capsys.readouterr().err
    assert err.startswith("error: line 3:")


def test_unreadable_file(capsys):
    assert main(["check", "/nonexistent/nowhere.graph"]) == 2
    assert "cannot read" in capsys.readouterr().err


# -------------------------------------------------------------------- check


def test_check_k4(graph_file, capsys):
    assert main(["check", graph_file(K4_TEXT)]) == 0
    out = capsys.readouterr().out
    assert out == (
        "vertices: 4\nedges: 6\nconnected: yes\nminimum degree: 3\nODOMETRIC\n"
    )


def test_check_c5(graph_file, capsys):
    assert main(["check", graph_file(C5_TEXT)]) == 1
    out = capsys.readouterr().out
    assert out == (
        "vertices: 5\nedges: 5\nconnected: yes\nminimum degree: 2\n"
        "low-degree vertices: 0 1 2 3 4\n"
        "NOT ODOMETRIC (vertex 0 has degree 2)\n"
    )


def test_check_disconnected(graph_file, capsys):
    assert main(["check", graph_file(TWO_K4S_TEXT)]) == 1
    out = capsys.readouterr().out.splitlines()
    assert out[-1] == "NOT ODOMETRIC (graph is disconnected)"


# ------------------------------------------------------------------- reveal


def test_reveal_text(graph_file, capsys):
    assert main(["reveal", graph_file(K4_TEXT)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6
    assert lines[0].startswith("edge {0,1}: ")
    for line in lines:
        assert "*w = " in line and "F[" in line


def test_reveal_minimal(graph_file, capsys):
    assert main(["reveal", graph_file(K4_TEXT), "--minimal"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "minimal basis: 6 walks, rank 6" in lines
    walk_lines = [ln for ln in lines if ln.startswith("  walk ")]
    assert len(walk_lines) == 6


def test_reveal_json_roundtrip(graph_file, capsys):
    assert main(["reveal", graph_file(K4_TEXT), "--format", "json", "--minimal"]) == 0
    payload = json.loads(capsys.readouterr().out)
    g = parse_graph_text(K4_TEXT)
    assert payload["start"] == 0 and payload["edge_count"] == 6
    assert len(payload["certificates"]) == 6
    for entry in payload["certificates"]:
        cert = RevealCertificate(
            target=entry["edge_id"],
            target_coefficient=entry["c_e"],
            home=payload["start"],
            terms=tuple((t["c"], tuple(t["walk"])) for t in entry["terms"]),
        )
        assert verify_certificate(g, cert)
        assert sorted(entry["edge"]) == list(g.endpoints(entry["edge_id"]))
    basis = payload["minimal_basis"]
    assert basis["rank"] == 6 and len(basis["walks"]) == 6
    for w in basis["walks"]:
        walk = tuple(w)
        assert walk[0] == walk[-1] == 0
        assert is_valid_nb_walk(g, walk)


def test_reveal_respects_start(graph_file, capsys):
    assert main(["reveal", graph_file(K4_TEXT), "--start", "2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    g = parse_graph_text(K4_TEXT)
    for entry in payload["certificates"]:
        for t in entry["terms"]:
            assert t["walk"][0] == t["walk"][-1] == 2
        cert = RevealCertificate(
            target=entry["edge_id"],
            target_coefficient=entry["c_e"],
            home=2,
            terms=tuple((t["c"], tuple(t["walk"])) for t in entry["terms"]),
        )
        assert verify_certificate(g, cert)


def test_reveal_bad_start(graph_file, capsys):
    assert main(["reveal", graph_file(K4_TEXT), "--start", "9"]) == 2
    assert "start vertex 9 out of range" in capsys.readouterr().err


def test_reveal_not_odometric(graph_file, capsys):
    assert main(["reveal", graph_file(C5_TEXT)]) == 1
    assert "NOT ODOMETRIC" in capsys.readouterr().out


# ------------------------------------------------------------------ recover


def test_recover_k4_exact(graph_file, capsys):
    assert main(["recover", graph_file(K4_TEXT)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "edge {0,1}: recovered 1, true 1"
    assert lines[5] == "edge {2,3}: recovered 6, true 6"
    assert lines[6] == "queries: 6"
    assert lines[7] == "EXACT MATCH"


def test_recover_fractional(graph_file, capsys):
    text = K4_TEXT.replace("e 0 1 1", "e 0 1 -7/3")
    assert main(["recover", graph_file(text), "--start", "3"]) == 0
    out = capsys.readouterr().out
    assert "edge {0,1}: recovered -7/3, true -7/3" in out
    assert out.rstrip().endswith("EXACT MATCH")


def test_recover_transcript(graph_file, tmp_path, capsys):
    transcript = tmp_path / "trips.json"
    assert main(
        ["recover", graph_file(K4_TEXT), "--oracle-transcript", str(transcript)]
    ) == 0
    capsys.readouterr()
    entries = json.loads(transcript.read_text())
    assert len(entries) == 6
    meter = Odometer(parse_graph_text(K4_TEXT), 0)
    for entry in entries:
        assert meter.measure(tuple(entry["walk"])) == Fraction(entry["measurement"])


def test_recover_not_odometric(graph_file, capsys):
    assert main(["recover", graph_file(C5_TEXT)]) == 1
    assert "NOT ODOMETRIC" in capsys.readouterr().out


# ---------------------------------------------------------------- enumerate


def test_enumerate_k4_full(graph_file, capsys):
    assert main(["enumerate", graph_file(K4_TEXT), "--max-len", "5"]) == 0
    out = capsys.readouterr().out
    assert "closed non-backtracking walks from 0 with at most 5 edges:" in out
    assert "rank: 6 of 6 (full)" in out
    assert "rank deficient" not in out


def test_enumerate_c5_cycle_note(graph_file, capsys):
    assert main(["enumerate", graph_file(C5_TEXT)]) == 0
    out = capsys.readouterr().out
    assert "rank: 1 of 5" in out
    assert "rank deficient: 4 undetermined direction(s)" in out
    assert "note: only cycle multiples observable" in out


def test_enumerate_subdivided_k4_relation(graph_file, capsys):
    assert main(["enumerate", graph_file(SUBDIV_K4_TEXT)]) == 0
    out = capsys.readouterr().out
    assert "rank: 6 of 7" in out
    assert "rank deficient: 1 undetermined direction(s)" in out
    assert "invisible shift: -w{2,4} + w{3,4}" in out
    assert "note:" not in out


def test_enumerate_list(graph_file, capsys):
    assert main(["enumerate", graph_file(K4_TEXT), "--max-len", "3", "--list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].endswith(": 6")
    listed = [ln for ln in lines if ln.startswith("  [")]
    assert listed[0] == "  [0,1,2,0]"
    assert len(listed) == 6


def test_enumerate_bad_start(graph_file, capsys):
    assert main(["enumerate", graph_file(K4_TEXT), "--start", "-1"]) == 2
    assert "out of range" in capsys.readouterr().err


# -------------------------------------------------------------- determinism


def test_reveal_byte_identical_reruns(graph_file, capsys):
    path = graph_file(K4_TEXT)
    main(["reveal", path, "--minimal"])
    first = capsys.readouterr().out
    main(["reveal", path, "--minimal"])
    assert capsys.readouterr().out == first


def test_recover_byte_identical_reruns(graph_file, capsys):
    path = graph_file(K4_TEXT)
    main(["recover", path, "--start", "1"])
    first = capsys.readouterr().out
    main(["recover", path, "--start", "1"])
    assert capsys.readouterr().out == first


# -------------------------------------------------------------------- usage


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()
