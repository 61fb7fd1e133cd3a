import pytest

from core.errors import NotAssociative, NotAutomorphism, NotSubgroup, ParseError, SizeGuardExceeded, ValidationError
from documents import load_document, parse_document
from liecohomology import lie_cohomology_dims, method6


def test_factorization_document(fixtures_dir):
    document = load_document(str(fixtures_dir / "s3_factorization.txt"))
    assert document.summary()["pairs"] == ["S3"]
    mp = document.pairs["S3"]
    assert mp.right_is_trivial and not mp.left_is_trivial
    task = document.task_for("kac-verify")
    assert task.options == {"target": "S3", "modulus": "6"}
    assert task.line == 5
    assert document.task_for("bidegree") is None


def test_explicit_action_tables(fixtures_dir):
    mp = load_document(str(fixtures_dir / "explicit_actions.txt")).pairs["inverted"]
    assert mp.bismash_order == 8
    assert mp.right_is_trivial
    assert mp.act_left[1].tolist() == [0, 3, 2, 1]


def test_semidirect_block_and_tasks(fixtures_dir):
    document = load_document(str(fixtures_dir / "c2_on_c3.txt"))
    assert document.pairs["smash"].act_left.tolist() == [[0, 1, 2], [0, 2, 1]]
    assert [task.command for task in document.tasks] == ["bidegree", "ez-verify"]
    assert document.task_for("ez-verify").options["bound"] == "3,3"


def test_lie_document(fixtures_dir):
    document = load_document(str(fixtures_dir / "triangle.txt"))
    assert sorted(document.actions) == ["reversal", "rotation"]
    assert method6(document.configurations["triangle"], 6).invariant_dims == [1, 1, 0]


def test_bracket_block(fixtures_dir):
    algebra = load_document(str(fixtures_dir / "sl2.txt")).lie_algebras["sl2"]
    assert lie_cohomology_dims(algebra) == [1, 0, 0, 1]


def test_group_errors_pass_through(fixtures_dir):
    with pytest.raises(NotAssociative) as excinfo:
        load_document(str(fixtures_dir / "corrupted_group.txt"))
    assert excinfo.value.witness == [1, 1, 2]


def test_unterminated_block(fixtures_dir):
    with pytest.raises(ParseError) as excinfo:
        load_document(str(fixtures_dir / "unterminated_block.txt"))
    assert excinfo.value.witness == {"line": 6, "column": 1}


def test_missing_file(tmp_path):
    with pytest.raises(ParseError) as excinfo:
        load_document(str(tmp_path / "absent.txt"))
    assert excinfo.value.witness == {"line": 0, "column": 0}


@pytest.mark.parametrize("text, line, column", [
    ("group C2 cyclic two", 1, 17),
    ("frobnicate x", 1, 1),
    ("group A cyclic 2\ngroup A cyclic 3", 2, 7),
    ("pair P trivial T=C2 N=C2", 1, 18),
    ("\n\ntask frobnicate", 3, 6),
    ("pair P library nope", 1, 16),
    ("group C2 cyclic 2\npair P trivial T=C2", 2, 8),
])
def test_parse_errors_point_at_the_token(text, line, column):
    with pytest.raises(ParseError) as excinfo:
        parse_document(text)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)
    assert excinfo.value.to_dict()["code"] == "parse_error"


def test_matrices_must_be_square():
    text = "lie g abelian 2\ngroup C2 cyclic 2\naction rho lie=g group=C2\n1 : 0 1 ; 1\nend\n"
    with pytest.raises(ParseError) as excinfo:
        parse_document(text)
    assert excinfo.value.line == 4


def test_action_must_respect_the_bracket():
    text = (
        "lie heis brackets 3\n0 1 : 2=1\nend\n"
        "group C2 cyclic 2\n"
        "action bad lie=heis group=C2\n1 : 0 0 1 ; 0 1 0 ; 1 0 0\nend\n"
    )
    with pytest.raises(NotAutomorphism):
        parse_document(text)


def test_comments_and_blank_lines_are_ignored():
    document = parse_document("# header\n\ngroup C5 cyclic 5   # trailing comment\n")
    assert document.groups["C5"].order == 5
    assert document.tasks == []


SEMIDIRECT_HEADER = "group C2 cyclic 2\ngroup C3 cyclic 3\npair P semidirect T=C2 N=C3\n"


@pytest.mark.parametrize("body, line, column", [
    ("0 1\n0 2 1\nend\n", 4, 1),
    ("0 1 2\n0 2 5\nend\n", 5, 5),
    ("0 1 2\nend\n", 3, 8),
    ("0 1 2\n0 2 1\n0 1 2\nend\n", 6, 1),
])
def test_action_tables_are_checked_against_the_groups(body, line, column):
    with pytest.raises(ParseError) as excinfo:
        parse_document(SEMIDIRECT_HEADER + body)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)


def test_right_action_entries_index_T():
    text = (
        "group C2 cyclic 2\ngroup C3 cyclic 3\npair P actions T=C2 N=C3\n"
        "left\n0 1 2\n0 2 1\nright\n0 0 0\n1 1 2\nend\n"
    )
    with pytest.raises(ParseError) as excinfo:
        parse_document(text)
    assert (excinfo.value.line, excinfo.value.column) == (9, 5)


def test_factorization_elements_must_exist():
    with pytest.raises(NotSubgroup) as excinfo:
        parse_document("group C2 cyclic 2\npair P factorization F=C2 N=0 T=0,5")
    assert excinfo.value.witness == {"factor": "T", "elements": [5]}


def test_bracket_indices_must_exist():
    with pytest.raises(ValidationError) as excinfo:
        parse_document("lie g brackets 2\n0 1 : 2=1\nend\n")
    assert excinfo.value.witness["index"] == 2


def test_action_elements_must_exist():
    text = "lie g abelian 2\ngroup C2 cyclic 2\naction rho lie=g group=C2\n3 : 1 0 ; 0 1\nend\n"
    with pytest.raises(ParseError) as excinfo:
        parse_document(text)
    assert (excinfo.value.line, excinfo.value.column) == (4, 1)


def test_group_sizes_are_bounded():
    with pytest.raises(ValidationError):
        parse_document("group C cyclic 0")
    with pytest.raises(SizeGuardExceeded):
        parse_document("group C cyclic 99999999999999999999999")
