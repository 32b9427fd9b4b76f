"""Schema language parsing, diagnostics, and rendering."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdkit import AttributeSet, parse_fd_text, parse_schema

from util import fd, fdset


def codes(result):
    return [d.code for d in result.diagnostics]


class TestParsing:
    def test_minimal_document(self):
        result = parse_schema("scheme S(A,B,C)\nfd A -> B")
        assert result.ok and not result.diagnostics
        doc = result.document
        assert len(doc.schemes) == 1
        assert doc.schemes[0].name == "S"
        assert doc.schemes[0].attrs == AttributeSet("A B C")
        assert doc.fds == fdset("A -> B", universe="A B C")

    def test_wide_right_side(self):
        result = parse_schema("scheme R(A,B,C,D,E)\nfd E -> C D")
        assert result.ok
        assert result.document.fds == fdset("E -> C D", universe="A B C D E")

    def test_vacuous_dependency_warns_but_parses(self):
        result = parse_schema("fd A ->")
        assert result.ok
        assert codes(result) == ["W200"]
        assert list(result.document.fds) == [fd("A ->")]

    def test_comments_and_blank_lines(self):
        result = parse_schema("# a comment\n\nscheme S(A)  # trailing\n")
        assert result.ok and len(result.document.schemes) == 1

    def test_unicode_arrow_accepted(self):
        result = parse_schema("fd A → B")
        assert result.ok
        assert result.document.fds == fdset("A -> B")

    def test_whitespace_or_comma_separated_lists(self):
        one = parse_schema("scheme S(A, B, C)\nfd A B -> C").document
        two = parse_schema("scheme S(A B C)\nfd A, B -> C").document
        assert one == two

    def test_universe_declaration_extends_known_attributes(self):
        result = parse_schema("universe A, B, Z\nscheme S(A,B)\nfd A -> Z")
        assert result.ok
        assert result.document.universe == AttributeSet("A B Z")
        assert result.document.explicit_universe

    def test_universe_inferred_when_nothing_is_declared(self):
        result = parse_schema("fd A -> B\nfd B -> C")
        assert result.ok
        doc = result.document
        assert doc.universe == AttributeSet("A B C")
        assert not doc.explicit_universe
        assert not doc.schemes

    def test_local_dependencies_assigned_by_membership(self):
        doc = parse_schema(
            "scheme S(A,B)\nscheme T(B,C)\nfd A -> B\nfd B -> C\n"
        ).document
        assert list(doc.schemes[0].fds) == [fd("A -> B")]
        assert list(doc.schemes[1].fds) == [fd("B -> C")]

    def test_positions_recorded(self):
        doc = parse_schema("# nothing\nscheme S(A)\nfd A -> A\n").document
        assert doc.scheme_lines == (2,)
        assert doc.fd_lines == (3,)


class TestDiagnostics:
    @pytest.mark.parametrize(
        "text,code",
        [
            ("scheme S(A", "E100"),
            ("scheme S()", "E100"),
            ("fd A B C", "E100"),
            ("fd -> B", "E100"),
            ("universe", "E100"),
            ("closure of A", "E101"),
            ("scheme S(A-B)", "E110"),
            ("scheme S(__C)", "E111"),
            ("fd __D -> A", "E111"),
            ("scheme S(A)\nscheme S(B)", "E120"),
            ("universe A\nuniverse B", "E121"),
            ("scheme S(A,B)\nfd A -> Z", "E130"),
        ],
    )
    def test_error_codes(self, text, code):
        result = parse_schema(text)
        assert not result.ok
        assert code in codes(result)

    def test_duplicate_dependency_warns(self):
        result = parse_schema("fd A -> B\nfd A -> B")
        assert result.ok
        assert codes(result) == ["W201"]
        assert len(result.document.fds) == 1

    def test_errors_carry_positions(self):
        result = parse_schema("fd A -> B\nbogus line")
        (diag,) = result.errors
        assert diag.line == 2
        assert diag.severity == "error"
        assert "2:" in str(diag)

    def test_diagnostics_sorted_by_position(self):
        result = parse_schema("scheme S(A)\nfd A -> Z\nnonsense")
        assert [d.line for d in result.diagnostics] == sorted(
            d.line for d in result.diagnostics
        )

    @given(st.text(max_size=200))
    def test_parser_never_raises(self, text):
        result = parse_schema(text)
        assert result.document is not None or result.errors


class TestRendering:
    @pytest.mark.parametrize(
        "text",
        [
            "scheme S(A,B,C)\nfd A -> B",
            "universe A, B, C\nfd A -> B, C",
            "fd A ->",
            "scheme S(A,B)\nscheme T(B,C)\nfd A -> B\nfd B -> C",
        ],
    )
    def test_parse_render_parse_identity(self, text):
        first = parse_schema(text).document
        second = parse_schema(first.render()).document
        assert second == first
        assert [s.name for s in second.schemes] == [s.name for s in first.schemes]

    def test_render_is_stable(self):
        doc = parse_schema("scheme S(C, A)\nfd C->A").document
        assert doc.render() == parse_schema(doc.render()).document.render()


class TestParseFdText:
    def test_accepts_the_cli_forms(self):
        assert parse_fd_text("A -> C") == fd("A -> C")
        assert parse_fd_text("A,B -> C D") == fd("A B -> C D")
        assert parse_fd_text("A → B") == fd("A -> B")
        assert parse_fd_text("A ->") == fd("A ->")

    @pytest.mark.parametrize("text", ["A B", "-> B", "A -> 1B", "__C -> A"])
    def test_rejects_malformed_input(self, text):
        with pytest.raises(ValueError):
            parse_fd_text(text)

    def test_universe_membership_check(self):
        with pytest.raises(ValueError):
            parse_fd_text("A -> Z", universe=AttributeSet("A B"))
