"""Tests for the command-line entry point."""

import json

import pytest

from gcx.core.models import ApiResponse, ErrorDetail, Warning
from gcx.launcher import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, exit_code, main


class TestParser:
    """Tests for argument parsing."""

    def test_enumerate(self):
        """enumerate takes a flavor and an exact size."""
        args = build_parser().parse_args(
            ["enumerate", "--flavor", "GC", "-k", "2", "--v", "4", "--e", "6"]
        )
        assert args.command == "enumerate"
        assert (args.flavor, args.k, args.v, args.e) == ("GC", 2, 4, 6)

    def test_verify_chainmap(self):
        """verify chainmap takes a map name."""
        args = build_parser().parse_args(["verify", "chainmap", "b", "-k", "3"])
        assert (args.command, args.target, args.name) == ("verify", "chainmap", "b")

    def test_unknown_map(self):
        """Unknown map names are usage errors."""
        with pytest.raises(SystemExit) as excinfo:
            build_parser().parse_args(["verify", "chainmap", "nope"])
        assert excinfo.value.code == EXIT_USAGE

    def test_grt_defaults(self):
        """grt defaults to rational ranks with lifts."""
        args = build_parser().parse_args(["grt"])
        assert args.field == "rational"
        assert not args.no_lifts


class TestExitCode:
    """Tests for the exit status of a response."""

    def test_success(self):
        """A clean success exits 0."""
        assert exit_code(ApiResponse(success=True, data={})) == EXIT_OK

    def test_informational_warning(self):
        """Warnings that are not failed checks keep the exit status at 0."""
        response = ApiResponse(
            success=True,
            data={},
            warnings=[Warning(code="UPPER_BOUNDS", message="mod p")],
        )
        assert exit_code(response) == EXIT_OK

    def test_failed_check(self):
        """A failed check exits 1."""
        response = ApiResponse(
            success=True,
            data={},
            warnings=[Warning(code="D2_NONZERO", message="d^2 does not vanish")],
        )
        assert exit_code(response) == EXIT_FAILED

    def test_error(self):
        """An error exits 1."""
        response = ApiResponse(success=False, error=ErrorDetail(code="PARSE_ERROR", message="x"))
        assert exit_code(response) == EXIT_FAILED


class TestMain:
    """Tests for whole command runs."""

    def test_degree_bound(self, capsys):
        """The degree bound for GC_2 at three loops holds."""
        assert main(["verify", "degree-bound", "-k", "2", "-b", "3"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["success"] is True
        assert payload["data"]["max_degree"] == 0

    def test_enumerate(self, capsys):
        """enumerate prints the listing as JSON."""
        argv = ["enumerate", "--flavor", "GC", "-k", "2", "--v", "4", "--e", "6", "--workers", "1"]
        assert main(argv) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["data"]["count"] == 1

    def test_p_and_q(self, capsys):
        """k can be given as p + q + 1."""
        argv = ["verify", "degree-bound", "--p", "1", "--q", "0", "-b", "3"]
        assert main(argv) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["data"]["k"] == 2

    def test_bad_flavor(self, capsys):
        """An unknown flavor is a usage error."""
        argv = ["enumerate", "--flavor", "xGC", "-k", "2", "--v", "2", "--e", "1"]
        assert main(argv) == EXIT_USAGE
        captured = capsys.readouterr()
        assert "invalid configuration" in captured.err
        payload = json.loads(captured.out)
        assert payload["success"] is False
        assert payload["error"]["code"] == "INVALID_CONFIG"
        assert payload["error"]["field"] == "flavor"

    def test_missing_k(self, capsys):
        """Without k or p and q the configuration is rejected."""
        assert main(["verify", "degree-bound", "-b", "3"]) == EXIT_USAGE
        assert json.loads(capsys.readouterr().out)["error"]["code"] == "INVALID_CONFIG"

    def test_no_multiedges(self, capsys):
        """--no-multiedges drops graphs with parallel edges from the listing."""
        argv = ["enumerate", "--flavor", "dGC", "-k", "3", "--v", "2", "--e", "3", "--workers", "1"]
        assert main(argv) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["data"]["count"] > 0
        assert main([*argv, "--no-multiedges"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["data"]["count"] == 0

    def test_error_exit(self, capsys):
        """A library error exits 1 with the error in the JSON."""
        assert main(["verify", "degree-bound", "-k", "2", "-b", "7"]) == EXIT_FAILED
        payload = json.loads(capsys.readouterr().out)
        assert payload["error"]["code"] == "BOUND_EXCEEDED"
