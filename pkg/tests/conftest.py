import pytest

from chessboard_casimir import (
    CaseAssignment,
    CaseVariant,
    ChessboardSpec,
    build_mode_table,
)
from chessboard_casimir import cli


@pytest.fixture(scope="session")
def ehmh_assign():
    return CaseAssignment.from_variant(CaseVariant.EHMH_ELML)


@pytest.fixture(scope="session")
def half_spec(ehmh_assign):
    """Symmetric half-filled chessboard, 500 nm period, metal+magnetic patch 2."""
    return ChessboardSpec(500e-9, 500e-9, 0.5, 0.5, ehmh_assign)


@pytest.fixture(scope="session")
def asym_spec(ehmh_assign):
    return ChessboardSpec(500e-9, 500e-9, 0.75, 0.25, ehmh_assign)


@pytest.fixture(scope="session")
def energy_table_half_100(half_spec):
    return build_mode_table(half_spec, 100e-9, kind="energy")


@pytest.fixture(scope="session")
def force_table_half_100(half_spec):
    return build_mode_table(half_spec, 100e-9, kind="force")


@pytest.fixture(scope="session")
def validate_cli_run(tmp_path_factory):
    """One full default-tolerance validation run through the CLI."""
    out = tmp_path_factory.mktemp("validate") / "report.json"
    code = cli.main(["validate", "--out", str(out)])
    return code, out
