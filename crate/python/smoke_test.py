#!/usr/bin/env python3
"""Smoke test for the sl2ode_py extension module.

Builds the cdylib with cargo (pass --no-build to skip), stages it under
a temp directory with the importable name, and exercises the bindings:
coefficients, equation rendering, symmetry verification, determining
system solving, and the exact expression type.

Usage: python3 python/smoke_test.py [--no-build]
"""

import json
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_extension(no_build: bool) -> Path:
    if not no_build:
        subprocess.run(
            ["cargo", "build", "-p", "sl2ode-py", "--release"],
            cwd=REPO,
            check=True,
        )
    candidates = [
        REPO / "target" / "release" / "libsl2ode_py.so",
        REPO / "target" / "release" / "libsl2ode_py.dylib",
        REPO / "target" / "release" / "sl2ode_py.dll",
    ]
    for c in candidates:
        if c.exists():
            return c
    sys.exit("extension library not found; run cargo build -p sl2ode-py --release")


def stage_module(lib: Path) -> Path:
    staging = Path(tempfile.mkdtemp(prefix="sl2ode_py_"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy2(lib, staging / f"sl2ode_py{suffix}")
    return staging


def main() -> None:
    no_build = "--no-build" in sys.argv[1:]
    staging = stage_module(build_extension(no_build))
    sys.path.insert(0, str(staging))
    import sl2ode_py as m

    # Coefficients: the recursion values and the closed form's sign flip.
    assert m.coefficients(4) == ["6", "-6"]
    assert m.coefficients(5) == ["10", "-30", "45/2"]
    assert m.coefficients(4, source="closed_form") == ["-6", "6"]

    # Equation rendering.
    assert m.equation("eq9") == "3*y''^2 - 2*y'*y''' = 0"
    assert m.equation("eq3", k=4) == "y^(4) = 6*y''*y'''/y' - 6*y''^3/y'^2"
    eq10 = json.loads(m.equation("eq10", k=4, format="json"))
    assert eq10["order"] == 4 and eq10["family"] == "eq10"

    # Symmetry verification.
    assert m.is_symmetry("eq3", "X3", k=6)
    assert m.is_symmetry("eq9", "xi=0; eta=y^2")
    assert not m.is_symmetry("eq10", "xi=0; eta=y", k=4)
    assert m.residual("eq10", "X4", k=4) == "y'^4"

    # Determining-system reports.
    r3 = json.loads(m.solve("eq3", k=5, degree=2))
    assert r3["dimension"] == 5 and r3["classification"] == "SL2R_PLUS_R2"
    r10 = json.loads(m.solve("eq10", k=5, degree=2))
    assert r10["dimension"] == 3 and r10["classification"] == "SL2R"
    r9 = json.loads(m.solve("eq9", degree=2))
    assert r9["dimension"] == 6 and r9["classification"] == "SL2R_PLUS_SL2R"
    custom = json.loads(m.solve_ode(3, "3*y''^2/(2*y')", degree=2))
    assert custom["dimension"] == 6

    # Exact expressions.
    x = m.Expr("x")
    y = m.Expr("y")
    assert str((x + m.Expr("1")) ** 2) == "x^2 + 2*x + 1"
    assert ((x + y) ** 2 - x**2 - m.Expr("2") * x * y - y**2).is_zero()
    assert m.Expr("x^2").diff("x") == m.Expr("2*x")
    assert str(m.Expr("1/x").diff("x")) == "-1/x^2"
    assert m.Expr("y'*y''").total_derivative() == m.Expr("y''^2 + y'*y'''")
    assert m.Expr("y^(4)").subs("y^(4)", m.Expr("y'")) == m.Expr("y'")

    # Bracket arithmetic: [X2, X3] = 2 X1.
    assert m.commutator("X2", "X3") == "xi = 2*x; eta = 0"

    print("sl2ode_py smoke test passed")


if __name__ == "__main__":
    main()
