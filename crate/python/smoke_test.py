"""Smoke test for the foliares Python extension.

Build the extension first:

    cargo build --release -p foliares-python --features extension-module

The script imports an installed `foliares` module if there is one,
otherwise it loads target/release/libfoliares_py.so.
"""

import importlib.util
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "crates" / "core" / "scenarios"


def load():
    try:
        import foliares

        return foliares
    except ImportError:
        pass
    for name in ("libfoliares_py.so", "libfoliares_py.dylib", "foliares_py.dll"):
        built = ROOT / "target" / "release" / name
        if built.exists():
            break
    else:
        sys.exit("extension not built: run cargo build --release -p foliares-python --features extension-module")
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / ("foliares.pyd" if built.suffix == ".dll" else "foliares.so")
    shutil.copy(built, target)
    spec = importlib.util.spec_from_file_location("foliares", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    fo = load()

    y = fo.MultiProjectiveSpace([3, 1, 1])
    assert y.dim == 5
    h1, h2 = y.hyperplane(1), y.hyperplane(2)
    assert str(h1 ** 3 * h2 * fo.ChowElement.parse(y, "12")) == "12*h1^3*h2"
    assert str(fo.segre_class(y, [[0, -2, 0], [0, 0, -2]])) == "1 + 2*h2 + 2*h3 + 4*h2*h3"

    for l in range(2, 13):
        sc = fo.Scenario(
            y,
            [[l, 0, 0], [1, 1, 0]],
            [[0, -2, 0], [0, 0, -2]],
            tangency=[((l - 1) ** 2, l, "h1^3*h2")],
        )
        lhs = sc.lhs_theorem_main()
        assert lhs == sc.lhs_proof_form() == sc.rhs()
        assert lhs.terms() == [([3, 1, 0], l * (l - 1) ** 2)]
        verdict, _ = sc.verify("theorem")
        assert verdict == "verified"

    p2 = fo.MultiProjectiveSpace([2])
    assert fo.chi_of_ci(p2, [[3]]) == 0
    conic = fo.Scenario(p2, [[2]], [[-2]], tangency=[(1, 2, "h1^2")])
    assert str(conic.tangency_corollary()) == "2*h1^2"

    assert fo.brunella_index("x2", "1; x1^3") == 3
    assert fo.milnor_number("x1^3 + x2^4") == 6
    assert fo.colength("x1^2 - x2; x2^2") == 4
    try:
        fo.colength("x1*x2", max_degree=8)
    except ValueError:
        pass
    else:
        raise AssertionError("non-isolated zero must raise")

    f = fo.ScenarioFile.parse((SCENARIOS / "izawa_sec4.scn").read_text())
    assert f.sweep == (2, 12)
    assert str(f.instantiate(3).lhs_theorem_main()) == "12*h1^3*h2"
    code, out = fo.run_scenario(str(SCENARIOS / "brunella_conic.scn"))
    assert code == 0, out
    print("python smoke test passed")


if __name__ == "__main__":
    main()
