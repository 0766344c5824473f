"""Smoke test for the ttg extension module.

Build first with `cargo build -p ttg-py --release`. If `ttg` is not
importable, the script loads target/{release,debug}/libttg.so directly.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load_ttg():
    try:
        import ttg

        return ttg
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        for name in ("libttg.so", "libttg.dylib", "ttg.dll"):
            path = root / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("ttg", str(path))
                spec = importlib.util.spec_from_loader("ttg", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                sys.modules["ttg"] = module
                return module
    sys.exit("ttg extension not found; run `cargo build -p ttg-py --release`")


def main():
    ttg = load_ttg()

    w2 = ttg.Ordinal("w^2")
    assert str(w2) == "w^2"
    assert w2.is_limit() and not w2.is_successor()
    assert ttg.Ordinal("w") + ttg.Ordinal("1") == ttg.Ordinal("w+1")
    assert ttg.Ordinal("1") + ttg.Ordinal("w") == ttg.Ordinal.omega()
    assert ttg.Ordinal("w*2") < w2
    assert w2.succ().pred() == w2
    try:
        ttg.Ordinal("w+w")
        raise AssertionError("non-canonical ordinal accepted")
    except ttg.TtgError as e:
        assert "SyntaxError" in str(e)

    chain = ttg.Space.finite(["x", "y", "z"], [("x", "y"), ("y", "z")])
    assert chain.points() == ["x", "y", "z"]
    assert chain.closure("{y}") == "{y,z}"
    assert chain.is_thomason("{z}") and not chain.is_thomason("{x}")
    krull = chain.dimension("krull")
    assert [str(krull.value(p)) for p in "xyz"] == ["2", "1", "0"]
    assert krull.validate() == []
    assert krull.within_bound()
    assert chain.visibility_witness("y") == ("{y,z}", "{z}")
    assert ttg.check_compatibility(chain)[0]
    stages = ttg.filtration(chain, "all", "krull")
    assert [(str(v), k, d) for v, k, d, _ in stages] == [
        ("0", "base", "{z}"),
        ("1", "successor", "{y}"),
        ("2", "successor", "{x}"),
    ]
    assert ttg.gamma_point(chain, "{x,y}", "y") == "{y}"
    assert ttg.thomason_ideals(chain) == ["{}", "{z}", "{y,z}", "{x,y,z}"]

    omega2 = ttg.Space.ordinal("w^2")
    cb = omega2.dimension()
    assert str(cb.space_dim()) == "2"
    assert str(cb.value("w*3")) == "1"
    assert [s for _, s in cb.strata()][-1] == "[w^2,w^2]"
    assert ttg.check_compatibility(omega2, "cbrank")[0]
    view = omega2.subspace("[0,3]u[w*2,w*3]u{w^2}")
    assert str(view.dimension("cbrank").value("w^2")) == "0"

    cantor = ttg.Space.from_text("cantor\n")
    assert cantor.is_constructible()
    try:
        cantor.dimension("cbrank")
        raise AssertionError("Cantor space got a rank")
    except ttg.TtgError as e:
        assert "RankUndefined" in str(e)

    assert ttg.is_semi_artinian("fields:5")
    assert ttg.is_semi_artinian("interval:w^2")
    assert not ttg.is_semi_artinian("atomless")
    assert ttg.spec_of("fields:3").points() == ["0", "1", "2"]
    assert ttg.stone_roundtrip("fields:3") == (True, "PASS 8/8 subsets\n")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
