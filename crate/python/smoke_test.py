#!/usr/bin/env python3
"""Smoke test for the qmock_py extension module.

Builds are produced by `cargo build -p qmock-py` (or --release); this script
locates the compiled cdylib, exposes it under the importable name, and runs
a handful of end-to-end checks.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib() -> pathlib.Path:
    candidates = []
    for profile in ("release", "debug"):
        for stem in ("libqmock_py.so", "libqmock_py.dylib", "qmock_py.dll"):
            p = ROOT / "target" / profile / stem
            if p.exists():
                candidates.append(p)
    if not candidates:
        sys.exit("build the module first: cargo build -p qmock-py")
    return max(candidates, key=lambda p: p.stat().st_mtime)


def import_module():
    lib = locate_cdylib()
    tmp = tempfile.mkdtemp(prefix="qmock_py_")
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, pathlib.Path(tmp) / f"qmock_py{suffix}")
    sys.path.insert(0, tmp)
    import qmock_py

    return qmock_py


def main() -> None:
    qm = import_module()

    # Euler's pentagonal expansion via the theta normalization
    euler = qm.j(1, 3, 12)
    assert str(euler) == "1 - q - q^2 + q^5 + q^7 - q^12", str(euler)
    assert euler.coeff(5) == "1"
    assert qm.poch_inf("q", 1, 12).terms() == euler.terms()

    # third-order mock theta omega(q)
    omega = qm.classical("omega", 5)
    assert [omega.coeff(k) for k in range(6)] == ["1", "2", "3", "4", "6", "8"]

    # m(q, q^2, -1) = 1/2 exactly
    half = qm.appell_m("q", 2, "-1", 30)
    assert half.coeff(0) == "1/2"
    assert half.terms() == [(0, "1/2")]

    # an indefinite theta double sum equals its Appell-Lerch expansion
    f = qm.hecke_f(1, 3, 1, "-q", "-q^3", 25)
    rhs = qm.hm_rhs(1, 2, "-q", "-q^3", 25)
    assert f.first_mismatch(rhs, 25) is None

    # a full identity: every cataloged form of M5 agrees
    for label, equal, first in qm.verify_identity("M5", 20):
        assert equal, f"M5 {label} differs first at q^{first}"

    # Bailey pair relation for the seventh-order pairs
    assert qm.check_pair("andrews0", 6, 30) is None
    assert qm.check_pair("bk", 6, 30) is None
    assert len(qm.pair_ids()) == 22
    assert len(qm.identity_ids()) == 23

    print("qmock_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
