import json
from pathlib import Path

import pytest

from nexakt.certs import canonical_json
from nexakt.cli import main
from nexakt.fileio import (algebra_to_dict, complex_to_dict, dump_algebra,
                           load_algebra, module_from_dict, module_to_dict,
                           morphism_with_endpoints_to_dict)
from nexakt.presets import gen_linear_An_J2, gen_preprojective_A
from nexakt.reps import hom_basis, projective_module, simple_module


@pytest.fixture
def files(tmp_path, a3):
    """Fixture files for the A3/J^2 setup."""
    alg, expected = gen_linear_An_J2(2, 1)
    paths = {}
    paths["algebra"] = tmp_path / "a3.json"
    dump_algebra(alg, paths["algebra"])
    mods = {
        "P0": projective_module(alg, "0"),
        "P1": projective_module(alg, "1"),
        "P2": projective_module(alg, "2"),
        "S0": simple_module(alg, "0"),
        "S2": simple_module(alg, "2"),
    }
    paths["m3"] = tmp_path / "m3.json"
    paths["m3"].write_text(canonical_json(
        {"generators": [module_to_dict(mods[k]) for k in ("P0", "P1", "P2", "S2")]}))
    paths["bad_m"] = tmp_path / "bad_m.json"
    s1 = simple_module(alg, "1")
    paths["bad_m"].write_text(canonical_json(
        {"generators": [module_to_dict(mods[k]) for k in ("P0", "P1", "P2")]
         + [module_to_dict(s1)]}))
    d0 = hom_basis(mods["S0"], mods["P1"])[0]
    paths["d0"] = tmp_path / "d0.json"
    paths["d0"].write_text(canonical_json(morphism_with_endpoints_to_dict(d0)))
    d1 = hom_basis(mods["P1"], mods["P2"])[0]
    d2 = hom_basis(mods["P2"], mods["S2"])[0]
    from nexakt.complexes import complex_from_maps, ComplexSeq
    good = complex_from_maps(0, [d0, d1, d2])
    paths["good_complex"] = tmp_path / "good.json"
    paths["good_complex"].write_text(canonical_json(complex_to_dict(good)))
    from nexakt.reps import zero_morphism
    broken = ComplexSeq(0, list(good.terms),
                        [d0, d1, zero_morphism(mods["P2"], mods["S2"])])
    paths["broken_complex"] = tmp_path / "broken.json"
    paths["broken_complex"].write_text(canonical_json(complex_to_dict(broken)))
    paths["upper"] = tmp_path / "upper.json"
    upper = complex_from_maps(0, [d0, d1])
    paths["upper"].write_text(canonical_json(complex_to_dict(upper)))
    paths["s1"] = tmp_path / "s1.json"
    paths["s1"].write_text(canonical_json(module_to_dict(s1)))
    paths["s0"] = tmp_path / "s0.json"
    paths["s0"].write_text(canonical_json(module_to_dict(mods["S0"])))
    paths["out"] = tmp_path / "certs"
    return paths


def run(*argv):
    return main([str(a) for a in argv])


def test_algebra_roundtrip_bytes(tmp_path):
    alg, _ = gen_linear_An_J2(2, 1)
    p1 = tmp_path / "one.json"
    dump_algebra(alg, p1)
    alg2 = load_algebra(p1)
    p2 = tmp_path / "two.json"
    dump_algebra(alg2, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_module_roundtrip(a3):
    p1 = projective_module(a3, "1")
    d = module_to_dict(p1)
    back = module_from_dict(json.loads(canonical_json(d)), a3)
    assert module_to_dict(back) == d


def test_algebra_check(files):
    assert run("algebra", "check", "--algebra", files["algebra"],
               "--out", files["out"]) == 0


def test_nct_check_pass_and_fail(files):
    assert run("nct", "check", "--algebra", files["algebra"],
               "--m", files["m3"], "--n", 2, "--out", files["out"]) == 0
    assert run("nct", "check", "--algebra", files["algebra"],
               "--m", files["bad_m"], "--n", 2, "--out", files["out"]) == 1


def test_ncoker(files):
    assert run("ncoker", "--algebra", files["algebra"], "--morphism",
               files["d0"], "--m", files["m3"], "--n", 2,
               "--out", files["out"]) == 0
    cert = json.loads((files["out"] / "ncoker.cert.json").read_text())
    assert cert["verdict"] is True
    assert cert["witnesses"]["terms"] == [[1, 1, 0], [0, 1, 1], [0, 0, 1]]


def test_nkernel(files, a3):
    alg = load_algebra(files["algebra"])
    p2 = projective_module(alg, "2")
    s2 = simple_module(alg, "2")
    dn = hom_basis(p2, s2)[0]
    dn_path = files["algebra"].parent / "dn.json"
    dn_path.write_text(canonical_json(morphism_with_endpoints_to_dict(dn)))
    assert run("nkernel", "--algebra", files["algebra"], "--morphism",
               dn_path, "--m", files["m3"], "--n", 2,
               "--out", files["out"]) == 0


def test_verify_nexact(files):
    assert run("verify-nexact", "--algebra", files["algebra"], "--complex",
               files["good_complex"], "--m", files["m3"], "--n", 2,
               "--out", files["out"]) == 0
    assert run("verify-nexact", "--algebra", files["algebra"], "--complex",
               files["broken_complex"], "--m", files["m3"], "--n", 2,
               "--out", files["out"]) == 1


def test_npushout(files):
    assert run("npushout", "--algebra", files["algebra"], "--complex",
               files["upper"], "--morphism", files["d0"],
               "--m", files["m3"], "--out", files["out"]) == 0


def test_ext_compare(files):
    assert run("ext", "compare", "--algebra", files["algebra"],
               "--a", files["s1"], "--b", files["s0"], "--m", files["m3"],
               "--n", 2, "--k", 1, "--out", files["out"]) == 0
    cert = json.loads((files["out"] / "ext-compare.cert.json").read_text())
    assert cert["witnesses"]["ext_via_projective_resolution"] == 1


def test_frobenius_subcommands(tmp_path):
    alg = gen_preprojective_A(2)
    apath = tmp_path / "pi2.json"
    dump_algebra(alg, apath)
    p1 = projective_module(alg, "1")
    p2 = projective_module(alg, "2")
    s1 = simple_module(alg, "1")
    mpath = tmp_path / "m.json"
    mpath.write_text(canonical_json(
        {"generators": [module_to_dict(x) for x in (p1, p2, s1)]}))
    alpha = hom_basis(s1, p2)[0]
    alpha_path = tmp_path / "alpha.json"
    alpha_path.write_text(canonical_json(morphism_with_endpoints_to_dict(alpha)))
    out = tmp_path / "certs"
    for sub in ("setup", "angle", "rotate", "cone"):
        argv = ["frobenius", sub, "--algebra", apath, "--m", mpath,
                "--n", 2, "--out", out]
        if sub != "setup":
            argv += ["--alpha", alpha_path]
        assert run(*argv) == 0, sub


def test_search_nct(files):
    assert run("search", "nct", "--algebra", files["algebra"], "--n", 2,
               "--out", files["out"]) == 0
    cert = json.loads((files["out"] / "search-nct.cert.json").read_text())
    assert cert["verdict"] == 1


def test_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {')
    code = run("algebra", "check", "--algebra", bad)
    assert code == 2
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_unknown_flag_exits_2():
    assert run("ncoker", "--bogus") == 2


def test_help_exits_0(capsys):
    assert run("ncoker", "--help") == 0
    assert "usage" in capsys.readouterr().out


def test_demo_determinism(tmp_path):
    out1, out2 = tmp_path / "one", tmp_path / "two"
    assert run("demo", "a3-j2", "--seed", 7, "--out", out1) == 0
    assert run("demo", "a3-j2", "--seed", 7, "--out", out2) == 0
    c1 = (out1 / "demo-a3-j2.cert.json").read_bytes()
    c2 = (out2 / "demo-a3-j2.cert.json").read_bytes()
    assert c1 == c2
    assert json.loads(c1)["seed"] == 7


def test_demo_json_format(tmp_path, capsys):
    assert run("demo", "a3-j2", "--out", tmp_path, "--format", "json") == 0
    out = capsys.readouterr().out
    payload = json.loads(out)
    assert payload["check"] == "demo-a3-j2"


def test_env_seed(tmp_path, monkeypatch):
    monkeypatch.setenv("NEXAKT_SEED", "13")
    assert run("demo", "a3-j2", "--out", tmp_path) == 0
    cert = json.loads((Path(tmp_path) / "demo-a3-j2.cert.json").read_text())
    assert cert["seed"] == 13


def test_named_modules_in_m_list(files, tmp_path, a3):
    alg = load_algebra(files["algebra"])
    names = {"P0": projective_module(alg, "0"),
             "P1": projective_module(alg, "1"),
             "P2": projective_module(alg, "2"),
             "S2": simple_module(alg, "2")}
    loads = []
    for name, mod in names.items():
        path = tmp_path / f"{name}.json"
        path.write_text(canonical_json(module_to_dict(mod)))
        loads += ["--module", f"{name}={path}"]
    assert run("nct", "check", "--algebra", files["algebra"],
               "--m", "P0,P1,P2,S2", "--n", 2, "--out", files["out"],
               *loads) == 0


def test_named_modules_in_ext_compare(files, tmp_path):
    alg = load_algebra(files["algebra"])
    s1_path = tmp_path / "named_s1.json"
    s1_path.write_text(canonical_json(module_to_dict(simple_module(alg, "1"))))
    assert run("ext", "compare", "--algebra", files["algebra"],
               "--module", f"X={s1_path}", "--a", "X", "--b", files["s0"],
               "--m", files["m3"], "--n", 2, "--k", 1,
               "--out", files["out"]) == 0


def test_unloaded_name_exits_2(files):
    assert run("nct", "check", "--algebra", files["algebra"],
               "--m", "nope,setup", "--n", 2, "--out", files["out"]) == 2


def test_demo_presets_pass_at_all_primes(tmp_path):
    for p in (2, 5, 101):
        assert run("demo", "a3-j2", "--p", p, "--out", tmp_path / str(p)) == 0
        assert run("demo", "preproj-a2", "--p", p,
                   "--out", tmp_path / str(p)) == 0


def test_certificate_roundtrip_reverifies(files):
    # the embedded inputs re-load and re-verify to the recorded verdict
    from nexakt.addcat import add_category
    from nexakt.fileio import algebra_from_dict, module_from_dict
    from nexakt.tilting import check_n_cluster_tilting
    from nexakt.presets import nakayama_indecomposables
    from nexakt.certs import content_hash
    assert run("nct", "check", "--algebra", files["algebra"],
               "--m", files["m3"], "--n", 2, "--out", files["out"]) == 0
    cert = json.loads((files["out"] / "nct-check.cert.json").read_text())
    alg_entry = cert["inputs"]["algebra"]
    assert content_hash(alg_entry["content"]) == alg_entry["sha256"]
    alg = algebra_from_dict(alg_entry["content"])
    gens = [module_from_dict(g, alg)
            for g in cert["inputs"]["generators"]["content"]]
    cat = add_category(alg, gens, seed=cert["seed"])
    report = check_n_cluster_tilting(cat, cert["params"]["n"],
                                     nakayama_indecomposables(alg),
                                     complete=True, seed=cert["seed"])
    assert report.ok == cert["verdict"]
