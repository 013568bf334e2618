import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from hgroups.catalog import catalog, catalog_group
from hgroups.cli import VERBS, build_parser, load_group, main, parse_group_definition
from hgroups.errors import ParseError
from hgroups.group import are_isomorphic


def run(*argv, stdin=""):
    out = io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out)
    return code, out.getvalue()


def run_json(*argv, stdin=""):
    code, text = run("--format", "json", *argv, stdin=stdin)
    return code, json.loads(text)


class TestVerbs:
    def test_order_c1(self):
        code, text = run("order", "C1")
        assert code == 0 and "result.order: 1" in text

    def test_covers_s3(self):
        code, doc = run_json("covers", "S3")
        assert code == 0 and len(doc["result"]["rows"]) == 4
        assert doc["result"]["bijection"] and doc["result"]["normal_iff_galois"]

    def test_pipe_example(self):
        code, wreath = run("wreath", "S2", "3")
        assert code == 0
        code, doc = run_json("isomorphic", "-", "semidirect S3 on S2^3", stdin=wreath)
        assert code == 0 and doc["result"]["isomorphic"] is True

    def test_document_shape(self):
        code, doc = run_json("center", "D4")
        assert list(doc) == ["verb", "inputs", "result", "version"]
        assert doc["inputs"] == {"group": "D4"} and doc["result"]["order"] == 2

    @pytest.mark.parametrize(
        "argv,key,value",
        [
            (["conj-classes", "S4"], "count", 5),
            (["abelianize", "S4"], "order", 2),
            (["hom-set", "C2", "S3"], "count", 4),
            (["hom-classes", "C2", "S3"], "count", 2),
            (["hom-group", "C6", "C4"], "order", 2),
            (["loop-groupoid", "S3"], "conjugacy_classes", 3),
            (["direct", "C2", "C3"], "order", 6),
            (["wreath", "S2", "3"], "order", 48),
            (["sign", "4"], "kernel_order", 12),
            (["alt", "5"], "order", 60),
            (["cyclic-orderings", "5"], "stabilizer_order", 5),
            (["partitions"], "kernel_order", 4),
            (["deck", "S3"], "order", 6),
            (["cohomology", "C2", "C2"], "order", 2),
            (["cohomology", "C2", "C3"], "order", 1),
            (["cohomology", "S3", "C2", "--degree", "1"], "order", 2),
            (["extension", "C2", "C2", "--class", "1"], "split", False),
            (["semidirect", "S3", "S2^3"], "order", 48),
            (["semidirect", "A3", "V4", "--by", "points"], "order", 12),
            (["semidirect", "C2", "C3"], "order", 6),
        ],
    )
    def test_results(self, argv, key, value):
        code, doc = run_json(*argv)
        assert code == 0, doc
        assert doc["result"][key] == value

    def test_fiber_and_coset_groupoid(self):
        code, doc = run_json("fiber", "A3", "S3")
        assert code == 0 and len(doc["result"]["components"]) == 2
        code, doc = run_json("coset-groupoid", "C2", "S3")
        assert code == 0 and doc["result"]["equivalent_to_fiber"]
        code, doc = run_json("fiber", "C2", "C4", "--images", "(0 2)(1 3)")
        assert code == 0 and len(doc["result"]["components"]) == 2

    def test_fixed_points_and_orbits(self):
        code, doc = run_json("fixed-points", "D4", "--action", "adjoint")
        assert len(doc["result"]["fixed_points"]) == 2
        code, doc = run_json("orbits", "S3", "--action", "adjoint")
        assert sorted(o["size"] for o in doc["result"]["orbits"]) == [1, 2, 3]

    def test_deck_with_subgroup(self):
        code, doc = run_json("deck", "S3", "--subgroup", "(0 1 2)")
        assert code == 0 and doc["result"]["order"] == 2 and doc["result"]["cover_size"] == 2

    def test_eckmann_hilton(self):
        code, doc = run_json("eckmann-hilton", "--max-size", "2")
        assert [s["counterexamples"] for s in doc["result"]["searches"]] == [0, 0]
        code, doc = run_json("eckmann-hilton", "--op1", "0 1;1 0", "--op2", "0 1;1 0")
        assert doc["result"]["status"] == "CONFIRMED"

    def test_every_verb_has_a_parser(self):
        parser = build_parser()
        sub = next(a for a in parser._actions if a.dest == "verb")
        assert set(sub.choices) == set(VERBS)


class TestInput:
    def test_definition_file(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("# Klein four\ndegree 4\n(0 1)(2 3)\n[2,3,0,1]  # image list\n")
        for spec in [str(path), "@" + str(path)]:
            code, doc = run_json("order", spec)
            assert code == 0 and doc["result"]["order"] == 4

    def test_round_trip_text_and_json(self):
        for fmt in ["text", "json"]:
            _, text = run("--format", fmt, "wreath", "S2", "3")
            G = load_group("-", stdin=io.StringIO(text))
            assert G.order == 48

    def test_expressions(self):
        assert load_group("C2xC3xC5").order == 30
        assert load_group("(S3xC2)^2").order == 144
        assert load_group("wreath C3 2").order == 18
        assert are_isomorphic(load_group("semidirect S3 on V4 by points"), catalog_group("S4"))
        assert load_group("semidirect C2 on C4 by inversion").order == 8
        assert are_isomorphic(load_group("semidirect C2 on C4 by trivial"), catalog_group("C2xC4"))

    def test_catalog_names(self):
        for name, G in catalog().items():
            assert load_group(name).order == G.order
        assert catalog_group("Dic3").order == 12 and not catalog_group("Dic3").is_abelian()

    @pytest.mark.parametrize(
        "text",
        ["", "degree", "degree x", "(0 1)", "degree 3\n(0 3)", "degree 3\n(0 0)", "{\"result\": {}}", "{bad"],
    )
    def test_bad_definitions(self, text):
        with pytest.raises(Exception) as info:
            parse_group_definition(text)
        assert hasattr(info.value, "code")


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["order"],
            ["nosuchverb", "S3"],
            ["order", "Q9"],
            ["order", "S3xx"],
            ["order", "(S3"],
            ["order", "S2^"],
            ["order", "@/nonexistent/file"],
            ["wreath", "S2", "x"],
            ["semidirect", "C3", "C5", "--by", "bogus"],
            ["extension", "C2", "C2", "--class", "7"],
            ["extension", "C2", "C2", "--cocycle", "1,2"],
            ["eckmann-hilton", "--op1", "0 1;1 x", "--op2", "0 1;1 0"],
        ],
    )
    def test_parse_errors_exit_1(self, argv):
        code, doc = run_json(*argv)
        assert code == 1 and doc["error"]["code"] == "parse_error"

    @pytest.mark.parametrize(
        "argv,code_name",
        [
            (["hom-group", "S3", "C2"], "not_abelian"),
            (["order", "S9"], "order_limit_exceeded"),
            (["cohomology", "S4", "C2"], "budget_exceeded"),
            (["cohomology", "C2", "S3"], "not_abelian"),
            (["cohomology", "C2", "C2", "--degree", "5"], "degree_unsupported"),
            (["extension", "C3", "C2", "--cocycle", "0,0,0,0,1,0,0,0,0"], "not_a_cocycle"),
            (["fiber", "S3", "C2"], "not_a_homomorphism"),
            (["fiber", "C2", "S3", "--images", "(0 1 2)"], "not_a_homomorphism"),
            (["covers", "S5"], "order_limit_exceeded"),
            (["eckmann-hilton", "--op1", "1 1;1 0", "--op2", "0 1;1 0"], "unit_mismatch"),
            (["semidirect", "C3", "C3", "--by", "inversion"], "invalid_action"),
        ],
    )
    def test_domain_errors_exit_2(self, argv, code_name):
        code, doc = run_json(*argv)
        assert code == 2, doc
        assert doc["error"]["code"] == code_name

    def test_cap_is_echoed(self, monkeypatch):
        monkeypatch.setenv("HGROUPS_ORDER_CAP", "50")
        code, doc = run_json("order", "S5")
        assert code == 2 and doc["error"]["details"]["cap"] == 50

    def test_error_codes_distinct(self):
        import inspect

        from hgroups import errors

        classes = [c for _, c in inspect.getmembers(errors, inspect.isclass) if issubclass(c, errors.HGroupsError)]
        codes = [c.code for c in classes]
        assert len(codes) == len(set(codes))


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="SACDVQxo^()0123456789 @-wreathsmidrectonby", max_size=20))
def test_fuzz_group_specs_never_crash(spec):
    code, text = run("--format", "json", "order", spec)
    assert code in (0, 1, 2)
    doc = json.loads(text)
    assert ("result" in doc) == (code == 0)


@settings(max_examples=80, deadline=None)
@given(st.text(max_size=60))
def test_fuzz_definitions_never_crash(text):
    code, out = run("--format", "json", "order", "-", stdin=text)
    assert code in (0, 1, 2)
    json.loads(out)


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "hgroups", "order", "C1"], capture_output=True, text=True, check=False
    )
    assert p.returncode == 0 and "result.order: 1" in p.stdout
