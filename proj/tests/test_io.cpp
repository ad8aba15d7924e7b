#include "doctest.h"

#include "oracles.hpp"
#include "sdk/errors.hpp"
#include "sdk/json_io.hpp"

#include <random>

using namespace sdk;

namespace {

std::string data(const std::string& name) { return std::string(SDK_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("rationals as p/q strings")
{
    CHECK(rational_from_json("3/4") == Rational(3, 4));
    CHECK(rational_from_json("-6/8") == Rational(-3, 4));
    CHECK(rational_from_json(json(5)) == Rational(5));
    CHECK(rational_to_json(Rational(3)) == "3/1");
    CHECK(rational_to_json(Rational(-2, 6)) == "-1/3");
    CHECK_THROWS_AS_CODE(rational_from_json(json(1.5)), Errc::ParseError);
    CHECK_THROWS_AS_CODE(rational_from_json("x/2"), Errc::ParseError);
    CHECK_THROWS_AS_CODE(rational_from_json("1/0"), Errc::ParseError);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Rational q = oracle::random_rational(rng, 1000, 97);
        json j = rational_to_json(q);
        REQUIRE(j.is_string());
        CHECK(j.get<std::string>().find('/') != std::string::npos);
        CHECK(rational_from_json(j) == q);
    }
}

TEST_CASE("fields and elements")
{
    CHECK(field_from_json("Q").degree() == 1);
    json f2 = {{"min_poly", {"-2/1", "0/1", "1/1"}}};
    NumberField f = field_from_json(f2);
    CHECK(f.degree() == 2);
    CHECK(field_to_json(f) == f2);
    CHECK(field_to_json(NumberField::rationals()) == "Q");
    CHECK_THROWS_AS_CODE(field_from_json(json::object()), Errc::ParseError);
    CHECK_THROWS_AS_CODE(field_from_json(json{{"min_poly", {"1/1"}}}), Errc::ParseError);

    FieldElement x = element_from_json(json{"1/2", "3/1"}, f);
    CHECK(x == f.element({Rational(1, 2), Rational(3)}));
    CHECK(element_to_json(x) == json{"1/2", "3/1"});
    CHECK(element_from_json(json("7/1"), f) == f.from_rational(7));
    CHECK_THROWS_AS_CODE(element_from_json(json{"1/1", "1/1", "1/1"}, f), Errc::ParseError);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        FieldElement e = oracle::random_element(f, rng);
        CHECK(element_from_json(element_to_json(e), f) == e);
    }

    FQuatAlgebra d(f.from_rational(-1), f.from_rational(-3));
    FQuat lam = quaternion_from_json(json{"0/1", "1/1", "0/1", "0/1"}, d);
    CHECK(lam == d.lambda());
    CHECK(quaternion_from_json(json("2/1"), d) == d.scalar(f.from_rational(2)));
    CHECK_THROWS_AS_CODE(quaternion_from_json(json{"0/1", "1/1", "0/1"}, d), Errc::ParseError);

    json c = complex_to_json(Complex(0.5, -2), 53);
    CHECK(c["re"] == 0.5);
    CHECK(c["im"] == -2.0);
    CHECK(c["precision_bits"] == 53);
}

TEST_CASE("spec files")
{
    DatumSpec gu = load_spec(data("gu21.json"));
    CHECK(gu.name == "GU(2,1) over Q(i)");
    REQUIRE(gu.factors.size() == 1);
    CHECK(gu.factors[0].kind == FactorSpec::Kind::TypeA);
    CHECK(gu.factors[0].gram.size() == 3);
    REQUIRE(gu.center.has_value());
    CHECK(gu.center->rank == 2);
    CHECK(gu.kernel_generators == std::vector<int>{1});
    CHECK(is_strongly_ADH(gu));

    DatumSpec so = load_spec(data("so10star.json"));
    REQUIRE(so.factors.size() == 1);
    CHECK(classify_factor(so.factors[0]).label == "D5");
    CHECK(classify_factor(so.factors[0]).admissible);

    DatumSpec qa = load_spec(data("quaternionic_a3.json"));
    CHECK(qa.factors[0].d0.has_value());
    CHECK(qa.factors[0].degree == 2);
    CHECK(classify_factor(qa.factors[0]).label == "A3");
    CHECK(is_strongly_ADH(qa));

    DatumSpec no = load_spec(data("not_adh.json"));
    CHECK_FALSE(is_strongly_ADH(no));
    CHECK(classify_factor(no.factors[1]).label == "C3");

    CHECK_THROWS_AS_CODE(load_spec(data("does_not_exist.json")), Errc::ParseError);
    CHECK_THROWS_AS_CODE(spec_from_json(json::object()), Errc::ParseError);
    CHECK_THROWS_AS_CODE(spec_from_json(json{{"factors", {{{"type", "A"}}}}}), Errc::ParseError);
    json badskew = json::parse(R"({"factors": [{"type": "D", "space": {"algebra": {"a": "-1/1", "b": "-1/1"},
        "r": ["1/1", "0/1", "0/1", "0/1"], "gram": [["0/1", "0/1", "1/1", "0/1"]]}}]})");
    CHECK_THROWS_AS_CODE(spec_from_json(badskew), Errc::ParseError);

    json kvalued = json::parse(R"({"factors": [{"type": "A", "space": {"delta": "-1/1",
        "gram": ["1/1", {"a": "1/1", "b": "1/2"}, "-1/1"]}}]})");
    DatumSpec kv = spec_from_json(kvalued);
    CHECK(kv.factors[0].warnings.size() == 1);
    CHECK(kv.factors[0].gram[1] == NumberField::rationals().one());
}

TEST_CASE("report schemas")
{
    DatumSpec gu = load_spec(data("gu21.json"));
    DescentReport r = run_descent(gu, 99, 5);
    json j = to_json(r);
    for (const char* key : {"factors", "strongly_ADH", "extension_ok", "conjugate_point_ok", "cocycle_ok", "hecke",
                            "diagnostics", "seed", "bundles"})
        CHECK(j.contains(key));
    CHECK(j["seed"] == 99);
    CHECK(j["ok"] == true);
    REQUIRE(j["bundles"].size() == 1);
    const json& b = j["bundles"][0];
    for (const char* key : {"kind", "place", "theta_squared", "equals_star", "char_conj", "deligne", "seed"})
        CHECK(b.contains(key));
    CHECK(b["deligne"]["lie_dimension"] == 8);

    InvolutionBundle bundle = bundle_of(gu.factors[0]);
    json bj = bundle_to_json(bundle);
    CHECK(bj["label"] == "A2");
    CHECK(bj["equals_star"] == true);
    REQUIRE(bj["places"].size() == 1);
    CHECK(bj["places"][0]["group"] == "SU(2,1)");
    CHECK(bj["places"][0]["form"][0][0]["precision_bits"] == 53);

    std::vector<InvolutionBundle> bundles{bundle};
    auto hecke = hecke_from_json(read_json_file(data("gu21_q.json")), bundles);
    REQUIRE(hecke.size() == 2);
    CHECK(hecke[0].descends_if_equal);
    CHECK_FALSE(hecke[1].descends_if_equal);
    CHECK_THROWS_AS_CODE(hecke_from_json(json{{"factor", 3}, {"q", {{"1/1"}}}}, bundles), Errc::ParseError);
}
