#include "support.hpp"

#include "hlie/document.hpp"
#include "hlie/fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hlie;
using namespace hlie::test;
namespace fx = hlie::fixtures;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open " << path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

AlgebraDocument load(const std::string& name) { return parse_document(slurp(fixture_path(name))); }

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(HLIE_FIXTURE_DIR))
        if (entry.path().extension() == ".json") out.push_back(entry.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

const json kMinimal = json::parse(R"({
  "schema_version": "1",
  "dimension": 2,
  "basis_names": ["e1", "e2"],
  "alpha": [["1", "0"], ["0", "1"]],
  "brackets": [[{"i": 0, "j": 1, "coefficients": ["1", "0"]}]]
})");

// Applies `edit` to a copy of the minimal document and returns the error path.
template <typename F>
std::string error_path(F&& edit) {
    json doc = kMinimal;
    edit(doc);
    try {
        (void)parse_document(doc.dump());
    } catch (const DocumentError& err) {
        return err.path();
    }
    FAIL("document was accepted: " << doc.dump());
    return {};
}

} // namespace

TEST_CASE("parsing small documents") {
    const AlgebraDocument ab = load("ab1.json");
    CHECK(ab.dimension == 1);
    CHECK(ab.brackets.size() == 1);
    CHECK(ab.brackets[0].is_zero());
    CHECK_FALSE(ab.is_compatible());

    const AlgebraDocument g = load("g4a.json");
    CHECK(g.dimension == 4);
    CHECK(g.algebra().on_basis(0, 1) == vec({1, 1, 0, 0}));
    CHECK(g.basis_names == std::vector<std::string>{"e1", "e2", "e3", "e4"});
    REQUIRE(g.find_operator("N") != nullptr);
    CHECK(g.find_operator("M") == nullptr);
    CHECK(g.find_operator("N")->to_operator().matrix == fx::g4a_nijenhuis().matrix);

    const AlgebraDocument r = load("g2a.json");
    const OperatorSpec* op = r.find_operator("R");
    REQUIRE(op != nullptr);
    CHECK(op->kind == OperatorKind::RotaBaxter);
    CHECK(op->weight == -1);

    const AlgebraDocument m = parse_document(kMinimal.dump());
    CHECK(m.algebra().on_basis(0, 1) == vec({1, 0}));
    CHECK_THROWS_AS(m.compatible(), UsageError);
    CHECK(m.representation_or_adjoint().vdim() == 2);
}

TEST_CASE("fixture files describe the library fixtures") {
    auto same = [](const HomLieAlgebra& a, const HomLieAlgebra& b) {
        return a.alpha() == b.alpha() && a.bracket() == b.bracket();
    };
    auto same_pair = [](const CompatibleHomLieAlgebra& a, const CompatibleHomLieAlgebra& b) {
        return a.alpha() == b.alpha() && a.bracket(0) == b.bracket(0) && a.bracket(1) == b.bracket(1);
    };
    CHECK(same(load("ab1.json").algebra(), fx::ab1()));
    CHECK(same(load("g4a.json").algebra(), fx::g4a(1)));
    CHECK(same(load("g4a_a0.json").algebra(), fx::g4a(0)));
    CHECK(same(load("g4a_a2.json").algebra(), fx::g4a(2)));
    CHECK(same(load("g2a.json").algebra(), fx::g2a(1)));
    CHECK(same(load("g2a_a0.json").algebra(), fx::g2a(0)));
    CHECK(same(load("h3.json").algebra(), fx::h3()));
    CHECK(same_pair(load("d2.json").compatible(), fx::d2()));
    CHECK(same_pair(load("h3_pair.json").compatible(), fx::h3_pair()));
    CHECK(same_pair(load("b3.json").compatible(), fx::b3()));
    CHECK(load("d2.json").find_operator("N")->matrix == fx::d2_nijenhuis().matrix);
    CHECK(load("h3.json").find_operator("N")->matrix == fx::h3_nijenhuis().matrix);

    const Representation k = load("d2_split.json").representation_or_adjoint();
    const Representation expected = fx::d2_split_rep();
    CHECK(k.beta() == expected.beta());
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i) CHECK(k.actions()[b][i] == expected.actions()[b][i]);
}

TEST_CASE("every fixture round-trips through serialization") {
    const auto names = fixture_names();
    REQUIRE(names.size() >= 10);
    for (const std::string& name : names) {
        CAPTURE(name);
        const AlgebraDocument doc = load(name);
        const std::string text = serialize_document(doc);
        const AlgebraDocument again = parse_document(text);
        CHECK(again == doc);
        CHECK(serialize_document(again) == text);
        // Fixtures are stored in canonical form.
        CHECK(text == slurp(fixture_path(name)));
    }
}

TEST_CASE("documents with optional blocks") {
    const AlgebraDocument split = load("d2_split.json");
    REQUIRE(split.representation.has_value());
    REQUIRE(split.extension.has_value());
    CHECK(split.extension->splitting_shift.has_value());
    CHECK(split.extension->compare_cocycle.has_value());
    CHECK(split.extension->cocycle[0].target_dim() == 2);

    const AlgebraDocument def = load("d2_deform.json");
    REQUIRE(def.deformation.has_value());
    CHECK(def.deformation->order == 2);
    CHECK(def.deformation->coeffs1.size() == 2);
    CHECK(def.deformation->coeffs2.size() == 2);
}

TEST_CASE("invalid fixture files") {
    struct Case {
        const char* file;
        const char* path;
    };
    for (const Case c : {Case{"bracket_order.json", "/brackets/0/0"}, Case{"index_range.json", "/brackets/0/0/j"},
                         Case{"unknown_field.json", "/twist"}, Case{"float_rational.json", "/alpha/0/0"},
                         Case{"bad_rational.json", "/alpha/0/0"}}) {
        CAPTURE(c.file);
        try {
            (void)parse_document(slurp(fixture_path(std::string("invalid/") + c.file)));
            FAIL("accepted");
        } catch (const DocumentError& err) {
            CHECK(err.path().rfind(c.path, 0) == 0);
        }
    }
    try {
        (void)parse_document(slurp(fixture_path("invalid/syntax.json")));
        FAIL("accepted");
    } catch (const DocumentError& err) {
        CHECK(err.path().empty());
        CHECK(std::string(err.what()).find("line 5") != std::string::npos);
    }
}

TEST_CASE("validation errors point at the offending field") {
    CHECK(error_path([](json& d) { d.erase("alpha"); }) == "/alpha");
    CHECK(error_path([](json& d) { d["schema_version"] = "2"; }) == "/schema_version");
    CHECK(error_path([](json& d) { d["dimension"] = 0; }) == "/dimension");
    CHECK(error_path([](json& d) { d["dimension"] = 65; }) == "/dimension");
    CHECK(error_path([](json& d) { d["dimension"] = "2"; }) == "/dimension");
    CHECK(error_path([](json& d) { d["basis_names"] = {"e1", "e1"}; }).rfind("/basis_names", 0) == 0);
    CHECK(error_path([](json& d) { d["basis_names"] = {"e1"}; }) == "/basis_names");
    CHECK(error_path([](json& d) { d["alpha"][1] = {"0"}; }).rfind("/alpha/1", 0) == 0);
    CHECK(error_path([](json& d) { d["alpha"][0][1] = "x"; }) == "/alpha/0/1");
    CHECK(error_path([](json& d) { d["alpha"][0][1] = 1; }) == "/alpha/0/1");
    CHECK(error_path([](json& d) { d["brackets"] = json::array(); }) == "/brackets");
    CHECK(error_path([](json& d) { d["brackets"].push_back(json::array()); d["brackets"].push_back(json::array()); }) ==
          "/brackets");
    CHECK(error_path([](json& d) { d["brackets"][0][0]["coefficients"] = {"1"}; }) == "/brackets/0/0/coefficients");
    CHECK(error_path([](json& d) { d["brackets"][0][0]["i"] = -1; }) == "/brackets/0/0/i");
    CHECK(error_path([](json& d) { d["brackets"][0][0]["extra"] = 1; }) == "/brackets/0/0/extra");
    CHECK(error_path([](json& d) { d["brackets"][0].push_back(d["brackets"][0][0]); }) == "/brackets/0/1");
    CHECK(error_path([](json& d) {
              d["operators"] = json::parse(R"([{"name": "N", "kind": "nijenhuis", "weight": "1",
                                               "matrix": [["1","0"],["0","1"]]}])");
          }) == "/operators/0/weight");
    CHECK(error_path([](json& d) {
              d["operators"] = json::parse(R"([{"name": "R", "kind": "rota-baxter", "matrix": [["1","0"],["0","1"]]}])");
          }) == "/operators/0/weight");
    CHECK(error_path([](json& d) {
              d["operators"] = json::parse(R"([{"name": "N", "kind": "other", "matrix": [["1","0"],["0","1"]]}])");
          }) == "/operators/0/kind");
    CHECK(error_path([](json& d) {
              const json op = json::parse(R"({"name": "N", "kind": "nijenhuis", "matrix": [["1","0"],["0","1"]]})");
              d["operators"] = {op, op};
          }) == "/operators/1/name");
    CHECK(error_path([](json& d) {
              d["representation"] = json::parse(R"({"vdim": 1, "beta": [["1"]], "actions": [[[["0"]]]]})");
          }).rfind("/representation/actions", 0) == 0);
    CHECK(error_path([](json& d) {
              d["deformation"] = json::parse(R"({"order": 0, "coeffs1": [], "coeffs2": []})");
          }) == "/deformation/order");
    CHECK(error_path([](json& d) {
              d["deformation"] = json::parse(R"({"order": 1, "coeffs1": [[]], "coeffs2": []})");
          }).rfind("/deformation/coeffs2", 0) == 0);
    CHECK(error_path([](json& d) {
              d["extension"] = json::parse(R"({"cocycle": [[], []], "splitting_shift": [["1"]]})");
          }).rfind("/extension/splitting_shift", 0) == 0);
}

TEST_CASE("syntax errors report a position") {
    for (const char* text : {"", "{", "{\"dimension\": 1,}", "[1, 2", "{\"a\": tru}"}) {
        CAPTURE(text);
        try {
            (void)parse_document(text);
            FAIL("accepted");
        } catch (const DocumentError& err) {
            CHECK(std::string(err.what()).find("syntax error at line") != std::string::npos);
        }
    }
    CHECK_THROWS_AS(parse_document("[]"), DocumentError);
    CHECK_THROWS_AS(parse_document("\"text\""), DocumentError);
}

TEST_CASE("serialization is canonical") {
    AlgebraDocument doc;
    doc.dimension = 2;
    doc.basis_names = {"x", "y"};
    doc.alpha = identity(2);
    doc.brackets = {Cochain::zero(2, 2, 2)};
    const std::string text = serialize_document(doc);
    CHECK(text.find("\"coefficients\"") == std::string::npos);
    CHECK(text.find("\"basis_names\": [\"x\", \"y\"]") != std::string::npos);
    CHECK(text.back() == '\n');
    CHECK(parse_document(text) == doc);

    doc.brackets[0] = Cochain(2, 2, Matrix(Matrix::Constant(2, 1, Rational(-3, 4))));
    CHECK(serialize_document(doc).find("\"-3/4\"") != std::string::npos);
    CHECK(parse_document(serialize_document(doc)) == doc);

    // Key order in the input does not matter.
    json shuffled = kMinimal;
    const std::string a = serialize_document(parse_document(shuffled.dump()));
    const std::string b = serialize_document(parse_document(kMinimal.dump(2)));
    CHECK(a == b);
}
