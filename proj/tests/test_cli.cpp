#include <doctest.h>

#include <sstream>

#include "padix/cli.hpp"
#include "padix/serialize.hpp"

using namespace padix;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json json_of(std::vector<std::string> args) {
    args.push_back("--json");
    return Json::parse(call(args).out);
}

}  // namespace

TEST_CASE("solve") {
    const auto r = call({"solve", "--prime", "3", "--exp", "3", "--value", "8"});
    CHECK(r.code == cli::ok);
    CHECK(r.out.find("solvable: yes") != std::string::npos);
    CHECK(r.out.find("root: 0|2 + O(3^31)") != std::string::npos);

    const auto j = json_of({"solve", "--prime", "3", "--exp", "3", "--value", "8"});
    const auto v = verdict_from_json(j, PrecisionContext(Prime(3)));
    REQUIRE(v.root.has_value());
    CHECK(v.root->digit(0) == 2);
    CHECK(v.root->digit(1) == 0);

    CHECK(call({"solve", "--prime", "3", "--exp", "3", "--value", "2"}).code == cli::negative);
    CHECK(call({"solve", "--prime", "2", "--exp", "2", "--value", "1/3"}).code == cli::negative);
    CHECK(call({"solve", "--prime", "7", "--exp", "2", "--value", "0|2,0,0,0"}).code == cli::ok);
    CHECK(call({"solve", "--prime", "5", "--exp", "4", "--value", "16", "--prec", "8"}).code == cli::ok);
}

TEST_CASE("usage errors") {
    CHECK(call({}).code == cli::usage);
    CHECK(call({"frobnicate"}).code == cli::usage);
    CHECK(call({"solve", "--prime", "4", "--exp", "3", "--value", "2"}).code == cli::usage);
    CHECK(call({"solve", "--prime", "3", "--exp", "3"}).code == cli::usage);
    CHECK(call({"solve", "--prime", "3", "--exp", "3", "--value", "1/0"}).code == cli::usage);
    CHECK(call({"solve", "--prime", "3", "--exp", "3", "--value", "0"}).code == cli::usage);
    CHECK(call({"solve", "--prime", "3", "--exp", "3", "--value", "8", "--prec", "2"}).code == cli::usage);
    CHECK(call({"algebra-check", "--prime", "5", "--class", "IV", "--params", "1"}).code == cli::usage);
    CHECK(call({"algebra-check", "--prime", "5", "--class", "I", "--params", "1,2"}).code == cli::usage);
    CHECK(call({"algebra-normalize", "--prime", "5", "--params", "1,1,0,0,0,2"}).code == cli::usage);
    CHECK(call({"--help"}).code == cli::ok);
}

TEST_CASE("budget and precision errors") {
    CHECK(call({"epsilon", "--prime", "7", "--exp", "2", "--validate", "9", "--budget", "1000"}).code ==
          cli::precision);
    // three stages need more than three digits of the value
    CHECK(call({"solve", "--prime", "3", "--exp", "27", "--value", "0|1,0,0,0", "--prec", "4"}).code ==
          cli::precision);
}

TEST_CASE("criterion") {
    const auto sym = call({"criterion", "--prime", "p", "--m", "4"});
    CHECK(sym.code == cli::ok);
    CHECK(sym.out.find("a₁ = a₂") != std::string::npos);
    CHECK(call({"criterion", "--m", "4"}).out == sym.out);

    const auto j = json_of({"criterion", "--m", "2"});
    CHECK(criterion_from_json(j).to_unicode() == emit_criterion(std::nullopt, 2).to_unicode());

    CHECK(call({"criterion", "--prime", "3", "--m", "1", "--value", "8"}).code == cli::ok);
    CHECK(call({"criterion", "--prime", "3", "--m", "1", "--value", "2"}).code == cli::negative);
    CHECK(call({"criterion", "--m", "1", "--value", "2"}).code == cli::usage);
}

TEST_CASE("epsilon") {
    const auto j = json_of({"epsilon", "--prime", "5", "--exp", "5", "--validate", "4"});
    REQUIRE(j["sets"].size() == 3);
    const auto paper = set_from_json(j["sets"][0]);
    CHECK(paper.provenance == Provenance::paper_claimed);
    CHECK_FALSE(paper.validation->complete);
    CHECK(set_from_json(j["sets"][1]).validation->complete);
    CHECK(set_from_json(j["sets"][2]).validation->minimal);
    CHECK(j["coset_index"] == 5);

    const auto reduced = json_of({"epsilon", "--prime", "3", "--exp", "3", "--reduced"});
    REQUIRE(reduced["sets"].size() == 2);
    CHECK(reduced["sets"][0]["provenance"] == "paper-reduced");
    CHECK(reduced["sets"][1]["provenance"] == "reduced-minimal");
}

TEST_CASE("decompose") {
    const auto j = json_of({"decompose", "--prime", "3", "--exp", "3", "--value", "4", "--reduced"});
    CHECK(j["epsilon"] == "5");
    CHECK(call({"decompose", "--prime", "5", "--exp", "5", "--value", "3", "--reduced"}).code == cli::negative);
    const auto m = json_of({"decompose", "--prime", "5", "--exp", "5", "--value", "3"});
    CHECK(m["decomposed"] == true);
    CHECK(m["set"] == "reduced-minimal");
}

TEST_CASE("algebras") {
    const auto j = json_of({"algebra-check", "--prime", "5", "--class", "I", "--params", "1,-2,5,5"});
    CHECK(j["leibniz_defect"] == "0");
    CHECK(j["filiform"] == true);
    CHECK(tensor_from_json(j["tensor"], Prime(5)).close_to(class1_tensor(Prime(5), {1, -2, 5, 5})));
    // only [e_2,e_2] = e_6 on top of the chain
    CHECK(call({"algebra-check", "--prime", "3", "--class", "II", "--params", "0,0,0,1"}).code == cli::ok);

    const auto n = json_of({"algebra-normalize", "--prime", "5", "--params", "3,6,3,0,0,1"});
    CHECK(n["case"] == 11);
    CHECK(call({"algebra-normalize", "--prime", "5", "--params", "0,0,0,0,0,0"}).code == cli::negative);
    CHECK(call({"algebra-normalize", "--prime", "5", "--class", "III", "--params", "7,1,0,0,0,0"}).code == cli::ok);
}

TEST_CASE("report") {
    const auto r = call({"report"});
    REQUIRE(r.code == cli::ok);
    const auto j = Json::parse(r.out);
    for (const char* key : {"fast_paths", "recursion", "criteria", "epsilon_sets", "witnesses", "leibniz", "findings"}) {
        CHECK(j.contains(key));
    }
    CHECK_FALSE(j["findings"].empty());
    CHECK(j["leibniz"]["normalizer_witnesses"].size() == 11);
}
