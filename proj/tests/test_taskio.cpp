#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "buncat/schema.hpp"
#include "buncat/taskio.hpp"

using buncat::json;
using buncat::Verdict;
using buncat::VerificationReport;

namespace {

json load(const std::string& name) {
  const std::filesystem::path path = std::filesystem::path(BUNCAT_DATA_DIR) / name;
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

template <class F>
std::string thrown_message(F&& fn) {
  try {
    fn();
  } catch (const buncat::Error& e) {
    return std::string(e.code()) + "|" + e.what();
  }
  return "(nothing thrown)";
}

bool check_passed(const VerificationReport& report, const std::string& name) {
  const auto* c = report.find(name);
  return c != nullptr && c->verdict == Verdict::Pass;
}

}  // namespace

TEST_CASE("schemas are stable, parseable, and closed under the kind list") {
  for (const std::string& kind : buncat::schema_kinds()) {
    const std::string first = buncat::emit_schema(kind);
    const std::string second = buncat::emit_schema(kind);
    CHECK(first == second);
    CHECK(first.back() == '\n');
    const json parsed = json::parse(first);
    CHECK(parsed.contains("title"));
  }
  CHECK(thrown_message([] { buncat::emit_schema("sheaf"); }).starts_with("UnknownKind"));
}

TEST_CASE("every bundled document validates against its schema") {
  std::set<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(BUNCAT_DATA_DIR)) {
    if (entry.path().extension() != ".json") continue;
    names.insert(entry.path().filename().string());
    std::ifstream in(entry.path());
    const json doc = json::parse(in);
    CHECK_NOTHROW(buncat::require_valid_document(doc));
  }
  CHECK(names.size() == 15);
  CHECK(names.count("category_poset.json") == 1);
  CHECK(names.count("z180_chain.json") == 1);
}

TEST_CASE("category document verifies laws and subobjects") {
  const auto report = buncat::run_task(load("category_poset.json"));
  CHECK(report.task == "category");
  CHECK(report.overall_pass());
  CHECK(check_passed(report, "laws/identity_neutrality"));
  CHECK(check_passed(report, "laws/composite_endpoints"));
  CHECK(check_passed(report, "laws/associativity"));
  CHECK(check_passed(report, "subobjects/a_strict_preorder_spanning"));
  CHECK(check_passed(report, "subobjects/b_monomorphisms"));
  CHECK(check_passed(report, "subobjects/c_factorization_closed"));
}

TEST_CASE("a non-closed inclusion list fails without throwing") {
  json doc = load("category_poset.json");
  doc["subobjects"] = json::array({"idA", "idB", "idC", "ab", "bc"});
  const auto report = buncat::run_task(doc);
  CHECK_FALSE(report.overall_pass());
  const auto* check = report.find("subobjects/choice_well_formed");
  REQUIRE(check != nullptr);
  CHECK(check->verdict == Verdict::Fail);
  CHECK(check->witness.at("error").get<std::string>().find("MalformedChoice") !=
        std::string::npos);
}

TEST_CASE("bundle and chain family documents verify the axioms") {
  const auto bundles = buncat::run_task(load("bundle_family_nested.json"));
  CHECK(bundles.task == "bundle_subobjects");
  CHECK(bundles.overall_pass());
  CHECK(check_passed(bundles, "inclusion_factor_unique"));

  const auto chains = buncat::run_task(load("chain_family_nested.json"));
  CHECK(chains.task == "chain_subobjects");
  CHECK(chains.overall_pass());
  CHECK(check_passed(chains, "a_strict_preorder_spanning"));
  CHECK(check_passed(chains, "inclusion_factor_unique"));
}

TEST_CASE("fibre chain document reports its stages") {
  const auto report = buncat::run_task(load("fibre_chain_nested.json"));
  CHECK(report.task == "fibre_chain");
  CHECK(report.overall_pass());
  CHECK(check_passed(report, "construction"));
  CHECK(check_passed(report, "restriction_coherence"));
  CHECK(report.result.at("base_point") == "a");
  CHECK(report.result.at("stages") == json({{"x0"}, {"x0", "x1"}}));
}

TEST_CASE("residue chain passes its squares and principal actions") {
  const auto report = buncat::run_task(load("z180_chain.json"));
  CHECK(report.task == "chain");
  CHECK(report.overall_pass());
  for (const std::string name : {"link_0_square", "link_1_square", "link_2_square"})
    CHECK(check_passed(report, name));
  for (const std::string name :
       {"stage_0_principal", "stage_1_principal", "stage_2_principal", "stage_3_principal"})
    CHECK(check_passed(report, name));
}

TEST_CASE("explicit chain with a fibre-swap action") {
  const auto report = buncat::run_task(load("chain_explicit.json"));
  CHECK(report.overall_pass());
  CHECK(check_passed(report, "link_0_square"));
  CHECK(check_passed(report, "stage_0_principal"));
}

TEST_CASE("sequence documents report exactness with witnesses") {
  const auto exact = buncat::run_task(load("sequence_z2z4z2.json"));
  CHECK(exact.task == "exactness");
  CHECK(exact.overall_pass());
  CHECK(exact.find("exact_at_0")->verdict == Verdict::Skipped);
  CHECK(exact.find("exact_at_1")->verdict == Verdict::Pass);

  const auto broken = buncat::run_task(load("sequence_zero_map.json"));
  CHECK_FALSE(broken.overall_pass());
  const auto* bad = broken.find("exact_at_1");
  REQUIRE(bad != nullptr);
  CHECK(bad->verdict == Verdict::Fail);
  CHECK(bad->witness.at("in_kernel_not_image") == json::array({1}));
}

TEST_CASE("ladder documents localize the broken square") {
  const auto identity = buncat::run_task(load("ladder_identity.json"));
  CHECK(identity.task == "ladder");
  CHECK(identity.overall_pass());
  CHECK(check_passed(identity, "square_0"));
  CHECK(check_passed(identity, "square_1"));
  CHECK(check_passed(identity, "subsequence"));

  const auto zero = buncat::run_task(load("ladder_zero.json"));
  CHECK(zero.overall_pass());
  CHECK(zero.find("subsequence") == nullptr);

  const auto broken = buncat::run_task(load("ladder_broken.json"));
  CHECK_FALSE(broken.overall_pass());
  CHECK(check_passed(broken, "square_0"));
  const auto* bad = broken.find("square_1");
  REQUIRE(bad != nullptr);
  CHECK(bad->verdict == Verdict::Fail);
  CHECK(bad->witness.at("element") == json::array({1}));
  CHECK(bad->witness.at("vertical_then_map") == json::array({1}));
  CHECK(bad->witness.at("map_then_vertical") == json::array({0}));
}

TEST_CASE("jet documents compute jets, projections, and prolongations") {
  const auto jet = buncat::run_task(load("jet_paper.json"));
  CHECK(jet.task == "jet_task");
  CHECK(check_passed(jet, "jet_computed"));
  CHECK(jet.result.at("jet").at("tuple") == json({"2", "4", "1", "4", "2", "0"}));
  CHECK(jet.result.at("jet").at("coefficients")[1].at("name") == "u_x");
  CHECK(jet.result.at("jet").at("point") == json({"1", "2"}));

  const auto projected = buncat::run_task(load("jet_project.json"));
  CHECK(check_passed(projected, "projection_computed"));
  CHECK(projected.result.at("jet").at("order") == 3);
  CHECK(projected.result.at("projected").at("order") == 1);
  CHECK(projected.result.at("projected").at("tuple") == json({"2", "2", "1"}));

  const auto prolonged = buncat::run_task(load("jet_prolong.json"));
  CHECK(check_passed(prolonged, "prolongation_computed"));
  CHECK(prolonged.result.at("prolonged").at("point") == json({"3"}));
  CHECK(prolonged.result.at("prolonged").at("tuple") == json({"2", "3/2", "1/2"}));
}

TEST_CASE("curve probe document is consistent with symbolic equivalence") {
  const auto report = buncat::run_task(load("curve_probe_pair.json"));
  CHECK(check_passed(report, "probe_consistent"));
  CHECK(report.result.at("equivalent") == true);
  CHECK(report.result.at("probe").at("mismatches") == 0);
  CHECK(report.result.at("probe").at("trials") == 40);
}

TEST_CASE("malformed documents name the offending path") {
  auto message = [](const json& doc) {
    return thrown_message([&] { buncat::run_task(doc); });
  };

  CHECK(message(json::array()).starts_with("MalformedDocument"));
  CHECK(message(json::object()).find("/kind") != std::string::npos);
  CHECK(message({{"kind", "sheaf"}}).starts_with("UnknownKind"));

  json extra = load("category_poset.json");
  extra["flavour"] = "strange";
  CHECK(message(extra).find("/flavour: unexpected field") != std::string::npos);

  json empty_family = {{"kind", "bundle_family"}, {"bundles", json::array()}};
  CHECK(message(empty_family).find("/bundles: fewer than 1 items") != std::string::npos);

  json bad_command = load("jet_paper.json");
  bad_command["command"] = "differentiate";
  CHECK(message(bad_command).find("/command") != std::string::npos);

  json neither_chain = {{"kind", "chain"}, {"stages", 3}};
  CHECK(message(neither_chain).find("matches none of the allowed forms") !=
        std::string::npos);

  json missing_map = {{"kind", "sequence"}, {"groups", {{2}, {4}}}, {"maps", json::array()}};
  CHECK(message(missing_map).find("/maps") != std::string::npos);

  json bad_subobject = load("category_poset.json");
  bad_subobject["subobjects"].push_back("zz");
  CHECK(message(bad_subobject).find("/subobjects/6") != std::string::npos);

  json conflicting = load("category_poset.json");
  conflicting["composition"].push_back({{"first", "ab"}, {"then", "bc"}, {"equals", "idA"}});
  CHECK(message(conflicting).find("conflicting entries") != std::string::npos);

  json short_point = load("jet_paper.json");
  short_point["point"] = json::array({"1"});
  CHECK(message(short_point).find("/point") != std::string::npos);

  json bad_modulus = {{"kind", "chain"},
                      {"residues", {{"total_modulus", 6}, {"base_moduli", {6, 4}}}}};
  CHECK(message(bad_modulus).find("/residues/base_moduli/1") != std::string::npos);

  json dup_label = {{"kind", "bundle_family"},
                    {"bundles",
                     json::array({{{"total", {"e0", "e0"}},
                                   {"base", {"p"}},
                                   {"projection", {{"e0", "p"}}}}})}};
  const std::string dup_message = message(dup_label);
  CHECK(dup_message.find("/bundles/0/total") != std::string::npos);
  CHECK(dup_message.find("DuplicateElement") != std::string::npos);
}

TEST_CASE("reports are byte-stable and honor the seed override") {
  const json probe_doc = load("curve_probe_pair.json");
  CHECK(buncat::run_task(probe_doc).to_json().dump(2) ==
        buncat::run_task(probe_doc).to_json().dump(2));

  const json chain_doc = load("z180_chain.json");
  CHECK(buncat::run_task(chain_doc).to_json().dump(2) ==
        buncat::run_task(chain_doc).to_json().dump(2));

  json mismatch_doc = probe_doc;
  mismatch_doc["second_section"] = "x + x^2";
  mismatch_doc["trials"] = 5;
  const auto first = buncat::run_task(mismatch_doc, 99);
  json reseeded = mismatch_doc;
  reseeded["seed"] = 99;
  const auto second = buncat::run_task(reseeded);
  CHECK(first.to_json() == second.to_json());
  CHECK(first.result.at("equivalent") == false);
  CHECK(first.result.at("probe").at("mismatches").get<int>() > 0);
  CHECK(check_passed(first, "probe_consistent"));
}
