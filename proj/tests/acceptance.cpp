// Acceptance driver: one line per criterion, nonzero exit when any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "buncat/category.hpp"
#include "buncat/chains.hpp"
#include "buncat/exact.hpp"
#include "buncat/finset.hpp"
#include "buncat/jets.hpp"
#include "buncat/taskio.hpp"
#include "generators.hpp"

using buncat::json;
using buncat::Rational;
using buncat::Verdict;

namespace {

std::string data_file(const std::string& name) {
  return std::string(BUNCAT_DATA_DIR) + "/" + name;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string command = std::string("\"") + BUNCAT_CLI_PATH + "\" " + args;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {};
  CliResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  const int status = pclose(pipe);
  if (status >= 0 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

bool check_verdict(const json& report, const std::string& name, const std::string& verdict) {
  for (const json& check : report.at("checks"))
    if (check.at("name") == name) return check.at("verdict") == verdict;
  return false;
}

// --------------------------------------------------------------------------
// criterion bodies

bool subobject_axioms_on_random_families(std::string& note) {
  const auto start = std::chrono::steady_clock::now();
  testgen::Rng rng(101);
  const int families = 100;
  for (int t = 0; t < families; ++t) {
    const std::vector<buncat::Bundle> family = testgen::random_nested_family(rng, 5, 150000);
    const auto report = buncat::verify_bun_subobject_axioms(family);
    for (const std::string name :
         {"a_strict_preorder_spanning", "b_monomorphisms", "c_factorization_closed",
          "inclusion_factor_unique"}) {
      const auto* check = report.find(name);
      if (check == nullptr || check->verdict != Verdict::Pass) {
        note = "family " + std::to_string(t) + " failed " + name;
        return false;
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  note = std::to_string(families) + " families in " + std::to_string(seconds) + "s";
  return seconds <= 60.0;
}

bool mono_epi_oracles(std::string& note) {
  testgen::Rng rng(202);
  std::size_t checked = 0;
  for (int family = 0; family < 60 && checked < 500; ++family) {
    std::vector<buncat::FinSet> sets = {buncat::FinSet({"pt"}),
                                        buncat::FinSet({"w0", "w1"})};
    const std::string prefixes = "abc";
    for (char prefix : prefixes)
      sets.push_back(buncat::FinSet(
          testgen::labels(std::string(1, prefix), testgen::pick(rng, 4))));
    const buncat::FinSetCategory cat(sets);
    const buncat::HomIndex homs = buncat::HomIndex::build(cat);

    for (buncat::MorId f = 0; f < cat.morphism_count(); ++f) {
      const buncat::FinMap map = cat.as_map(f);
      const bool lib_mono = buncat::is_monomorphism(cat, f, homs);
      const bool lib_epi = buncat::is_epimorphism(cat, f, homs);

      bool pair_mono = true;
      for (buncat::ObjId t = 0; t < cat.object_count() && pair_mono; ++t)
        for (const buncat::MorId g : homs.hom(t, cat.source(f)))
          for (const buncat::MorId h : homs.hom(t, cat.source(f)))
            if (g != h && cat.compose(g, f) == cat.compose(h, f)) {
              pair_mono = false;
              break;
            }
      bool pair_epi = true;
      for (buncat::ObjId t = 0; t < cat.object_count() && pair_epi; ++t)
        for (const buncat::MorId g : homs.hom(cat.target(f), t))
          for (const buncat::MorId h : homs.hom(cat.target(f), t))
            if (g != h && cat.compose(f, g) == cat.compose(f, h)) {
              pair_epi = false;
              break;
            }

      if (lib_mono != map.injective() || lib_mono != pair_mono ||
          lib_epi != map.surjective() || lib_epi != pair_epi) {
        note = "disagreement on '" + cat.morphism_label(f) + "'";
        return false;
      }
      ++checked;
    }
  }
  note = std::to_string(checked) + " functions checked";
  return checked >= 500;
}

bool chain_composition_closure(std::string& note) {
  testgen::Rng rng(303);
  std::size_t composed = 0;
  for (int round = 0; round < 60 && composed < 200; ++round) {
    const std::size_t stages = 2 + testgen::pick(rng, 3);
    std::vector<buncat::BundleChain> family;
    family.push_back(testgen::random_chain(rng, stages, 2, 2));
    family.push_back(testgen::random_chain(rng, stages, 2, 2));
    const buncat::ChainFamilyCategory cat(family);

    for (buncat::MorId f = 0; f < cat.morphism_count() && composed < 1000; ++f)
      for (buncat::MorId g = 0; g < cat.morphism_count() && composed < 1000; ++g) {
        if (cat.target(f) != cat.source(g)) continue;
        const buncat::ChainMorphism composite =
            buncat::compose_chain_morphisms(cat.as_morphism(f), cat.as_morphism(g));
        std::vector<std::pair<buncat::FinMap, buncat::FinMap>> components;
        for (const buncat::BundleMorphism& c : composite.components)
          components.emplace_back(c.total_map, c.base_map);
        try {
          const buncat::ChainMorphism revalidated = buncat::validate_chain_morphism(
              composite.source, composite.target, components);
          if (revalidated != composite) {
            note = "revalidation changed the morphism";
            return false;
          }
        } catch (const buncat::Error& e) {
          note = std::string("composite rejected: ") + e.what();
          return false;
        }
        if (cat.compose(f, g) != cat.find(composite).value()) {
          note = "composite disagrees with the enumerated category";
          return false;
        }
        ++composed;
      }
  }
  note = std::to_string(composed) + " compositions revalidated";
  return composed >= 200;
}

bool residue_tower_document(std::string& note) {
  const CliResult first = run_cli("--input " + data_file("z180_chain.json"));
  const CliResult second = run_cli("--input " + data_file("z180_chain.json"));
  if (first.exit_code != 0 || second.exit_code != 0) {
    note = "exit code " + std::to_string(first.exit_code);
    return false;
  }
  if (first.out != second.out) {
    note = "reports differ between runs";
    return false;
  }
  const json report = json::parse(first.out);
  if (report.at("overall") != "pass") {
    note = "overall fail";
    return false;
  }
  for (const std::string name : {"link_0_square", "link_1_square", "link_2_square",
                                 "stage_0_principal", "stage_1_principal",
                                 "stage_2_principal", "stage_3_principal"})
    if (!check_verdict(report, name, "pass")) {
      note = name + " did not pass";
      return false;
    }

  const std::vector<std::pair<long long, std::size_t>> expected = {
      {180, 1}, {45, 4}, {9, 20}, {1, 180}};
  for (const auto& [generator, order] : expected) {
    const json group_doc = {
        {"residue_subgroup", {{"modulus", 180}, {"generator", generator}}}};
    const buncat::FinGroup group = buncat::taskio::parse_group(group_doc, "/");
    if (group.order() != order) {
      note = "generator " + std::to_string(generator) + " gave order " +
             std::to_string(group.order());
      return false;
    }
  }
  note = "exit 0, byte-identical reports, stage group orders 1/4/20/180";
  return true;
}

bool prolongation_identity_and_functoriality(std::string& note) {
  testgen::Rng rng(505);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + testgen::pick(rng, 2);
    const unsigned k = testgen::pick(rng, 4);
    const buncat::Jet j = testgen::random_jet(rng, m, k);
    if (buncat::prolong(buncat::identity_spec(m), j) != j) {
      note = "identity prolongation moved a jet at trial " + std::to_string(t);
      return false;
    }
  }
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + testgen::pick(rng, 2);
    const unsigned k = 1 + testgen::pick(rng, 3);
    const buncat::MorphismSpec s1 = testgen::random_spec(rng, m, 3);
    const buncat::MorphismSpec s2 = testgen::random_spec(rng, m, 3);
    const buncat::Jet j = testgen::random_jet(rng, m, k);
    if (buncat::prolong(buncat::compose_specs(s1, s2), j) !=
        buncat::prolong(s2, buncat::prolong(s1, j))) {
      note = "functoriality failed at trial " + std::to_string(t);
      return false;
    }
  }
  note = "100 identity trials, 100 functoriality trials, exact equality";
  return true;
}

bool projection_recursion(std::string& note) {
  testgen::Rng rng(606);
  for (std::size_t m = 1; m <= 3; ++m)
    for (unsigned k = 1; k <= 4; ++k) {
      const buncat::Jet j = testgen::random_jet(rng, m, k);
      for (unsigned mid = 0; mid <= k; ++mid)
        for (unsigned low = 0; low <= mid; ++low)
          if (buncat::project(buncat::project(j, mid), low) != buncat::project(j, low)) {
            note = "hop mismatch at m=" + std::to_string(m) + " k=" + std::to_string(k);
            return false;
          }
    }

  const json desc = buncat::jet_chain_descriptor(2, 2);
  const json expected = {"x", "y", "u", "u_x", "u_y", "u_xx", "u_xy", "u_yy"};
  if (desc.at("stages")[0].at("coordinates") != expected) {
    note = "coordinate schema mismatch";
    return false;
  }
  note = "all hops agree for m<=3, k<=4; 8-coordinate schema matches";
  return true;
}

double acceptance_eval(const buncat::PolySection& phi, const std::vector<double>& x) {
  double out = 0.0;
  for (const buncat::MultiIndex& a : buncat::multi_indices_up_to(phi.base_dim, 10)) {
    const Rational c = phi.value.coefficient(a);
    if (c == 0) continue;
    double term = buncat::to_double(c);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (unsigned q = 0; q < a[i]; ++q) term *= x[i];
    out += term;
  }
  return out;
}

double acceptance_fd(const buncat::PolySection& phi, std::vector<double> x,
                     buncat::MultiIndex alpha, double h) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    --alpha[i];
    auto up = x;
    auto down = x;
    up[i] += h;
    down[i] -= h;
    return (acceptance_fd(phi, up, alpha, h) - acceptance_fd(phi, down, alpha, h)) / (2.0 * h);
  }
  return acceptance_eval(phi, x);
}

bool jet_worked_example(std::string& note) {
  const buncat::PolySection phi = buncat::parse_section(2, "x^2 * y");
  const buncat::Jet jet = buncat::jet_of(phi, {1, 2}, 2);
  std::vector<Rational> tuple;
  for (const auto& [a, c] : jet.coeffs) tuple.push_back(c);
  if (tuple != std::vector<Rational>{2, 4, 1, 4, 2, 0}) {
    note = "symbolic tuple mismatch";
    return false;
  }
  for (const auto& [a, c] : jet.coeffs) {
    const double approx = acceptance_fd(phi, {1.0, 2.0}, a, 1e-4);
    if (std::abs(buncat::to_double(c) - approx) >= 1e-6) {
      note = "finite-difference deviation " +
             std::to_string(std::abs(buncat::to_double(c) - approx));
      return false;
    }
  }
  note = "tuple (2, 4, 1, 4, 2, 0) exact; finite differences within 1e-6";
  return true;
}

bool prolongation_well_defined(std::string& note) {
  testgen::Rng rng(808);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + testgen::pick(rng, 2);
    const unsigned k = testgen::pick(rng, 4);
    const buncat::MorphismSpec spec = testgen::random_spec(rng, m, 3);
    const buncat::PolySection phi = testgen::random_section(rng, m, 3);
    std::vector<Rational> x0;
    for (std::size_t i = 0; i < m; ++i)
      x0.push_back(Rational(static_cast<long long>(rng() % 3) - 1));
    const buncat::PolySection psi = buncat::make_section(
        m, phi.value + testgen::vanishing_jet_poly(rng, m, k, x0));
    const buncat::Jet shared = buncat::jet_of(phi, x0, k);
    if (buncat::jet_of(psi, x0, k) != shared) {
      note = "representatives do not share a jet at trial " + std::to_string(t);
      return false;
    }
    const std::vector<Rational> y0 = buncat::base_map_apply(spec, x0);
    const buncat::Jet via_phi = buncat::jet_of(buncat::transform_section(spec, phi), y0, k);
    const buncat::Jet via_psi = buncat::jet_of(buncat::transform_section(spec, psi), y0, k);
    if (via_phi != via_psi || via_phi != buncat::prolong(spec, shared)) {
      note = "prolongation depended on the representative at trial " + std::to_string(t);
      return false;
    }
  }
  note = "100 representative pairs, identical output jets";
  return true;
}

bool exactness_oracle(std::string& note) {
  const buncat::FinAbGroup z2({2});
  const buncat::FinAbGroup z4({4});
  const auto exact = buncat::is_exact(buncat::make_sequence(
      {z2, z4, z2}, {buncat::AbHom(z2, z4, {{2}}), buncat::AbHom(z4, z2, {{1}})}));
  if (!exact.overall_pass()) {
    note = "doubling sequence reported non-exact";
    return false;
  }
  const auto broken = buncat::is_exact(buncat::make_sequence(
      {z2, z4, z2}, {buncat::AbHom(z2, z4, {{2}}), buncat::AbHom::zero(z4, z2)}));
  const auto* bad = broken.find("exact_at_1");
  if (broken.overall_pass() || bad == nullptr || bad->verdict != Verdict::Fail) {
    note = "zero-map variant not rejected at position 1";
    return false;
  }

  testgen::Rng rng(909);
  for (int t = 0; t < 200; ++t) {
    const buncat::FinAbGroup src = testgen::random_group(rng, 64);
    const buncat::FinAbGroup dst = testgen::random_group(rng, 64);
    const buncat::AbHom h = testgen::random_hom(rng, src, dst);
    if (buncat::kernel(h).size() * buncat::image(h).size() != src.order()) {
      note = "kernel/image order identity failed at trial " + std::to_string(t);
      return false;
    }
  }
  note = "exact and non-exact verdicts correct; 200 kernel/image identities";
  return true;
}

bool ladder_detection(std::string& note) {
  const CliResult broken1 = run_cli("--input " + data_file("ladder_broken.json"));
  const CliResult broken2 = run_cli("--input " + data_file("ladder_broken.json"));
  if (broken1.exit_code != 1) {
    note = "broken ladder exit code " + std::to_string(broken1.exit_code);
    return false;
  }
  if (broken1.out != broken2.out) {
    note = "broken-ladder reports differ between runs";
    return false;
  }
  const json report = json::parse(broken1.out);
  std::size_t failures = 0;
  for (const json& check : report.at("checks"))
    if (check.at("verdict") == "fail") {
      ++failures;
      if (check.at("name") != "square_1") {
        note = std::string("unexpected failing check ") +
               check.at("name").get<std::string>();
        return false;
      }
    }
  if (failures != 1) {
    note = std::to_string(failures) + " failing checks, expected exactly 1";
    return false;
  }

  for (const std::string name : {"ladder_identity.json", "ladder_zero.json"}) {
    const CliResult ok = run_cli("--input " + data_file(name));
    if (ok.exit_code != 0) {
      note = name + " exited " + std::to_string(ok.exit_code);
      return false;
    }
  }

  const CliResult seeded1 = run_cli("--input " + data_file("curve_probe_pair.json") + " --seed 7");
  const CliResult seeded2 = run_cli("--input " + data_file("curve_probe_pair.json") + " --seed 7");
  if (seeded1.exit_code != 0 || seeded1.out != seeded2.out) {
    note = "seeded runs are not byte-identical";
    return false;
  }
  note = "square_1 is the only failure; identity/zero ladders pass; seeded reruns identical";
  return true;
}

bool probe_consistency(std::string& note) {
  testgen::Rng rng(1111);
  std::size_t equivalent_pairs = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + testgen::pick(rng, 2);
    const unsigned k = testgen::pick(rng, 4);
    const buncat::PolySection phi = testgen::random_section(rng, m, 3);
    std::vector<Rational> x0;
    for (std::size_t i = 0; i < m; ++i)
      x0.push_back(Rational(static_cast<long long>(rng() % 3) - 1));
    const buncat::PolySection psi =
        t % 2 == 0 ? buncat::make_section(
                         m, phi.value + testgen::vanishing_jet_poly(rng, m, k, x0))
                   : testgen::random_section(rng, m, 3);
    const bool symbolic = buncat::equivalent_to_order(phi, psi, x0, k);
    const buncat::CurveProbeReport probe = buncat::curve_probe(phi, psi, x0, k, 20, rng());
    if (symbolic && probe.mismatches > 0) {
      note = "probe contradicted symbolic equivalence at trial " + std::to_string(t);
      return false;
    }
    if (symbolic) ++equivalent_pairs;
  }
  note = "200 pairs (" + std::to_string(equivalent_pairs) +
         " symbolically equivalent), zero contradictions";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* summary;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "random nested bundle families satisfy the subobject axioms",
       subobject_axioms_on_random_families},
      {2, "mono/epi match injectivity, surjectivity, and parallel-pair cancellation",
       mono_epi_oracles},
      {3, "composed chain morphisms revalidate", chain_composition_closure},
      {4, "the mod-180 residue tower document passes end to end", residue_tower_document},
      {5, "prolongation respects identity and composition",
       prolongation_identity_and_functoriality},
      {6, "jet projections collapse coherently with the expected coordinates",
       projection_recursion},
      {7, "the worked second jet matches symbolically and numerically", jet_worked_example},
      {8, "prolongation is independent of the representative", prolongation_well_defined},
      {9, "exactness verdicts and kernel/image orders are correct", exactness_oracle},
      {10, "the perturbed ladder fails in exactly one square, deterministically",
       ladder_detection},
      {11, "curve probes never contradict symbolic jet equivalence", probe_consistency},
  };

  bool all_pass = true;
  for (const Criterion& criterion : criteria) {
    bool ok = false;
    std::string note;
    try {
      ok = criterion.run(note);
    } catch (const std::exception& e) {
      ok = false;
      note = std::string("exception: ") + e.what();
    }
    all_pass = all_pass && ok;
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.summary, note.empty() ? "" : " -- ", note.c_str());
  }
  return all_pass ? 0 : 1;
}
