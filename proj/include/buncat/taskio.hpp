#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "buncat/category.hpp"
#include "buncat/chains.hpp"
#include "buncat/error.hpp"
#include "buncat/exact.hpp"
#include "buncat/finmap.hpp"
#include "buncat/jets.hpp"
#include "buncat/report.hpp"
#include "buncat/schema.hpp"

namespace buncat {
namespace taskio {

[[noreturn]] inline void malformed(const std::string& path, const std::string& why) {
  fail("MalformedDocument", path + ": " + why);
}

/// Rethrows a domain-construction failure as a document error anchored at
/// `path`. Used where bad data prevents building the objects under test, as
/// opposed to verification checks that fail in the report.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    malformed(path, e.what());
  }
}

inline FinSet parse_finset(const json& arr, const std::string& path) {
  return at_path(path, [&] { return FinSet(arr.get<std::vector<std::string>>()); });
}

inline std::map<std::string, std::string> parse_string_map(const json& obj) {
  return obj.get<std::map<std::string, std::string>>();
}

inline Bundle parse_bundle(const json& obj, const std::string& path) {
  FinSet total = parse_finset(obj["total"], path + "/total");
  FinSet base = parse_finset(obj["base"], path + "/base");
  return at_path(path, [&] {
    return make_bundle(std::move(total), std::move(base), parse_string_map(obj["projection"]));
  });
}

inline FinMap parse_finmap(const json& obj, const FinSet& domain, const FinSet& codomain,
                           const std::string& path) {
  return at_path(path,
                 [&] { return FinMap::from_pairs(domain, codomain, parse_string_map(obj)); });
}

inline std::vector<Bundle> parse_bundle_array(const json& arr, const std::string& path) {
  std::vector<Bundle> bundles;
  for (std::size_t i = 0; i < arr.size(); ++i)
    bundles.push_back(parse_bundle(arr[i], path + "/" + std::to_string(i)));
  return bundles;
}

/// Expands either chain spelling into stage bundles plus raw link maps. The
/// residue form names every space by residue value; links are the canonical
/// quotients.
struct ChainData {
  std::vector<Bundle> bundles;
  std::vector<std::pair<FinMap, FinMap>> links;
};

inline std::vector<std::string> residue_labels(long long modulus) {
  std::vector<std::string> labels;
  for (long long z = 0; z < modulus; ++z) labels.push_back(std::to_string(z));
  return labels;
}

inline ChainData parse_chain_data(const json& doc, const std::string& path) {
  ChainData data;
  if (doc.contains("residues")) {
    const json& r = doc["residues"];
    const long long n = r["total_modulus"].get<long long>();
    if (n < 1 || n > 100000) malformed(path + "/residues/total_modulus", "out of range");
    const std::vector<long long> moduli = r["base_moduli"].get<std::vector<long long>>();
    const FinSet total(residue_labels(n));
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      const std::string mpath = path + "/residues/base_moduli/" + std::to_string(i);
      if (moduli[i] < 1 || moduli[i] > n) malformed(mpath, "out of range");
      if (n % moduli[i] != 0) malformed(mpath, "does not divide the total modulus");
      if (i > 0 && moduli[i - 1] % moduli[i] != 0)
        malformed(mpath, "does not divide the previous modulus");
      FinSet base(residue_labels(moduli[i]));
      std::map<std::string, std::string> projection;
      for (long long z = 0; z < n; ++z)
        projection[std::to_string(z)] = std::to_string(z % moduli[i]);
      data.bundles.push_back(at_path(mpath, [&] { return make_bundle(total, base, projection); }));
    }
    for (std::size_t i = 0; i + 1 < data.bundles.size(); ++i) {
      const FinMap u = FinMap::identity(total);
      std::vector<std::size_t> table(data.bundles[i].base.size());
      for (std::size_t b = 0; b < table.size(); ++b) {
        const long long z = std::stoll(data.bundles[i].base.label(b));
        table[b] = data.bundles[i + 1].base.index_of(std::to_string(z % moduli[i + 1]));
      }
      data.links.emplace_back(u, FinMap(data.bundles[i].base, data.bundles[i + 1].base,
                                        std::move(table)));
    }
    return data;
  }
  data.bundles = parse_bundle_array(doc["bundles"], path + "/bundles");
  const json& links = doc["links"];
  if (links.size() + 1 != data.bundles.size())
    malformed(path + "/links", std::to_string(data.bundles.size()) + " bundles need " +
                                   std::to_string(data.bundles.size() - 1) + " links, got " +
                                   std::to_string(links.size()));
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string lpath = path + "/links/" + std::to_string(i);
    data.links.emplace_back(
        parse_finmap(links[i]["total_map"], data.bundles[i].total, data.bundles[i + 1].total,
                     lpath + "/total_map"),
        parse_finmap(links[i]["base_map"], data.bundles[i].base, data.bundles[i + 1].base,
                     lpath + "/base_map"));
  }
  return data;
}

inline BundleChain parse_chain_strict(const json& doc, const std::string& path) {
  ChainData data = parse_chain_data(doc, path);
  return at_path(path, [&] { return make_chain(std::move(data.bundles), std::move(data.links)); });
}

inline FinGroup parse_group(const json& obj, const std::string& path) {
  if (obj.contains("cyclic")) {
    const long long n = obj["cyclic"].get<long long>();
    if (n < 1 || n > 1000) malformed(path + "/cyclic", "out of range");
    return FinGroup::cyclic(static_cast<std::size_t>(n));
  }
  if (obj.contains("residue_subgroup")) {
    const long long n = obj["residue_subgroup"]["modulus"].get<long long>();
    const long long g = obj["residue_subgroup"]["generator"].get<long long>();
    if (n < 1 || n > 100000) malformed(path + "/residue_subgroup/modulus", "out of range");
    if (g < 0) malformed(path + "/residue_subgroup/generator", "negative");
    std::vector<long long> values;
    long long v = 0;
    do {
      values.push_back(v);
      v = (v + g) % n;
    } while (v != 0);
    std::vector<std::string> labels;
    for (long long value : values) labels.push_back(std::to_string(value));
    FinSet elements(labels);
    std::vector<std::vector<std::size_t>> op(values.size(),
                                             std::vector<std::size_t>(values.size()));
    for (long long a : values)
      for (long long b : values)
        op[elements.index_of(std::to_string(a))][elements.index_of(std::to_string(b))] =
            elements.index_of(std::to_string((a + b) % n));
    const std::size_t zero = elements.index_of("0");
    return at_path(path + "/residue_subgroup",
                   [&] { return FinGroup(std::move(elements), std::move(op), zero); });
  }
  const FinSet elements = parse_finset(obj["elements"], path + "/elements");
  const std::string identity = obj["identity"].get<std::string>();
  if (!elements.contains(identity)) malformed(path + "/identity", "not a group element");
  std::vector<std::vector<std::size_t>> op(elements.size(),
                                           std::vector<std::size_t>(elements.size(), 0));
  std::vector<std::vector<bool>> seen(elements.size(), std::vector<bool>(elements.size(), false));
  for (const auto& [a, row] : obj["table"].items()) {
    if (!elements.contains(a)) malformed(path + "/table/" + a, "unknown element");
    for (const auto& [b, c] : row.items()) {
      if (!elements.contains(b)) malformed(path + "/table/" + a + "/" + b, "unknown element");
      const std::string value = c.get<std::string>();
      if (!elements.contains(value))
        malformed(path + "/table/" + a + "/" + b, "value is not a group element");
      op[elements.index_of(a)][elements.index_of(b)] = elements.index_of(value);
      seen[elements.index_of(a)][elements.index_of(b)] = true;
    }
  }
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = 0; b < elements.size(); ++b)
      if (!seen[a][b])
        malformed(path + "/table", "no entry for ('" + elements.label(a) + "', '" +
                                       elements.label(b) + "')");
  return at_path(path, [&] { return FinGroup(elements, std::move(op), elements.index_of(identity)); });
}

inline GroupAction parse_action(const json& obj, const FinSet& space, const std::string& path) {
  FinGroup group = parse_group(obj["group"], path + "/group");
  std::vector<std::vector<std::size_t>> act(space.size(),
                                            std::vector<std::size_t>(group.order(), 0));
  if (obj.contains("rule")) {
    long long modulus = 0;
    for (std::size_t x = 0; x < space.size(); ++x) {
      const std::string& label = space.label(x);
      std::size_t consumed = 0;
      long long value = 0;
      try {
        value = std::stoll(label, &consumed);
      } catch (const std::exception&) {
        malformed(path + "/rule", "total-space label '" + label + "' is not a residue");
      }
      if (consumed != label.size() || value < 0)
        malformed(path + "/rule", "total-space label '" + label + "' is not a residue");
      modulus = std::max(modulus, value + 1);
    }
    if (static_cast<std::size_t>(modulus) != space.size())
      malformed(path + "/rule", "total-space labels are not the residues 0.." +
                                    std::to_string(space.size() - 1));
    for (std::size_t x = 0; x < space.size(); ++x) {
      const long long xv = std::stoll(space.label(x));
      for (std::size_t g = 0; g < group.order(); ++g) {
        const long long gv = std::stoll(group.elements().label(g));
        act[x][g] = space.index_of(std::to_string((xv + gv) % modulus));
      }
    }
  } else {
    std::vector<std::vector<bool>> seen(space.size(), std::vector<bool>(group.order(), false));
    for (const auto& [x, row] : obj["table"].items()) {
      if (!space.contains(x)) malformed(path + "/table/" + x, "unknown total-space element");
      for (const auto& [g, y] : row.items()) {
        if (!group.elements().contains(g))
          malformed(path + "/table/" + x + "/" + g, "unknown group element");
        const std::string value = y.get<std::string>();
        if (!space.contains(value))
          malformed(path + "/table/" + x + "/" + g, "value outside the total space");
        act[space.index_of(x)][group.elements().index_of(g)] = space.index_of(value);
        seen[space.index_of(x)][group.elements().index_of(g)] = true;
      }
    }
    for (std::size_t x = 0; x < space.size(); ++x)
      for (std::size_t g = 0; g < group.order(); ++g)
        if (!seen[x][g])
          malformed(path + "/table", "no entry for ('" + space.label(x) + "', '" +
                                         group.elements().label(g) + "')");
  }
  return GroupAction(std::move(group), space, std::move(act));
}

inline json jet_to_json(const Jet& jet) {
  const std::vector<std::string> vars = base_variable_names(jet.base_dim());
  json point = json::array();
  for (const Rational& c : jet.base_point) point.push_back(to_string(c));
  json coefficients = json::array();
  json tuple = json::array();
  for (const auto& [a, c] : jet.coeffs) {
    coefficients.push_back(
        {{"name", derivative_name(a, vars)}, {"index", a}, {"value", to_string(c)}});
    tuple.push_back(to_string(c));
  }
  return {{"point", point}, {"order", jet.order}, {"coefficients", coefficients},
          {"tuple", tuple}};
}

// ---------------------------------------------------------------------------
// per-kind runners

inline VerificationReport run_category(const json& doc) {
  std::vector<FinCategory::MorphismSpec> morphisms;
  for (const json& m : doc["morphisms"])
    morphisms.push_back({m["name"].get<std::string>(), m["source"].get<std::string>(),
                         m["target"].get<std::string>()});
  std::map<std::pair<std::string, std::string>, std::string> table;
  for (std::size_t i = 0; i < doc["composition"].size(); ++i) {
    const json& entry = doc["composition"][i];
    const auto key = std::make_pair(entry["first"].get<std::string>(),
                                    entry["then"].get<std::string>());
    const std::string value = entry["equals"].get<std::string>();
    const auto [it, fresh] = table.emplace(key, value);
    if (!fresh && it->second != value)
      malformed("/composition/" + std::to_string(i), "conflicting entries for ('" + key.first +
                                                         "', '" + key.second + "')");
  }
  const FinCategory cat = at_path("/", [&] {
    return FinCategory(doc["objects"].get<std::vector<std::string>>(), std::move(morphisms),
                       parse_string_map(doc["identities"]), table);
  });

  VerificationReport report;
  report.task = "category";
  report.merge(audit_category_laws(cat), "laws");

  SubobjectChoice<FinCategory> choice;
  choice.category = &cat;
  const json& names = doc["subobjects"];
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto id = cat.find_morphism(names[i].get<std::string>());
    if (!id)
      malformed("/subobjects/" + std::to_string(i),
                "unknown morphism '" + names[i].get<std::string>() + "'");
    choice.included.push_back(*id);
  }
  try {
    report.merge(verify_subobject_choice(choice), "subobjects");
  } catch (const Error& e) {
    report.add_fail("subobjects/choice_well_formed", {{"error", e.what()}});
  }
  return report;
}

inline VerificationReport run_bundle_family(const json& doc) {
  const std::vector<Bundle> bundles = parse_bundle_array(doc["bundles"], "/bundles");
  return at_path("/bundles", [&] { return verify_bun_subobject_axioms(bundles); });
}

inline VerificationReport run_chain(const json& doc) {
  ChainData data = parse_chain_data(doc, "");

  VerificationReport report;
  report.task = "chain";
  for (std::size_t i = 0; i < data.links.size(); ++i) {
    const std::string name = "link_" + std::to_string(i) + "_square";
    const Bundle& src = data.bundles[i];
    const Bundle& dst = data.bundles[i + 1];
    const auto bad = square_violation(src, dst, data.links[i].first.table(),
                                      data.links[i].second.table());
    if (bad)
      report.add_fail(name,
                      {{"element", src.total.label(bad->element)},
                       {"via_total_map", dst.base.label(bad->via_top)},
                       {"via_projection", dst.base.label(bad->via_bottom)}});
    else
      report.add_pass(name);
  }

  if (doc.contains("actions")) {
    for (std::size_t i = 0; i < doc["actions"].size(); ++i) {
      const json& entry = doc["actions"][i];
      const std::string apath = "/actions/" + std::to_string(i);
      const long long stage = entry["stage"].get<long long>();
      if (stage < 0 || static_cast<std::size_t>(stage) >= data.bundles.size())
        malformed(apath + "/stage", "no such stage");
      const std::string name = "stage_" + std::to_string(stage) + "_principal";
      try {
        const GroupAction action =
            parse_action(entry, data.bundles[static_cast<std::size_t>(stage)].total, apath);
        const bool ok =
            is_principal_g_bundle(data.bundles[static_cast<std::size_t>(stage)], action);
        json witness = {{"group_order", action.group().order()}};
        if (ok)
          report.add(CheckResult::pass(name));
        else
          report.add_fail(name, witness);
      } catch (const Error& e) {
        if (std::string(e.code()) == "MalformedDocument") throw;
        report.add_fail(name, {{"error", e.what()}});
      }
    }
  } else if (doc.contains("residues") && doc["residues"].contains("action_generators")) {
    const json& generators = doc["residues"]["action_generators"];
    if (generators.size() != data.bundles.size())
      malformed("/residues/action_generators", "one generator per stage required");
    const long long n = doc["residues"]["total_modulus"].get<long long>();
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const json action_doc = {
          {"stage", i},
          {"group",
           {{"residue_subgroup",
             {{"modulus", n}, {"generator", generators[i].get<long long>()}}}}},
          {"rule", "residue_addition"}};
      const std::string name = "stage_" + std::to_string(i) + "_principal";
      const GroupAction action = parse_action(action_doc, data.bundles[i].total,
                                              "/residues/action_generators/" + std::to_string(i));
      const bool ok = is_principal_g_bundle(data.bundles[i], action);
      if (ok)
        report.add(CheckResult::pass(name));
      else
        report.add_fail(name, {{"group_order", action.group().order()}});
    }
  }
  return report;
}

inline VerificationReport run_chain_family(const json& doc) {
  std::vector<BundleChain> family;
  for (std::size_t i = 0; i < doc["chains"].size(); ++i)
    family.push_back(parse_chain_strict(doc["chains"][i], "/chains/" + std::to_string(i)));
  return at_path("/chains", [&] { return verify_chaincat_subobject_axioms(family); });
}

inline VerificationReport run_fibre_chain(const json& doc) {
  const std::vector<Bundle> bundles = parse_bundle_array(doc["bundles"], "/bundles");
  const std::string point = doc["base_point"].get<std::string>();
  if (!bundles.empty() && !bundles.front().base.contains(point))
    malformed("/base_point", "'" + point + "' is not in the first base");

  VerificationReport report;
  report.task = "fibre_chain";
  try {
    const FibreChain fc = fibre_chain(bundles, point);
    json stages = json::array();
    for (const FinSet& s : fc.stages) {
      json labels = json::array();
      for (std::size_t i = 0; i < s.size(); ++i) labels.push_back(s.label(i));
      stages.push_back(labels);
    }
    report.result = {{"base_point", fc.base_point}, {"stages", stages}};
    report.add_pass("construction");

    bool coherent = true;
    json witness;
    const FinSet& last = fc.stages.back();
    for (std::size_t i = 0; i < fc.stages.size() && coherent; ++i) {
      std::vector<std::string> expected;
      for (std::size_t e = 0; e < last.size(); ++e)
        if (bundles[i].total.contains(last.label(e))) expected.push_back(last.label(e));
      if (FinSet(expected) != fc.stages[i]) {
        coherent = false;
        witness = {{"stage", i}};
      }
    }
    report.add(coherent ? CheckResult::pass("restriction_coherence")
                        : CheckResult::fail("restriction_coherence", witness));
  } catch (const Error& e) {
    report.add_fail("construction", {{"error", e.what()}});
  }
  return report;
}

inline GradedSequence parse_sequence(const json& body, const std::string& path) {
  std::vector<FinAbGroup> groups;
  for (std::size_t i = 0; i < body["groups"].size(); ++i)
    groups.push_back(at_path(path + "/groups/" + std::to_string(i), [&] {
      return FinAbGroup(body["groups"][i].get<std::vector<long long>>());
    }));
  const json& maps_json = body["maps"];
  if (maps_json.size() + 1 != groups.size())
    malformed(path + "/maps", std::to_string(groups.size()) + " groups need " +
                                  std::to_string(groups.size() - 1) + " maps, got " +
                                  std::to_string(maps_json.size()));
  std::vector<AbHom> maps;
  for (std::size_t t = 0; t < maps_json.size(); ++t)
    maps.push_back(at_path(path + "/maps/" + std::to_string(t), [&] {
      return AbHom(groups[t], groups[t + 1],
                   maps_json[t].get<std::vector<std::vector<long long>>>());
    }));
  return at_path(path, [&] { return make_sequence(std::move(groups), std::move(maps)); });
}

inline VerificationReport run_sequence(const json& doc) {
  const GradedSequence seq = parse_sequence(doc, "");
  return at_path("/groups", [&] { return is_exact(seq); });
}

inline VerificationReport run_ladder(const json& doc) {
  SequenceLadder ladder;
  ladder.top = parse_sequence(doc["top"], "/top");
  ladder.bottom = parse_sequence(doc["bottom"], "/bottom");
  const json& verticals = doc["verticals"];
  if (verticals.size() != ladder.top.groups.size())
    malformed("/verticals", "one vertical per level required");
  for (std::size_t t = 0; t < verticals.size(); ++t)
    ladder.verticals.push_back(at_path("/verticals/" + std::to_string(t), [&] {
      return AbHom(ladder.top.groups[t], ladder.bottom.groups[t],
                   verticals[t].get<std::vector<std::vector<long long>>>());
    }));

  VerificationReport report = at_path("/verticals", [&] { return validate_ladder(ladder); });
  report.task = "ladder";

  if (doc.contains("embeddings")) {
    const json& embeddings_json = doc["embeddings"];
    if (embeddings_json.size() != ladder.top.groups.size())
      malformed("/embeddings", "one embedding per level required");
    std::vector<AbHom> embeddings;
    for (std::size_t t = 0; t < embeddings_json.size(); ++t)
      embeddings.push_back(at_path("/embeddings/" + std::to_string(t), [&] {
        return AbHom(ladder.top.groups[t], ladder.bottom.groups[t],
                     embeddings_json[t].get<std::vector<std::vector<long long>>>());
      }));
    const bool sub = at_path("/embeddings", [&] {
      return is_subsequence(ladder.top, ladder.bottom, embeddings);
    });
    report.add(sub ? CheckResult::pass("subsequence") : CheckResult::fail("subsequence"));
  }
  return report;
}

inline VerificationReport run_jet_task(const json& doc, std::uint64_t seed) {
  const std::string command = doc["command"].get<std::string>();
  const long long m_raw = doc["base_dimension"].get<long long>();
  if (m_raw < 1 || m_raw > 8) malformed("/base_dimension", "out of range");
  const std::size_t m = static_cast<std::size_t>(m_raw);
  const long long k_raw = doc["order"].get<long long>();
  if (k_raw < 0 || k_raw > 8) malformed("/order", "out of range");
  const unsigned k = static_cast<unsigned>(k_raw);

  const PolySection section =
      at_path("/section", [&] { return parse_section(m, doc["section"].get<std::string>()); });
  const json& point_json = doc["point"];
  if (point_json.size() != m) malformed("/point", "point of wrong dimension");
  std::vector<Rational> point;
  for (std::size_t i = 0; i < m; ++i)
    point.push_back(at_path("/point/" + std::to_string(i), [&] {
      return parse_rational(point_json[i].get<std::string>());
    }));

  VerificationReport report;
  report.task = "jet_task";

  if (command == "jet_of") {
    const Jet jet = jet_of(section, point, k);
    report.result = {{"command", command}, {"jet", jet_to_json(jet)}};
    report.add_pass("jet_computed");
    return report;
  }
  if (command == "project") {
    if (!doc.contains("target_order")) malformed("/target_order", "required for project");
    const long long l_raw = doc["target_order"].get<long long>();
    if (l_raw < 0) malformed("/target_order", "negative");
    const Jet jet = jet_of(section, point, k);
    const Jet projected =
        at_path("/target_order", [&] { return project(jet, static_cast<unsigned>(l_raw)); });
    report.result = {{"command", command},
                     {"jet", jet_to_json(jet)},
                     {"projected", jet_to_json(projected)}};
    report.add_pass("projection_computed");
    return report;
  }
  if (command == "prolong") {
    if (!doc.contains("morphism")) malformed("/morphism", "required for prolong");
    const json& mj = doc["morphism"];
    std::vector<std::vector<Rational>> a;
    for (std::size_t i = 0; i < mj["matrix"].size(); ++i) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < mj["matrix"][i].size(); ++j)
        row.push_back(at_path("/morphism/matrix/" + std::to_string(i) + "/" + std::to_string(j),
                              [&] { return parse_rational(mj["matrix"][i][j].get<std::string>()); }));
      a.push_back(std::move(row));
    }
    std::vector<Rational> b;
    for (std::size_t i = 0; i < mj["offset"].size(); ++i)
      b.push_back(at_path("/morphism/offset/" + std::to_string(i), [&] {
        return parse_rational(mj["offset"][i].get<std::string>());
      }));
    const Poly fibre_map = at_path("/morphism/fibre_map", [&] {
      return parse_fibre_map(m, mj["fibre_map"].get<std::string>());
    });
    const MorphismSpec spec =
        at_path("/morphism", [&] { return make_spec(m, a, b, fibre_map); });
    const Jet jet = jet_of(section, point, k);
    const Jet image = prolong(spec, jet);
    report.result = {{"command", command},
                     {"jet", jet_to_json(jet)},
                     {"prolonged", jet_to_json(image)}};
    report.add_pass("prolongation_computed");
    return report;
  }
  if (command == "curve_probe") {
    if (!doc.contains("second_section")) malformed("/second_section", "required for curve_probe");
    const PolySection second = at_path("/second_section", [&] {
      return parse_section(m, doc["second_section"].get<std::string>());
    });
    long long trials = 40;
    if (doc.contains("trials")) trials = doc["trials"].get<long long>();
    if (trials < 1 || trials > 100000) malformed("/trials", "out of range");
    const bool symbolic = equivalent_to_order(section, second, point, k);
    const CurveProbeReport probe =
        curve_probe(section, second, point, k, static_cast<std::size_t>(trials), seed);
    report.result = {{"command", command},
                     {"equivalent", symbolic},
                     {"probe", probe.to_json()}};
    const bool contradiction = symbolic && probe.mismatches > 0;
    report.add(contradiction
                   ? CheckResult::fail("probe_consistent", probe.witness)
                   : CheckResult::pass("probe_consistent"));
    return report;
  }
  malformed("/command", "unrecognized command '" + command + "'");
}

}  // namespace taskio

/// Validates `doc` against its kind's schema and dispatches. Structural
/// problems throw (the driver maps them to exit 2); verification outcomes
/// land in the returned report.
inline VerificationReport run_task(const json& doc,
                                   std::optional<std::uint64_t> seed_override = std::nullopt) {
  require_valid_document(doc);
  const std::string kind = doc["kind"].get<std::string>();
  std::uint64_t seed = 0;
  if (doc.contains("seed")) seed = doc["seed"].get<std::uint64_t>();
  if (seed_override) seed = *seed_override;

  if (kind == "category") return taskio::run_category(doc);
  if (kind == "bundle_family") return taskio::run_bundle_family(doc);
  if (kind == "chain") return taskio::run_chain(doc);
  if (kind == "chain_family") return taskio::run_chain_family(doc);
  if (kind == "fibre_chain") return taskio::run_fibre_chain(doc);
  if (kind == "sequence") return taskio::run_sequence(doc);
  if (kind == "ladder") return taskio::run_ladder(doc);
  return taskio::run_jet_task(doc, seed);
}

}  // namespace buncat
