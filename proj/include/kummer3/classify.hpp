#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "kummer3/arith.hpp"
#include "kummer3/conductor.hpp"
#include "kummer3/errors.hpp"
#include "kummer3/pftype.hpp"
#include "kummer3/rank.hpp"

namespace kummer3 {

using json = nlohmann::ordered_json;

// Everything the arithmetic determines about one pure cubic field.
struct FieldRecord {
  Radicand radicand;
  Conductor conductor;
  u64 m = 0;
  RamificationProfile profile;
  BwbProfile bwb;
  TheoremItem item;
  PFConstraints constraints;
  PFResolution resolution;
};

// Classifies the field generated by the cube root of the cube-free part of n.
inline FieldRecord classify_field(const Factorization& fac) {
  FieldRecord rec;
  rec.radicand = normalize_radicand(fac);
  Factorization norm_fac = fac;
  if (rec.radicand.d != fac.value) norm_fac = factorize(rec.radicand.d);
  rec.conductor = conductor_from(norm_fac, rec.radicand.species);
  rec.m = multiplicity(rec.conductor);
  rec.profile = ramification_profile(rec.conductor);
  rec.bwb = bwb_bounds(rec.conductor);
  rec.item = classify_item(rec.conductor);
  rec.constraints = possible_types(rec.conductor, rec.profile);
  rec.resolution = resolve_type(rec.conductor, rec.item, rec.constraints);
  return rec;
}

inline FieldRecord classify_field(u64 n) {
  if (n <= 1) fail(errc::invalid_input, "classify_field: need n > 1");
  return classify_field(factorize(n));
}

inline FieldRecord classify_field(u64 n, const SpfTable& spf) {
  if (n <= 1) fail(errc::invalid_input, "classify_field: need n > 1");
  return classify_field(factorize(n, spf));
}

inline json to_json(const FieldRecord& rec) {
  json j;
  j["d"] = rec.radicand.d;
  j["d1"] = rec.radicand.d1;
  j["d2"] = rec.radicand.d2;
  j["species"] = species_name(rec.radicand.species);
  j["f"] = rec.conductor.f;
  j["m"] = rec.m;
  j["t"] = rec.profile.t;
  j["s"] = rec.profile.s;
  j["qstar"] = rec.profile.qstar;
  j["rank"] = rec.profile.ambiguous_rank;
  j["item"] = item_label(rec.item);
  json bwb;
  bwb["lower"] = rec.bwb.lower;
  bwb["upper"] = rec.bwb.upper;
  if (rec.bwb.exact_r) bwb["exact_r"] = *rec.bwb.exact_r;
  j["bwb"] = bwb;
  json possible = json::array();
  for (int i = 0; i < 3; ++i)
    if (rec.constraints.possible[i]) possible.push_back(pf_name(static_cast<PFType>(i)));
  j["possible_types"] = possible;
  if (rec.resolution.resolved) {
    j["resolved_type"] = pf_name(*rec.resolution.resolved);
    j["method"] = resolve_method_name(rec.resolution.method);
    j["conjectural"] = rec.resolution.conjectural;
  }
  return j;
}

inline std::vector<std::string> check_class_record(const ClassDataRecord& rec,
                                                   const FieldRecord& field) {
  return check_class_record(rec, field.item, field.constraints, field.resolution);
}

inline GenusScenario genus_scenario(const FieldRecord& field,
                                    const ClassDataRecord* rec) {
  return genus_scenario(field.item, field.profile.s, rec);
}

}  // namespace kummer3
