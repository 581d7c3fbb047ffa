#pragma once

#include <json.hpp>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "kummer3/arith.hpp"
#include "kummer3/classify.hpp"
#include "kummer3/conductor.hpp"
#include "kummer3/errors.hpp"
#include "kummer3/pftype.hpp"
#include "kummer3/rank.hpp"
#include "kummer3/version.hpp"

namespace kummer3 {

enum class TableId { species, honda, ismaili1, ismaili2, typesplit };

inline const char* table_name(TableId t) {
  switch (t) {
    case TableId::species: return "species";
    case TableId::honda: return "honda";
    case TableId::ismaili1: return "ismaili1";
    case TableId::ismaili2: return "ismaili2";
    default: return "typesplit";
  }
}

inline std::vector<TableId> all_tables() {
  return {TableId::species, TableId::honda, TableId::ismaili1, TableId::ismaili2,
          TableId::typesplit};
}

inline TableId table_from_name(const std::string& s) {
  for (TableId t : all_tables())
    if (s == table_name(t)) return t;
  fail(errc::invalid_input, "unknown table \"" + s + "\"");
}

struct CensusConfig {
  u64 max_d = 1'000'000;         // exclusive bound on normalized radicands
  int jobs = 1;
  std::vector<TableId> tables;   // empty means all
  std::string ingest_path;
};

// Keeps the k smallest inserted values; merging two sets keeps the k smallest
// of the union, so the result is independent of the partition into workers.
struct SmallestSet {
  static constexpr size_t kMax = 8;
  std::vector<u64> values;  // ascending

  void insert(u64 v) {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it != values.end() && *it == v) return;
    values.insert(it, v);
    if (values.size() > kMax) values.pop_back();
  }

  void merge(const SmallestSet& other) {
    for (u64 v : other.values) insert(v);
  }
};

struct MultipletStats {
  u64 complete = 0;        // multiplets with every companion below the bound
  u64 partial_fields = 0;  // counted fields whose multiplet is cut off

  void merge(const MultipletStats& o) {
    complete += o.complete;
    partial_fields += o.partial_fields;
  }
};

struct ItemStats {
  u64 count = 0;
  SmallestSet paradigms;
  MultipletStats multiplets;
  std::array<u64, 3> type_counts{};  // resolved via congruences or symbols
  std::array<SmallestSet, 3> type_paradigms;
  std::array<MultipletStats, 3> type_multiplets;
  std::array<u64, 3> ingested_type_counts{};

  void merge(const ItemStats& o) {
    count += o.count;
    paradigms.merge(o.paradigms);
    multiplets.merge(o.multiplets);
    for (int i = 0; i < 3; ++i) {
      type_counts[i] += o.type_counts[i];
      type_paradigms[i].merge(o.type_paradigms[i]);
      type_multiplets[i].merge(o.type_multiplets[i]);
      ingested_type_counts[i] += o.ingested_type_counts[i];
    }
  }
};

struct CensusTables {
  u64 max_d = 0;
  bool conjectural_rules_used = false;
  u64 total_fields = 0;
  std::array<u64, 3> species_counts{};  // indexed by Species
  std::array<ItemStats, 5> honda;
  std::array<ItemStats, 4> ismaili1;
  std::array<ItemStats, 7> ismaili2;
  std::array<ItemStats, 2> ismaili2_item5_sub;  // [0] q2 = 2,5; [1] q2 = 8 (9)
  ItemStats rank2plus;
  u64 ingest_records = 0;
  std::vector<std::string> violations;

  ItemStats* stats_for(const TheoremItem& it) {
    switch (it.theorem) {
      case Theorem::honda: return &honda[it.item - 1];
      case Theorem::ismaili1: return &ismaili1[it.item - 1];
      case Theorem::ismaili2: return &ismaili2[it.item - 1];
      case Theorem::rank2plus: return &rank2plus;
      default: return nullptr;
    }
  }

  void merge(const CensusTables& o) {
    conjectural_rules_used = conjectural_rules_used || o.conjectural_rules_used;
    total_fields += o.total_fields;
    for (int i = 0; i < 3; ++i) species_counts[i] += o.species_counts[i];
    for (size_t i = 0; i < honda.size(); ++i) honda[i].merge(o.honda[i]);
    for (size_t i = 0; i < ismaili1.size(); ++i) ismaili1[i].merge(o.ismaili1[i]);
    for (size_t i = 0; i < ismaili2.size(); ++i) ismaili2[i].merge(o.ismaili2[i]);
    for (size_t i = 0; i < 2; ++i)
      ismaili2_item5_sub[i].merge(o.ismaili2_item5_sub[i]);
    rank2plus.merge(o.rank2plus);
    ingest_records += o.ingest_records;
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  }
};

namespace detail {

inline void tally_field(CensusTables& t, const FieldRecord& rec, u64 max_d) {
  const u64 d = rec.radicand.d;
  ++t.total_fields;
  ++t.species_counts[static_cast<int>(rec.radicand.species)];
  ItemStats* st = t.stats_for(rec.item);
  if (!st)
    fail(errc::inconsistency,
         "census: conductor of d = " + std::to_string(d) + " matches no item");
  ++st->count;
  st->paradigms.insert(d);

  int ty = -1;
  if (rec.resolution.resolved) {
    ty = static_cast<int>(*rec.resolution.resolved);
    ++st->type_counts[ty];
    st->type_paradigms[ty].insert(d);
    if (rec.resolution.conjectural) t.conjectural_rules_used = true;
  }

  if (rec.item.theorem == Theorem::ismaili2 && rec.item.item == 5) {
    int sub = 0;
    for (const PrimeClass& pc : rec.conductor.primes)
      if (pc.mod9 == 8) sub = 1;
    ItemStats& ss = t.ismaili2_item5_sub[sub];
    ++ss.count;
    ss.paradigms.insert(d);
  }

  if (rec.m >= 2) {
    Multiplet mult = enumerate_companions(rec.conductor);
    bool complete = mult.companions.back() < max_d;
    if (complete) {
      if (d == mult.companions.front()) {
        ++st->multiplets.complete;
        if (ty >= 0) ++st->type_multiplets[ty].complete;
      }
    } else {
      ++st->multiplets.partial_fields;
      if (ty >= 0) ++st->type_multiplets[ty].partial_fields;
    }
  }
}

inline void scan_range(const SpfTable& spf, u64 lo, u64 hi, u64 max_d,
                       CensusTables& t) {
  Factorization fac;
  for (u64 d = lo; d < hi; ++d) {
    spf.factorize_into(d, fac);
    u64 a = 1, b = 1;
    bool cube_free = true;
    for (const auto& [p, e] : fac.factors) {
      if (e >= 3) {
        cube_free = false;
        break;
      }
      (e == 1 ? a : b) *= p;
    }
    if (!cube_free || a <= b) continue;  // keep only normalized radicands
    FieldRecord rec = classify_field(fac);
    tally_field(t, rec, max_d);
    if (d % 100 == 37) {  // 1% sample: rank formula vs direct shape match
      bool is1 = matches_rank1_shape(fac);
      bool is0 = matches_rank0_shape(fac);
      if (is1 != (rec.profile.ambiguous_rank == 1) ||
          is0 != (rec.profile.ambiguous_rank == 0))
        fail(errc::inconsistency,
             "census: rank formula disagrees with shape match at d = " +
                 std::to_string(d));
    }
  }
}

inline void apply_ingest(CensusTables& t, const CensusConfig& cfg) {
  std::ifstream in(cfg.ingest_path);
  if (!in)
    fail(errc::configuration, "cannot open ingest file: " + cfg.ingest_path);
  auto records = parse_ingest_csv(in);
  t.ingest_records = records.size();
  for (const ClassDataRecord& rec : records) {
    std::vector<std::string> issues;
    try {
      FieldRecord field = classify_field(rec.d);
      if (field.radicand.d != rec.d) {
        issues.push_back("radicand is not normalized (expected " +
                         std::to_string(field.radicand.d) + ")");
      } else {
        issues = check_class_record(rec, field);
        if (issues.empty() && rec.d < cfg.max_d) {
          if (ItemStats* st = t.stats_for(field.item))
            ++st->ingested_type_counts[static_cast<int>(rec.pf_type)];
        }
      }
    } catch (const Error& e) {
      issues.push_back(e.what());
    }
    for (const std::string& msg : issues)
      t.violations.push_back("d=" + std::to_string(rec.d) + ": " + msg);
  }
}

}  // namespace detail

// Sweeps every normalized radicand 1 < d < max_d, classifying each field and
// aggregating order-independent counters. Workers own disjoint contiguous
// ranges and share only the immutable sieve; partial tables merge by addition.
inline CensusTables run_census(const CensusConfig& cfg, const SpfTable& spf) {
  if (cfg.max_d < 2 || cfg.max_d > SpfTable::kMaxLimit)
    fail(errc::configuration, "census bound must lie in [2, 10^8]");
  if (spf.limit() + 1 < cfg.max_d)
    fail(errc::configuration, "sieve table is smaller than the census bound");
  if (cfg.jobs < 1 || cfg.jobs > 256)
    fail(errc::configuration, "jobs must lie in [1, 256]");

  CensusTables total;
  total.max_d = cfg.max_d;

  const u64 span = cfg.max_d - 2;
  const int jobs = static_cast<int>(
      std::min<u64>(static_cast<u64>(cfg.jobs), span == 0 ? 1 : span));
  if (jobs <= 1) {
    detail::scan_range(spf, 2, cfg.max_d, cfg.max_d, total);
  } else {
    std::vector<CensusTables> parts(jobs);
    std::vector<std::thread> threads;
    const u64 chunk = (span + jobs - 1) / jobs;
    for (int i = 0; i < jobs; ++i) {
      u64 lo = 2 + chunk * static_cast<u64>(i);
      u64 hi = std::min<u64>(lo + chunk, cfg.max_d);
      if (lo >= hi) break;
      threads.emplace_back([&spf, lo, hi, &cfg, &parts, i] {
        detail::scan_range(spf, lo, hi, cfg.max_d, parts[i]);
      });
    }
    for (auto& th : threads) th.join();
    for (const CensusTables& p : parts) total.merge(p);
    total.max_d = cfg.max_d;
  }

  if (!cfg.ingest_path.empty()) detail::apply_ingest(total, cfg);
  return total;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

// Percent with two decimals, half-up, computed in integers: returns
// round(10000 * count / base).
inline u64 percent_hundredths(u64 count, u64 base) {
  if (base == 0) return 0;
  return (20000 * count + base) / (2 * base);
}

inline std::string format_percent(u64 hundredths) {
  std::string out = std::to_string(hundredths / 100) + ".";
  u64 frac = hundredths % 100;
  if (frac < 10) out += "0";
  return out + std::to_string(frac);
}

struct CensusRow {
  std::string item;
  std::string shape;
  std::string type;
  u64 count = 0;
  u64 percent_hundredths = 0;
  std::string percent_base;  // "total", "table", or "item"
  std::vector<u64> paradigms;
  bool has_multiplets = false;
  u64 complete = 0;
  u64 pseudo = 0;
};

namespace detail {

inline const std::array<const char*, 5>& honda_shapes() {
  static const std::array<const char*, 5> s = {
      "9", "q1, q1 = 8 (9)", "3 q1, q1 = 2,5 (9)", "9 q1, q1 = 2,5 (9)",
      "q1 q2, q1,q2 = 2,5 (9)"};
  return s;
}

inline const std::array<const char*, 5>& honda_types() {
  static const std::array<const char*, 5> s = {"gamma", "gamma", "beta",
                                               "(beta,beta)", "beta"};
  return s;
}

inline const std::array<const char*, 4>& ismaili1_shapes() {
  static const std::array<const char*, 4> s = {
      "p1, p1 = 1 (9)", "3 p1, p1 = 4,7 (9)", "9 p1, p1 = 4,7 (9)",
      "p1 q1, p1 = 4,7 (9), q1 = 2,5 (9)"};
  return s;
}

inline const std::array<const char*, 4>& ismaili1_types() {
  static const std::array<const char*, 4> s = {
      "alpha or gamma", "alpha or beta", "(alpha,alpha) or (beta,beta)",
      "alpha or beta"};
  return s;
}

inline const std::array<const char*, 7>& ismaili2_shapes() {
  static const std::array<const char*, 7> s = {
      "9 q1, q1 = 8 (9)",
      "q1 q2, q1,q2 = 8 (9)",
      "3 q1 q2, q1,q2 = 2,5 (9)",
      "3 q1 q2, q1 = 2,5 (9), q2 = 8 (9)",
      "9 q1 q2, q1 = 2,5 (9), q2 = 2 (3)",
      "q1 q2 q3, q1,q2,q3 = 2,5 (9)",
      "q1 q2 q3, q1,q2 = 2,5 (9), q3 = 8 (9)"};
  return s;
}

inline const std::array<const char*, 7>& ismaili2_types() {
  static const std::array<const char*, 7> s = {
      "(beta,*) or (gamma,*)", "(beta,*) or (gamma,*)", "beta", "(beta,beta)",
      "(beta,beta,beta,beta)", "beta", "(beta,beta)"};
  return s;
}

inline bool item_is_multiplet(Theorem th, int item) {
  if (th == Theorem::honda) return item == 4;
  if (th == Theorem::ismaili1) return item == 3;
  if (th == Theorem::ismaili2)
    return item == 1 || item == 2 || item == 4 || item == 5 || item == 7;
  return false;
}

}  // namespace detail

// Rows of one table, zero-count rows suppressed (an empty census emits
// headers only).
inline std::vector<CensusRow> census_rows(const CensusTables& t, TableId table) {
  std::vector<CensusRow> rows;
  auto item_row = [&](const char* label, const char* shape, const char* type,
                      const ItemStats& st, u64 base, bool multiplets) {
    CensusRow r;
    r.item = label;
    r.shape = shape;
    r.type = type;
    r.count = st.count;
    r.percent_hundredths = percent_hundredths(st.count, base);
    r.percent_base = "table";
    r.paradigms = st.paradigms.values;
    r.has_multiplets = multiplets;
    r.complete = st.multiplets.complete;
    r.pseudo = st.multiplets.partial_fields;
    rows.push_back(std::move(r));
  };

  switch (table) {
    case TableId::species: {
      static const char* names[3] = {"1a", "1b", "2"};
      static const char* shapes[3] = {"3 divides d", "3 does not divide d, d != +-1 (9)",
                                      "d = +-1 (9)"};
      for (int i = 0; i < 3; ++i) {
        CensusRow r;
        r.item = std::string("species ") + names[i];
        r.shape = shapes[i];
        r.count = t.species_counts[i];
        r.percent_hundredths = percent_hundredths(r.count, t.total_fields);
        r.percent_base = "total";
        rows.push_back(std::move(r));
      }
      break;
    }
    case TableId::honda: {
      u64 base = 0;
      for (const auto& st : t.honda) base += st.count;
      for (int i = 0; i < 5; ++i)
        item_row(("honda(" + std::to_string(i + 1) + ")").c_str(),
                 detail::honda_shapes()[i], detail::honda_types()[i], t.honda[i],
                 base, detail::item_is_multiplet(Theorem::honda, i + 1));
      break;
    }
    case TableId::ismaili1: {
      u64 base = 0;
      for (const auto& st : t.ismaili1) base += st.count;
      for (int i = 0; i < 4; ++i)
        item_row(("ismaili1(" + std::to_string(i + 1) + ")").c_str(),
                 detail::ismaili1_shapes()[i], detail::ismaili1_types()[i],
                 t.ismaili1[i], base,
                 detail::item_is_multiplet(Theorem::ismaili1, i + 1));
      break;
    }
    case TableId::ismaili2: {
      u64 base = 0;
      for (const auto& st : t.ismaili2) base += st.count;
      for (int i = 0; i < 7; ++i) {
        item_row(("ismaili2(" + std::to_string(i + 1) + ")").c_str(),
                 detail::ismaili2_shapes()[i], detail::ismaili2_types()[i],
                 t.ismaili2[i], base,
                 detail::item_is_multiplet(Theorem::ismaili2, i + 1));
        if (i == 4) {  // sub-split of the quartet item by the class of q2
          static const char* sub_shapes[2] = {
              "9 q1 q2, q1,q2 = 2,5 (9)", "9 q1 q2, q1 = 2,5 (9), q2 = 8 (9)"};
          for (int sub = 0; sub < 2; ++sub) {
            CensusRow r;
            r.item = "ismaili2(5)";
            r.shape = sub_shapes[sub];
            r.type = "(beta,beta,beta,beta)";
            r.count = t.ismaili2_item5_sub[sub].count;
            r.percent_hundredths =
                percent_hundredths(r.count, t.ismaili2[4].count);
            r.percent_base = "item";
            r.paradigms = t.ismaili2_item5_sub[sub].paradigms.values;
            rows.push_back(std::move(r));
          }
        }
      }
      break;
    }
    case TableId::typesplit: {
      auto typed_rows = [&](const TheoremItem& it, const ItemStats& st,
                            const char* shape, bool ingested, bool multiplets) {
        const auto& counts = ingested ? st.ingested_type_counts : st.type_counts;
        u64 typed_total = counts[0] + counts[1] + counts[2];
        if (typed_total == 0) return;
        for (int ty = 0; ty < 3; ++ty) {
          if (counts[ty] == 0) continue;
          CensusRow r;
          r.item = item_label(it);
          r.shape = shape;
          r.type = pf_name(static_cast<PFType>(ty));
          r.count = counts[ty];
          r.percent_hundredths = percent_hundredths(counts[ty], st.count);
          r.percent_base = "item";
          if (!ingested) {
            r.paradigms = st.type_paradigms[ty].values;
            if (multiplets) {
              r.has_multiplets = true;
              r.complete = st.type_multiplets[ty].complete;
              r.pseudo = st.type_multiplets[ty].partial_fields;
            }
          }
          rows.push_back(std::move(r));
        }
        if (!ingested && multiplets) {
          // Doublets whose two companions resolve to different types.
          u64 homogeneous = st.type_multiplets[0].complete +
                            st.type_multiplets[1].complete +
                            st.type_multiplets[2].complete;
          CensusRow r;
          r.item = item_label(it);
          r.shape = shape;
          r.type = "mixed-type multiplets";
          r.count = st.multiplets.complete - homogeneous;
          r.percent_hundredths = 0;
          r.percent_base = "item";
          rows.push_back(std::move(r));
        }
      };
      for (int i = 2; i <= 4; ++i)
        typed_rows(TheoremItem{Theorem::ismaili1, i, 1}, t.ismaili1[i - 1],
                   detail::ismaili1_shapes()[i - 1], false,
                   detail::item_is_multiplet(Theorem::ismaili1, i));
      // Splits that require class data arrive via ingest only.
      typed_rows(TheoremItem{Theorem::ismaili1, 1, 1}, t.ismaili1[0],
                 detail::ismaili1_shapes()[0], true, false);
      typed_rows(TheoremItem{Theorem::ismaili2, 1, 1}, t.ismaili2[0],
                 detail::ismaili2_shapes()[0], true, false);
      typed_rows(TheoremItem{Theorem::ismaili2, 2, 1}, t.ismaili2[1],
                 detail::ismaili2_shapes()[1], true, false);
      break;
    }
  }
  std::erase_if(rows, [](const CensusRow& r) { return r.count == 0; });
  return rows;
}

inline json census_json(const CensusTables& t, const std::vector<TableId>& which) {
  json j;
  j["meta"]["max_d"] = t.max_d;
  j["meta"]["version"] = kVersion;
  j["meta"]["conjectural_rules_used"] = t.conjectural_rules_used;
  if (t.ingest_records > 0) j["meta"]["ingest_records"] = t.ingest_records;
  j["totals"]["fields"] = t.total_fields;
  j["totals"]["by_species"]["1a"] = t.species_counts[0];
  j["totals"]["by_species"]["1b"] = t.species_counts[1];
  j["totals"]["by_species"]["2"] = t.species_counts[2];
  j["tables"] = json::array();
  for (TableId id : which) {
    json tbl;
    tbl["table_id"] = table_name(id);
    tbl["rows"] = json::array();
    for (const CensusRow& r : census_rows(t, id)) {
      json row;
      row["item"] = r.item;
      row["shape"] = r.shape;
      row["type"] = r.type;
      row["count"] = r.count;
      row["percent"] = static_cast<double>(r.percent_hundredths) / 100.0;
      row["percent_base"] = r.percent_base;
      row["paradigms"] = r.paradigms;
      if (r.has_multiplets) {
        row["doublets"]["complete"] = r.complete;
        row["doublets"]["pseudo"] = r.pseudo;
      }
      tbl["rows"].push_back(std::move(row));
    }
    j["tables"].push_back(std::move(tbl));
  }
  if (!t.violations.empty()) j["violations"] = t.violations;
  return j;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string census_csv(const CensusTables& t, TableId id) {
  std::string out =
      "item,conductor_shape,type,count,percent,percent_base,paradigms,"
      "multiplets_complete,pseudo_singulets\r\n";
  for (const CensusRow& r : census_rows(t, id)) {
    std::string paradigms;
    for (size_t i = 0; i < r.paradigms.size(); ++i) {
      if (i) paradigms += ",";
      paradigms += std::to_string(r.paradigms[i]);
    }
    out += detail::csv_quote(r.item) + "," + detail::csv_quote(r.shape) + "," +
           detail::csv_quote(r.type) + "," + std::to_string(r.count) + "," +
           format_percent(r.percent_hundredths) + "," + r.percent_base + "," +
           detail::csv_quote(paradigms) + ",";
    if (r.has_multiplets)
      out += std::to_string(r.complete) + "," + std::to_string(r.pseudo);
    else
      out += ",";
    out += "\r\n";
  }
  return out;
}

inline void write_census_csv(const CensusTables& t,
                             const std::vector<TableId>& which,
                             const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (TableId id : which) {
    std::ofstream out(out_dir / (std::string(table_name(id)) + ".csv"),
                      std::ios::binary);
    if (!out)
      fail(errc::configuration,
           "cannot write CSV into " + out_dir.string());
    out << census_csv(t, id);
  }
}

}  // namespace kummer3
