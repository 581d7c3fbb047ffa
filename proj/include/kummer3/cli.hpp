#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kummer3/census.hpp"
#include "kummer3/classify.hpp"
#include "kummer3/eisenstein.hpp"
#include "kummer3/errors.hpp"
#include "kummer3/version.hpp"

namespace kummer3 {

namespace detail {

inline int exit_code_for(const Error& e) {
  return e.code() == errc::inconsistency ? 2 : 1;
}

inline std::string pretty_field(const FieldRecord& rec) {
  std::ostringstream out;
  out << "d = " << rec.radicand.d << " = " << rec.radicand.d1 << " * "
      << rec.radicand.d2 << "^2, species " << species_name(rec.radicand.species)
      << "\n";
  out << "conductor f = " << rec.conductor.f << "  (e = " << rec.conductor.e
      << ", u = " << rec.conductor.u << ", v = " << rec.conductor.v
      << "), multiplicity " << rec.m << "\n";
  out << "t = " << rec.profile.t << ", s = " << rec.profile.s
      << ", q* = " << rec.profile.qstar << ", ambiguous rank "
      << rec.profile.ambiguous_rank << "\n";
  out << "item " << item_label(rec.item) << "; class rank bounds ["
      << rec.bwb.lower << ", " << rec.bwb.upper << "]";
  if (rec.bwb.exact_r) out << " (exact " << *rec.bwb.exact_r << ")";
  out << "\n";
  out << "possible types:";
  for (int i = 0; i < 3; ++i)
    if (rec.constraints.possible[i]) out << " " << pf_name(static_cast<PFType>(i));
  if (rec.resolution.resolved) {
    out << "; resolved " << pf_name(*rec.resolution.resolved) << " ("
        << resolve_method_name(rec.resolution.method);
    if (rec.resolution.conjectural) out << ", conjectural";
    out << ")";
  }
  out << "\n";
  return out.str();
}

inline std::string pretty_census(const CensusTables& t,
                                 const std::vector<TableId>& which) {
  std::ostringstream out;
  out << "normalized radicands below " << t.max_d << ": " << t.total_fields
      << " fields\n";
  for (TableId id : which) {
    out << "\n[" << table_name(id) << "]\n";
    for (const CensusRow& r : census_rows(t, id)) {
      out << "  " << r.item;
      if (!r.type.empty()) out << " " << r.type;
      out << ": " << r.count << " (" << format_percent(r.percent_hundredths)
          << "% of " << r.percent_base << ")";
      if (r.has_multiplets)
        out << " complete=" << r.complete << " pseudo=" << r.pseudo;
      if (!r.paradigms.empty()) {
        out << "  e.g.";
        for (u64 v : r.paradigms) out << " " << v;
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace detail

// Full command surface; streams are injected so tests can drive it in-process.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"pure cubic field classifier and census"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "classify the pure cubic field of a radicand");
  u64 classify_d = 0;
  bool classify_pretty = false;
  bool classify_json = false;
  classify_cmd->add_option("d", classify_d, "radicand (> 1)")->required();
  classify_cmd->add_flag("--json", classify_json, "emit JSON (default)");
  classify_cmd->add_flag("--pretty", classify_pretty, "human readable rendering");

  // multiplet
  auto* multiplet_cmd =
      app.add_subcommand("multiplet", "companion radicands of a conductor");
  u64 multiplet_f = 0;
  multiplet_cmd->add_option("f", multiplet_f, "conductor value")->required();

  // census
  auto* census_cmd =
      app.add_subcommand("census", "sweep all normalized radicands below a bound");
  u64 census_max = 0;
  int census_jobs = 1;
  std::string census_format = "json";
  std::string census_out;
  std::string census_ingest;
  std::string census_tables;
  bool census_pretty = false;
  census_cmd->add_option("--max", census_max, "exclusive bound on radicands")
      ->required();
  census_cmd->add_option("--jobs", census_jobs, "worker count")
      ->envname("KUMMER3_JOBS");
  census_cmd->add_option("--format", census_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  census_cmd->add_option("--out", census_out, "output directory for CSV files");
  census_cmd->add_option("--ingest", census_ingest, "class data CSV to merge");
  census_cmd->add_option("--tables", census_tables,
                         "comma separated subset of "
                         "species,honda,ismaili1,ismaili2,typesplit");
  census_cmd->add_flag("--pretty", census_pretty, "human readable rendering");

  // symbol
  auto* symbol_cmd =
      app.add_subcommand("symbol", "cubic residue symbol (c/p)_3");
  i64 symbol_c = 0;
  u64 symbol_p = 0;
  symbol_cmd->add_option("c", symbol_c, "upper argument")->required();
  symbol_cmd->add_option("p", symbol_p, "prime = 1 (mod 3)")->required();

  // split
  auto* split_cmd =
      app.add_subcommand("split", "primary prime factors of p = 1 (mod 3)");
  u64 split_p = 0;
  split_cmd->add_option("p", split_p, "prime = 1 (mod 3)")->required();

  // check-ingest
  auto* check_cmd =
      app.add_subcommand("check-ingest", "validate a class data CSV");
  std::string check_path;
  check_cmd->add_option("file", check_path, "ingest CSV path")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (classify_cmd->parsed()) {
      FieldRecord rec = classify_field(classify_d);
      if (classify_pretty)
        out << detail::pretty_field(rec);
      else
        out << to_json(rec).dump() << "\n";
      return 0;
    }
    if (multiplet_cmd->parsed()) {
      Multiplet mult = enumerate_companions(parse_conductor(multiplet_f));
      json j;
      j["f"] = mult.conductor.f;
      j["m"] = mult.m;
      j["companions"] = mult.companions;
      out << j.dump() << "\n";
      return 0;
    }
    if (census_cmd->parsed()) {
      CensusConfig cfg;
      cfg.max_d = census_max;
      cfg.jobs = census_jobs;
      cfg.ingest_path = census_ingest;
      if (census_tables.empty()) {
        cfg.tables = all_tables();
      } else {
        std::stringstream ss(census_tables);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.tables.push_back(table_from_name(tok));
      }
      if (census_max < 2 || census_max > SpfTable::kMaxLimit)
        fail(errc::configuration, "census bound must lie in [2, 10^8]");
      SpfTable spf(std::max<u64>(census_max - 1, 2));
      CensusTables tables = run_census(cfg, spf);
      if (census_format == "csv") {
        write_census_csv(tables, cfg.tables, census_out.empty() ? "." : census_out);
      } else if (census_pretty) {
        out << detail::pretty_census(tables, cfg.tables);
      } else {
        out << census_json(tables, cfg.tables).dump() << "\n";
      }
      if (!tables.violations.empty()) {
        for (const std::string& v : tables.violations) err << v << "\n";
        return 2;
      }
      return 0;
    }
    if (symbol_cmd->parsed()) {
      CubicSymbol sym = cubic_symbol_rational(symbol_c, symbol_p);
      json j;
      j["c"] = symbol_c;
      j["p"] = symbol_p;
      j["exponent"] = sym.exponent;
      j["trivial"] = sym.trivial;
      out << j.dump() << "\n";
      return 0;
    }
    if (split_cmd->parsed()) {
      PrimarySplit sp = split_prime(split_p);
      json j;
      j["p"] = sp.p;
      j["pi1"]["a"] = sp.pi1.a;
      j["pi1"]["b"] = sp.pi1.b;
      j["pi2"]["a"] = sp.pi2.a;
      j["pi2"]["b"] = sp.pi2.b;
      out << j.dump() << "\n";
      return 0;
    }
    if (check_cmd->parsed()) {
      std::ifstream in(check_path);
      if (!in) fail(errc::configuration, "cannot open ingest file: " + check_path);
      auto records = parse_ingest_csv(in);
      u64 bad = 0;
      for (const ClassDataRecord& rec : records) {
        std::vector<std::string> issues;
        try {
          FieldRecord field = classify_field(rec.d);
          if (field.radicand.d != rec.d)
            issues.push_back("radicand is not normalized (expected " +
                             std::to_string(field.radicand.d) + ")");
          else
            issues = check_class_record(rec, field);
        } catch (const Error& e) {
          issues.push_back(e.what());
        }
        if (!issues.empty()) ++bad;
        for (const std::string& msg : issues)
          err << "d=" << rec.d << ": " << msg << "\n";
      }
      json j;
      j["records"] = records.size();
      j["violations"] = bad;
      out << j.dump() << "\n";
      return bad > 0 ? 2 : 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args), std::cout, std::cerr);
}

}  // namespace kummer3
