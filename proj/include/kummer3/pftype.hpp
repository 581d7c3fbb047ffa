#pragma once

#include <array>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kummer3/arith.hpp"
#include "kummer3/conductor.hpp"
#include "kummer3/eisenstein.hpp"
#include "kummer3/errors.hpp"
#include "kummer3/rank.hpp"

namespace kummer3 {

enum class PFType { alpha = 0, beta = 1, gamma = 2 };

inline const char* pf_name(PFType t) {
  switch (t) {
    case PFType::alpha: return "alpha";
    case PFType::beta: return "beta";
    default: return "gamma";
  }
}

inline std::optional<PFType> pf_from_name(const std::string& s) {
  if (s == "alpha") return PFType::alpha;
  if (s == "beta") return PFType::beta;
  if (s == "gamma") return PFType::gamma;
  return std::nullopt;
}

// Admissible principal factorization types from the unit-cohomology table:
// alpha = (U,A,R) = (1,1,1), beta = (1,2,0), gamma = (0,1,0), subject to
// A + R = U + 1, 1 <= A <= t - s, 0 <= R <= s, and gamma additionally to the
// norm condition on zeta3 (all primes of f in {3} or +-1 mod 9).
struct PFConstraints {
  int s = 0;
  int t = 0;
  bool gamma_allowed = false;
  std::array<bool, 3> possible{};

  bool allows(PFType ty) const { return possible[static_cast<int>(ty)]; }
  int count() const {
    return (possible[0] ? 1 : 0) + (possible[1] ? 1 : 0) + (possible[2] ? 1 : 0);
  }
};

inline PFConstraints possible_types(const Conductor& c, const RamificationProfile& prof) {
  PFConstraints pc;
  pc.s = prof.s;
  pc.t = prof.t;
  pc.gamma_allowed = c.v == 0;
  pc.possible[static_cast<int>(PFType::alpha)] = prof.s >= 1;            // R = 1 needs s >= 1
  pc.possible[static_cast<int>(PFType::beta)] = prof.t - prof.s >= 2;    // A = 2 needs t - s >= 2
  pc.possible[static_cast<int>(PFType::gamma)] = pc.gamma_allowed;
  if (pc.count() == 0)
    fail(errc::inconsistency, "possible_types: empty set for conductor " +
                                  std::to_string(c.f));
  return pc;
}

enum class ResolveMethod { forced, symbol, ingested, unresolved };

inline const char* resolve_method_name(ResolveMethod m) {
  switch (m) {
    case ResolveMethod::forced: return "forced";
    case ResolveMethod::symbol: return "symbol";
    case ResolveMethod::ingested: return "ingested";
    default: return "unresolved";
  }
}

struct PFResolution {
  std::optional<PFType> resolved;
  ResolveMethod method = ResolveMethod::unresolved;
  bool conjectural = false;  // set when the beta direction of the symbol
                             // criterion is used
};

// Resolves the type where congruences or cubic residue symbols decide it:
// a singleton admissible set is forced; for the split-prime items with
// conductor 3p, 9p, pq the symbol (c/p)_3 decides, rigorously towards alpha
// and conjecturally towards beta. Everything else stays unresolved pending
// ingested class data.
inline PFResolution resolve_type(const Conductor& c, const TheoremItem& item,
                                 const PFConstraints& constraints) {
  PFResolution res;
  if (constraints.count() == 1) {
    for (int i = 0; i < 3; ++i)
      if (constraints.possible[i]) res.resolved = static_cast<PFType>(i);
    res.method = ResolveMethod::forced;
    return res;
  }
  if (item.theorem == Theorem::ismaili1 && item.item >= 2 && item.item <= 4) {
    u64 p = 0;
    u64 q = 0;
    for (const PrimeClass& pc : c.primes) {
      if (pc.kind == PrimeKind::split_p)
        p = pc.prime;
      else
        q = pc.prime;
    }
    i64 symbol_arg = item.item == 4 ? static_cast<i64>(q) : 3;
    CubicSymbol sym = cubic_symbol_rational(symbol_arg, p);
    res.method = ResolveMethod::symbol;
    if (sym.trivial) {
      res.resolved = PFType::beta;
      res.conjectural = true;
    } else {
      res.resolved = PFType::alpha;
    }
    return res;
  }
  return res;
}

// Abelian type of a finite abelian 3-group, as printed: "(9,3)" for the
// product of cyclic groups of orders 9 and 3.
struct AbelianType {
  std::vector<u64> orders;  // non-increasing, each a power of 3 and >= 3

  friend bool operator==(const AbelianType&, const AbelianType&) = default;

  std::string str() const {
    std::string out = "(";
    for (size_t i = 0; i < orders.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(orders[i]);
    }
    return out + ")";
  }
};

inline bool is_power_of_three(u64 v) {
  if (v < 3) return false;
  while (v % 3 == 0) v /= 3;
  return v == 1;
}

inline AbelianType parse_abelian_type(const std::string& s) {
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    fail(errc::parse, "abelian type must look like \"(3,3)\", got \"" + s + "\"");
  AbelianType out;
  std::stringstream body(s.substr(1, s.size() - 2));
  std::string tok;
  while (std::getline(body, tok, ',')) {
    u64 v = 0;
    try {
      size_t pos = 0;
      v = std::stoull(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(errc::parse, "abelian type component \"" + tok + "\" is not a number");
    }
    if (!is_power_of_three(v))
      fail(errc::parse, "abelian type component " + std::to_string(v) +
                            " is not a positive power of 3");
    out.orders.push_back(v);
  }
  if (out.orders.empty()) fail(errc::parse, "abelian type is empty");
  for (size_t i = 1; i < out.orders.size(); ++i)
    if (out.orders[i] > out.orders[i - 1])
      fail(errc::parse, "abelian type components must be non-increasing");
  return out;
}

// One row of ingested class data for a normalized radicand.
struct ClassDataRecord {
  u64 d = 0;
  PFType pf_type = PFType::beta;
  int w = 1;          // claimed 3-class group of the cubic field is (3^w)
  u64 h_L = 1;        // class number of the cubic field
  AbelianType ck3;    // 3-class group of the closure
  std::optional<u64> h_k;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) fail(errc::parse, "unterminated quote in CSV line: " + line);
  fields.push_back(cur);
  return fields;
}

inline u64 parse_u64_field(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    u64 v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::parse, what + " \"" + s + "\" is not a non-negative integer");
  }
}

}  // namespace detail

// Ingest format: UTF-8 CSV with header d,pf_type,w,h_L,ck3[,h_k];
// pf_type in {alpha,beta,gamma}; ck3 like "(3,3)".
inline std::vector<ClassDataRecord> parse_ingest_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(errc::parse, "ingest file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = detail::split_csv_line(line);
  const std::vector<std::string> base = {"d", "pf_type", "w", "h_L", "ck3"};
  bool has_hk = header.size() == 6 && header[5] == "h_k";
  if (header.size() < 5 || (header.size() == 6 && !has_hk) || header.size() > 6 ||
      !std::equal(base.begin(), base.end(), header.begin()))
    fail(errc::parse, "ingest header must be d,pf_type,w,h_L,ck3[,h_k]");
  std::vector<ClassDataRecord> records;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (fields.size() != 5 && fields.size() != 6)
      fail(errc::parse, "ingest line " + std::to_string(lineno) +
                            ": expected 5 or 6 fields, got " +
                            std::to_string(fields.size()));
    ClassDataRecord rec;
    rec.d = detail::parse_u64_field(fields[0], "radicand");
    auto ty = pf_from_name(fields[1]);
    if (!ty)
      fail(errc::parse, "ingest line " + std::to_string(lineno) +
                            ": unknown pf_type \"" + fields[1] + "\"");
    rec.pf_type = *ty;
    rec.w = static_cast<int>(detail::parse_u64_field(fields[2], "w"));
    rec.h_L = detail::parse_u64_field(fields[3], "h_L");
    rec.ck3 = parse_abelian_type(fields[4]);
    if (fields.size() == 6 && !fields[5].empty())
      rec.h_k = detail::parse_u64_field(fields[5], "h_k");
    records.push_back(std::move(rec));
  }
  return records;
}

namespace detail {

inline u64 pow3(int k) {
  u64 v = 1;
  while (k-- > 0) v *= 3;
  return v;
}

inline int v3(u64 n) {
  int k = 0;
  while (n % 3 == 0) {
    n /= 3;
    ++k;
  }
  return k;
}

// Closure 3-class group shape implied by type and w: heterocyclic
// (3^w, 3^(w-1)) for alpha (cyclic (3) at w = 1), homocyclic (3^w, 3^w)
// for beta and gamma.
inline AbelianType expected_ck3(PFType ty, int w) {
  if (ty == PFType::alpha) {
    if (w == 1) return AbelianType{{3}};
    return AbelianType{{pow3(w), pow3(w - 1)}};
  }
  return AbelianType{{pow3(w), pow3(w)}};
}

// Least admissible w per (item, type) in the structure table: gamma needs
// w >= 2 for the split 1 (mod 9) singulets and the 8 (mod 9) pair doublets.
inline int min_w(const TheoremItem& item, PFType ty) {
  if (ty != PFType::gamma) return 1;
  if (item.theorem == Theorem::ismaili1 && item.item == 1) return 2;
  if (item.theorem == Theorem::ismaili2 && item.item == 2) return 2;
  return 1;
}

}  // namespace detail

// Consistency checks of an ingested record against everything the conductor
// determines: admissible type set, 3-valuation of h_L, the closure group
// shape for the item, the class number relation h_k = (Q/3) h_L^2, and the
// symbol resolution where one applies.
inline std::vector<std::string> check_class_record(const ClassDataRecord& rec,
                                                   const TheoremItem& item,
                                                   const PFConstraints& constraints,
                                                   const PFResolution& res) {
  std::vector<std::string> violations;
  auto flag = [&](const std::string& msg) { violations.push_back(msg); };

  if (rec.w < 1) {
    flag("w must be at least 1");
    return violations;
  }
  if (!constraints.allows(rec.pf_type))
    flag(std::string("type ") + pf_name(rec.pf_type) +
         " is impossible for this conductor (admissible set excludes it)");
  if (item.theorem == Theorem::honda)
    flag("conductor has trivial ambiguous 3-class group, so 3 cannot divide h_L");
  if (detail::v3(rec.h_L) != rec.w)
    flag("3-valuation of h_L is " + std::to_string(detail::v3(rec.h_L)) +
         ", expected w = " + std::to_string(rec.w));
  if (item.theorem == Theorem::ismaili1 || item.theorem == Theorem::ismaili2) {
    if (rec.w < detail::min_w(item, rec.pf_type))
      flag(std::string("type ") + pf_name(rec.pf_type) + " requires w >= " +
           std::to_string(detail::min_w(item, rec.pf_type)) + " for " +
           item_label(item));
    AbelianType expect = detail::expected_ck3(rec.pf_type, rec.w);
    if (!(rec.ck3 == expect))
      flag("ck3 " + rec.ck3.str() + " does not match the " + pf_name(rec.pf_type) +
           " shape " + expect.str() + " for w = " + std::to_string(rec.w));
  }
  if (rec.h_k) {
    bool ok = rec.pf_type == PFType::alpha ? (3 * *rec.h_k == rec.h_L * rec.h_L)
                                           : (*rec.h_k == rec.h_L * rec.h_L);
    if (!ok)
      flag("class number relation h_k = (Q/3) h_L^2 fails (Q = " +
           std::string(rec.pf_type == PFType::alpha ? "1" : "3") + ")");
  }
  if (res.resolved && res.method == ResolveMethod::forced &&
      rec.pf_type != *res.resolved)
    flag(std::string("type is forced to ") + pf_name(*res.resolved) +
         " by the admissible set");
  if (res.method == ResolveMethod::symbol) {
    if (*res.resolved == PFType::alpha && rec.pf_type != PFType::alpha)
      flag("nontrivial cubic symbol forces type alpha, record disagrees");
    if (*res.resolved == PFType::beta && rec.pf_type == PFType::alpha)
      flag("potential counterexample to the symbol conjecture: trivial symbol "
           "but ingested type alpha");
  }
  return violations;
}

enum class GenusScenario { one, two, three, na };

inline const char* genus_scenario_name(GenusScenario g) {
  switch (g) {
    case GenusScenario::one: return "I";
    case GenusScenario::two: return "II";
    case GenusScenario::three: return "III";
    default: return "NA";
  }
}

// Location of the relative 3-genus field, assignable only once the closure
// group is known elementary bicyclic (3,3).
inline GenusScenario genus_scenario(const TheoremItem& item, int s,
                                    const ClassDataRecord* rec) {
  if (!rec || !(rec->ck3 == AbelianType{{3, 3}})) return GenusScenario::na;
  if (item.theorem == Theorem::ismaili1 && item.item >= 2 && item.item <= 4)
    return GenusScenario::one;
  if (item.theorem == Theorem::ismaili2) return GenusScenario::two;
  if (item.theorem == Theorem::rank2plus && s == 1) return GenusScenario::three;
  return GenusScenario::na;
}

}  // namespace kummer3
