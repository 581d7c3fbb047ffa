#pragma once

#include <stdexcept>
#include <string>

namespace kummer3 {

enum class errc {
  invalid_input,   // malformed or out-of-domain argument
  not_a_field,     // perfect-cube radicand
  no_field_exists, // conductor whose multiplicity formula yields zero
  configuration,   // resource bounds (sieve limit, job count)
  parse,           // malformed ingest file or abelian type string
  inconsistency,   // internal cross-check failure
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace kummer3
