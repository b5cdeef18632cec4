#pragma once

#include <stdexcept>
#include <string>

namespace logiso {

// Error taxonomy shared by the core, the C API and the CLI. Every throw site
// picks one code; the C boundary turns codes into status integers and the
// CLI prints them with the offending input path when one is known.
enum class Errc {
  unknown_atom,
  unknown_component,
  algebra_mismatch,
  undecidable_tail,
  infinite_mass,
  derivative_bounded,
  row_mismatch,
  ratio_unbounded,
  not_normalized,
  schema,
  domain,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::string path = {})
      : std::runtime_error(std::move(message)), code_(code), path_(std::move(path)) {}

  Errc code() const { return code_; }
  const std::string& path() const { return path_; }

 private:
  Errc code_;
  std::string path_;  // JSON-pointer-ish location for parse diagnostics
};

}  // namespace logiso
