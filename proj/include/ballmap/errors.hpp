#pragma once

#include <stdexcept>
#include <string>

namespace ballmap {

enum class errc {
  invalid_argument,
  dimension_mismatch,
  hermiticity_violation,
  not_divisible,
  validation_failed,
  degenerate_degree_one,
  no_convergence,
  not_maximal_embedding,
  factorization_failure,
  infeasible,
};

const char* errc_name(errc c);

// Domain failures carry the module that raised them and, where meaningful,
// the residual that tripped the check.  Usage errors (bad files, bad flags)
// are reported with std::invalid_argument instead.
class domain_error : public std::runtime_error {
public:
  domain_error(errc code, std::string mod, const std::string& what, double residual = 0.0)
      : std::runtime_error(what), code_(code), module_(std::move(mod)), residual_(residual) {}

  errc code() const noexcept { return code_; }
  const std::string& module_name() const noexcept { return module_; }
  double residual() const noexcept { return residual_; }

private:
  errc code_;
  std::string module_;
  double residual_;
};

}  // namespace ballmap
