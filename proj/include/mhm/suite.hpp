#pragma once

#include <cstdint>
#include <string>

#include "mhm/builders.hpp"
#include "mhm/report.hpp"

namespace mhm {

/// Builds a named family instance. Families: delta, torus, product (torus in
/// r - 1 variables times delta in one variable), localization (needs f).
/// Throws InputError for an unknown family or invalid parameters.
MonodromicalModule build_family(const std::string& family, int r, const std::string& f, const WindowPolicy& policy);

struct SuiteOptions {
  std::uint32_t seed = 1;
  size_t random_nilpotents = 20;
};

/// Property run over one module: structural validation, restriction
/// strictness in both modes with Gr^F dims compared two ways, filtered
/// acyclicity away from α = 0, the specialization identity for the
/// canonical V-filtration, the V_r checks along every coordinate for
/// multigraded modules, purity when declared, and seeded monodromy
/// filtration checks. Adds a "checks" table; report.ok is the conjunction.
Report run_suite(const MonodromicalModule& m, const SuiteOptions& opts);

}  // namespace mhm
