#pragma once

#include <string>
#include <vector>

#include "netring/solver.hpp"

namespace netring {

struct ReproCheck {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct ReproReport {
  std::string suite;
  std::vector<ReproCheck> checks;
  bool passed() const;
};

/// m-code, dim-n, choose-two, catalog, pipeline.
const std::vector<std::string>& repro_suites();

/// Runs one suite; throws AlgebraError for an unknown name.
ReproReport run_repro(const std::string& suite, const SearchOptions& opts = {});

}  // namespace netring
