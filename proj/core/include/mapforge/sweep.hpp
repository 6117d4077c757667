#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mapforge/map.hpp"

namespace mapforge {

struct SweepReport {
  std::string suite;
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::optional<std::string> reproducer;  // minimized descriptor text
};

std::vector<std::string> sweep_suites();
SweepReport run_sweep(const std::string& suite, uint64_t seed, std::size_t trials);

}  // namespace mapforge
