#pragma once

#include <string>
#include <vector>

#include "hfscatter/potentials/potential_model.hpp"

namespace hfscatter::potentials {

enum class CheckStatus { pass, fail, not_checkable_numerically };

const char* to_string(CheckStatus s);

struct AssumptionCheck {
  std::string item;  // e.g. "1.1.6"
  CheckStatus status = CheckStatus::not_checkable_numerically;
  double witness = 0.0;
  std::string note;
};

/// Advisory report over the sampled grid.  One entry per item of the
/// assumption set matching the model's role; checks never throw.
struct AssumptionReport {
  std::vector<AssumptionCheck> checks;

  bool any_failed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return true;
    return false;
  }
  const AssumptionCheck* find(const std::string& item) const {
    for (const auto& c : checks)
      if (c.item == item) return &c;
    return nullptr;
  }
};

AssumptionReport validate_assumptions(const PotentialModel& model, const Grid::Ptr& grid);

}  // namespace hfscatter::potentials
