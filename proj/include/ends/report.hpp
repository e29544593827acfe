#pragma once

#include <string>
#include <vector>

namespace ends {

/// Outcome of one verification check or suite. A failing report always
/// carries at least one human-readable witness; sub-check names double as
/// witnesses prefixed with "ok:" when a suite wants to enumerate what it
/// covered.
struct Report {
  std::string check;
  bool pass = true;
  std::vector<std::string> witnesses;
  int stage_lo = 0;
  int stage_hi = 0;

  // Records a failed condition; keeps pass sticky-false.
  void require(bool cond, const std::string& witness);
  // Folds a sub-report into this one, prefixing its witnesses.
  void absorb(const Report& sub);
};

std::string to_json(const Report& r);

}  // namespace ends
