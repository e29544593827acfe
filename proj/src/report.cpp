#include "ends/report.hpp"

#include "json.hpp"

namespace ends {

void Report::require(bool cond, const std::string& witness) {
  if (!cond) {
    pass = false;
    witnesses.push_back(witness);
  }
}

void Report::absorb(const Report& sub) {
  if (sub.pass) {
    witnesses.push_back("ok: " + sub.check);
  } else {
    pass = false;
    for (const auto& w : sub.witnesses)
      witnesses.push_back(sub.check + ": " + w);
  }
  stage_lo = std::min(stage_lo, sub.stage_lo);
  stage_hi = std::max(stage_hi, sub.stage_hi);
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["status"] = r.pass ? "pass" : "fail";
  j["stages"] = {{"from", r.stage_lo}, {"to", r.stage_hi}};
  j["witnesses"] = r.witnesses;
  return j.dump(2);
}

}  // namespace ends
