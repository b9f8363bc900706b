#pragma once

// Machine-readable suite reports.  Key order in nlohmann::json objects is
// lexicographic, so serialized reports are deterministic once content is;
// wall-clock timings live in a separate subobject that determinism
// comparisons strip.

#include <cstdint>
#include <string>

#include "json.hpp"

namespace ostw {

struct Report {
  nlohmann::json data = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();
  std::uint64_t failure_count = 0;

  explicit Report(const std::string& suite) {
    data["suite"] = suite;
    data["failures"] = nlohmann::json::array();
    data["failure_count"] = 0;
  }

  void count(const std::string& key, std::uint64_t n) { data[key] = n; }
  void note(const std::string& text) { data["notes"].push_back(text); }

  // Failure messages carry the offending parameters; the stored list is
  // capped, the count is exact.
  void fail(const std::string& what) {
    ++failure_count;
    data["failure_count"] = failure_count;
    if (data["failures"].size() < 64) data["failures"].push_back(what);
  }

  bool passed() const { return failure_count == 0; }

  nlohmann::json to_json(bool with_timings = true) const {
    nlohmann::json out = data;
    out["passed"] = passed();
    if (with_timings) out["timings"] = timings;
    return out;
  }
};

}  // namespace ostw
