#pragma once

#include "weilad/laws.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace weilad::detail {

/// Portable draws from mt19937_64 (no distribution objects, so the stream is
/// identical across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

class Recorder {
 public:
  explicit Recorder(LawReport& r) : r_(r) {}

  void record(bool ok, const std::string& instance, const std::string& detail, std::vector<std::size_t> indices = {}) {
    ++r_.instances_run;
    if (ok) return;
    ++r_.failures;
    if (r_.witnesses.size() < 10) r_.witnesses.push_back({instance, detail, std::move(indices)});
  }
  void error(double abs, double rel) {
    r_.max_abs_error = std::max(r_.max_abs_error, abs);
    r_.max_rel_error = std::max(r_.max_rel_error, rel);
  }
  LawReport& report() { return r_; }

 private:
  LawReport& r_;
};

LawReport run_numeric_law(const LawInstance& instance);
LawReport run_finset_law(const LawInstance& instance);

}  // namespace weilad::detail
