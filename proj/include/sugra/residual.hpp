#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sugra {

struct ResidualEntry {
  std::string name;
  double value = 0;  // max-abs residual over all probes
  double tol = 0;
  bool pass = false;
  std::string note;
};

/// One row per enabled equation; rows keep insertion order so reports are
/// deterministic.
class ResidualReport {
 public:
  void add(const std::string& name, double value, double tol,
           const std::string& note = "") {
    for (const auto& e : entries_)
      if (e.name == name) throw std::logic_error("duplicate residual entry: " + name);
    entries_.push_back({name, value, tol, std::abs(value) <= tol, note});
  }

  // Fold another probe of the same equation into an existing row.
  void update(const std::string& name, double value) {
    auto& e = at(name);
    e.value = std::max(e.value, std::abs(value));
    e.pass = e.value <= e.tol;
  }

  bool all_pass() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const ResidualEntry& e) { return e.pass; });
  }

  const ResidualEntry& find(const std::string& name) const {
    return const_cast<ResidualReport*>(this)->at(name);
  }
  bool has(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return true;
    return false;
  }

  const std::vector<ResidualEntry>& entries() const { return entries_; }

 private:
  ResidualEntry& at(const std::string& name) {
    for (auto& e : entries_)
      if (e.name == name) return e;
    throw std::out_of_range("no residual entry: " + name);
  }

  std::vector<ResidualEntry> entries_;
};

}  // namespace sugra
