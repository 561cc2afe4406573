#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pellforms {

/// Discriminants exercised by the sampled property checks.
inline const std::vector<long> kSuiteDiscriminants = {5, 8, 13, 229, -4, -23};
/// (delta, field) pairs where sampled points reach nonprincipal classes.
/// An odd-order class never becomes principal over a quadratic extension, so
/// these discriminants all have a class of order 4.
inline const std::vector<std::pair<long, long>> kNonprincipalCases = {{145, 5}, {-39, -3}, {-56, -1}, {136, 2}};
/// Quadratic fields Q(sqrt f) the sampled points live in (0 = rationals).
inline const std::vector<long> kSuiteFields = {-1, 2, -3, -2, 5};

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Base sample count; each property scales it (per discriminant, per field).
  std::size_t trials = 200;
  /// Box bound for torsor-point searches.
  long search_bound = 20;
};

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failed = 0;
  std::vector<std::string> examples;  // first few failures
  bool passed() const { return failed == 0 && cases > 0; }
};

std::vector<std::string> property_names();
/// Throws std::invalid_argument for an unknown name.
PropertyResult run_property(const std::string& name, const SuiteOptions& opts);
std::vector<PropertyResult> run_property_suite(const SuiteOptions& opts);

}  // namespace pellforms
