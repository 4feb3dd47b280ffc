#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace rcmm {

/// First failing instance of a checked inequality `lhs >= rhs`.
struct Witness {
  std::string condition;  // which inequality failed, e.g. "column", "nonneg"
  std::size_t n = 0;      // row (1-based) or sequence index
  std::size_t k = 0;      // offset / secondary index
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;     // lhs - rhs (+ tolerance where applied); negative
};

/// Verdict of a structural check. `witness` is set iff `holds` is false.
struct PropertyReport {
  std::string property;
  bool holds = true;
  std::optional<Witness> witness;
  double tolerance = 0.0;           // absolute tolerance actually used
  std::size_t range = 0;            // rows / length checked ("local" range)
  std::optional<std::string> warning;  // e.g. conditioning disagreement

  static PropertyReport pass(std::string property, double tol, std::size_t range) {
    return {std::move(property), true, std::nullopt, tol, range, std::nullopt};
  }
  static PropertyReport fail(std::string property, double tol, std::size_t range, Witness w) {
    return {std::move(property), false, std::move(w), tol, range, std::nullopt};
  }
  explicit operator bool() const noexcept { return holds; }
};

/// Human-readable one-liner plus witness detail.
void print_report(std::ostream& out, const PropertyReport& r);
/// `key=value` record: property, holds, tol, range, and witness fields.
void print_report_record(std::ostream& out, const PropertyReport& r);

}  // namespace rcmm
