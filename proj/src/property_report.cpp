#include "rcmm/property_report.hpp"

#include <ostream>

#include "rcmm/text_io.hpp"

namespace rcmm {

void print_report(std::ostream& out, const PropertyReport& r) {
  out << r.property << ": " << (r.holds ? "holds" : "FAILS") << " (range " << r.range << ", tol "
      << format_double(r.tolerance) << ")\n";
  if (r.witness) {
    const auto& w = *r.witness;
    out << "  first violation: " << w.condition << " at (" << w.n << "," << w.k << ") lhs=" << format_double(w.lhs)
        << " rhs=" << format_double(w.rhs) << " slack=" << format_double(w.slack) << '\n';
  }
  if (r.warning) out << "  warning: " << *r.warning << '\n';
}

void print_report_record(std::ostream& out, const PropertyReport& r) {
  out << "property=" << r.property << " holds=" << (r.holds ? "true" : "false")
      << " tol=" << format_double(r.tolerance) << " range=" << r.range;
  if (r.witness) {
    const auto& w = *r.witness;
    out << " condition=" << w.condition << " n=" << w.n << " k=" << w.k << " lhs=" << format_double(w.lhs)
        << " rhs=" << format_double(w.rhs) << " slack=" << format_double(w.slack);
  }
  if (r.warning) out << " warning=\"" << *r.warning << '"';
  out << '\n';
}

}  // namespace rcmm
