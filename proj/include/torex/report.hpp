#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

// JSON conversion is provided only when the single-header nlohmann/json is
// on the include path; the CSV side of this header has no such dependency.
#if defined(__has_include)
#if __has_include(<json.hpp>)
#include <json.hpp>
#define TOREX_HAS_JSON 1
#endif
#endif

#include "torex/rational.hpp"

namespace torex {

/// One comparison line of a verification run: a set, the generator set it
/// was expanded with, and the exact quantities of the bound check.
/// margin = bound - m_union; in counterexample mode passed means the
/// conjectured bound is strictly beaten (margin > 0).
struct ReportRow {
  std::string construction;
  std::string generators;
  Rational epsilon;
  Rational m_A;
  Rational m_union;
  Rational ratio;
  Rational bound;   // bound_factor * m_A
  Rational margin;  // bound - m_union
  bool passed;
};

inline const char* csv_header() {
  return "construction,generators,epsilon,m_A,m_union,ratio,bound,margin,passed";
}

inline std::string csv_line(const ReportRow& r) {
  std::ostringstream os;
  os << r.construction << ',' << r.generators << ','
     << to_fraction_string(r.epsilon) << ',' << to_fraction_string(r.m_A)
     << ',' << to_fraction_string(r.m_union) << ','
     << to_fraction_string(r.ratio) << ',' << to_fraction_string(r.bound)
     << ',' << to_fraction_string(r.margin) << ','
     << (r.passed ? "true" : "false");
  return os.str();
}

inline void write_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

#ifdef TOREX_HAS_JSON
inline nlohmann::json row_to_json(const ReportRow& r) {
  return nlohmann::json{{"construction", r.construction},
                        {"generators", r.generators},
                        {"epsilon", to_fraction_string(r.epsilon)},
                        {"m_A", to_fraction_string(r.m_A)},
                        {"m_union", to_fraction_string(r.m_union)},
                        {"ratio", to_fraction_string(r.ratio)},
                        {"bound", to_fraction_string(r.bound)},
                        {"margin", to_fraction_string(r.margin)},
                        {"passed", r.passed}};
}

inline nlohmann::json rows_to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(row_to_json(r));
  return arr;
}
#endif  // TOREX_HAS_JSON

}  // namespace torex
