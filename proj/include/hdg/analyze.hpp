#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hdg/model.hpp"
#include "hdg/polytope.hpp"
#include "hdg/rational.hpp"

namespace hdg {

enum class Verdict { PredictsH, PredictsNotH, Inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PredictsH: return "PredictsH";
    case Verdict::PredictsNotH: return "PredictsNotH";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline std::string_view describe(Verdict v) {
  switch (v) {
    case Verdict::PredictsH: return "H-property predicted";
    case Verdict::PredictsNotH: return "H-property fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

// Decision table. A disconnected skeleton is always Inconclusive at the top
// level; its components are reported separately.
inline Verdict verdict_for(bool connected, bool condition_a, Membership b) {
  if (!connected) return Verdict::Inconclusive;
  if (!condition_a || b == Membership::Exterior) return Verdict::PredictsNotH;
  if (b == Membership::Interior) return Verdict::PredictsH;
  return Verdict::Inconclusive;
}

struct AnalysisReport {
  std::size_t blocks = 0;
  bool connected = false;
  bool condition_a = false;
  bool loops_present = false;
  bool s1_odd_cycle = false;
  Membership condition_b_status = Membership::Exterior;
  Verdict verdict = Verdict::Inconclusive;
  MembershipCertificate certificate;
  std::vector<std::vector<std::size_t>> components;  // 0-based blocks; one entry when connected
  std::vector<AnalysisReport> component_reports;     // only for disconnected skeletons
};

// Restriction of W to a union of blocks, rescaled to [0, 1].
inline StepGraphon restrict_to(const StepGraphon& w, const std::vector<std::size_t>& blocks) {
  const auto& s = w.partition();
  Rational total;
  for (std::size_t b : blocks) total += s[b + 1] - s[b];
  RationalVector points{Rational(0)};
  for (std::size_t b : blocks) points.push_back(points.back() + (s[b + 1] - s[b]) / total);
  RationalMatrix values(blocks.size(), blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j) values(i, j) = w.value(blocks[i], blocks[j]);
  return StepGraphon(Partition(std::move(points)), std::move(values));
}

inline AnalysisReport analyze(const StepGraphon& w) {
  const SkeletonGraph s = skeleton(w);
  AnalysisReport r;
  r.blocks = w.blocks();
  r.components = connected_components(s);
  r.connected = r.components.size() == 1;
  r.loops_present = !s.loops().empty();
  r.s1_odd_cycle = loopless_has_odd_cycle(s);
  r.condition_a = has_odd_cycle(s);
  r.certificate = positive_certificate(incidence(s), concentration(w.partition()));
  r.condition_b_status = r.certificate.status;
  r.verdict = verdict_for(r.connected, r.condition_a, r.condition_b_status);
  if (!r.connected)
    for (const auto& comp : r.components) r.component_reports.push_back(analyze(restrict_to(w, comp)));
  return r;
}

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string block_list(const std::vector<std::size_t>& blocks) {
  std::string s = "{";
  for (std::size_t k = 0; k < blocks.size(); ++k) s += (k ? "," : "") + std::to_string(blocks[k] + 1);
  return s + "}";
}

inline void write_report(std::ostringstream& out, const AnalysisReport& r, const std::string& indent) {
  out << indent << "blocks: " << r.blocks << "\n";
  out << indent << "skeleton connected: " << yes_no(r.connected) << "\n";
  out << indent << "Condition A: " << yes_no(r.condition_a) << " (loops: " << yes_no(r.loops_present)
      << ", odd cycle among distinct blocks: " << yes_no(r.s1_odd_cycle) << ")\n";
  out << indent << "Condition B: " << to_string(r.condition_b_status);
  if (r.certificate.margin) out << " (certificate margin " << to_string(*r.certificate.margin) << ")";
  out << "\n";
  if (!r.connected) {
    for (std::size_t k = 0; k < r.components.size(); ++k) {
      out << indent << "component " << block_list(r.components[k]) << ":\n";
      write_report(out, r.component_reports[k], indent + "  ");
    }
  }
  out << indent << "verdict: " << describe(r.verdict) << "\n";
  if (r.verdict == Verdict::Inconclusive && r.connected)
    out << indent << "  x* lies on the boundary of the edge polytope; the limiting probability may lie in (0,1)\n";
  if (!r.connected)
    out << indent << "  the skeleton is disconnected; see the component reports above\n";
}

}  // namespace detail

inline std::string format_report(const AnalysisReport& r) {
  std::ostringstream out;
  detail::write_report(out, r, "");
  return out.str();
}

inline nlohmann::json report_to_json(const AnalysisReport& r) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : r.certificate.coefficients) coeffs.push_back(to_string(c));
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : r.components) {
    nlohmann::json one = nlohmann::json::array();
    for (std::size_t b : c) one.push_back(b + 1);
    comps.push_back(std::move(one));
  }
  nlohmann::json out{{"blocks", r.blocks},
                     {"connected", r.connected},
                     {"condition_a", r.condition_a},
                     {"condition_b", std::string(to_string(r.condition_b_status))},
                     {"verdict", std::string(to_string(r.verdict))},
                     {"certificate", std::move(coeffs)},
                     {"components", std::move(comps)}};
  if (r.certificate.margin) out["certificate_margin"] = to_string(*r.certificate.margin);
  if (!r.component_reports.empty()) {
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& sub : r.component_reports) subs.push_back(report_to_json(sub));
    out["component_reports"] = std::move(subs);
  }
  return out;
}

}  // namespace hdg
