#pragma once

// Membership in the edge polytope X(S) = conv{z_j}, decided by an exact LP
// that also produces a strictly positive coefficient vector when one exists.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hdg/errors.hpp"
#include "hdg/model.hpp"
#include "hdg/rational.hpp"
#include "hdg/simplex.hpp"

namespace hdg {

enum class Membership { Interior, Boundary, Exterior };

inline std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Exterior: return "Exterior";
  }
  return "?";
}

// Witness for x = Z c. When present, c >= margin entrywise, sum(c) = 1 and
// Z c = x exactly; margin > 0 exactly for relative-interior points.
struct MembershipCertificate {
  Membership status = Membership::Exterior;
  RationalVector coefficients;
  std::optional<Rational> margin;

  bool interior() const noexcept { return status == Membership::Interior; }
};

// Solves  max t  s.t.  Z c = x,  c >= t.  Written as c = d + t with d, t >= 0;
// t >= 0 loses nothing because any feasible c >= 0 already has t = 0 feasible.
inline MembershipCertificate positive_certificate(const RationalMatrix& z, const RationalVector& x) {
  const std::size_t q = z.rows();
  const std::size_t m = z.cols();
  if (x.size() != q) throw InputError("incidence matrix and point have different dimensions");
  if (sum(x) != 1) throw InputError("point must sum to 1");
  for (const auto& e : x)
    if (e < 0) throw InputError("point has a negative entry");

  RationalMatrix a(q, m + 1);
  for (std::size_t i = 0; i < q; ++i) {
    Rational row_sum;
    for (std::size_t j = 0; j < m; ++j) {
      a(i, j) = z(i, j);
      row_sum += z(i, j);
    }
    a(i, m) = row_sum;
  }
  RationalVector cost(m + 1);
  cost[m] = 1;

  lp::Result r = lp::maximize(a, x, cost);
  if (r.status != lp::Status::Optimal) return {};

  MembershipCertificate cert;
  const Rational t = r.solution[m];
  cert.coefficients.resize(m);
  for (std::size_t j = 0; j < m; ++j) cert.coefficients[j] = r.solution[j] + t;
  cert.margin = t;
  cert.status = t > 0 ? Membership::Interior : Membership::Boundary;
  return cert;
}

inline MembershipCertificate positive_certificate(const IncidenceMatrix& z, const ConcentrationVector& x) {
  return positive_certificate(z.entries, x.entries());
}

// An optimal certificate from the middle of the optimal face: the average of
// the optimal solutions maximizing each coefficient in turn. Same status and
// margin as positive_certificate, but no coefficient sits at the margin
// unless every optimum forces it there.
inline MembershipCertificate spread_certificate(const RationalMatrix& z, const RationalVector& x) {
  MembershipCertificate cert = positive_certificate(z, x);
  if (!cert.interior()) return cert;
  const std::size_t q = z.rows(), m = z.cols();
  const Rational t = *cert.margin;
  RationalVector rest(q);
  for (std::size_t i = 0; i < q; ++i) {
    rest[i] = x[i];
    for (std::size_t j = 0; j < m; ++j) rest[i] -= t * z(i, j);
  }
  RationalVector mean(m);
  for (std::size_t f = 0; f < m; ++f) {
    RationalVector cost(m);
    cost[f] = 1;
    const lp::Result r = lp::maximize(z, rest, cost);
    if (r.status != lp::Status::Optimal) throw Error("spread_certificate: optimal face unexpectedly empty or unbounded");
    for (std::size_t j = 0; j < m; ++j) mean[j] += r.solution[j];
  }
  for (std::size_t j = 0; j < m; ++j) cert.coefficients[j] = mean[j] / Rational(static_cast<long>(m)) + t;
  return cert;
}

inline MembershipCertificate spread_certificate(const IncidenceMatrix& z, const ConcentrationVector& x) {
  return spread_certificate(z.entries, x.entries());
}

// Indices (into the fixed edge order) of I0 u I2.
inline std::vector<std::size_t> extremal_generators(const SkeletonGraph& s) {
  std::vector<std::size_t> out;
  const auto order = s.edge_order();
  for (std::size_t j = 0; j < order.size(); ++j) {
    const Edge& e = order[j];
    if (e.is_loop() || !(s.has_loop(e.a) && s.has_loop(e.b))) out.push_back(j);
  }
  return out;
}

inline void require_connected(const SkeletonGraph& s) {
  auto comps = connected_components(s);
  if (comps.size() != 1) throw DisconnectedSkeleton(std::move(comps));
}

// Condition B holds iff the returned status is Interior.
inline MembershipCertificate condition_B(const StepGraphon& w) {
  const SkeletonGraph s = skeleton(w);
  require_connected(s);
  return positive_certificate(incidence(s), concentration(w.partition()));
}

}  // namespace hdg
