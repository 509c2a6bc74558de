#include "skapid/pid.hpp"

#include <algorithm>
#include <cmath>

#include "skapid/gacs_korner.hpp"
#include "skapid/marginal.hpp"
#include "skapid/shannon.hpp"

namespace skapid {

std::string_view to_string(PidScheme scheme) noexcept {
  switch (scheme) {
    case PidScheme::NoComm: return "none";
    case PidScheme::CamelOneWay: return "camel";
    case PidScheme::ElephantOneWay: return "elephant";
    case PidScheme::TwoWay: return "two-way";
    case PidScheme::Broja: return "broja";
  }
  return "unknown";
}

PidScheme parse_scheme(std::string_view name) {
  if (name == "none" || name == "no-comm") return PidScheme::NoComm;
  if (name == "camel") return PidScheme::CamelOneWay;
  if (name == "elephant") return PidScheme::ElephantOneWay;
  if (name == "two-way") return PidScheme::TwoWay;
  if (name == "broja") return PidScheme::Broja;
  throw Error(ErrorKind::InvalidArgument, "unknown scheme '" + std::string(name) + "'");
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Raises values in (-tol, 0) to zero; more negative values are reported to
// the caller.
bool settle(Interval& x, double tol, bool& clamped) {
  if (x.lo < -tol) return false;
  if (x.lo < 0.0) {
    x.lo = 0.0;
    clamped = true;
  }
  if (x.hi < 0.0) x.hi = 0.0;
  return true;
}

void finish(PidComponents& r, double tol) {
  bool ok = true;
  for (Interval* x : {&r.redundancy, &r.unique_0, &r.unique_1, &r.synergy}) {
    ok = settle(*x, tol, r.clamped) && ok;
  }
  if (!ok) {
    r.consistent = false;
    throw InconsistentDecomposition("a component is negative beyond tolerance " + fmt(tol), r);
  }
}

}  // namespace

PidComponents assemble(double unique_0, double unique_1, double mi_0, double mi_1, double mi_joint,
                       double tol, PidScheme scheme) {
  for (double v : {unique_0, unique_1, mi_0, mi_1, mi_joint}) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite PID input");
  }
  PidComponents r;
  r.scheme = scheme;
  r.mi_0 = mi_0;
  r.mi_1 = mi_1;
  r.mi_joint = mi_joint;
  r.unique_0 = Interval::point(unique_0);
  r.unique_1 = Interval::point(unique_1);
  r.redundancy_via_0 = Interval::point(mi_0 - unique_0);
  r.redundancy_via_1 = Interval::point(mi_1 - unique_1);
  r.residual = std::abs(unique_0 + mi_1 - unique_1 - mi_0);
  if (r.residual > tol) {
    throw InconsistentDecomposition("candidate redundancies " + fmt(r.redundancy_via_0.lo) +
                                        " and " + fmt(r.redundancy_via_1.lo) + " disagree",
                                    r);
  }
  r.consistent = true;
  r.redundancy = r.redundancy_via_0;
  r.synergy = Interval::point(mi_joint - mi_1 - unique_0);
  finish(r, tol);
  return r;
}

PidComponents assemble_bounds(const RateBounds& unique_0, const RateBounds& unique_1, double mi_0,
                              double mi_1, double mi_joint, double tol) {
  PidComponents r;
  r.scheme = PidScheme::TwoWay;
  r.mi_0 = mi_0;
  r.mi_1 = mi_1;
  r.mi_joint = mi_joint;
  r.unique_0 = {unique_0.lower, unique_0.upper};
  r.unique_1 = {unique_1.lower, unique_1.upper};
  r.redundancy_via_0 = {mi_0 - unique_0.upper, mi_0 - unique_0.lower};
  r.redundancy_via_1 = {mi_1 - unique_1.upper, mi_1 - unique_1.lower};

  // Consistency requires U0 - U1 = I(S0:T) - I(S1:T) for some U0, U1 inside
  // their bounds. Nonnegative redundancy and synergy further cap U0.
  const double shift = mi_0 - mi_1;
  double lo = std::max(unique_0.lower, unique_1.lower + shift);
  double hi = std::min({unique_0.upper, unique_1.upper + shift, mi_0, mi_joint - mi_1});
  r.residual = std::max(0.0, lo - hi);
  if (r.residual > tol) {
    throw InconsistentDecomposition("no point in the unique-information bounds satisfies "
                                    "consistency (gap " + fmt(r.residual) + ")",
                                    r);
  }
  if (lo > hi) lo = hi = 0.5 * (lo + hi);
  r.consistent = true;
  r.unique_0 = {lo, hi};
  r.unique_1 = {lo - shift, hi - shift};
  r.redundancy = {mi_0 - hi, mi_0 - lo};
  r.synergy = {mi_joint - mi_1 - hi, mi_joint - mi_1 - lo};
  finish(r, tol);
  return r;
}

PidComponents decompose(const JointDistribution& d, const PidRoles& roles, PidScheme scheme,
                        const OptimizerConfig& cfg, std::optional<double> tol) {
  const VarSet s0{roles.source_0}, s1{roles.source_1}, t{roles.target};
  require_disjoint({&s0, &s1, &t});
  const double mi_0 = mutual_information(d, s0, t);
  const double mi_1 = mutual_information(d, s1, t);
  const double mi_joint = mutual_information(d, {roles.source_0, roles.source_1}, t);
  const double eps = tol.value_or(scheme == PidScheme::Broja ? kBrojaConsistencyTol
                                                             : kDefaultConsistencyTol);

  switch (scheme) {
    case PidScheme::NoComm:
      return assemble(skar_no_comm(d, s0, t, s1), skar_no_comm(d, s1, t, s0), mi_0, mi_1, mi_joint,
                      eps, scheme);
    case PidScheme::CamelOneWay:
    case PidScheme::ElephantOneWay: {
      const bool camel = scheme == PidScheme::CamelOneWay;
      const auto r0 = camel ? skar_one_way(d, s0, t, s1, cfg) : skar_one_way(d, t, s0, s1, cfg);
      const auto r1 = camel ? skar_one_way(d, s1, t, s0, cfg) : skar_one_way(d, t, s1, s0, cfg);
      const bool converged = r0.converged && r1.converged;
      try {
        auto r = assemble(r0.value, r1.value, mi_0, mi_1, mi_joint, eps, scheme);
        r.converged = converged;
        return r;
      } catch (const InconsistentDecomposition& ex) {
        auto partial = ex.partial();
        partial.converged = converged;
        throw InconsistentDecomposition(ex.detail(), partial);
      }
    }
    case PidScheme::TwoWay: {
      const auto r0 = skar_two_way_bounds(d, s0, t, s1, cfg);
      const auto r1 = skar_two_way_bounds(d, s1, t, s0, cfg);
      const bool converged = r0.converged() && r1.converged();
      try {
        auto r = assemble_bounds(r0.bounds, r1.bounds, mi_0, mi_1, mi_joint, eps);
        r.converged = converged;
        return r;
      } catch (const InconsistentDecomposition& ex) {
        auto partial = ex.partial();
        partial.converged = converged;
        throw InconsistentDecomposition(ex.detail(), partial);
      }
    }
    case PidScheme::Broja: {
      auto result = broja_minimize(d, roles, cfg);
      if (tol && *tol != kBrojaConsistencyTol) {
        const double u0 = result.pid.unique_0.lo;
        const double u1 = result.pid.unique_1.lo;
        auto r = assemble(u0, u1, mi_0, mi_1, mi_joint, *tol, scheme);
        r.converged = result.converged;
        return r;
      }
      return result.pid;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unhandled scheme");
}

CmiIdentityReport cmi_identity_report(const JointDistribution& d, const PidRoles& roles,
                                      const PidComponents& pid) {
  const VarSet s0{roles.source_0}, s1{roles.source_1}, t{roles.target};
  CmiIdentityReport r;
  r.cmi_0 = conditional_mutual_information(d, s0, t, s1);
  r.cmi_1 = conditional_mutual_information(d, s1, t, s0);
  // Within a consistent decomposition Ui + S is the same for every admissible
  // point, so pairing the lower unique with the upper synergy is exact.
  r.defect_0 = r.cmi_0 - (pid.unique_0.lo + pid.synergy.hi);
  r.defect_1 = r.cmi_1 - (pid.unique_1.lo + pid.synergy.hi);
  return r;
}

}  // namespace skapid
