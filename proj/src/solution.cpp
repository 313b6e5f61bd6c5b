#include "ug/solution.hpp"

#include <stdexcept>

namespace ug {

std::string to_string(SdpFlavor f) {
  switch (f) {
    case SdpFlavor::Standard: return "standard";
    case SdpFlavor::Crude: return "crude";
    case SdpFlavor::ShiftInvariant: return "shift-invariant";
  }
  return "unknown";
}

SdpFlavor flavor_from_string(const std::string& s) {
  if (s == "standard") return SdpFlavor::Standard;
  if (s == "crude") return SdpFlavor::Crude;
  if (s == "shift-invariant" || s == "shift") return SdpFlavor::ShiftInvariant;
  throw std::invalid_argument("unknown SDP flavor: " + s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
  return s;
}

double sqdist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    double diff = a[t] - b[t];
    s += diff * diff;
  }
  return s;
}

double sqnorm(std::span<const double> a) { return dot(a, a); }

double edge_length(const VectorSolution& sol, const UGInstance& inst, int e) {
  if (sol.n != inst.n || sol.k != inst.k)
    throw std::invalid_argument("edge_length: solution does not match instance");
  const auto& ed = inst.edges[static_cast<std::size_t>(e)];
  double s = 0.0;
  for (int i = 0; i < inst.k; ++i)
    s += sqdist(sol.vec(ed.u, i),
                sol.vec(ed.v, ed.perm[static_cast<std::size_t>(i)]));
  return 0.5 * s;
}

}  // namespace ug
