#pragma once

#include "logspace.hpp"
#include "passport.hpp"

namespace logiso {

// Index-aligned pairing of two passports with coinciding upper rows: row n of
// the source corresponds to row n of the target, atoms pair index to index in
// the sorted (descending-mass) order.
struct ComponentMap {
  Passport source;
  Passport target;
};

// Throws RowMismatch when the upper rows (or atomic classes) differ.
ComponentMap build_pairing(const Passport& p1, const Passport& p2);

// The induced map on simple functions over the canonical passport spaces:
// cells are relabeled along the pairing, coefficients are unchanged,
// component sub-masses rescale proportionally to the paired row masses.
struct StarIso {
  ComponentMap map;
  bool inverted = false;
};

inline StarIso star_iso(ComponentMap map) { return StarIso{std::move(map), false}; }
inline StarIso inverse(const StarIso& iso) { return StarIso{iso.map, !iso.inverted}; }

SimpleFunction apply_phi(const StarIso& iso, const SimpleFunction& f);

// gamma(q) = sum_n (mu_n / nu_n) nu(q_n q): the probability measure on the
// target algebra whose passport coincides with the source passport. Events
// are measured in nu-calibrated units.
class GammaMeasure {
 public:
  GammaMeasure(Passport p_mu, Passport p_nu, MeasureSpaceDesc nu_space);

  Scalar measure_of(const Event& e) const;
  Scalar total() const { return gamma_space_.total_mass(); }
  // gamma as a mass description over the target cells (block masses mu_n).
  const MeasureSpaceDesc& as_space() const { return gamma_space_; }
  const MeasureSpaceDesc& nu_space() const { return nu_space_; }

  RNDerivative dgamma_dnu() const;
  RNDerivative dnu_dgamma() const;
  Frac scale_component(const std::string& id) const;  // mu_n / nu_n on the row of id
  Frac scale_atom(std::uint64_t k) const;

 private:
  Passport p_mu_, p_nu_;
  MeasureSpaceDesc nu_space_;
  MeasureSpaceDesc gamma_space_;
};

// Requires log_iso_decision(p_mu, p_nu) = yes; throws RatioUnbounded otherwise.
GammaMeasure build_gamma(const Passport& p_mu, const Passport& p_nu, const ComponentMap& pairing,
                         const MeasureSpaceDesc& nu_space);

// Checks Phi(log(1+|f|)) = log(1+|Phi(f)|) cellwise; the two sides reduce to
// the same relabeled cells, so the discrepancy must be exactly zero.
struct CommutationReport {
  double max_discrepancy = 0.0;
  std::size_t cells_checked = 0;
};
CommutationReport verify_log_commutation(const StarIso& iso, const SimpleFunction& f);

enum class TransportTarget { pushforward, gamma };

// Checks the transport identities integral(f) d mu = integral(Phi f) d target
// and |f|_mu = |Phi f|_target for the pushforward measure (lambda(phi(e)) =
// mu(e)) or the gamma measure.
struct TransportReport {
  double integral_discrepancy = 0.0;
  double norm_discrepancy = 0.0;
  double integral_mu_re = 0.0;
  double integral_mu_im = 0.0;
  double norm_mu = 0.0;
  bool ok = false;  // both discrepancies within 1e-9
};
TransportReport verify_transport(const StarIso& iso, const SimpleFunction& f,
                                 const MeasureSpaceDesc& mu_space, TransportTarget target);

// The pushforward of the source masses along the pairing, as a measure
// description over the target cells.
MeasureSpaceDesc pushforward_space(const ComponentMap& map);

// Explicit component pairing between two general spaces (for the sigma-finite
// route, where the passport decision does not apply).
struct SpacePairing {
  std::vector<std::pair<std::string, std::string>> comp_pairs;  // from-id -> to-id
};

// True when nu and the pushforward mu.phi are log-equivalent over the target
// algebra, i.e. both Radon-Nikodym derivatives are essentially bounded.
bool log_equivalent_decision(const MeasureSpaceDesc& mu_space, const MeasureSpaceDesc& nu_space,
                             const SpacePairing& pairing);

// Deterministic generator for verification commands: a finite function with
// nonempty cells over the listed (or leading) cells of the space.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0,1)
 private:
  std::uint64_t state_;
};

SimpleFunction random_simple_function(const MeasureSpaceDesc& space, SplitMix64& rng,
                                      std::size_t max_cells = 8);

}  // namespace logiso
