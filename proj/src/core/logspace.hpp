#pragma once

#include <complex>
#include <memory>

#include "measure.hpp"

namespace logiso {

// Value of one cell. Ordinary cells hold a complex number; cells built as
// exp(ell)-1 for a nonnegative ell keep ell itself, so norms stay exact even
// when the pointwise value overflows double.
class Coeff {
 public:
  Coeff() : z_(0.0, 0.0), ell_(0) {}
  static Coeff from_complex(std::complex<double> z);
  static Coeff from_log1p(Scalar ell);

  std::complex<double> value() const { return z_; }
  bool value_finite() const;
  // log(1 + |value|); exact for log-domain cells.
  const Scalar& log1p_abs() const { return ell_; }
  bool log_domain() const { return log_domain_; }
  bool is_zero() const;

  friend bool operator==(const Coeff& a, const Coeff& b);

 private:
  std::complex<double> z_;
  Scalar ell_;
  bool log_domain_ = false;
};

struct AtomCell {
  std::uint64_t atom;
  Coeff c;
};

// A piece of one homogeneous component. Pieces of the same component are laid
// out left to right in cell order starting at the component's origin; only
// the sub-mass is stored.
struct CompCell {
  std::string comp;
  Scalar submass;
  Coeff c;
};

// Continuation data for the divergence construction of inclusion_check: past
// the materialized cells, step k sits on cell n_k with log(1+|f|) equal to
// 1/(k^2 * mu(n_k)), where the n_k are drawn from the unbounded ratio.
struct WitnessTail {
  SequenceDSL mu_masses = SequenceDSL::finite({});
  std::shared_ptr<const RatioSeq> ratio;
  bool on_atoms = true;
  std::uint64_t count = 0;       // materialized steps
  std::uint64_t last_index = 0;  // n_count
};

// Finite complex step function over disjoint cells, optionally extended with
// a per-atom coefficient sequence (dsl support) or a witness tail.
class SimpleFunction {
 public:
  SimpleFunction() = default;
  static SimpleFunction zero() { return SimpleFunction(); }
  static SimpleFunction from_cells(const std::vector<std::pair<Event, Coeff>>& cells,
                                   const MeasureSpaceDesc& space);
  static SimpleFunction indicator(const Event& e, const MeasureSpaceDesc& space);
  // f = sum_k coeffs(k) * chi_{atom k} over every atom of the space.
  static SimpleFunction with_dsl_support(SequenceDSL coeffs);

  bool is_zero() const { return atom_cells_.empty() && comp_cells_.empty() && !dsl_ && !tail_; }
  const std::vector<AtomCell>& atom_cells() const { return atom_cells_; }
  const std::vector<CompCell>& comp_cells() const { return comp_cells_; }
  bool has_dsl() const { return dsl_.has_value(); }
  const SequenceDSL& dsl_coeffs() const { return *dsl_; }
  bool has_tail() const { return tail_.has_value(); }
  const WitnessTail& tail() const { return *tail_; }
  bool finite_support() const { return !dsl_ && !tail_; }
  std::size_t cell_count() const { return atom_cells_.size() + comp_cells_.size(); }

  void validate(const MeasureSpaceDesc& space) const;

  friend bool operator==(const SimpleFunction& a, const SimpleFunction& b);
  friend class FunctionBuilder;

 private:
  std::vector<AtomCell> atom_cells_;  // sorted by atom index
  std::vector<CompCell> comp_cells_;  // grouped by component id, interval order
  std::optional<SequenceDSL> dsl_;
  std::optional<WitnessTail> tail_;
};

// Internal assembly helper that keeps the packing invariants.
class FunctionBuilder {
 public:
  void add_atom(std::uint64_t atom, Coeff c);
  void add_comp(const std::string& comp, Scalar submass, Coeff c);
  void set_tail(WitnessTail t) { tail_ = std::move(t); }
  SimpleFunction finish();

 private:
  std::vector<AtomCell> atoms_;
  std::map<std::string, std::vector<CompCell>> comps_;
  std::optional<WitnessTail> tail_;
};

// Divergence evidence: the lower-bound partial sums grow without bound.
struct DivergenceData {
  SequenceDSL mu_masses = SequenceDSL::finite({});
  std::shared_ptr<const RatioSeq> selection;  // ratio the indices n_k are drawn from
  std::shared_ptr<const RatioSeq> sigma;      // query-measure / mu cellwise ratio
  double offset = 0.0;                        // contribution of materialized cells
  std::uint64_t start_k = 1;                  // first continuation step
  std::uint64_t start_index = 0;              // n_{start_k - 1}
};

struct LogNormResult {
  bool finite = true;
  double value = 0.0;
  std::vector<double> partial_sums;  // nondecreasing; recorded for infinite support
  double tail_bound = 0.0;           // bound on value minus the last partial sum
  std::shared_ptr<const DivergenceData> divergence;  // set when !finite
};

// K-th lower-bound partial sum of a divergent norm.
double divergence_lower_bound(const LogNormResult& r, std::uint64_t K);
// Smallest K <= K_max whose lower bound exceeds target; 0 when not reached.
std::uint64_t divergence_crossing(const LogNormResult& r, double target, std::uint64_t K_max);

// integral of log(1+|f|) d(space), natural logarithm, compensated summation
// in canonical cell order.
LogNormResult log_fnorm(const SimpleFunction& f, const MeasureSpaceDesc& space);
// Same norm in logarithm base b: exactly the natural value divided by ln b.
LogNormResult log_fnorm_base(const SimpleFunction& f, const MeasureSpaceDesc& space, double base);
double fnorm_metric(const SimpleFunction& f, const SimpleFunction& g,
                    const MeasureSpaceDesc& space);

struct MembershipResult {
  bool yes;
  LogNormResult norm;
};
MembershipResult is_log_integrable(const SimpleFunction& f, const MeasureSpaceDesc& space);

// *-algebra operations on the common refinement of two cell systems.
SimpleFunction add(const SimpleFunction& f, const SimpleFunction& g,
                   const MeasureSpaceDesc& space);
SimpleFunction subtract(const SimpleFunction& f, const SimpleFunction& g,
                        const MeasureSpaceDesc& space);
SimpleFunction multiply(const SimpleFunction& f, const SimpleFunction& g,
                        const MeasureSpaceDesc& space);
SimpleFunction scalar_multiply(std::complex<double> alpha, const SimpleFunction& f);
SimpleFunction involution(const SimpleFunction& f);
SimpleFunction abs_function(const SimpleFunction& f);
SimpleFunction log1p_abs_function(const SimpleFunction& f);
std::complex<double> integral(const SimpleFunction& f, const MeasureSpaceDesc& space);

// Evaluation of f (cells calibrated to `home`) against another measure on the
// same algebra: component sub-masses rescale by the cellwise mass ratio.
std::complex<double> integral_under(const SimpleFunction& f, const MeasureSpaceDesc& home,
                                    const MeasureSpaceDesc& measure);
double log_fnorm_under(const SimpleFunction& f, const MeasureSpaceDesc& home,
                       const MeasureSpaceDesc& measure);

// Pointwise 0 <= f <= g on the common refinement (both real and nonnegative).
bool dominated(const SimpleFunction& f, const SimpleFunction& g, const MeasureSpaceDesc& space);

struct Counterexample {
  SimpleFunction f;                     // truncation to the first K cells, with tail marker
  std::vector<double> mu_partials;      // k-th entry: mu-norm of the first k cells
  std::vector<double> nu_lower_bounds;  // k-th entry: nu-norm of the first k cells
  std::vector<std::uint64_t> indices;   // selected cell indices n_k
};

// The divergence construction: f = exp(g) - 1 for the step function g with
// g = 1/(k^2 mu(A_k)) on the k-th selected cell. Requires an unbounded
// derivative; throws DerivativeBounded otherwise.
Counterexample build_counterexample(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu,
                                    std::uint64_t K);
Counterexample counterexample_from_derivative(const MeasureSpaceDesc& mu, const RNDerivative& d,
                                              std::uint64_t K);

struct InclusionResult {
  bool included;
  Scalar sup;  // certificate when included
  std::shared_ptr<const RNDerivative> derivative;
};
// L_log(mu) subset of L_log(nu), decided by boundedness of d(nu)/d(mu).
InclusionResult inclusion_check(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu);

enum class NotEqualDirection {
  mu_not_in_nu,  // L_log(mu) not a subset of L_log(nu)
  nu_not_in_mu,
};
struct EqualityResult {
  bool equal;
  Scalar sup_forward;   // ess sup d(nu)/d(mu) when equal
  Scalar sup_backward;  // ess sup d(mu)/d(nu) when equal
  NotEqualDirection failing = NotEqualDirection::mu_not_in_nu;
  std::shared_ptr<const RNDerivative> witness;  // the unbounded derivative
};
EqualityResult equality_check(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu);

}  // namespace logiso
