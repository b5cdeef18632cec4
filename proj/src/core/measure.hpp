#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sequence.hpp"

namespace logiso {

// Opaque ordered stand-in for the weight of a homogeneous component: 0 is the
// countable weight, k the k-th uncountable one. The library only ever
// compares these tags; it never computes a density character.
struct WeightTag {
  std::uint32_t index = 0;
  friend auto operator<=>(const WeightTag&, const WeightTag&) = default;
};

struct HomogeneousComponent {
  std::string id;
  WeightTag tau;
  Scalar mass;
};

// Infinitely many components with strictly increasing weights: component n
// has tau = tau_base + n, mass = masses(n) and synthetic id "h<n>".
struct ComponentRamp {
  std::uint32_t tau_base = 0;
  SequenceDSL masses = SequenceDSL::finite({});
};

// A sub-element of the algebra: finitely many atoms plus, per homogeneous
// component, a sub-piece identified by its measure. Pieces of one component
// used by a single function are laid out left to right in cell order, which
// fixes the common refinement of two functions.
struct Event {
  std::set<std::uint64_t> atoms;          // 1-based atom indices
  std::map<std::string, Scalar> comps;    // component id -> sub-mass
  bool empty() const { return atoms.empty() && comps.empty(); }

  static Event atom(std::uint64_t k) {
    Event e;
    e.atoms.insert(k);
    return e;
  }
  static Event component(std::string id, Scalar submass) {
    Event e;
    e.comps.emplace(std::move(id), std::move(submass));
    return e;
  }
};

// Finitely presented sigma-finite measure algebra: an atom sequence plus
// homogeneous components (an explicit list or a tau ramp). A space declared
// infinite carries, beyond the listed cells, a countable shared tail of
// unit-mass atoms; that convention gives the sigma-finite infinite-mass flag
// concrete semantics while every listed computation stays finite.
class MeasureSpaceDesc {
 public:
  static MeasureSpaceDesc make(SequenceDSL atoms, std::vector<HomogeneousComponent> components,
                               std::optional<Scalar> declared_total = std::nullopt,
                               bool declared_infinite = false);
  static MeasureSpaceDesc make_ramp(SequenceDSL atoms, ComponentRamp ramp,
                                    std::optional<Scalar> declared_total = std::nullopt,
                                    bool declared_infinite = false);

  const SequenceDSL& atoms() const { return atoms_; }
  bool atoms_infinite() const { return !atoms_.is_finite(); }
  bool has_atoms() const { return !atoms_.empty(); }
  Scalar atom_mass(std::uint64_t k) const;

  bool has_ramp() const { return ramp_.has_value(); }
  const ComponentRamp& ramp() const { return *ramp_; }
  const std::vector<HomogeneousComponent>& components() const { return comps_; }
  bool has_components() const { return ramp_.has_value() || !comps_.empty(); }

  // Component lookup by id ("h<n>" for ramp components).
  Scalar component_mass(const std::string& id) const;
  WeightTag component_tau(const std::string& id) const;
  bool has_component(const std::string& id) const;

  bool declared_infinite() const { return declared_infinite_; }
  // Total of the listed cells (the measure of the unit when not declared infinite).
  const Scalar& total_mass() const { return total_; }
  bool is_probability() const;
  bool rational_mode() const { return rational_; }

  Scalar measure_of(const Event& e) const;
  void validate_event(const Event& e) const;
  MeasureSpaceDesc normalized() const;

  // Mass sequence of the ramp components ("h<n>" indexing); atoms() for atoms.
  const SequenceDSL& ramp_masses() const { return ramp_->masses; }

 private:
  MeasureSpaceDesc() : atoms_(SequenceDSL::finite({})) {}
  void finish(std::optional<Scalar> declared_total, bool declared_infinite);

  SequenceDSL atoms_;
  std::vector<HomogeneousComponent> comps_;  // sorted by id, ids unique
  std::optional<ComponentRamp> ramp_;
  bool declared_infinite_ = false;
  Scalar total_;
  bool rational_ = true;
};

// Parses "h<n>" ramp component ids; returns 0 when the id has another shape.
std::uint64_t ramp_component_index(const std::string& id);
std::string ramp_component_id(std::uint64_t n);

// Piecewise-constant Radon-Nikodym derivative d(nu)/d(mu) with a boundedness
// certificate. Cell ratios are kept as unevaluated fractions so the cellwise
// product with the reciprocal derivative is exactly one in both numeric modes.
class RNDerivative {
 public:
  enum class Part { atoms, components, none };

  bool bounded() const { return bounded_; }
  // Least upper bound of all cell ratios (bounded case).
  const Scalar& sup() const { return sup_; }
  // Smallest cell index with ratio > M within the unbounded part.
  std::uint64_t witness(double M) const;
  Part unbounded_part() const { return part_; }

  Frac at_atom(std::uint64_t k) const;
  Frac at_component(const std::string& id) const;

  RNDerivative reciprocal() const;

  bool has_atom_seq() const { return atom_seq_.has_value(); }
  const RatioSeq& atom_seq() const { return *atom_seq_; }
  bool has_comp_seq() const { return comp_seq_.has_value(); }
  const RatioSeq& comp_seq() const { return *comp_seq_; }
  const std::vector<Frac>& atom_fracs() const { return atom_fracs_; }
  const std::vector<Frac>& comp_fracs() const { return comp_fracs_; }
  const std::vector<std::string>& comp_ids() const { return comp_ids_; }
  bool unit_tail() const { return unit_tail_; }
  // The ratio sequence of the unbounded part.
  const RatioSeq& unbounded_seq() const;

  friend RNDerivative rn_derivative(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu);
  friend RNDerivative rn_from_rule(const MeasureSpaceDesc& mu, const RatioRule& rule);

 private:
  RNDerivative() = default;
  void certify();

  std::vector<Frac> atom_fracs_;
  std::optional<RatioSeq> atom_seq_;
  std::vector<Frac> comp_fracs_;
  std::vector<std::string> comp_ids_;
  std::optional<RatioSeq> comp_seq_;
  bool unit_tail_ = false;
  bool bounded_ = true;
  Scalar sup_;
  Part part_ = Part::none;
};

// d(nu)/d(mu) for two measures presented over the same algebra. Both
// presentations must match cell for cell (same atom index set, same component
// ids and weights); masses are what may differ.
RNDerivative rn_derivative(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu);

// Derivative given directly by a ratio rule over mu's infinite cell sequence
// (atoms when present, ramp components otherwise). This admits instances such
// as d(nu)/d(mu) = n whose nu has no closed-form mass presentation.
RNDerivative rn_from_rule(const MeasureSpaceDesc& mu, const RatioRule& rule);

}  // namespace logiso
