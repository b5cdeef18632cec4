#include "measure.hpp"

#include <algorithm>
#include <charconv>

namespace logiso {

std::uint64_t ramp_component_index(const std::string& id) {
  if (id.size() < 2 || id[0] != 'h') return 0;
  std::uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(id.data() + 1, id.data() + id.size(), n);
  if (ec != std::errc() || ptr != id.data() + id.size()) return 0;
  return n;
}

std::string ramp_component_id(std::uint64_t n) { return "h" + std::to_string(n); }

MeasureSpaceDesc MeasureSpaceDesc::make(SequenceDSL atoms,
                                        std::vector<HomogeneousComponent> components,
                                        std::optional<Scalar> declared_total,
                                        bool declared_infinite) {
  MeasureSpaceDesc s;
  s.atoms_ = atoms.canonical();
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (c.id.empty()) throw Error(Errc::domain, "component id must be non-empty");
    if (i > 0 && components[i - 1].id == c.id)
      throw Error(Errc::domain, "duplicate component id '" + c.id + "'");
    if (!c.mass.is_positive()) throw Error(Errc::domain, "component mass must be positive");
  }
  s.comps_ = std::move(components);
  s.finish(std::move(declared_total), declared_infinite);
  return s;
}

MeasureSpaceDesc MeasureSpaceDesc::make_ramp(SequenceDSL atoms, ComponentRamp ramp,
                                             std::optional<Scalar> declared_total,
                                             bool declared_infinite) {
  if (ramp.masses.is_finite())
    throw Error(Errc::domain, "component ramp requires an infinite mass sequence");
  MeasureSpaceDesc s;
  s.atoms_ = atoms.canonical();
  s.ramp_ = ComponentRamp{ramp.tau_base, ramp.masses.canonical()};
  s.finish(std::move(declared_total), declared_infinite);
  return s;
}

void MeasureSpaceDesc::finish(std::optional<Scalar> declared_total, bool declared_infinite) {
  if (atoms_.empty() && comps_.empty() && !ramp_)
    throw Error(Errc::domain, "measure space needs at least one atom or component");
  declared_infinite_ = declared_infinite;
  Scalar total = atoms_.total();
  for (const auto& c : comps_) total += c.mass;
  if (ramp_) total += ramp_->masses.total();
  total_ = total;
  rational_ = atoms_.all_rational() && (!ramp_ || ramp_->masses.all_rational());
  for (const auto& c : comps_) rational_ = rational_ && c.mass.is_rational();
  if (declared_total) {
    if (declared_infinite)
      throw Error(Errc::domain, "total_mass cannot be both finite and infinite");
    if (!approx_equal(*declared_total, total_))
      throw Error(Errc::domain, "declared total_mass " + declared_total->str() +
                                    " does not match the mass sum " + total_.str());
  }
}

Scalar MeasureSpaceDesc::atom_mass(std::uint64_t k) const {
  if (k == 0) throw Error(Errc::unknown_atom, "atom indices start at 1");
  if (atoms_.is_finite() && k > atoms_.finite_size()) {
    if (declared_infinite_) return Scalar(1);  // shared unit-mass tail
    throw Error(Errc::unknown_atom, "atom " + std::to_string(k) + " not in space");
  }
  return atoms_.term(k);
}

bool MeasureSpaceDesc::has_component(const std::string& id) const {
  if (ramp_) return ramp_component_index(id) != 0;
  auto it = std::lower_bound(comps_.begin(), comps_.end(), id,
                             [](const auto& c, const std::string& key) { return c.id < key; });
  return it != comps_.end() && it->id == id;
}

Scalar MeasureSpaceDesc::component_mass(const std::string& id) const {
  if (ramp_) {
    std::uint64_t n = ramp_component_index(id);
    if (n == 0) throw Error(Errc::unknown_component, "component '" + id + "' not in space");
    return ramp_->masses.term(n);
  }
  auto it = std::lower_bound(comps_.begin(), comps_.end(), id,
                             [](const auto& c, const std::string& key) { return c.id < key; });
  if (it == comps_.end() || it->id != id)
    throw Error(Errc::unknown_component, "component '" + id + "' not in space");
  return it->mass;
}

WeightTag MeasureSpaceDesc::component_tau(const std::string& id) const {
  if (ramp_) {
    std::uint64_t n = ramp_component_index(id);
    if (n == 0) throw Error(Errc::unknown_component, "component '" + id + "' not in space");
    return WeightTag{static_cast<std::uint32_t>(ramp_->tau_base + n)};
  }
  auto it = std::lower_bound(comps_.begin(), comps_.end(), id,
                             [](const auto& c, const std::string& key) { return c.id < key; });
  if (it == comps_.end() || it->id != id)
    throw Error(Errc::unknown_component, "component '" + id + "' not in space");
  return it->tau;
}

void MeasureSpaceDesc::validate_event(const Event& e) const {
  for (std::uint64_t k : e.atoms) atom_mass(k);  // throws UnknownAtom
  for (const auto& [id, sub] : e.comps) {
    Scalar mass = component_mass(id);  // throws UnknownComponent
    if (!sub.is_positive())
      throw Error(Errc::domain, "sub-mass of component '" + id + "' must be positive");
    if (sub > mass && !approx_equal(sub, mass))
      throw Error(Errc::domain, "sub-mass exceeds mass of component '" + id + "'");
  }
}

Scalar MeasureSpaceDesc::measure_of(const Event& e) const {
  validate_event(e);
  Scalar m;
  for (std::uint64_t k : e.atoms) m += atom_mass(k);
  for (const auto& [id, sub] : e.comps) m += sub;
  return m;
}

bool MeasureSpaceDesc::is_probability() const {
  return !declared_infinite_ && approx_equal(total_, Scalar(1));
}

MeasureSpaceDesc MeasureSpaceDesc::normalized() const {
  if (declared_infinite_)
    throw Error(Errc::infinite_mass, "cannot normalize a space of infinite total mass");
  if (approx_equal(total_, Scalar(1))) return *this;
  Scalar inv = Scalar(1) / total_;
  MeasureSpaceDesc s;
  s.atoms_ = atoms_.empty() ? atoms_ : atoms_.scaled(inv);
  s.comps_ = comps_;
  for (auto& c : s.comps_) c.mass *= inv;
  if (ramp_) s.ramp_ = ComponentRamp{ramp_->tau_base, ramp_->masses.scaled(inv)};
  s.finish(std::nullopt, false);
  return s;
}

// ---------------------------------------------------------------------------

void RNDerivative::certify() {
  bounded_ = true;
  part_ = Part::none;
  if (atom_seq_ && !atom_seq_->analysis().bounded) {
    bounded_ = false;
    part_ = Part::atoms;
    return;
  }
  if (comp_seq_ && !comp_seq_->analysis().bounded) {
    bounded_ = false;
    part_ = Part::components;
    return;
  }
  Scalar sup(0);
  for (const Frac& f : atom_fracs_) sup = max(sup, f.value());
  for (const Frac& f : comp_fracs_) sup = max(sup, f.value());
  if (unit_tail_) sup = max(sup, Scalar(1));
  if (atom_seq_) sup = max(sup, atom_seq_->analysis().sup);
  if (comp_seq_) sup = max(sup, comp_seq_->analysis().sup);
  sup_ = sup;
}

std::uint64_t RNDerivative::witness(double M) const {
  return unbounded_seq().witness(M);
}

const RatioSeq& RNDerivative::unbounded_seq() const {
  if (part_ == Part::atoms) return *atom_seq_;
  if (part_ == Part::components) return *comp_seq_;
  throw Error(Errc::derivative_bounded, "derivative is bounded");
}

Frac RNDerivative::at_atom(std::uint64_t k) const {
  if (k == 0) throw Error(Errc::unknown_atom, "atom indices start at 1");
  if (atom_seq_) return atom_seq_->frac_at(k);
  if (k <= atom_fracs_.size()) return atom_fracs_[k - 1];
  if (unit_tail_) return Frac{Scalar(1), Scalar(1)};
  throw Error(Errc::unknown_atom, "atom " + std::to_string(k) + " not in derivative");
}

Frac RNDerivative::at_component(const std::string& id) const {
  if (comp_seq_) {
    std::uint64_t n = ramp_component_index(id);
    if (n == 0) throw Error(Errc::unknown_component, "component '" + id + "' not in derivative");
    return comp_seq_->frac_at(n);
  }
  auto it = std::lower_bound(comp_ids_.begin(), comp_ids_.end(), id);
  if (it == comp_ids_.end() || *it != id)
    throw Error(Errc::unknown_component, "component '" + id + "' not in derivative");
  return comp_fracs_[static_cast<std::size_t>(it - comp_ids_.begin())];
}

RNDerivative RNDerivative::reciprocal() const {
  RNDerivative d;
  d.atom_fracs_.reserve(atom_fracs_.size());
  for (const Frac& f : atom_fracs_) d.atom_fracs_.push_back(f.reciprocal());
  if (atom_seq_) d.atom_seq_ = atom_seq_->reciprocal();
  d.comp_ids_ = comp_ids_;
  d.comp_fracs_.reserve(comp_fracs_.size());
  for (const Frac& f : comp_fracs_) d.comp_fracs_.push_back(f.reciprocal());
  if (comp_seq_) d.comp_seq_ = comp_seq_->reciprocal();
  d.unit_tail_ = unit_tail_;
  d.certify();
  return d;
}

RNDerivative rn_derivative(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu) {
  if (mu.declared_infinite() != nu.declared_infinite())
    throw Error(Errc::algebra_mismatch, "one space is declared infinite, the other is not");
  RNDerivative d;
  // Atoms.
  if (mu.has_atoms() != nu.has_atoms())
    throw Error(Errc::algebra_mismatch, "atom parts differ");
  if (mu.has_atoms()) {
    if (mu.atoms_infinite() != nu.atoms_infinite())
      throw Error(Errc::algebra_mismatch, "atom index sets have different cardinality");
    if (mu.atoms_infinite()) {
      d.atom_seq_ = RatioSeq(nu.atoms(), mu.atoms());
    } else {
      if (mu.atoms().finite_size() != nu.atoms().finite_size())
        throw Error(Errc::algebra_mismatch, "atom index sets have different size");
      for (std::uint64_t k = 1; k <= mu.atoms().finite_size(); ++k)
        d.atom_fracs_.push_back(Frac{nu.atom_mass(k), mu.atom_mass(k)});
    }
  }
  // Components.
  if (mu.has_ramp() != nu.has_ramp())
    throw Error(Errc::algebra_mismatch, "component parts have different shape");
  if (mu.has_ramp()) {
    if (mu.ramp().tau_base != nu.ramp().tau_base)
      throw Error(Errc::algebra_mismatch, "component weight ramps differ");
    d.comp_seq_ = RatioSeq(nu.ramp_masses(), mu.ramp_masses());
  } else {
    const auto& mc = mu.components();
    const auto& nc = nu.components();
    if (mc.size() != nc.size())
      throw Error(Errc::algebra_mismatch, "component lists have different size");
    for (std::size_t i = 0; i < mc.size(); ++i) {
      if (mc[i].id != nc[i].id || mc[i].tau != nc[i].tau)
        throw Error(Errc::algebra_mismatch, "component '" + mc[i].id + "' mismatch");
      d.comp_ids_.push_back(mc[i].id);
      d.comp_fracs_.push_back(Frac{nc[i].mass, mc[i].mass});
    }
  }
  d.unit_tail_ = mu.declared_infinite();
  d.certify();
  return d;
}

RNDerivative rn_from_rule(const MeasureSpaceDesc& mu, const RatioRule& rule) {
  RNDerivative d;
  RatioSeq seq = RatioSeq::from_rule(rule);
  if (seq.is_finite())
    throw Error(Errc::domain, "ratio rule must describe an infinite sequence");
  if (mu.atoms_infinite()) {
    d.atom_seq_ = std::move(seq);
  } else if (mu.has_ramp()) {
    d.comp_seq_ = std::move(seq);
  } else {
    throw Error(Errc::domain, "rule-based derivative needs an infinite atom or component sequence");
  }
  d.unit_tail_ = mu.declared_infinite();
  d.certify();
  return d;
}

}  // namespace logiso
