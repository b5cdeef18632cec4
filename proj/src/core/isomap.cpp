#include "isomap.hpp"

#include <algorithm>
#include <cmath>

namespace logiso {

namespace {

struct Kahan {
  double s = 0.0, c = 0.0;
  void add(double t) {
    double y = t - c;
    double u = s + y;
    c = (u - s) - y;
    s = u;
  }
};

std::uint64_t require_row_index(const Passport& p, const std::string& id) {
  std::uint64_t n = ramp_component_index(id);
  if (n == 0) throw Error(Errc::unknown_component, "component '" + id + "' is not a row cell");
  if (!p.has_ramp() && n > p.rows().size())
    throw Error(Errc::unknown_component, "row " + std::to_string(n) + " out of range");
  return n;
}

}  // namespace

ComponentMap build_pairing(const Passport& p1, const Passport& p2) {
  if (!same_upper_row(p1, p2))
    throw Error(Errc::row_mismatch, "upper rows of the passports do not coincide");
  return ComponentMap{p1, p2};
}

SimpleFunction apply_phi(const StarIso& iso, const SimpleFunction& f) {
  const Passport& src = iso.inverted ? iso.map.target : iso.map.source;
  const Passport& dst = iso.inverted ? iso.map.source : iso.map.target;
  if (!f.finite_support())
    throw Error(Errc::domain, "the induced map acts on finite-support functions");
  FunctionBuilder b;
  for (const AtomCell& c : f.atom_cells()) b.add_atom(c.atom, c.c);
  for (const CompCell& c : f.comp_cells()) {
    std::uint64_t n = require_row_index(src, c.comp);
    Scalar scaled = c.submass * dst.row_mass(n) / src.row_mass(n);
    b.add_comp(c.comp, std::move(scaled), c.c);
  }
  return b.finish();
}

// ---------------------------------------------------------------------------
// GammaMeasure

GammaMeasure::GammaMeasure(Passport p_mu, Passport p_nu, MeasureSpaceDesc nu_space)
    : p_mu_(p_mu.normalized()), p_nu_(p_nu.normalized()), nu_space_(nu_space.normalized()),
      gamma_space_(nu_space_) {
  Passport check = extract_passport(nu_space_);
  if (!same_upper_row(check, p_nu_))
    throw Error(Errc::algebra_mismatch, "nu_space does not realize the target passport");
  // Replace each cell's nu-mass by its gamma-mass (mu_n / nu_n times it).
  if (nu_space_.has_ramp()) {
    gamma_space_ = MeasureSpaceDesc::make_ramp(
        p_mu_.atoms(), ComponentRamp{nu_space_.ramp().tau_base, p_mu_.row_masses()});
  } else {
    std::vector<HomogeneousComponent> comps;
    for (const HomogeneousComponent& c : nu_space_.components()) {
      Frac scale = scale_component(c.id);
      comps.push_back(HomogeneousComponent{c.id, c.tau, c.mass * scale.num / scale.den});
    }
    gamma_space_ = MeasureSpaceDesc::make(p_mu_.atoms(), std::move(comps));
  }
}

Frac GammaMeasure::scale_component(const std::string& id) const {
  WeightTag tau = nu_space_.component_tau(id);
  if (p_nu_.has_ramp()) {
    std::uint64_t n = ramp_component_index(id);
    if (n == 0) throw Error(Errc::unknown_component, "component '" + id + "' not in ramp");
    return Frac{p_mu_.row_mass(n), p_nu_.row_mass(n)};
  }
  for (std::size_t i = 0; i < p_nu_.rows().size(); ++i)
    if (p_nu_.rows()[i].tau == tau)
      return Frac{p_mu_.rows()[i].mass, p_nu_.rows()[i].mass};
  throw Error(Errc::unknown_component, "no passport row with the weight of '" + id + "'");
}

Frac GammaMeasure::scale_atom(std::uint64_t k) const {
  return Frac{p_mu_.atoms().term(k), p_nu_.atoms().term(k)};
}

Scalar GammaMeasure::measure_of(const Event& e) const {
  nu_space_.validate_event(e);
  Scalar m;
  for (std::uint64_t k : e.atoms) m += gamma_space_.atom_mass(k);
  for (const auto& [id, sub] : e.comps) {
    Frac scale = scale_component(id);
    m += sub * scale.num / scale.den;
  }
  return m;
}

RNDerivative GammaMeasure::dgamma_dnu() const { return rn_derivative(nu_space_, gamma_space_); }

RNDerivative GammaMeasure::dnu_dgamma() const { return dgamma_dnu().reciprocal(); }

GammaMeasure build_gamma(const Passport& p_mu, const Passport& p_nu, const ComponentMap& pairing,
                         const MeasureSpaceDesc& nu_space) {
  if (!same_upper_row(pairing.source, p_mu) || !same_upper_row(pairing.target, p_nu))
    throw Error(Errc::row_mismatch, "pairing does not match the passports");
  IsoVerdict v = log_iso_decision(p_mu, p_nu);
  if (!v.yes) {
    if (v.reason == IsoReason::ratio_unbounded)
      throw Error(Errc::ratio_unbounded, "mass ratios unbounded; no transported measure exists");
    throw Error(Errc::row_mismatch, "passports are not isomorphic");
  }
  return GammaMeasure(p_mu, p_nu, nu_space);
}

// ---------------------------------------------------------------------------
// Verification

CommutationReport verify_log_commutation(const StarIso& iso, const SimpleFunction& f) {
  SimpleFunction lhs = apply_phi(iso, log1p_abs_function(f));
  SimpleFunction rhs = log1p_abs_function(apply_phi(iso, f));
  if (lhs.atom_cells().size() != rhs.atom_cells().size() ||
      lhs.comp_cells().size() != rhs.comp_cells().size())
    throw Error(Errc::domain, "cell structures diverged under the induced map");
  CommutationReport rep;
  auto probe = [&rep](const Coeff& a, const Coeff& b) {
    double d = std::abs(a.value() - b.value());
    rep.max_discrepancy = std::max(rep.max_discrepancy, d);
    ++rep.cells_checked;
  };
  for (std::size_t i = 0; i < lhs.atom_cells().size(); ++i)
    probe(lhs.atom_cells()[i].c, rhs.atom_cells()[i].c);
  for (std::size_t i = 0; i < lhs.comp_cells().size(); ++i)
    probe(lhs.comp_cells()[i].c, rhs.comp_cells()[i].c);
  return rep;
}

MeasureSpaceDesc pushforward_space(const ComponentMap& map) {
  // lambda(phi(e)) = mu(e): over the target cells the blocks carry the source
  // masses, which is exactly the canonical space of the source passport.
  return passport_space(map.source);
}

TransportReport verify_transport(const StarIso& iso, const SimpleFunction& f,
                                 const MeasureSpaceDesc& mu_space, TransportTarget target) {
  const Passport& src = iso.inverted ? iso.map.target : iso.map.source;
  const Passport& dst = iso.inverted ? iso.map.source : iso.map.target;
  SimpleFunction phi_f = apply_phi(iso, f);
  std::complex<double> i_mu = integral(f, mu_space);
  double n_mu = log_fnorm(f, mu_space).value;
  std::complex<double> i_tgt;
  double n_tgt;
  MeasureSpaceDesc target_space = passport_space(dst);
  if (target == TransportTarget::pushforward) {
    MeasureSpaceDesc lambda = pushforward_space(ComponentMap{src, dst});
    i_tgt = integral_under(phi_f, target_space, lambda);
    n_tgt = log_fnorm_under(phi_f, target_space, lambda);
  } else {
    GammaMeasure gamma(src, dst, target_space);
    Kahan re, im, norm;
    for (const AtomCell& c : phi_f.atom_cells()) {
      double m = gamma.as_space().atom_mass(c.atom).as_double();
      re.add(c.c.value().real() * m);
      im.add(c.c.value().imag() * m);
      norm.add((c.c.log1p_abs() * gamma.as_space().atom_mass(c.atom)).as_double());
    }
    for (const CompCell& c : phi_f.comp_cells()) {
      Frac scale = gamma.scale_component(c.comp);
      Scalar m = c.submass * scale.num / scale.den;
      re.add(c.c.value().real() * m.as_double());
      im.add(c.c.value().imag() * m.as_double());
      norm.add((c.c.log1p_abs() * m).as_double());
    }
    i_tgt = {re.s, im.s};
    n_tgt = norm.s;
  }
  TransportReport rep;
  rep.integral_discrepancy = std::abs(i_mu - i_tgt);
  rep.norm_discrepancy = std::fabs(n_mu - n_tgt);
  rep.integral_mu_re = i_mu.real();
  rep.integral_mu_im = i_mu.imag();
  rep.norm_mu = n_mu;
  rep.ok = rep.integral_discrepancy <= 1e-9 && rep.norm_discrepancy <= 1e-9;
  return rep;
}

// ---------------------------------------------------------------------------
// Sigma-finite route

bool log_equivalent_decision(const MeasureSpaceDesc& mu_space, const MeasureSpaceDesc& nu_space,
                             const SpacePairing& pairing) {
  MeasureSpaceDesc pushforward = nu_space;
  if (mu_space.has_ramp() || nu_space.has_ramp()) {
    if (!(mu_space.has_ramp() && nu_space.has_ramp()))
      throw Error(Errc::algebra_mismatch, "component parts have different shape");
    if (mu_space.ramp().tau_base != nu_space.ramp().tau_base)
      throw Error(Errc::algebra_mismatch, "component weight ramps differ");
    if (!pairing.comp_pairs.empty())
      throw Error(Errc::domain, "ramp spaces pair index to index; omit explicit pairs");
    pushforward = MeasureSpaceDesc::make_ramp(
        mu_space.atoms(), ComponentRamp{nu_space.ramp().tau_base, mu_space.ramp_masses()},
        std::nullopt, mu_space.declared_infinite());
  } else {
    std::map<std::string, std::string> to_from;  // target id -> source id
    if (pairing.comp_pairs.empty()) {
      for (const HomogeneousComponent& c : nu_space.components()) to_from[c.id] = c.id;
    } else {
      std::set<std::string> used_from;
      for (const auto& [from, to] : pairing.comp_pairs) {
        if (!to_from.emplace(to, from).second)
          throw Error(Errc::domain, "pairing maps two cells onto '" + to + "'");
        if (!used_from.insert(from).second)
          throw Error(Errc::domain, "pairing uses '" + from + "' twice");
      }
    }
    if (to_from.size() != nu_space.components().size() ||
        to_from.size() != mu_space.components().size())
      throw Error(Errc::domain, "pairing must cover every component of both spaces");
    std::vector<HomogeneousComponent> comps;
    for (const HomogeneousComponent& c : nu_space.components()) {
      auto it = to_from.find(c.id);
      if (it == to_from.end())
        throw Error(Errc::domain, "pairing misses component '" + c.id + "'");
      if (mu_space.component_tau(it->second) != c.tau)
        throw Error(Errc::domain, "pairing joins components of different weight ('" + it->second +
                                      "' -> '" + c.id + "')");
      comps.push_back(HomogeneousComponent{c.id, c.tau, mu_space.component_mass(it->second)});
    }
    pushforward = MeasureSpaceDesc::make(mu_space.atoms(), std::move(comps), std::nullopt,
                                         mu_space.declared_infinite());
  }
  return equality_check(nu_space, pushforward).equal;
}

// ---------------------------------------------------------------------------
// Deterministic sampling

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return (next() >> 11) * 0x1.0p-53; }

SimpleFunction random_simple_function(const MeasureSpaceDesc& space, SplitMix64& rng,
                                      std::size_t max_cells) {
  FunctionBuilder b;
  auto coeff = [&rng]() {
    double re = (static_cast<double>(rng.next() % 17) - 8.0) / 2.0;
    double im = (static_cast<double>(rng.next() % 17) - 8.0) / 2.0;
    if (re == 0.0 && im == 0.0) re = 1.0;
    return Coeff::from_complex({re, im});
  };
  std::size_t budget = 1 + rng.next() % max_cells;
  // Atom cells over the first few atoms.
  if (space.has_atoms()) {
    std::uint64_t limit =
        space.atoms_infinite() ? 12 : std::min<std::uint64_t>(space.atoms().finite_size(), 12);
    for (std::uint64_t k = 1; k <= limit && budget > 0; ++k) {
      if (rng.uniform() < 0.35) {
        b.add_atom(k, coeff());
        --budget;
      }
    }
  }
  // Component pieces: a few rational fractions of the leading cells.
  std::vector<std::string> ids;
  if (space.has_ramp()) {
    for (std::uint64_t n = 1; n <= 6; ++n) ids.push_back(ramp_component_id(n));
  } else {
    for (const HomogeneousComponent& c : space.components()) ids.push_back(c.id);
  }
  for (const std::string& id : ids) {
    if (budget == 0) break;
    if (rng.uniform() >= 0.5) continue;
    Scalar mass = space.component_mass(id);
    std::uint64_t pieces = 1 + rng.next() % 2;
    Scalar used(0);
    for (std::uint64_t i = 0; i < pieces && budget > 0; ++i) {
      std::uint64_t den = 3 + rng.next() % 6;  // 3..8
      Scalar frac = Scalar(1) / Scalar(den);
      if (used + frac > Scalar(1)) break;
      b.add_comp(id, mass * frac, coeff());
      used += frac;
      --budget;
    }
  }
  SimpleFunction f = b.finish();
  if (f.is_zero()) {
    FunctionBuilder fallback;
    if (space.has_atoms())
      fallback.add_atom(1, coeff());
    else
      fallback.add_comp(ids.front(), space.component_mass(ids.front()) / Scalar(2), coeff());
    f = fallback.finish();
  }
  f.validate(space);
  return f;
}

}  // namespace logiso
