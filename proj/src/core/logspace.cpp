#include "logspace.hpp"

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

// Plain ids sort lexicographically before ramp ids; ramp ids sort numerically.
bool comp_id_less(const std::string& a, const std::string& b) {
  std::uint64_t ra = ramp_component_index(a), rb = ramp_component_index(b);
  if ((ra == 0) != (rb == 0)) return ra == 0;
  if (ra && rb) return ra < rb;
  return a < b;
}

struct CompIdLess {
  bool operator()(const std::string& a, const std::string& b) const { return comp_id_less(a, b); }
};

std::complex<double> finite_value(const Coeff& c) {
  if (!c.value_finite())
    throw Error(Errc::domain, "cell value exceeds double range; only norms are defined for it");
  return c.value();
}

}  // namespace

// ---------------------------------------------------------------------------
// Coeff

Coeff Coeff::from_complex(std::complex<double> z) {
  Coeff c;
  c.z_ = z;
  c.ell_ = Scalar::from_double(std::log1p(std::abs(z)));
  c.log_domain_ = false;
  return c;
}

Coeff Coeff::from_log1p(Scalar ell) {
  if (ell.is_negative()) throw Error(Errc::domain, "log-domain magnitude must be nonnegative");
  Coeff c;
  double e = ell.as_double();
  c.z_ = std::complex<double>(e < 700.0 ? std::expm1(e) : HUGE_VAL, 0.0);
  c.ell_ = std::move(ell);
  c.log_domain_ = true;
  return c;
}

bool Coeff::value_finite() const { return std::isfinite(z_.real()) && std::isfinite(z_.imag()); }

bool Coeff::is_zero() const {
  if (log_domain_) return ell_.is_zero();
  return z_ == std::complex<double>(0.0, 0.0);
}

bool operator==(const Coeff& a, const Coeff& b) {
  if (a.log_domain_ != b.log_domain_) return false;
  if (a.log_domain_) return a.ell_ == b.ell_;
  return a.z_ == b.z_;
}

// ---------------------------------------------------------------------------
// FunctionBuilder / SimpleFunction

void FunctionBuilder::add_atom(std::uint64_t atom, Coeff c) {
  if (c.is_zero()) return;
  atoms_.push_back(AtomCell{atom, std::move(c)});
}

void FunctionBuilder::add_comp(const std::string& comp, Scalar submass, Coeff c) {
  if (!submass.is_positive()) throw Error(Errc::domain, "cell sub-mass must be positive");
  if (c.is_zero()) return;
  comps_[comp].push_back(CompCell{comp, std::move(submass), std::move(c)});
}

SimpleFunction FunctionBuilder::finish() {
  SimpleFunction f;
  std::sort(atoms_.begin(), atoms_.end(),
            [](const AtomCell& a, const AtomCell& b) { return a.atom < b.atom; });
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i - 1].atom == atoms_[i].atom)
      throw Error(Errc::domain, "cells overlap on atom " + std::to_string(atoms_[i].atom));
  f.atom_cells_ = std::move(atoms_);
  std::map<std::string, std::vector<CompCell>, CompIdLess> ordered(comps_.begin(), comps_.end());
  for (auto& [id, cells] : ordered) {
    for (auto& cell : cells) {
      if (!f.comp_cells_.empty() && f.comp_cells_.back().comp == id &&
          f.comp_cells_.back().c == cell.c) {
        f.comp_cells_.back().submass += cell.submass;  // merge adjacent equal pieces
      } else {
        f.comp_cells_.push_back(std::move(cell));
      }
    }
  }
  if (tail_) f.tail_ = std::move(tail_);
  return f;
}

SimpleFunction SimpleFunction::from_cells(const std::vector<std::pair<Event, Coeff>>& cells,
                                          const MeasureSpaceDesc& space) {
  FunctionBuilder b;
  for (const auto& [event, coeff] : cells) {
    for (std::uint64_t k : event.atoms) b.add_atom(k, coeff);
    for (const auto& [id, sub] : event.comps) b.add_comp(id, sub, coeff);
  }
  SimpleFunction f = b.finish();
  f.validate(space);
  return f;
}

SimpleFunction SimpleFunction::indicator(const Event& e, const MeasureSpaceDesc& space) {
  return from_cells({{e, Coeff::from_complex(1.0)}}, space);
}

SimpleFunction SimpleFunction::with_dsl_support(SequenceDSL coeffs) {
  if (coeffs.is_finite())
    throw Error(Errc::domain, "dsl support requires an infinite coefficient sequence");
  SimpleFunction f;
  f.dsl_ = coeffs.canonical();
  return f;
}

void SimpleFunction::validate(const MeasureSpaceDesc& space) const {
  for (const AtomCell& c : atom_cells_) space.atom_mass(c.atom);
  std::map<std::string, Scalar> used;
  for (const CompCell& c : comp_cells_) used[c.comp] += c.submass;
  for (const auto& [id, total] : used) {
    Scalar mass = space.component_mass(id);
    if (total > mass && !approx_equal(total, mass))
      throw Error(Errc::domain, "cells exceed mass of component '" + id + "'");
  }
  if (dsl_ && !(space.atoms_infinite() || space.declared_infinite()))
    throw Error(Errc::algebra_mismatch,
                "dsl-supported function needs infinitely many atoms in the space");
  if (tail_) {
    if (tail_->on_atoms && !space.atoms_infinite())
      throw Error(Errc::algebra_mismatch, "witness tail runs over atoms the space lacks");
    if (!tail_->on_atoms && !space.has_ramp())
      throw Error(Errc::algebra_mismatch, "witness tail runs over components the space lacks");
  }
}

bool operator==(const SimpleFunction& a, const SimpleFunction& b) {
  if (a.atom_cells_.size() != b.atom_cells_.size()) return false;
  for (std::size_t i = 0; i < a.atom_cells_.size(); ++i) {
    if (a.atom_cells_[i].atom != b.atom_cells_[i].atom) return false;
    if (!(a.atom_cells_[i].c == b.atom_cells_[i].c)) return false;
  }
  if (a.comp_cells_.size() != b.comp_cells_.size()) return false;
  for (std::size_t i = 0; i < a.comp_cells_.size(); ++i) {
    if (a.comp_cells_[i].comp != b.comp_cells_[i].comp) return false;
    if (a.comp_cells_[i].submass != b.comp_cells_[i].submass) return false;
    if (!(a.comp_cells_[i].c == b.comp_cells_[i].c)) return false;
  }
  if (a.dsl_.has_value() != b.dsl_.has_value()) return false;
  if (a.dsl_ && !(*a.dsl_ == *b.dsl_)) return false;
  if (a.tail_.has_value() != b.tail_.has_value()) return false;
  if (a.tail_) {
    if (a.tail_->count != b.tail_->count || a.tail_->last_index != b.tail_->last_index ||
        a.tail_->on_atoms != b.tail_->on_atoms || !(a.tail_->mu_masses == b.tail_->mu_masses))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Common refinement

namespace {

// Invokes the callbacks over the common refinement of two functions' cells:
// on_atom(k, cf, cg) per atom, on_comp(id, submass, cf, cg) per component
// piece in geometric order. Null coefficient pointers mean "off support".
template <class AtomFn, class CompFn>
void for_refined(const SimpleFunction& f, const SimpleFunction& g, AtomFn&& on_atom,
                 CompFn&& on_comp) {
  const auto& fa = f.atom_cells();
  const auto& ga = g.atom_cells();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < ga.size()) {
    if (j >= ga.size() || (i < fa.size() && fa[i].atom < ga[j].atom)) {
      on_atom(fa[i].atom, &fa[i].c, static_cast<const Coeff*>(nullptr));
      ++i;
    } else if (i >= fa.size() || ga[j].atom < fa[i].atom) {
      on_atom(ga[j].atom, static_cast<const Coeff*>(nullptr), &ga[j].c);
      ++j;
    } else {
      on_atom(fa[i].atom, &fa[i].c, &ga[j].c);
      ++i;
      ++j;
    }
  }
  // Group component cells per id (already grouped and ordered within each).
  const auto& fc = f.comp_cells();
  const auto& gc = g.comp_cells();
  std::size_t fi = 0, gi = 0;
  while (fi < fc.size() || gi < gc.size()) {
    const std::string* fid = fi < fc.size() ? &fc[fi].comp : nullptr;
    const std::string* gid = gi < gc.size() ? &gc[gi].comp : nullptr;
    bool take_f = fid && (!gid || comp_id_less(*fid, *gid) || *fid == *gid);
    bool take_g = gid && (!fid || comp_id_less(*gid, *fid) || *fid == *gid);
    const std::string& id = take_f ? *fid : *gid;
    std::size_t fe = fi, ge = gi;
    if (take_f)
      while (fe < fc.size() && fc[fe].comp == id) ++fe;
    if (take_g)
      while (ge < gc.size() && gc[ge].comp == id) ++ge;
    // Two-pointer walk over the packed intervals of this component.
    Scalar pos(0);
    std::size_t a = fi, b = gi;
    Scalar fend = a < fe ? fc[a].submass : Scalar(0);
    Scalar gend = b < ge ? gc[b].submass : Scalar(0);
    Scalar facc = fend, gacc = gend;
    while (a < fe || b < ge) {
      bool in_f = a < fe, in_g = b < ge;
      Scalar next;
      if (in_f && in_g)
        next = min(facc, gacc);
      else
        next = in_f ? facc : gacc;
      if (next > pos) {
        on_comp(id, next - pos, in_f ? &fc[a].c : nullptr, in_g ? &gc[b].c : nullptr);
        pos = next;
      }
      if (in_f && facc == next) {
        ++a;
        if (a < fe) facc += fc[a].submass;
      }
      if (in_g && gacc == next) {
        ++b;
        if (b < ge) gacc += gc[b].submass;
      }
    }
    fi = fe;
    gi = ge;
  }
}

void require_finite_support(const SimpleFunction& f, const char* op) {
  if (!f.finite_support())
    throw Error(Errc::domain, std::string(op) + " is defined for finite-support functions only");
}

}  // namespace

SimpleFunction add(const SimpleFunction& f, const SimpleFunction& g,
                   const MeasureSpaceDesc& space) {
  if (g.is_zero()) return f;
  if (f.is_zero()) return g;
  require_finite_support(f, "addition");
  require_finite_support(g, "addition");
  f.validate(space);
  g.validate(space);
  FunctionBuilder b;
  auto combine = [](const Coeff* cf, const Coeff* cg) -> Coeff {
    if (cf && cg) return Coeff::from_complex(finite_value(*cf) + finite_value(*cg));
    return cf ? *cf : *cg;
  };
  for_refined(
      f, g, [&](std::uint64_t k, const Coeff* cf, const Coeff* cg) { b.add_atom(k, combine(cf, cg)); },
      [&](const std::string& id, Scalar sub, const Coeff* cf, const Coeff* cg) {
        b.add_comp(id, std::move(sub), combine(cf, cg));
      });
  return b.finish();
}

SimpleFunction subtract(const SimpleFunction& f, const SimpleFunction& g,
                        const MeasureSpaceDesc& space) {
  if (g.is_zero()) return f;
  return add(f, scalar_multiply(-1.0, g), space);
}

SimpleFunction multiply(const SimpleFunction& f, const SimpleFunction& g,
                        const MeasureSpaceDesc& space) {
  if (f.is_zero() || g.is_zero()) return SimpleFunction::zero();
  require_finite_support(f, "multiplication");
  require_finite_support(g, "multiplication");
  f.validate(space);
  g.validate(space);
  FunctionBuilder b;
  for_refined(
      f, g,
      [&](std::uint64_t k, const Coeff* cf, const Coeff* cg) {
        if (cf && cg) b.add_atom(k, Coeff::from_complex(finite_value(*cf) * finite_value(*cg)));
      },
      [&](const std::string& id, Scalar sub, const Coeff* cf, const Coeff* cg) {
        if (cf && cg)
          b.add_comp(id, std::move(sub), Coeff::from_complex(finite_value(*cf) * finite_value(*cg)));
      });
  return b.finish();
}

SimpleFunction scalar_multiply(std::complex<double> alpha, const SimpleFunction& f) {
  require_finite_support(f, "scalar multiplication");
  if (alpha == std::complex<double>(1.0, 0.0)) return f;
  FunctionBuilder b;
  if (alpha == std::complex<double>(0.0, 0.0)) return SimpleFunction::zero();
  for (const AtomCell& c : f.atom_cells())
    b.add_atom(c.atom, Coeff::from_complex(alpha * finite_value(c.c)));
  for (const CompCell& c : f.comp_cells())
    b.add_comp(c.comp, c.submass, Coeff::from_complex(alpha * finite_value(c.c)));
  return b.finish();
}

SimpleFunction involution(const SimpleFunction& f) {
  require_finite_support(f, "involution");
  FunctionBuilder b;
  auto conj_coeff = [](const Coeff& c) {
    if (c.log_domain()) return c;  // real and nonnegative already
    return Coeff::from_complex(std::conj(c.value()));
  };
  for (const AtomCell& c : f.atom_cells()) b.add_atom(c.atom, conj_coeff(c.c));
  for (const CompCell& c : f.comp_cells()) b.add_comp(c.comp, c.submass, conj_coeff(c.c));
  return b.finish();
}

SimpleFunction abs_function(const SimpleFunction& f) {
  require_finite_support(f, "modulus");
  FunctionBuilder b;
  auto abs_coeff = [](const Coeff& c) {
    if (c.log_domain()) return c;
    return Coeff::from_complex(std::abs(c.value()));
  };
  for (const AtomCell& c : f.atom_cells()) b.add_atom(c.atom, abs_coeff(c.c));
  for (const CompCell& c : f.comp_cells()) b.add_comp(c.comp, c.submass, abs_coeff(c.c));
  return b.finish();
}

SimpleFunction log1p_abs_function(const SimpleFunction& f) {
  require_finite_support(f, "log(1+|f|)");
  FunctionBuilder b;
  auto log_coeff = [](const Coeff& c) {
    double v = c.log1p_abs().as_double();
    if (!std::isfinite(v))
      throw Error(Errc::domain, "log magnitude exceeds double range for a pointwise value");
    return Coeff::from_complex(v);
  };
  for (const AtomCell& c : f.atom_cells()) b.add_atom(c.atom, log_coeff(c.c));
  for (const CompCell& c : f.comp_cells()) b.add_comp(c.comp, c.submass, log_coeff(c.c));
  return b.finish();
}

std::complex<double> integral(const SimpleFunction& f, const MeasureSpaceDesc& space) {
  require_finite_support(f, "integration");
  f.validate(space);
  Kahan re, im;
  for (const AtomCell& c : f.atom_cells()) {
    std::complex<double> v = finite_value(c.c);
    double m = space.atom_mass(c.atom).as_double();
    re.add(v.real() * m);
    im.add(v.imag() * m);
  }
  for (const CompCell& c : f.comp_cells()) {
    std::complex<double> v = finite_value(c.c);
    double m = c.submass.as_double();
    re.add(v.real() * m);
    im.add(v.imag() * m);
  }
  return {re.s, im.s};
}

std::complex<double> integral_under(const SimpleFunction& f, const MeasureSpaceDesc& home,
                                    const MeasureSpaceDesc& measure) {
  require_finite_support(f, "integration");
  f.validate(home);
  Kahan re, im;
  for (const AtomCell& c : f.atom_cells()) {
    std::complex<double> v = finite_value(c.c);
    double m = measure.atom_mass(c.atom).as_double();
    re.add(v.real() * m);
    im.add(v.imag() * m);
  }
  for (const CompCell& c : f.comp_cells()) {
    std::complex<double> v = finite_value(c.c);
    Frac scale{measure.component_mass(c.comp), home.component_mass(c.comp)};
    double m = (c.submass * scale.num / scale.den).as_double();
    re.add(v.real() * m);
    im.add(v.imag() * m);
  }
  return {re.s, im.s};
}

double log_fnorm_under(const SimpleFunction& f, const MeasureSpaceDesc& home,
                       const MeasureSpaceDesc& measure) {
  require_finite_support(f, "cross-measure norm");
  f.validate(home);
  Kahan k;
  for (const AtomCell& c : f.atom_cells())
    k.add((c.c.log1p_abs() * measure.atom_mass(c.atom)).as_double());
  for (const CompCell& c : f.comp_cells()) {
    Scalar m = c.submass * measure.component_mass(c.comp) / home.component_mass(c.comp);
    k.add((c.c.log1p_abs() * m).as_double());
  }
  return k.s;
}

bool dominated(const SimpleFunction& f, const SimpleFunction& g, const MeasureSpaceDesc& space) {
  f.validate(space);
  g.validate(space);
  require_finite_support(f, "pointwise comparison");
  require_finite_support(g, "pointwise comparison");
  bool ok = true;
  auto check = [&](const Coeff* cf, const Coeff* cg) {
    auto real_nonneg = [](const Coeff& c) {
      return c.log_domain() || (c.value().imag() == 0.0 && c.value().real() >= 0.0);
    };
    Scalar lf = cf ? cf->log1p_abs() : Scalar(0);
    Scalar lg = cg ? cg->log1p_abs() : Scalar(0);
    if (cf && !real_nonneg(*cf)) ok = false;
    if (cg && !real_nonneg(*cg)) ok = false;
    if (lf > lg) ok = false;
  };
  for_refined(
      f, g, [&](std::uint64_t, const Coeff* cf, const Coeff* cg) { check(cf, cg); },
      [&](const std::string&, Scalar, const Coeff* cf, const Coeff* cg) { check(cf, cg); });
  return ok;
}

// ---------------------------------------------------------------------------
// Norms

namespace {

// Continues the divergence construction from d's saved state, calling
// fn(k, n_k, term_k) until it returns false.
template <class Fn>
void continue_divergence(const DivergenceData& d, Fn&& fn) {
  std::uint64_t prev = d.start_index;
  for (std::uint64_t k = d.start_k;; ++k) {
    Scalar threshold(std::max<std::uint64_t>(prev + 1, k));
    std::uint64_t n = d.selection->first_at_least(threshold, prev);
    if (n == 0) throw Error(Errc::domain, "divergence selection exhausted");
    double term = std::exp(d.sigma->log_at(n)) / (static_cast<double>(k) * static_cast<double>(k));
    if (!fn(k, n, term)) return;
    prev = n;
  }
}

struct FinitePart {
  double total = 0.0;
  std::vector<double> per_cell_partials;  // cumulative, canonical order
};

// Sum of log(1+|c|) * measure(cell) over the materialized cells, evaluated
// against `space`. For witness-tail functions the component sub-masses are
// calibrated to the stored source masses and rescaled cellwise.
FinitePart finite_norm_part(const SimpleFunction& f, const MeasureSpaceDesc& space,
                            bool record_partials) {
  FinitePart out;
  Kahan k;
  auto push = [&](double term) {
    k.add(term);
    if (record_partials) out.per_cell_partials.push_back(k.s);
  };
  for (const AtomCell& c : f.atom_cells())
    push((c.c.log1p_abs() * space.atom_mass(c.atom)).as_double());
  for (const CompCell& c : f.comp_cells()) {
    Scalar weight = c.submass;
    if (f.has_tail() && !f.tail().on_atoms) {
      std::uint64_t n = ramp_component_index(c.comp);
      weight = c.submass * space.ramp_masses().term(n) / f.tail().mu_masses.term(n);
    }
    push((c.c.log1p_abs() * weight).as_double());
  }
  out.total = k.s;
  return out;
}

}  // namespace

double divergence_lower_bound(const LogNormResult& r, std::uint64_t K) {
  if (!r.divergence) throw Error(Errc::domain, "norm is not divergent");
  const DivergenceData& d = *r.divergence;
  if (K == 0) return 0.0;
  if (K < d.start_k) {
    // Materialized region: partial sums were recorded cell by cell.
    if (K <= r.partial_sums.size()) return r.partial_sums[K - 1];
    throw Error(Errc::domain, "partial sum not recorded");
  }
  Kahan s;
  s.add(d.offset);
  double out = d.offset;
  continue_divergence(d, [&](std::uint64_t k, std::uint64_t, double term) {
    s.add(term);
    out = s.s;
    return k < K;
  });
  return out;
}

std::uint64_t divergence_crossing(const LogNormResult& r, double target, std::uint64_t K_max) {
  if (!r.divergence) throw Error(Errc::domain, "norm is not divergent");
  const DivergenceData& d = *r.divergence;
  for (std::size_t i = 0; i < r.partial_sums.size() && i + 1 < d.start_k; ++i)
    if (r.partial_sums[i] > target) return i + 1;
  std::uint64_t found = 0;
  Kahan s;
  s.add(d.offset);
  continue_divergence(d, [&](std::uint64_t k, std::uint64_t, double term) {
    if (k > K_max) return false;
    s.add(term);
    if (s.s > target) {
      found = k;
      return false;
    }
    return true;
  });
  return found;
}

LogNormResult log_fnorm(const SimpleFunction& f, const MeasureSpaceDesc& space) {
  f.validate(space);
  LogNormResult r;
  bool infinite_support = !f.finite_support();
  FinitePart fin = finite_norm_part(f, space, infinite_support);
  r.value = fin.total;
  if (!infinite_support) return r;

  // Audit partials: first 64 cells, then the running totals appended below.
  std::size_t keep = std::min<std::size_t>(fin.per_cell_partials.size(), 64);
  r.partial_sums.assign(fin.per_cell_partials.begin(), fin.per_cell_partials.begin() + keep);

  if (f.has_dsl()) {
    const SequenceDSL& coeffs = f.dsl_coeffs();
    const SequenceDSL& masses = space.atoms();
    std::uint64_t head = std::max<std::uint64_t>(coeffs.tail_start(), 64);
    if (!masses.is_finite()) head = std::max<std::uint64_t>(head, masses.tail_start());
    std::uint64_t N2 = head + 8192;
    Kahan k;
    k.add(fin.total);
    for (std::uint64_t n = 1; n <= N2; ++n) {
      double ell = std::log1p(coeffs.term(n).as_double());
      double m = space.atom_mass(n).as_double();
      k.add(ell * m);
      if (n <= 64) r.partial_sums.push_back(k.s);
    }
    double bound;
    if (!masses.is_finite()) {
      // Coefficients decrease past their prefix, so c(N2+1) dominates the tail.
      bound = std::log1p(coeffs.term(N2 + 1).as_double()) *
              masses.tail_mass_after(N2).as_double();
    } else {
      // Unit-mass shared tail: log(1+c) <= c termwise.
      bound = coeffs.tail_mass_after(N2).as_double();
    }
    r.value = k.s;
    r.partial_sums.push_back(k.s);
    r.tail_bound = bound;
    r.finite = true;
    return r;
  }

  // Witness tail: continuation of the divergence construction.
  const WitnessTail& t = f.tail();
  const SequenceDSL& query = t.on_atoms ? space.atoms() : space.ramp_masses();
  auto sigma = std::make_shared<RatioSeq>(query, t.mu_masses);
  auto data = std::make_shared<DivergenceData>();
  data->mu_masses = t.mu_masses;
  data->selection = t.ratio;
  data->sigma = sigma;
  data->offset = fin.total;
  data->start_k = t.count + 1;
  data->start_index = t.last_index;

  if (sigma->analysis().bounded) {
    double sup = sigma->analysis().sup.as_double();
    Kahan k;
    k.add(fin.total);
    std::uint64_t upto = t.count + 4096;
    continue_divergence(*data, [&](std::uint64_t step, std::uint64_t, double term) {
      k.add(term);
      return step < upto;
    });
    r.value = k.s;
    r.partial_sums.push_back(k.s);
    // Remaining steps contribute at most sup * sum_{k>upto} 1/k^2 < sup/upto.
    r.tail_bound = sup / static_cast<double>(upto);
    r.finite = true;
    return r;
  }

  // sigma unbounded: decide divergence along the selected subsequence. The
  // selection guarantees ratio(n_k) >= max(n_{k-1}+1, k) >= k, so when the
  // query measure is the one the indices were drawn from, the lower bounds
  // dominate the harmonic series. Otherwise classify sigma's growth: the
  // selected indices satisfy n_k >= k, so along an eventually increasing
  // sigma the terms sigma(n_k)/k^2 dominate sigma(k)/k^2.
  bool divergent = false;
  if (t.ratio && *sigma == *t.ratio) divergent = true;
  if (!divergent) {
    switch (sigma->growth_class()) {
      case RatioSeq::Growth::exponential:
        divergent = true;
        break;
      case RatioSeq::Growth::polynomial:
        divergent = sigma->poly_exponent() >= 1.0;
        break;
      default:
        break;
    }
  }
  if (!divergent)
    throw Error(Errc::undecidable_tail,
                "no divergence rule for this measure along the witness tail");
  r.finite = false;
  r.value = 0.0;
  r.partial_sums = fin.per_cell_partials;
  r.divergence = data;
  return r;
}

LogNormResult log_fnorm_base(const SimpleFunction& f, const MeasureSpaceDesc& space, double base) {
  if (!(base > 0.0) || base == 1.0) throw Error(Errc::domain, "logarithm base must be positive and not 1");
  LogNormResult r = log_fnorm(f, space);
  double lnb = std::log(base);
  r.value /= lnb;
  for (double& p : r.partial_sums) p /= lnb;
  r.tail_bound /= lnb;
  return r;
}

double fnorm_metric(const SimpleFunction& f, const SimpleFunction& g,
                    const MeasureSpaceDesc& space) {
  if (g.is_zero()) return log_fnorm(f, space).value;
  if (f.is_zero()) return log_fnorm(g, space).value;
  return log_fnorm(subtract(f, g, space), space).value;
}

MembershipResult is_log_integrable(const SimpleFunction& f, const MeasureSpaceDesc& space) {
  LogNormResult r = log_fnorm(f, space);
  return MembershipResult{r.finite, std::move(r)};
}

// ---------------------------------------------------------------------------
// Inclusion, equality, counterexample

InclusionResult inclusion_check(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu) {
  auto d = std::make_shared<RNDerivative>(rn_derivative(mu, nu));
  InclusionResult r;
  r.included = d->bounded();
  if (r.included) r.sup = d->sup();
  r.derivative = std::move(d);
  return r;
}

EqualityResult equality_check(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu) {
  auto fwd = std::make_shared<RNDerivative>(rn_derivative(mu, nu));
  auto bwd = std::make_shared<RNDerivative>(fwd->reciprocal());
  EqualityResult r;
  if (!fwd->bounded()) {
    r.equal = false;
    r.failing = NotEqualDirection::mu_not_in_nu;
    r.witness = std::move(fwd);
    return r;
  }
  if (!bwd->bounded()) {
    r.equal = false;
    r.failing = NotEqualDirection::nu_not_in_mu;
    r.witness = std::move(bwd);
    return r;
  }
  r.equal = true;
  r.sup_forward = fwd->sup();
  r.sup_backward = bwd->sup();
  return r;
}

Counterexample counterexample_from_derivative(const MeasureSpaceDesc& mu, const RNDerivative& d,
                                              std::uint64_t K) {
  if (d.bounded())
    throw Error(Errc::derivative_bounded,
                "derivative is essentially bounded; no divergence witness exists");
  if (K == 0) throw Error(Errc::domain, "truncation depth must be at least 1");
  bool on_atoms = d.unbounded_part() == RNDerivative::Part::atoms;
  const SequenceDSL& masses = on_atoms ? mu.atoms() : mu.ramp_masses();
  auto sel = std::make_shared<RatioSeq>(d.unbounded_seq());

  Counterexample out;
  FunctionBuilder b;
  Kahan mu_sum, nu_sum;
  std::uint64_t prev = 0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    Scalar threshold(std::max<std::uint64_t>(prev + 1, k));
    std::uint64_t n = sel->first_at_least(threshold, prev);
    if (n == 0) throw Error(Errc::domain, "witness generator exhausted");
    Scalar m = masses.term(n);
    Scalar ell = Scalar(1) / (Scalar(k) * Scalar(k) * m);
    if (!ell.is_rational() && !std::isfinite(ell.as_double()))
      throw Error(Errc::domain, "cell mass underflows double precision; use rational masses");
    if (on_atoms)
      b.add_atom(n, Coeff::from_log1p(ell));
    else
      b.add_comp(ramp_component_id(n), m, Coeff::from_log1p(ell));
    Scalar mu_term = ell * m;  // exactly 1/k^2
    Scalar nu_term = mu_term * sel->at(n);
    mu_sum.add(mu_term.as_double());
    nu_sum.add(nu_term.as_double());
    out.mu_partials.push_back(mu_sum.s);
    out.nu_lower_bounds.push_back(nu_sum.s);
    out.indices.push_back(n);
    prev = n;
  }
  WitnessTail tail;
  tail.mu_masses = masses;
  tail.ratio = sel;
  tail.on_atoms = on_atoms;
  tail.count = K;
  tail.last_index = prev;
  b.set_tail(std::move(tail));
  out.f = b.finish();
  return out;
}

Counterexample build_counterexample(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu,
                                    std::uint64_t K) {
  return counterexample_from_derivative(mu, rn_derivative(mu, nu), K);
}

}  // namespace logiso
