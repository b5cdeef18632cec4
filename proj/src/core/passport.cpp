#include "passport.hpp"

#include <algorithm>
#include <cmath>

namespace logiso {

Passport Passport::from_rows(std::vector<PassportRow> rows, SequenceDSL atoms) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].mass.is_positive()) throw Error(Errc::domain, "row mass must be positive");
    if (i > 0 && !(rows[i - 1].tau < rows[i].tau))
      throw Error(Errc::domain, "tau strictly increasing violated at row " + std::to_string(i + 1));
  }
  Passport p;
  p.rows_ = std::move(rows);
  p.atoms_ = canonical_atoms(atoms);
  if (p.rows_.empty() && p.atoms_.empty())
    throw Error(Errc::domain, "passport needs at least one row or atom");
  return p;
}

Passport Passport::from_ramp(RampRows rows, SequenceDSL atoms) {
  if (rows.masses.is_finite())
    throw Error(Errc::domain, "ramp rows require an infinite mass sequence");
  Passport p;
  p.ramp_ = RampRows{rows.tau_base, rows.masses.canonical()};
  p.atoms_ = canonical_atoms(atoms);
  return p;
}

Scalar Passport::row_mass(std::uint64_t n) const {
  if (ramp_) return ramp_->masses.term(n);
  if (n == 0 || n > rows_.size()) throw Error(Errc::unknown_component, "row index out of range");
  return rows_[n - 1].mass;
}

WeightTag Passport::row_tau(std::uint64_t n) const {
  if (ramp_) return WeightTag{static_cast<std::uint32_t>(ramp_->tau_base + n)};
  if (n == 0 || n > rows_.size()) throw Error(Errc::unknown_component, "row index out of range");
  return rows_[n - 1].tau;
}

SequenceDSL Passport::row_masses() const {
  if (ramp_) return ramp_->masses;
  std::vector<Scalar> vals;
  vals.reserve(rows_.size());
  for (const PassportRow& r : rows_) vals.push_back(r.mass);
  return SequenceDSL::finite(std::move(vals));
}

Scalar Passport::total() const {
  Scalar t = atoms_.total();
  if (ramp_) return t + ramp_->masses.total();
  for (const PassportRow& r : rows_) t += r.mass;
  return t;
}

bool Passport::is_normalized() const { return approx_equal(total(), Scalar(1)); }

Passport Passport::normalized() const {
  if (is_normalized()) return *this;
  Scalar inv = Scalar(1) / total();
  Passport p = *this;
  for (PassportRow& r : p.rows_) r.mass *= inv;
  if (p.ramp_) p.ramp_->masses = p.ramp_->masses.scaled(inv);
  if (!p.atoms_.empty()) p.atoms_ = p.atoms_.scaled(inv);
  return p;
}

SequenceDSL canonical_atoms(const SequenceDSL& atoms) {
  switch (atoms.kind()) {
    case SequenceDSL::Kind::finite: {
      std::vector<Scalar> vals = atoms.prefix_values();
      std::sort(vals.begin(), vals.end(), [](const Scalar& a, const Scalar& b) { return b < a; });
      return SequenceDSL::finite(std::move(vals));
    }
    case SequenceDSL::Kind::geometric:
    case SequenceDSL::Kind::powerlaw:
      return atoms;  // already strictly decreasing
    case SequenceDSL::Kind::prefix: {
      std::vector<Scalar> vals = atoms.prefix_values();
      std::sort(vals.begin(), vals.end(), [](const Scalar& a, const Scalar& b) { return b < a; });
      Scalar tail_head = atoms.term(atoms.tail_start());
      if (!vals.empty() && vals.back() < tail_head)
        throw Error(Errc::domain,
                    "atom masses are not descending: prefix falls below the tail head");
      SequenceDSL tail = atoms.tail_kind() == SequenceDSL::Kind::geometric
                             ? SequenceDSL::geometric(atoms.param_a(), atoms.param_rp())
                             : SequenceDSL::powerlaw(atoms.param_a(), atoms.param_rp());
      return SequenceDSL::prefix_then_tail(std::move(vals), std::move(tail), atoms.tail_start())
          .canonical();
    }
  }
  throw Error(Errc::domain, "bad sequence kind");
}

Passport extract_passport(const MeasureSpaceDesc& space) {
  if (space.declared_infinite())
    throw Error(Errc::infinite_mass, "passport extraction requires a finite total mass");
  MeasureSpaceDesc s = space.normalized();
  if (s.has_ramp())
    return Passport::from_ramp(RampRows{s.ramp().tau_base, s.ramp_masses()}, s.atoms());
  std::map<WeightTag, Scalar> grouped;
  for (const HomogeneousComponent& c : s.components()) grouped[c.tau] += c.mass;
  std::vector<PassportRow> rows;
  rows.reserve(grouped.size());
  for (const auto& [tau, mass] : grouped) rows.push_back(PassportRow{tau, mass});
  return Passport::from_rows(std::move(rows), s.atoms());
}

namespace {

struct UpperRowCheck {
  bool same = true;
  bool atoms_problem = false;
  std::uint64_t index = 0;
};

UpperRowCheck compare_upper_rows(const Passport& a, const Passport& b) {
  UpperRowCheck c;
  if (a.has_ramp() != b.has_ramp()) {
    c.same = false;
    c.index = 1;
    return c;
  }
  if (a.has_ramp()) {
    if (a.ramp().tau_base != b.ramp().tau_base) {
      c.same = false;
      c.index = 1;
      return c;
    }
  } else {
    const auto& ra = a.rows();
    const auto& rb = b.rows();
    for (std::size_t i = 0; i < std::min(ra.size(), rb.size()); ++i) {
      if (ra[i].tau != rb[i].tau) {
        c.same = false;
        c.index = i + 1;
        return c;
      }
    }
    if (ra.size() != rb.size()) {
      c.same = false;
      c.index = std::min(ra.size(), rb.size()) + 1;
      return c;
    }
  }
  // Atomic cardinality class: both empty, both finite of equal count, or both infinite.
  const auto& aa = a.atoms();
  const auto& ab = b.atoms();
  bool equal_class;
  if (aa.empty() || ab.empty())
    equal_class = aa.empty() && ab.empty();
  else if (aa.is_finite() != ab.is_finite())
    equal_class = false;
  else
    equal_class = !aa.is_finite() || aa.finite_size() == ab.finite_size();
  if (!equal_class) {
    c.same = false;
    c.atoms_problem = true;
  }
  return c;
}

// First index at which two canonically distinct sequences differ.
std::uint64_t first_term_difference(const SequenceDSL& x, const SequenceDSL& y) {
  std::uint64_t limit = std::max(x.tail_start(), y.tail_start()) + 8;
  if (x.is_finite()) limit = std::min<std::uint64_t>(limit, std::min(x.finite_size(), y.finite_size()));
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (!approx_equal(x.term(n), y.term(n))) return n;
  return 0;
}

RatioWitness make_witness(const RatioSeq& seq, double M) {
  RatioWitness w;
  w.M = M;
  w.index = seq.witness(M);
  w.ratio = std::exp(seq.log_at(w.index));
  return w;
}

}  // namespace

bool same_upper_row(const Passport& a, const Passport& b) { return compare_upper_rows(a, b).same; }

RatioBoundedResult ratio_bounded(const SequenceDSL& s1, const SequenceDSL& s2) {
  RatioSeq seq(s1, s2);
  const RatioAnalysis& an = seq.analysis();
  return RatioBoundedResult{an.bounded, an.sup, an.sup_arg, std::move(seq)};
}

IsoVerdict measure_iso_decision(const Passport& p1, const Passport& p2) {
  IsoVerdict v;
  UpperRowCheck rows = compare_upper_rows(p1, p2);
  if (!rows.same) {
    v.reason = rows.atoms_problem ? IsoReason::atom_mismatch : IsoReason::row_mismatch;
    v.mismatch_index = rows.index;
    v.mismatch_in_atoms = rows.atoms_problem;
    return v;
  }
  if (p1.has_ramp() || !p1.rows().empty()) {
    SequenceDSL m1 = p1.row_masses();
    SequenceDSL m2 = p2.row_masses();
    if (!(m1 == m2)) {
      if (p1.has_ramp()) {
        std::uint64_t n = first_term_difference(m1, m2);
        if (n != 0) {
          v.reason = IsoReason::mass_mismatch;
          v.mismatch_index = n;
          return v;
        }
      } else {
        for (std::size_t i = 0; i < p1.rows().size(); ++i) {
          if (!approx_equal(p1.rows()[i].mass, p2.rows()[i].mass)) {
            v.reason = IsoReason::mass_mismatch;
            v.mismatch_index = i + 1;
            return v;
          }
        }
      }
    }
  }
  if (p1.has_atoms()) {
    if (!(p1.atoms() == p2.atoms())) {
      std::uint64_t n = first_term_difference(p1.atoms(), p2.atoms());
      if (n != 0) {
        v.reason = IsoReason::mass_mismatch;
        v.mismatch_index = n;
        v.mismatch_in_atoms = true;
        return v;
      }
    }
  }
  v.yes = true;
  v.sup_forward = Scalar(1);
  v.sup_backward = Scalar(1);
  return v;
}

IsoVerdict log_iso_decision(const Passport& p1, const Passport& p2) {
  Passport a = p1.normalized();
  Passport b = p2.normalized();
  IsoVerdict v;
  UpperRowCheck rows = compare_upper_rows(a, b);
  if (!rows.same) {
    v.reason = rows.atoms_problem ? IsoReason::atom_mismatch : IsoReason::row_mismatch;
    v.mismatch_index = rows.index;
    v.mismatch_in_atoms = rows.atoms_problem;
    return v;
  }
  Scalar sup_fwd(0), sup_bwd(0);
  auto check_pair = [&](const SequenceDSL& m1, const SequenceDSL& m2, bool in_atoms) -> bool {
    RatioSeq fwd(m1, m2);
    if (!fwd.analysis().bounded) {
      v.reason = IsoReason::ratio_unbounded;
      v.direction = RatioDirection::first_over_second;
      v.mismatch_in_atoms = in_atoms;
      v.witness = make_witness(fwd, 1e6);
      return false;
    }
    RatioSeq bwd = fwd.reciprocal();
    if (!bwd.analysis().bounded) {
      v.reason = IsoReason::ratio_unbounded;
      v.direction = RatioDirection::second_over_first;
      v.mismatch_in_atoms = in_atoms;
      v.witness = make_witness(bwd, 1e6);
      return false;
    }
    sup_fwd = max(sup_fwd, fwd.analysis().sup);
    sup_bwd = max(sup_bwd, bwd.analysis().sup);
    return true;
  };
  if (a.has_rows()) {
    if (!check_pair(a.row_masses(), b.row_masses(), false)) return v;
  }
  if (a.has_atoms()) {
    if (!check_pair(a.atoms(), b.atoms(), true)) return v;
  }
  v.yes = true;
  v.sup_forward = sup_fwd;
  v.sup_backward = sup_bwd;
  return v;
}

MeasureSpaceDesc passport_space(const Passport& p) {
  if (p.has_ramp())
    return MeasureSpaceDesc::make_ramp(p.atoms(),
                                       ComponentRamp{p.ramp().tau_base, p.ramp().masses});
  std::vector<HomogeneousComponent> comps;
  comps.reserve(p.rows().size());
  for (std::size_t i = 0; i < p.rows().size(); ++i)
    comps.push_back(HomogeneousComponent{ramp_component_id(i + 1), p.rows()[i].tau,
                                         p.rows()[i].mass});
  return MeasureSpaceDesc::make(p.atoms(), std::move(comps));
}

}  // namespace logiso
