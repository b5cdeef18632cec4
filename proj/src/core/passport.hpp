#pragma once

#include "measure.hpp"

namespace logiso {

struct PassportRow {
  WeightTag tau;
  Scalar mass;
};

// Infinite passport: row n has tau = tau_base + n and mass masses(n).
struct RampRows {
  std::uint32_t tau_base = 0;
  SequenceDSL masses = SequenceDSL::finite({});
};

// The two-row matrix of a measure algebra: weights of the homogeneous
// components (strictly increasing) over their masses, plus the atomic part
// as a mass sequence sorted in descending order.
class Passport {
 public:
  static Passport from_rows(std::vector<PassportRow> rows, SequenceDSL atoms);
  static Passport from_ramp(RampRows rows, SequenceDSL atoms);

  bool has_ramp() const { return ramp_.has_value(); }
  const std::vector<PassportRow>& rows() const { return rows_; }
  const RampRows& ramp() const { return *ramp_; }
  const SequenceDSL& atoms() const { return atoms_; }
  bool has_atoms() const { return !atoms_.empty(); }
  bool has_rows() const { return ramp_.has_value() || !rows_.empty(); }

  Scalar row_mass(std::uint64_t n) const;  // 1-based
  WeightTag row_tau(std::uint64_t n) const;
  // Row masses as a sequence (finite list or the ramp mass sequence).
  SequenceDSL row_masses() const;

  Scalar total() const;
  bool is_normalized() const;
  Passport normalized() const;

 private:
  Passport() : atoms_(SequenceDSL::finite({})) {}
  std::vector<PassportRow> rows_;  // strictly increasing tau
  std::optional<RampRows> ramp_;
  SequenceDSL atoms_;  // canonical descending
};

// Descending canonical form of an atomic mass sequence. Finite lists are
// sorted; a prefix must dominate its analytic tail to be orderable.
SequenceDSL canonical_atoms(const SequenceDSL& atoms);

// Groups components of equal weight, sorts rows by weight, sorts the atomic
// part descending. The space is normalized first; declared-infinite spaces
// are rejected (the passport decisions assume probability measures).
Passport extract_passport(const MeasureSpaceDesc& space);

bool same_upper_row(const Passport& a, const Passport& b);

struct RatioBoundedResult {
  bool bounded;
  Scalar sup;
  std::uint64_t sup_arg = 0;
  RatioSeq seq;  // witness generator for the unbounded case
};
RatioBoundedResult ratio_bounded(const SequenceDSL& s1, const SequenceDSL& s2);

struct RatioWitness {
  double M = 0.0;
  std::uint64_t index = 0;
  double ratio = 0.0;  // value at the witness index (may overflow to inf)
};

enum class IsoReason { none, row_mismatch, atom_mismatch, mass_mismatch, ratio_unbounded };
enum class RatioDirection { first_over_second, second_over_first };

struct IsoVerdict {
  bool yes = false;
  Scalar sup_forward;   // sup over cells of mass1/mass2 (yes case)
  Scalar sup_backward;  // sup of mass2/mass1
  IsoReason reason = IsoReason::none;
  std::uint64_t mismatch_index = 0;  // first offending row / mass position
  bool mismatch_in_atoms = false;
  RatioDirection direction = RatioDirection::first_over_second;
  RatioWitness witness;  // populated for ratio_unbounded at M = 1e6
};

// Measure-preserving isomorphism test: upper rows coincide and the masses
// (rows and atoms) agree exactly (1e-12 relative in float mode).
IsoVerdict measure_iso_decision(const Passport& p1, const Passport& p2);

// Star-isomorphism test for the log-integrable function algebras: upper rows
// coincide and both mass-ratio sequences are bounded. Inputs are normalized
// first; certificates carry both sups.
IsoVerdict log_iso_decision(const Passport& p1, const Passport& p2);

// Canonical measure-space model of a passport: one component per row with id
// "h<n>", plus the atomic part.
MeasureSpaceDesc passport_space(const Passport& p);

}  // namespace logiso
