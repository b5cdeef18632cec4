#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scalar.hpp"

namespace logiso {

// Finite presentation of a positive sequence, indexed from n = 1. This is the
// only way infinite mass/coefficient data enters the library: arbitrary user
// sequences are rejected rather than silently truncated, because boundedness
// of a ratio sequence is not decidable from finitely many terms.
//
//   finite     values v_1..v_k
//   geometric  a * r^n          a > 0, 0 < r < 1
//   powerlaw   a / n^p          a > 0, p > 1
//   prefix     explicit values v_1..v_k, then a geometric or power tail
//              re-indexed to start at position tail_start = k + 1
class SequenceDSL {
 public:
  enum class Kind { finite, geometric, powerlaw, prefix };

  static SequenceDSL finite(std::vector<Scalar> values);
  static SequenceDSL geometric(Scalar a, Scalar r);
  static SequenceDSL powerlaw(Scalar a, Scalar p);
  static SequenceDSL prefix_then_tail(std::vector<Scalar> prefix, SequenceDSL tail,
                                      std::uint64_t tail_start);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  std::uint64_t finite_size() const { return values_.size(); }
  bool empty() const { return kind_ == Kind::finite && values_.empty(); }

  // 1-based; throws UnknownAtom past the end of a finite list.
  Scalar term(std::uint64_t n) const;
  double term_log(std::uint64_t n) const;

  // Sum of the whole sequence. Exact (rational) for finite/geometric data
  // with rational parameters; double with ~1e-15 relative accuracy for
  // power-law tails (Euler-Maclaurin).
  Scalar total() const;
  // Sum of all terms past index n.
  Scalar tail_mass_after(std::uint64_t n) const;

  SequenceDSL scaled(const Scalar& factor) const;
  // Collapses a prefix that merely repeats its geometric tail.
  SequenceDSL canonical() const;

  bool all_rational() const;
  // First index of the analytic tail (finite_size()+1 for finite lists).
  std::uint64_t tail_start() const;

  const std::vector<Scalar>& prefix_values() const { return values_; }
  const Scalar& param_a() const { return a_; }
  const Scalar& param_rp() const { return rp_; }
  // For Kind::prefix: the tail shape (geometric or powerlaw).
  Kind tail_kind() const { return tail_kind_; }

  friend bool operator==(const SequenceDSL& x, const SequenceDSL& y);

 private:
  SequenceDSL() = default;

  Kind kind_ = Kind::finite;
  std::vector<Scalar> values_;  // finite values or prefix
  Scalar a_;                    // tail coefficient
  Scalar rp_;                   // tail ratio r or exponent p
  Kind tail_kind_ = Kind::finite;
  std::uint64_t tail_start_ = 1;
};

// Result of the boundedness analysis of a positive sequence ratio.
struct RatioAnalysis {
  bool bounded = true;
  Scalar sup;              // least upper bound (bounded case)
  std::uint64_t sup_arg = 0;  // index attaining sup; 0 = approached in the limit only
};

// One-sided ratio rule for presenting a Radon-Nikodym derivative directly:
// the same grammar as SequenceDSL but with the summability constraints
// dropped (any r > 0, any real p), since a ratio need not have finite mass.
struct RatioRule {
  SequenceDSL::Kind kind = SequenceDSL::Kind::finite;
  std::vector<Scalar> values;  // finite values or prefix
  Scalar a;
  Scalar rp;
  SequenceDSL::Kind tail_kind = SequenceDSL::Kind::finite;
  std::uint64_t tail_start = 1;
};

// A positive sequence ratio rho(n) = num(n)/den(n) in analyzed normal form:
// finitely many explicit leading values followed by C * G^n * (n-d1)^e1 *
// (n-d2)^e2 with e1 <= 0 <= e2. Every pair of SequenceDSL kinds compiles to
// this form, which makes boundedness decidable with an explicit sup or a
// monotone witness generator.
class RatioSeq {
 public:
  RatioSeq(const SequenceDSL& num, const SequenceDSL& den);
  static RatioSeq from_rule(const RatioRule& rule);
  static RatioSeq constant(const Scalar& c);

  bool is_finite() const { return !tail_.has_value(); }
  std::uint64_t finite_size() const { return prefix_.size(); }

  Scalar at(std::uint64_t n) const;
  double log_at(std::uint64_t n) const;
  // Unevaluated num/den pair when built from two sequences; at(n)/1 otherwise.
  Frac frac_at(std::uint64_t n) const;

  const RatioAnalysis& analysis() const { return analysis_; }
  RatioSeq reciprocal() const;

  // Tail growth class: how the ratio escapes to infinity (or fails to).
  enum class Growth { bounded, exponential, polynomial };
  Growth growth_class() const;
  // Net power exponent of the polynomial class.
  double poly_exponent() const;

  // Structural equality of the analyzed forms.
  friend bool operator==(const RatioSeq& x, const RatioSeq& y);

  // Smallest n > after with rho(n) >= bound; 0 when no such index exists.
  std::uint64_t first_at_least(const Scalar& bound, std::uint64_t after) const;
  // Smallest n with rho(n) > M. Monotone in M. Only valid when unbounded.
  std::uint64_t witness(double M) const;

 private:
  struct Tail {
    Scalar coeff;   // C > 0
    Scalar growth;  // G > 0; 1 when neither side carries a geometric factor
    double e_num = 0.0;       // <= 0
    std::uint64_t d_num = 0;  // shift: factor (n - d_num)^e_num
    double e_den = 0.0;       // >= 0
    std::uint64_t d_den = 0;  // factor (n - d_den)^e_den
    std::uint64_t start = 1;  // form valid for n >= start (> both shifts)
    bool exact = false;       // rational C, G and integral exponents

    Scalar value(std::uint64_t n) const;
    double log_value(std::uint64_t n) const;
  };

  RatioSeq() = default;
  void analyze();
  std::uint64_t first_crossing(double bound_log, const Scalar* bound_exact, bool strict,
                               std::uint64_t after) const;
  // Index beyond which the tail is provably monotone (nonincreasing for the
  // bounded classes, nondecreasing for the unbounded ones).
  std::uint64_t monotone_from() const;

  std::vector<Scalar> prefix_;  // explicit values for n = 1..prefix_.size()
  std::optional<Tail> tail_;
  std::optional<std::pair<SequenceDSL, SequenceDSL>> origin_;
  RatioAnalysis analysis_;
};

}  // namespace logiso
