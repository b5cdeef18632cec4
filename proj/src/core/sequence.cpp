#include "sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace logiso {

namespace {

constexpr std::uint64_t kExactPowLimit = 65536;  // beyond this, evaluate in log domain

double zeta_tail(double p, std::uint64_t N) {
  // sum_{n>N} n^{-p} via Euler-Maclaurin, summing explicitly up to a floor
  // first so the remainder terms are negligible.
  std::uint64_t M = std::max<std::uint64_t>(N, 4096);
  double s = 0.0, comp = 0.0;
  for (std::uint64_t n = N + 1; n <= M; ++n) {
    double t = std::pow(static_cast<double>(n), -p) - comp;
    double u = s + t;
    comp = (u - s) - t;
    s = u;
  }
  double Nd = static_cast<double>(M);
  double head = std::pow(Nd, 1.0 - p) / (p - 1.0);
  double half = -0.5 * std::pow(Nd, -p);
  double d1 = p * std::pow(Nd, -p - 1.0) / 12.0;
  double d3 = -p * (p + 1.0) * (p + 2.0) * std::pow(Nd, -p - 3.0) / 720.0;
  return s + head + half + d1 + d3;
}

void require_positive(const Scalar& v, const char* what) {
  if (!v.is_positive()) throw Error(Errc::domain, std::string(what) + " must be positive");
}

}  // namespace

SequenceDSL SequenceDSL::finite(std::vector<Scalar> values) {
  for (const Scalar& v : values) require_positive(v, "sequence value");
  SequenceDSL s;
  s.kind_ = Kind::finite;
  s.values_ = std::move(values);
  s.tail_start_ = s.values_.size() + 1;
  return s;
}

SequenceDSL SequenceDSL::geometric(Scalar a, Scalar r) {
  require_positive(a, "geometric coefficient");
  if (!(r > Scalar(0) && r < Scalar(1)))
    throw Error(Errc::domain, "geometric ratio must lie in (0,1)");
  SequenceDSL s;
  s.kind_ = Kind::geometric;
  s.a_ = std::move(a);
  s.rp_ = std::move(r);
  s.tail_start_ = 1;
  return s;
}

SequenceDSL SequenceDSL::powerlaw(Scalar a, Scalar p) {
  require_positive(a, "power-law coefficient");
  if (!(p > Scalar(1))) throw Error(Errc::domain, "power-law exponent must exceed 1");
  SequenceDSL s;
  s.kind_ = Kind::powerlaw;
  s.a_ = std::move(a);
  s.rp_ = std::move(p);
  s.tail_start_ = 1;
  return s;
}

SequenceDSL SequenceDSL::prefix_then_tail(std::vector<Scalar> prefix, SequenceDSL tail,
                                          std::uint64_t tail_start) {
  if (tail.kind_ != Kind::geometric && tail.kind_ != Kind::powerlaw)
    throw Error(Errc::domain, "prefix tail must be geometric or power-law");
  if (tail_start != prefix.size() + 1)
    throw Error(Errc::domain, "tail_start must equal prefix length + 1");
  for (const Scalar& v : prefix) require_positive(v, "prefix value");
  if (prefix.empty()) return tail;
  SequenceDSL s;
  s.kind_ = Kind::prefix;
  s.values_ = std::move(prefix);
  s.a_ = tail.a_;
  s.rp_ = tail.rp_;
  s.tail_kind_ = tail.kind_;
  s.tail_start_ = tail_start;
  return s;
}

std::uint64_t SequenceDSL::tail_start() const { return tail_start_; }

Scalar SequenceDSL::term(std::uint64_t n) const {
  if (n == 0) throw Error(Errc::domain, "sequence index starts at 1");
  switch (kind_) {
    case Kind::finite:
      if (n > values_.size()) throw Error(Errc::unknown_atom, "index past end of finite sequence");
      return values_[n - 1];
    case Kind::geometric:
      return a_ * Scalar::pow_uint(rp_, n);
    case Kind::powerlaw: {
      if (rp_.is_integer() && n <= kExactPowLimit) {
        return a_ / Scalar::pow_uint(Scalar(n), static_cast<std::uint64_t>(rp_.as_int64()));
      }
      return Scalar::from_double(a_.as_double() *
                                 std::pow(static_cast<double>(n), -rp_.as_double()));
    }
    case Kind::prefix:
      if (n < tail_start_) return values_[n - 1];
      if (tail_kind_ == Kind::geometric) return a_ * Scalar::pow_uint(rp_, n - tail_start_ + 1);
      {
        std::uint64_t m = n - tail_start_ + 1;
        if (rp_.is_integer() && m <= kExactPowLimit)
          return a_ / Scalar::pow_uint(Scalar(m), static_cast<std::uint64_t>(rp_.as_int64()));
        return Scalar::from_double(a_.as_double() *
                                   std::pow(static_cast<double>(m), -rp_.as_double()));
      }
  }
  throw Error(Errc::domain, "bad sequence kind");
}

double SequenceDSL::term_log(std::uint64_t n) const {
  if (n == 0) throw Error(Errc::domain, "sequence index starts at 1");
  switch (kind_) {
    case Kind::finite:
      return std::log(term(n).as_double());
    case Kind::geometric:
      return std::log(a_.as_double()) + static_cast<double>(n) * std::log(rp_.as_double());
    case Kind::powerlaw:
      return std::log(a_.as_double()) - rp_.as_double() * std::log(static_cast<double>(n));
    case Kind::prefix:
      if (n < tail_start_) return std::log(values_[n - 1].as_double());
      if (tail_kind_ == Kind::geometric)
        return std::log(a_.as_double()) +
               static_cast<double>(n - tail_start_ + 1) * std::log(rp_.as_double());
      return std::log(a_.as_double()) -
             rp_.as_double() * std::log(static_cast<double>(n - tail_start_ + 1));
  }
  throw Error(Errc::domain, "bad sequence kind");
}

Scalar SequenceDSL::total() const {
  switch (kind_) {
    case Kind::finite: {
      Scalar s;
      for (const Scalar& v : values_) s += v;
      return s;
    }
    case Kind::geometric:
      return a_ * rp_ / (Scalar(1) - rp_);
    case Kind::powerlaw:
      return Scalar::from_double(a_.as_double() * (1.0 + zeta_tail(rp_.as_double(), 1)));
    case Kind::prefix: {
      Scalar s;
      for (const Scalar& v : values_) s += v;
      if (tail_kind_ == Kind::geometric) return s + a_ * rp_ / (Scalar(1) - rp_);
      return s + Scalar::from_double(a_.as_double() * (1.0 + zeta_tail(rp_.as_double(), 1)));
    }
  }
  throw Error(Errc::domain, "bad sequence kind");
}

Scalar SequenceDSL::tail_mass_after(std::uint64_t n) const {
  switch (kind_) {
    case Kind::finite: {
      Scalar s;
      for (std::uint64_t i = n; i < values_.size(); ++i) s += values_[i];
      return s;
    }
    case Kind::geometric:
      // sum_{m>n} a r^m = a r^{n+1} / (1-r)
      return a_ * Scalar::pow_uint(rp_, n + 1) / (Scalar(1) - rp_);
    case Kind::powerlaw:
      return Scalar::from_double(a_.as_double() * zeta_tail(rp_.as_double(), n));
    case Kind::prefix: {
      Scalar s;
      for (std::uint64_t i = n; i < values_.size(); ++i) s += values_[i];
      std::uint64_t consumed = n >= tail_start_ ? n - tail_start_ + 1 : 0;
      if (tail_kind_ == Kind::geometric)
        return s + a_ * Scalar::pow_uint(rp_, consumed + 1) / (Scalar(1) - rp_);
      return s + Scalar::from_double(a_.as_double() * zeta_tail(rp_.as_double(), consumed));
    }
  }
  throw Error(Errc::domain, "bad sequence kind");
}

SequenceDSL SequenceDSL::scaled(const Scalar& factor) const {
  require_positive(factor, "scale factor");
  SequenceDSL s = *this;
  for (Scalar& v : s.values_) v *= factor;
  if (kind_ != Kind::finite) s.a_ *= factor;
  return s;
}

SequenceDSL SequenceDSL::canonical() const {
  if (kind_ != Kind::prefix || tail_kind_ != Kind::geometric) return *this;
  SequenceDSL s = *this;
  // Backward extension of the tail a*r^m to the last prefix slot has value a;
  // absorb matching prefix entries into the tail.
  while (!s.values_.empty() && s.values_.back() == s.a_) {
    s.values_.pop_back();
    s.a_ /= s.rp_;
    s.tail_start_ -= 1;
  }
  if (s.values_.empty()) return geometric(s.a_, s.rp_);
  return s;
}

bool SequenceDSL::all_rational() const {
  for (const Scalar& v : values_)
    if (!v.is_rational()) return false;
  if (kind_ == Kind::finite) return true;
  return a_.is_rational() && rp_.is_rational();
}

bool operator==(const SequenceDSL& x, const SequenceDSL& y) {
  SequenceDSL a = x.canonical(), b = y.canonical();
  if (a.kind_ != b.kind_ || a.tail_kind_ != b.tail_kind_) return false;
  if (a.values_.size() != b.values_.size()) return false;
  for (std::size_t i = 0; i < a.values_.size(); ++i)
    if (a.values_[i] != b.values_[i]) return false;
  if (a.kind_ == SequenceDSL::Kind::finite) return true;
  return a.a_ == b.a_ && a.rp_ == b.rp_ && a.tail_start_ == b.tail_start_;
}

// ---------------------------------------------------------------------------
// RatioSeq

Scalar RatioSeq::Tail::value(std::uint64_t n) const {
  if (exact && n <= kExactPowLimit) {
    Scalar v = coeff * Scalar::pow_uint(growth, n);
    auto poly = [&](double e, std::uint64_t d) {
      if (e == 0.0) return;
      std::uint64_t mag = static_cast<std::uint64_t>(e < 0 ? -e : e);
      Scalar f = Scalar::pow_uint(Scalar(n - d), mag);
      if (e < 0)
        v /= f;
      else
        v *= f;
    };
    poly(e_num, d_num);
    poly(e_den, d_den);
    return v;
  }
  return Scalar::from_double(std::exp(log_value(n)));
}

double RatioSeq::Tail::log_value(std::uint64_t n) const {
  double lv = std::log(coeff.as_double()) + static_cast<double>(n) * std::log(growth.as_double());
  if (e_num != 0.0) lv += e_num * std::log(static_cast<double>(n - d_num));
  if (e_den != 0.0) lv += e_den * std::log(static_cast<double>(n - d_den));
  return lv;
}

namespace {

// One side of a ratio, for n at or past both tail starts: A * R^n * (n-d)^{-p}.
struct SideTail {
  Scalar A;
  Scalar R;       // 1 when the side has no geometric factor
  double p = 0.0; // 0 when the side has no power factor
  std::uint64_t d = 0;
};

SideTail side_tail(const SequenceDSL& s) {
  SideTail t;
  t.A = s.param_a();
  t.R = Scalar(1);
  std::uint64_t start = s.tail_start();
  SequenceDSL::Kind k = s.kind() == SequenceDSL::Kind::prefix ? s.tail_kind() : s.kind();
  if (k == SequenceDSL::Kind::geometric) {
    // a * r^{n-start+1} = (a / r^{start-1}) * r^n
    t.R = s.param_rp();
    t.A = s.param_a() / Scalar::pow_uint(t.R, start - 1);
  } else {
    t.p = s.param_rp().as_double();
    t.d = start - 1;
  }
  return t;
}

bool integral_exponent(double e) { return e == std::floor(e) && std::fabs(e) < 1e9; }

}  // namespace

RatioSeq::RatioSeq(const SequenceDSL& num, const SequenceDSL& den) {
  if (num.is_finite() != den.is_finite())
    throw Error(Errc::algebra_mismatch, "sequences have different cardinality");
  origin_ = std::make_pair(num, den);
  if (num.is_finite()) {
    if (num.finite_size() != den.finite_size())
      throw Error(Errc::algebra_mismatch, "finite sequences have different length");
    for (std::uint64_t n = 1; n <= num.finite_size(); ++n)
      prefix_.push_back(num.term(n) / den.term(n));
    analyze();
    return;
  }
  std::uint64_t start = std::max(num.tail_start(), den.tail_start());
  for (std::uint64_t n = 1; n < start; ++n) prefix_.push_back(num.term(n) / den.term(n));
  SideTail tn = side_tail(num), td = side_tail(den);
  Tail t;
  t.coeff = tn.A / td.A;
  t.growth = tn.R / td.R;
  t.e_num = -tn.p;
  t.d_num = tn.d;
  t.e_den = td.p;
  t.d_den = td.d;
  t.start = start;
  t.exact = t.coeff.is_rational() && t.growth.is_rational() && integral_exponent(t.e_num) &&
            integral_exponent(t.e_den);
  tail_ = t;
  analyze();
}

RatioSeq RatioSeq::from_rule(const RatioRule& rule) {
  RatioSeq s;
  using K = SequenceDSL::Kind;
  auto put_power = [](Tail& t, double p, std::uint64_t d) {
    // value contributes (n-d)^{-p}
    if (p >= 0) {
      t.e_num = -p;
      t.d_num = d;
    } else {
      t.e_den = -p;
      t.d_den = d;
    }
  };
  for (const Scalar& v : rule.values) {
    require_positive(v, "ratio value");
    s.prefix_.push_back(v);
  }
  K tail_kind = rule.kind == K::prefix ? rule.tail_kind : rule.kind;
  if (rule.kind != K::finite) {
    require_positive(rule.a, "ratio coefficient");
    Tail t;
    t.coeff = rule.a;
    t.growth = Scalar(1);
    t.start = rule.kind == K::prefix ? rule.tail_start : 1;
    if (t.start != s.prefix_.size() + 1)
      throw Error(Errc::domain, "tail_start must equal prefix length + 1");
    if (tail_kind == K::geometric) {
      require_positive(rule.rp, "ratio growth");
      t.growth = rule.rp;
      t.coeff = rule.a / Scalar::pow_uint(rule.rp, t.start - 1);
    } else if (tail_kind == K::powerlaw) {
      put_power(t, rule.rp.as_double(), t.start - 1);
    } else {
      throw Error(Errc::domain, "ratio tail must be geometric or power-law");
    }
    t.exact = t.coeff.is_rational() && t.growth.is_rational() && integral_exponent(t.e_num) &&
              integral_exponent(t.e_den);
    s.tail_ = t;
  }
  s.analyze();
  return s;
}

RatioSeq RatioSeq::constant(const Scalar& c) {
  require_positive(c, "ratio constant");
  RatioSeq s;
  Tail t;
  t.coeff = c;
  t.growth = Scalar(1);
  t.start = 1;
  t.exact = c.is_rational();
  s.tail_ = t;
  s.analyze();
  return s;
}

Scalar RatioSeq::at(std::uint64_t n) const {
  if (n == 0) throw Error(Errc::domain, "ratio index starts at 1");
  if (n <= prefix_.size()) return prefix_[n - 1];
  if (!tail_) throw Error(Errc::unknown_atom, "index past end of finite ratio");
  return tail_->value(n);
}

double RatioSeq::log_at(std::uint64_t n) const {
  if (n <= prefix_.size()) return std::log(prefix_[n - 1].as_double());
  if (!tail_) throw Error(Errc::unknown_atom, "index past end of finite ratio");
  return tail_->log_value(n);
}

Frac RatioSeq::frac_at(std::uint64_t n) const {
  if (origin_) return Frac{origin_->first.term(n), origin_->second.term(n)};
  return Frac{at(n), Scalar(1)};
}

RatioSeq RatioSeq::reciprocal() const {
  RatioSeq s;
  for (const Scalar& v : prefix_) s.prefix_.push_back(Scalar(1) / v);
  if (tail_) {
    Tail t;
    t.coeff = Scalar(1) / tail_->coeff;
    t.growth = Scalar(1) / tail_->growth;
    t.e_num = -tail_->e_den;
    t.d_num = tail_->d_den;
    t.e_den = -tail_->e_num;
    t.d_den = tail_->d_num;
    t.start = tail_->start;
    t.exact = tail_->exact;
    s.tail_ = t;
  }
  if (origin_) s.origin_ = std::make_pair(origin_->second, origin_->first);
  s.analyze();
  return s;
}

void RatioSeq::analyze() {
  analysis_ = RatioAnalysis{};
  analysis_.sup = Scalar(0);
  analysis_.sup_arg = 0;
  for (std::uint64_t n = 1; n <= prefix_.size(); ++n) {
    if (prefix_[n - 1] > analysis_.sup) {
      analysis_.sup = prefix_[n - 1];
      analysis_.sup_arg = n;
    }
  }
  if (!tail_) {
    analysis_.bounded = true;
    return;
  }
  const Tail& t = *tail_;
  Scalar one(1);
  double net = t.e_num + t.e_den;
  bool growth_one = (t.growth == one);
  if (t.growth > one || (growth_one && net > 0)) {
    analysis_.bounded = false;
    return;
  }
  analysis_.bounded = true;
  // Candidate indices: tail start, integers adjacent to interior critical
  // points of log value (roots of a quadratic), plus the limit for the
  // increasing-to-limit class.
  std::vector<std::uint64_t> cands{t.start};
  double lnG = std::log(t.growth.as_double());
  if (growth_one) lnG = 0.0;
  double d1 = static_cast<double>(t.d_num), d2 = static_cast<double>(t.d_den);
  double qa = lnG;
  double qb = -lnG * (d1 + d2) + t.e_num + t.e_den;
  double qc = lnG * d1 * d2 - t.e_num * d2 - t.e_den * d1;
  auto add_root = [&](double r) {
    if (!std::isfinite(r)) return;
    if (r < static_cast<double>(t.start)) return;
    if (r > 9e15) return;
    std::uint64_t f = static_cast<std::uint64_t>(std::floor(r));
    cands.push_back(std::max<std::uint64_t>(f, t.start));
    cands.push_back(std::max<std::uint64_t>(f + 1, t.start));
  };
  if (qa == 0.0) {
    if (qb != 0.0) add_root(-qc / qb);
  } else {
    double disc = qb * qb - 4 * qa * qc;
    if (disc >= 0) {
      double sq = std::sqrt(disc);
      add_root((-qb - sq) / (2 * qa));
      add_root((-qb + sq) / (2 * qa));
    }
  }
  for (std::uint64_t n : cands) {
    Scalar v = t.value(n);
    if (v > analysis_.sup) {
      analysis_.sup = v;
      analysis_.sup_arg = n;
    }
  }
  // Increasing-to-limit class: G == 1, net == 0, d_den > d_num. The tail
  // climbs strictly below its limit C, which is then the (unattained) sup.
  if (growth_one && net == 0.0 && t.e_den > 0.0 && t.d_den > t.d_num) {
    if (t.coeff > analysis_.sup) {
      analysis_.sup = t.coeff;
      analysis_.sup_arg = 0;
    }
  }
}

std::uint64_t RatioSeq::monotone_from() const {
  // Past the last critical point of the tail the sequence is monotone; return
  // an index safely beyond every candidate turning point.
  const Tail& t = *tail_;
  double lnG = (t.growth == Scalar(1)) ? 0.0 : std::log(t.growth.as_double());
  double d1 = static_cast<double>(t.d_num), d2 = static_cast<double>(t.d_den);
  double qa = lnG;
  double qb = -lnG * (d1 + d2) + t.e_num + t.e_den;
  double qc = lnG * d1 * d2 - t.e_num * d2 - t.e_den * d1;
  double last = static_cast<double>(t.start);
  if (qa == 0.0) {
    if (qb != 0.0) last = std::max(last, -qc / qb);
  } else {
    double disc = qb * qb - 4 * qa * qc;
    if (disc >= 0) {
      double sq = std::sqrt(disc);
      last = std::max(last, (-qb - sq) / (2 * qa));
      last = std::max(last, (-qb + sq) / (2 * qa));
    }
  }
  if (!std::isfinite(last) || last > 4.0e18) throw Error(Errc::domain, "ratio turning point out of range");
  return static_cast<std::uint64_t>(std::ceil(last)) + 1;
}

std::uint64_t RatioSeq::first_crossing(double bound_log, const Scalar* bound_exact, bool strict,
                                       std::uint64_t after) const {
  auto crosses = [&](std::uint64_t n) {
    if (bound_exact) {
      bool exact_ok = n <= prefix_.size() || (tail_ && tail_->exact && n <= kExactPowLimit);
      if (exact_ok) {
        Scalar v = at(n);
        return strict ? v > *bound_exact : v >= *bound_exact;
      }
    }
    double lv = log_at(n);
    return strict ? lv > bound_log : lv >= bound_log;
  };
  for (std::uint64_t n = after + 1; n <= prefix_.size(); ++n)
    if (crosses(n)) return n;
  if (!tail_) return 0;
  std::uint64_t lo = std::max(after + 1, tail_->start);
  std::uint64_t turn = monotone_from();
  // Scan the possibly non-monotone head of the tail directly.
  std::uint64_t head_end = std::min(turn, lo + 2000000);
  for (std::uint64_t n = lo; n <= head_end; ++n)
    if (crosses(n)) return n;
  if (head_end < turn) {
    // Too far to scan one by one; the region up to the turning point is made
    // of at most three monotone runs, so gallop inside it as well.
    std::uint64_t base = head_end;
    std::uint64_t step = 1;
    while (base < turn) {
      std::uint64_t next = std::min(turn, base + step);
      if (crosses(next)) {
        std::uint64_t llo = base + 1, hhi = next;
        while (llo < hhi) {
          std::uint64_t mid = llo + (hhi - llo) / 2;
          if (crosses(mid))
            hhi = mid;
          else
            llo = mid + 1;
        }
        return llo;
      }
      base = next;
      step *= 2;
    }
  }
  if (analysis_.bounded) {
    // Monotone past the turn: nonincreasing, or increasing strictly below its
    // limit. Either way a crossing exists past the turn only for the rising
    // class below its limit.
    const Tail& t = *tail_;
    bool rising = (t.growth == Scalar(1)) && (t.e_num + t.e_den == 0.0) && t.e_den > 0.0 &&
                  t.d_den > t.d_num;
    if (!rising) return 0;
    double limit_log = std::log(t.coeff.as_double());
    if (bound_log >= limit_log) return 0;
  }
  // Unbounded (or bounded-rising with the bound under the limit): gallop.
  std::uint64_t base = std::max(turn, lo);
  if (crosses(base)) return base;
  std::uint64_t step = 1;
  std::uint64_t hi = base;
  while (true) {
    if (hi > (std::uint64_t(1) << 62)) throw Error(Errc::domain, "witness search out of range");
    std::uint64_t next = hi + step;
    if (crosses(next)) {
      std::uint64_t llo = hi + 1, hhi = next;
      while (llo < hhi) {
        std::uint64_t mid = llo + (hhi - llo) / 2;
        if (crosses(mid))
          hhi = mid;
        else
          llo = mid + 1;
      }
      return llo;
    }
    hi = next;
    step *= 2;
  }
}

RatioSeq::Growth RatioSeq::growth_class() const {
  if (analysis_.bounded) return Growth::bounded;
  const Tail& t = *tail_;
  if (t.growth > Scalar(1)) return Growth::exponential;
  return Growth::polynomial;
}

double RatioSeq::poly_exponent() const { return tail_ ? tail_->e_num + tail_->e_den : 0.0; }

bool operator==(const RatioSeq& x, const RatioSeq& y) {
  if (x.prefix_.size() != y.prefix_.size()) return false;
  for (std::size_t i = 0; i < x.prefix_.size(); ++i)
    if (x.prefix_[i] != y.prefix_[i]) return false;
  if (x.tail_.has_value() != y.tail_.has_value()) return false;
  if (!x.tail_) return true;
  const auto& a = *x.tail_;
  const auto& b = *y.tail_;
  return a.coeff == b.coeff && a.growth == b.growth && a.e_num == b.e_num &&
         a.d_num == b.d_num && a.e_den == b.e_den && a.d_den == b.d_den && a.start == b.start;
}

std::uint64_t RatioSeq::first_at_least(const Scalar& bound, std::uint64_t after) const {
  return first_crossing(std::log(bound.as_double()), &bound, /*strict=*/false, after);
}

std::uint64_t RatioSeq::witness(double M) const {
  if (analysis_.bounded) throw Error(Errc::domain, "witness requested for a bounded ratio");
  Scalar b = Scalar::from_double(M);
  return first_crossing(std::log(M), &b, /*strict=*/true, 0);
}

}  // namespace logiso
