#include "json_io.hpp"

#include <cmath>

namespace logiso {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(Errc::schema, what, path.empty() ? "/" : path);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, std::string("missing field '") + key + "'");
  return *it;
}

BigInt bigint_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
      fail(path, "not an integer string");
    }
  }
  fail(path, "expected an integer or integer string");
}

Json bigint_to_json(const BigInt& v) {
  static const BigInt lo = -(BigInt(1) << 53), hi = BigInt(1) << 53;
  if (v > lo && v < hi) return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

std::uint64_t uint_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(path, "expected a nonnegative integer");
}

}  // namespace

Json parse_object(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::schema, "input is not valid JSON", "/");
  if (!j.is_object()) throw Error(Errc::schema, "top-level value must be a JSON object", "/");
  return j;
}

Json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) {
    Json j;
    j["num"] = bigint_to_json(numerator(s.rat()));
    j["den"] = bigint_to_json(denominator(s.rat()));
    return j;
  }
  return Json(s.as_double());
}

Scalar scalar_from_json(const Json& j, const std::string& path, bool force_exact) {
  if (j.is_object()) {
    BigInt num = bigint_from_json(field(j, "num", path), path + "/num");
    BigInt den = bigint_from_json(field(j, "den", path), path + "/den");
    if (den == 0) fail(path + "/den", "zero denominator");
    return Scalar(Rational(num, den));
  }
  if (j.is_number_integer()) return Scalar(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Scalar(static_cast<std::uint64_t>(j.get<std::uint64_t>()));
  if (j.is_number_float()) {
    double d = j.get<double>();
    if (!std::isfinite(d)) fail(path, "number must be finite");
    return force_exact ? Scalar::exact_from_double(d) : Scalar::from_double(d);
  }
  fail(path, "expected a number or {num, den}");
}

Json dsl_to_json(const SequenceDSL& s) {
  Json j;
  switch (s.kind()) {
    case SequenceDSL::Kind::finite: {
      j["kind"] = "finite";
      Json vals = Json::array();
      for (const Scalar& v : s.prefix_values()) vals.push_back(scalar_to_json(v));
      j["values"] = std::move(vals);
      break;
    }
    case SequenceDSL::Kind::geometric:
      j["kind"] = "geometric";
      j["a"] = scalar_to_json(s.param_a());
      j["r"] = scalar_to_json(s.param_rp());
      break;
    case SequenceDSL::Kind::powerlaw:
      j["kind"] = "powerlaw";
      j["a"] = scalar_to_json(s.param_a());
      j["p"] = scalar_to_json(s.param_rp());
      break;
    case SequenceDSL::Kind::prefix: {
      j["kind"] = "prefix";
      Json vals = Json::array();
      for (const Scalar& v : s.prefix_values()) vals.push_back(scalar_to_json(v));
      j["prefix"] = std::move(vals);
      Json tail;
      if (s.tail_kind() == SequenceDSL::Kind::geometric) {
        tail["kind"] = "geometric";
        tail["a"] = scalar_to_json(s.param_a());
        tail["r"] = scalar_to_json(s.param_rp());
      } else {
        tail["kind"] = "powerlaw";
        tail["a"] = scalar_to_json(s.param_a());
        tail["p"] = scalar_to_json(s.param_rp());
      }
      j["tail"] = std::move(tail);
      j["tail_start"] = s.tail_start();
      break;
    }
  }
  return j;
}

namespace {

SequenceDSL dsl_from_json_impl(const Json& j, const std::string& path, bool force_exact,
                               bool allow_prefix) {
  if (!j.is_object()) fail(path, "expected a sequence object");
  std::string kind = field(j, "kind", path).get<std::string>();
  try {
    if (kind == "finite") {
      const Json& vals = field(j, "values", path);
      if (!vals.is_array()) fail(path + "/values", "expected an array");
      std::vector<Scalar> out;
      for (std::size_t i = 0; i < vals.size(); ++i)
        out.push_back(
            scalar_from_json(vals[i], path + "/values/" + std::to_string(i), force_exact));
      return SequenceDSL::finite(std::move(out));
    }
    if (kind == "geometric")
      return SequenceDSL::geometric(scalar_from_json(field(j, "a", path), path + "/a", force_exact),
                                    scalar_from_json(field(j, "r", path), path + "/r", force_exact));
    if (kind == "powerlaw")
      return SequenceDSL::powerlaw(scalar_from_json(field(j, "a", path), path + "/a", force_exact),
                                   scalar_from_json(field(j, "p", path), path + "/p", force_exact));
    if (kind == "prefix" && allow_prefix) {
      const Json& vals = field(j, "prefix", path);
      if (!vals.is_array()) fail(path + "/prefix", "expected an array");
      std::vector<Scalar> out;
      for (std::size_t i = 0; i < vals.size(); ++i)
        out.push_back(
            scalar_from_json(vals[i], path + "/prefix/" + std::to_string(i), force_exact));
      SequenceDSL tail =
          dsl_from_json_impl(field(j, "tail", path), path + "/tail", force_exact, false);
      std::uint64_t start = uint_from_json(field(j, "tail_start", path), path + "/tail_start");
      return SequenceDSL::prefix_then_tail(std::move(out), std::move(tail), start);
    }
  } catch (const Error& e) {
    if (e.code() == Errc::domain) fail(path, e.what());
    throw;
  }
  fail(path + "/kind", "unknown sequence kind '" + kind + "'");
}

}  // namespace

SequenceDSL dsl_from_json(const Json& j, const std::string& path, bool force_exact) {
  return dsl_from_json_impl(j, path, force_exact, true);
}

RatioRule rule_from_json(const Json& j, const std::string& path, bool force_exact) {
  if (!j.is_object()) fail(path, "expected a ratio rule object");
  std::string kind = field(j, "kind", path).get<std::string>();
  RatioRule r;
  auto values_of = [&](const char* key) {
    const Json& vals = field(j, key, path);
    if (!vals.is_array()) fail(path + "/" + key, "expected an array");
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < vals.size(); ++i)
      out.push_back(
          scalar_from_json(vals[i], path + "/" + key + "/" + std::to_string(i), force_exact));
    return out;
  };
  if (kind == "finite") {
    r.kind = SequenceDSL::Kind::finite;
    r.values = values_of("values");
    return r;
  }
  if (kind == "geometric") {
    r.kind = SequenceDSL::Kind::geometric;
    r.a = scalar_from_json(field(j, "a", path), path + "/a", force_exact);
    r.rp = scalar_from_json(field(j, "r", path), path + "/r", force_exact);
    return r;
  }
  if (kind == "powerlaw") {
    r.kind = SequenceDSL::Kind::powerlaw;
    r.a = scalar_from_json(field(j, "a", path), path + "/a", force_exact);
    r.rp = scalar_from_json(field(j, "p", path), path + "/p", force_exact);
    return r;
  }
  if (kind == "prefix") {
    r.kind = SequenceDSL::Kind::prefix;
    r.values = values_of("prefix");
    const Json& tail = field(j, "tail", path);
    std::string tk = field(tail, "kind", path + "/tail").get<std::string>();
    if (tk == "geometric") {
      r.tail_kind = SequenceDSL::Kind::geometric;
      r.rp = scalar_from_json(field(tail, "r", path + "/tail"), path + "/tail/r", force_exact);
    } else if (tk == "powerlaw") {
      r.tail_kind = SequenceDSL::Kind::powerlaw;
      r.rp = scalar_from_json(field(tail, "p", path + "/tail"), path + "/tail/p", force_exact);
    } else {
      fail(path + "/tail/kind", "ratio tail must be geometric or powerlaw");
    }
    r.a = scalar_from_json(field(tail, "a", path + "/tail"), path + "/tail/a", force_exact);
    r.tail_start = uint_from_json(field(j, "tail_start", path), path + "/tail_start");
    return r;
  }
  fail(path + "/kind", "unknown ratio rule kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Spaces and passports

Json space_to_json(const MeasureSpaceDesc& s) {
  Json j;
  j["schema"] = "logiso/space/1";
  if (s.has_atoms()) j["atoms"] = dsl_to_json(s.atoms());
  if (s.has_ramp()) {
    Json c;
    c["tau_base"] = s.ramp().tau_base;
    c["mass_dsl"] = dsl_to_json(s.ramp_masses());
    j["components"] = std::move(c);
  } else if (!s.components().empty()) {
    Json arr = Json::array();
    for (const HomogeneousComponent& c : s.components()) {
      Json cj;
      cj["id"] = c.id;
      cj["tau"] = c.tau.index;
      cj["mass"] = scalar_to_json(c.mass);
      arr.push_back(std::move(cj));
    }
    j["components"] = std::move(arr);
  }
  if (s.declared_infinite())
    j["total_mass"] = "infinite";
  else
    j["total_mass"] = scalar_to_json(s.total_mass());
  return j;
}

MeasureSpaceDesc space_from_json(const Json& j, bool force_exact) {
  if (!j.is_object()) fail("/", "expected a space object");
  SequenceDSL atoms = SequenceDSL::finite({});
  if (j.contains("atoms") && !j["atoms"].is_null())
    atoms = dsl_from_json(j["atoms"], "/atoms", force_exact);
  std::optional<Scalar> declared_total;
  bool declared_infinite = false;
  if (j.contains("total_mass") && !j["total_mass"].is_null()) {
    const Json& t = j["total_mass"];
    if (t.is_string()) {
      if (t.get<std::string>() != "infinite")
        fail("/total_mass", "expected a number, {num, den}, or \"infinite\"");
      declared_infinite = true;
    } else {
      declared_total = scalar_from_json(t, "/total_mass", force_exact);
    }
  }
  try {
    if (j.contains("components") && !j["components"].is_null()) {
      const Json& c = j["components"];
      if (c.is_object()) {
        ComponentRamp ramp;
        ramp.tau_base =
            static_cast<std::uint32_t>(uint_from_json(field(c, "tau_base", "/components"),
                                                      "/components/tau_base"));
        ramp.masses =
            dsl_from_json(field(c, "mass_dsl", "/components"), "/components/mass_dsl", force_exact);
        return MeasureSpaceDesc::make_ramp(std::move(atoms), std::move(ramp),
                                           std::move(declared_total), declared_infinite);
      }
      if (!c.is_array()) fail("/components", "expected an array or a ramp object");
      std::vector<HomogeneousComponent> comps;
      for (std::size_t i = 0; i < c.size(); ++i) {
        std::string p = "/components/" + std::to_string(i);
        const Json& cj = c[i];
        HomogeneousComponent hc;
        hc.id = field(cj, "id", p).get<std::string>();
        hc.tau = WeightTag{static_cast<std::uint32_t>(uint_from_json(field(cj, "tau", p), p + "/tau"))};
        hc.mass = scalar_from_json(field(cj, "mass", p), p + "/mass", force_exact);
        comps.push_back(std::move(hc));
      }
      return MeasureSpaceDesc::make(std::move(atoms), std::move(comps), std::move(declared_total),
                                    declared_infinite);
    }
    return MeasureSpaceDesc::make(std::move(atoms), {}, std::move(declared_total),
                                  declared_infinite);
  } catch (const Error& e) {
    if (e.code() == Errc::domain && e.path().empty()) fail("/", e.what());
    throw;
  }
}

Json passport_to_json(const Passport& p) {
  Json j;
  j["schema"] = "logiso/passport/1";
  if (p.has_ramp()) {
    Json r;
    r["tau_base"] = p.ramp().tau_base;
    r["mass_dsl"] = dsl_to_json(p.ramp().masses);
    j["rows"] = std::move(r);
  } else {
    Json arr = Json::array();
    for (const PassportRow& r : p.rows()) {
      Json rj;
      rj["tau"] = r.tau.index;
      rj["mass"] = scalar_to_json(r.mass);
      arr.push_back(std::move(rj));
    }
    j["rows"] = std::move(arr);
  }
  if (p.has_atoms()) j["atoms"] = dsl_to_json(p.atoms());
  return j;
}

Passport passport_from_json(const Json& j, bool force_exact) {
  if (!j.is_object()) fail("/", "expected a passport object");
  SequenceDSL atoms = SequenceDSL::finite({});
  if (j.contains("atoms") && !j["atoms"].is_null())
    atoms = dsl_from_json(j["atoms"], "/atoms", force_exact);
  const Json& rows = field(j, "rows", "");
  try {
    if (rows.is_object()) {
      RampRows r;
      r.tau_base = static_cast<std::uint32_t>(
          uint_from_json(field(rows, "tau_base", "/rows"), "/rows/tau_base"));
      r.masses = dsl_from_json(field(rows, "mass_dsl", "/rows"), "/rows/mass_dsl", force_exact);
      return Passport::from_ramp(std::move(r), std::move(atoms));
    }
    if (!rows.is_array()) fail("/rows", "expected an array or a ramp object");
    std::vector<PassportRow> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::string p = "/rows/" + std::to_string(i);
      PassportRow r;
      r.tau = WeightTag{
          static_cast<std::uint32_t>(uint_from_json(field(rows[i], "tau", p), p + "/tau"))};
      r.mass = scalar_from_json(field(rows[i], "mass", p), p + "/mass", force_exact);
      out.push_back(std::move(r));
    }
    return Passport::from_rows(std::move(out), std::move(atoms));
  } catch (const Error& e) {
    if (e.code() == Errc::domain && e.path().empty()) fail("/rows", e.what());
    throw;
  }
}

// ---------------------------------------------------------------------------
// Events and functions

Json event_to_json(const Event& e) {
  Json j = Json::object();
  if (!e.atoms.empty()) {
    Json arr = Json::array();
    for (std::uint64_t k : e.atoms) arr.push_back(k);
    j["atoms"] = std::move(arr);
  }
  if (!e.comps.empty()) {
    Json c = Json::object();
    for (const auto& [id, sub] : e.comps) c[id] = scalar_to_json(sub);
    j["components"] = std::move(c);
  }
  return j;
}

Event event_from_json(const Json& j, const std::string& path, bool force_exact) {
  if (!j.is_object()) fail(path, "expected an event object");
  Event e;
  if (j.contains("atoms")) {
    const Json& a = j["atoms"];
    if (!a.is_array()) fail(path + "/atoms", "expected an array of atom indices");
    for (std::size_t i = 0; i < a.size(); ++i)
      e.atoms.insert(uint_from_json(a[i], path + "/atoms/" + std::to_string(i)));
  }
  if (j.contains("components")) {
    const Json& c = j["components"];
    if (!c.is_object()) fail(path + "/components", "expected an object of sub-masses");
    for (auto it = c.begin(); it != c.end(); ++it)
      e.comps.emplace(it.key(),
                      scalar_from_json(it.value(), path + "/components/" + it.key(), force_exact));
  }
  return e;
}

Json function_to_json(const SimpleFunction& f) {
  Json j;
  j["schema"] = "logiso/function/1";
  Json cells = Json::array();
  for (const AtomCell& c : f.atom_cells()) {
    Json cj;
    cj["cell"] = event_to_json(Event::atom(c.atom));
    if (c.c.log_domain()) {
      cj["ell"] = scalar_to_json(c.c.log1p_abs());
    } else {
      cj["re"] = c.c.value().real();
      cj["im"] = c.c.value().imag();
    }
    cells.push_back(std::move(cj));
  }
  for (const CompCell& c : f.comp_cells()) {
    Json cj;
    cj["cell"] = event_to_json(Event::component(c.comp, c.submass));
    if (c.c.log_domain()) {
      cj["ell"] = scalar_to_json(c.c.log1p_abs());
    } else {
      cj["re"] = c.c.value().real();
      cj["im"] = c.c.value().imag();
    }
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  if (f.has_dsl()) j["dsl_support"] = dsl_to_json(f.dsl_coeffs());
  if (f.has_tail()) j["truncated"] = true;
  return j;
}

SimpleFunction function_from_json(const Json& j, const MeasureSpaceDesc& space, bool force_exact) {
  if (!j.is_object()) fail("/", "expected a function object");
  if (j.contains("dsl_support") && !j["dsl_support"].is_null()) {
    if (j.contains("cells") && !j["cells"].empty())
      fail("/cells", "dsl-supported functions carry no explicit cells");
    SimpleFunction f = SimpleFunction::with_dsl_support(
        dsl_from_json(j["dsl_support"], "/dsl_support", force_exact));
    f.validate(space);
    return f;
  }
  const Json& cells = field(j, "cells", "");
  if (!cells.is_array()) fail("/cells", "expected an array of cells");
  std::vector<std::pair<Event, Coeff>> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string p = "/cells/" + std::to_string(i);
    const Json& cj = cells[i];
    Event e = event_from_json(field(cj, "cell", p), p + "/cell", force_exact);
    Coeff c;
    if (cj.contains("ell")) {
      c = Coeff::from_log1p(scalar_from_json(cj["ell"], p + "/ell", force_exact));
    } else {
      double re = cj.contains("re") ? field(cj, "re", p).get<double>() : 0.0;
      double im = cj.contains("im") ? cj["im"].get<double>() : 0.0;
      c = Coeff::from_complex({re, im});
    }
    out.emplace_back(std::move(e), std::move(c));
  }
  try {
    return SimpleFunction::from_cells(out, space);
  } catch (const Error& e) {
    if (e.code() == Errc::domain && e.path().empty()) fail("/cells", e.what());
    throw;
  }
}

SpacePairing pairing_from_json(const Json& j, bool) {
  if (!j.is_object()) fail("/", "expected a pairing object");
  SpacePairing p;
  const Json& pairs = field(j, "pairs", "");
  if (!pairs.is_array()) fail("/pairs", "expected an array of {from, to}");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::string path = "/pairs/" + std::to_string(i);
    const Json& pj = pairs[i];
    auto name = [&](const char* key) -> std::string {
      const Json& v = field(pj, key, path);
      if (v.is_string()) return v.get<std::string>();
      return ramp_component_id(uint_from_json(v, path + "/" + key));
    };
    p.comp_pairs.emplace_back(name("from"), name("to"));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Results

Json frac_to_json(const Frac& f) {
  Json j;
  j["num"] = scalar_to_json(f.num);
  j["den"] = scalar_to_json(f.den);
  j["value"] = f.value().as_double();
  return j;
}

namespace {

Json part_to_json(const std::vector<Frac>& fracs, const std::vector<std::string>* ids) {
  Json j;
  j["kind"] = "list";
  Json arr = Json::array();
  for (const Frac& f : fracs) arr.push_back(frac_to_json(f));
  j["ratios"] = std::move(arr);
  if (ids) {
    Json idj = Json::array();
    for (const std::string& s : *ids) idj.push_back(s);
    j["ids"] = std::move(idj);
  }
  return j;
}

}  // namespace

Json derivative_to_json(const RNDerivative& d) {
  Json j;
  j["schema"] = "logiso/derivative/1";
  if (d.has_atom_seq()) {
    Json a;
    a["kind"] = "pair";
    const RatioSeq& s = d.atom_seq();
    Json sample = Json::array();
    for (std::uint64_t n = 1; n <= 8; ++n) sample.push_back(s.at(n).as_double());
    a["leading_ratios"] = std::move(sample);
    j["atoms"] = std::move(a);
  } else if (!d.atom_fracs().empty()) {
    j["atoms"] = part_to_json(d.atom_fracs(), nullptr);
  }
  if (d.has_comp_seq()) {
    Json c;
    c["kind"] = "pair";
    Json sample = Json::array();
    for (std::uint64_t n = 1; n <= 8; ++n) sample.push_back(d.comp_seq().at(n).as_double());
    c["leading_ratios"] = std::move(sample);
    j["components"] = std::move(c);
  } else if (!d.comp_fracs().empty()) {
    j["components"] = part_to_json(d.comp_fracs(), &d.comp_ids());
  }
  if (d.unit_tail()) j["unit_tail"] = true;
  Json cert;
  if (d.bounded()) {
    cert["bounded"] = true;
    cert["sup"] = d.sup().as_double();
    if (d.sup().is_rational()) cert["sup_exact"] = scalar_to_json(d.sup());
  } else {
    cert["bounded"] = false;
    cert["part"] = d.unbounded_part() == RNDerivative::Part::atoms ? "atoms" : "components";
    Json w;
    std::uint64_t idx = d.witness(1e6);
    w["M"] = 1e6;
    w["index"] = idx;
    w["ratio"] = std::exp(d.unbounded_seq().log_at(idx));
    cert["witness"] = std::move(w);
  }
  j["certificate"] = std::move(cert);
  return j;
}

Json norm_to_json(const LogNormResult& r) {
  Json j;
  j["schema"] = "logiso/norm/1";
  j["finite"] = r.finite;
  if (r.finite) {
    j["value"] = r.value;
    j["tail_bound"] = r.tail_bound;
  } else {
    j["value"] = "infinite";
    Json lb = Json::array();
    for (std::uint64_t k = 1; k <= 16; ++k) lb.push_back(divergence_lower_bound(r, k));
    j["lower_bounds"] = std::move(lb);
  }
  if (!r.partial_sums.empty()) {
    Json ps = Json::array();
    for (double v : r.partial_sums) ps.push_back(v);
    j["partial_sums"] = std::move(ps);
  }
  return j;
}

Json verdict_to_json(const IsoVerdict& v) {
  Json j;
  j["schema"] = "logiso/verdict/1";
  if (v.yes) {
    j["decision"] = "yes";
    j["sup_ratios"] = Json::array({v.sup_forward.as_double(), v.sup_backward.as_double()});
    if (v.sup_forward.is_rational() && v.sup_backward.is_rational())
      j["sup_ratios_exact"] =
          Json::array({scalar_to_json(v.sup_forward), scalar_to_json(v.sup_backward)});
    return j;
  }
  j["decision"] = "no";
  Json r;
  switch (v.reason) {
    case IsoReason::row_mismatch:
      r["kind"] = "row_mismatch";
      r["index"] = v.mismatch_index;
      break;
    case IsoReason::atom_mismatch:
      r["kind"] = "atom_mismatch";
      break;
    case IsoReason::mass_mismatch:
      r["kind"] = "mass_mismatch";
      r["index"] = v.mismatch_index;
      r["in_atoms"] = v.mismatch_in_atoms;
      break;
    case IsoReason::ratio_unbounded: {
      r["kind"] = "ratio_unbounded";
      r["direction"] = v.direction == RatioDirection::first_over_second ? "first_over_second"
                                                                        : "second_over_first";
      r["in_atoms"] = v.mismatch_in_atoms;
      Json w;
      w["M"] = v.witness.M;
      w["index"] = v.witness.index;
      w["ratio"] = v.witness.ratio;
      r["witness"] = std::move(w);
      break;
    }
    case IsoReason::none:
      r["kind"] = "none";
      break;
  }
  j["reason"] = std::move(r);
  return j;
}

Json counterexample_to_json(const Counterexample& c) {
  Json j;
  j["schema"] = "logiso/counterexample/1";
  j["K"] = c.indices.size();
  Json idx = Json::array();
  for (std::uint64_t n : c.indices) idx.push_back(n);
  j["indices"] = std::move(idx);
  Json mu = Json::array();
  for (double v : c.mu_partials) mu.push_back(v);
  j["mu_partials"] = std::move(mu);
  Json nu = Json::array();
  for (double v : c.nu_lower_bounds) nu.push_back(v);
  j["nu_lower_bounds"] = std::move(nu);
  j["f"] = function_to_json(c.f);
  return j;
}

Json error_to_json(const Error& e) {
  Json j;
  j["schema"] = "logiso/error/1";
  Json ej;
  ej["code"] = errc_name(e.code());
  ej["message"] = e.what();
  if (!e.path().empty()) ej["path"] = e.path();
  j["error"] = std::move(ej);
  return j;
}

}  // namespace logiso
