#pragma once

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "geowb/existence.hpp"

namespace geowb::io {

using json = nlohmann::json;

/// Malformed or inconsistent input document.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string decimal_string(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

template <Scalar S>
std::string backend_name() {
  return std::string(S::backend_name);
}

// ---------------------------------------------------------------------------
// Scalars: {"re": "p/q", "im": "p/q"}; a bare string or integer is a real value.

template <Scalar S>
json scalar_to_json(const S& z) {
  if constexpr (S::is_exact) return json{{"re", z.real().get_str()}, {"im", z.imag().get_str()}};
  else return json{{"re", decimal_string(z.real())}, {"im", decimal_string(z.imag())}};
}

namespace detail {

template <Scalar S>
typename S::real_type real_from_json(const json& j, const std::string& what) {
  if (j.is_string()) {
    if constexpr (S::is_exact) {
      try {
        return parse_rational(j.get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError(what + ": " + e.what());
      }
    } else {
      const std::string s = j.get<std::string>();
      try {
        if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
      } catch (const std::exception&) {
        throw ParseError(what + ": bad number '" + s + "'");
      }
    }
  }
  if (j.is_number_integer()) {
    if constexpr (S::is_exact) return mpq_class(j.get<long>());
    else return static_cast<double>(j.get<long>());
  }
  if (j.is_number_float()) {
    if constexpr (S::is_exact) throw ParseError(what + ": floating-point literal not allowed on the exact backend (use a string such as \"3/4\")");
    else return j.get<double>();
  }
  throw ParseError(what + ": expected a number or numeric string");
}

}  // namespace detail

template <Scalar S>
S scalar_from_json(const json& j, const std::string& what = "scalar") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      if (k != "re" && k != "im") throw ParseError(what + ": unexpected key '" + k + "'");
    auto re = j.contains("re") ? detail::real_from_json<S>(j.at("re"), what) : typename S::real_type(0);
    auto im = j.contains("im") ? detail::real_from_json<S>(j.at("im"), what) : typename S::real_type(0);
    return S(re, im);
  }
  return S(detail::real_from_json<S>(j, what), typename S::real_type(0));
}

template <Scalar S>
ParamMap<S> params_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("parameters must be a JSON object");
  ParamMap<S> out;
  for (const auto& [k, v] : j.items()) out[k] = scalar_from_json<S>(v, "parameter " + k);
  return out;
}

template <Scalar S>
json params_to_json(const ParamMap<S>& p) {
  json j = json::object();
  for (const auto& [k, v] : p) j[k] = scalar_to_json(v);
  return j;
}

// ---------------------------------------------------------------------------
// Forms: {"n": int, "terms": [{"holo": [...], "anti": [...], "re": ..., "im": ...}]}

template <Scalar S>
json form_to_json(const Form<S>& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    json t = scalar_to_json(c);
    t["holo"] = indices_of(m.holo);
    t["anti"] = indices_of(m.anti);
    terms.push_back(t);
  }
  return json{{"n", f.rank()}, {"terms", terms}};
}

template <Scalar S>
Form<S> form_from_json(const json& j, int expected_rank = -1) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) throw ParseError("form needs 'n' and 'terms'");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxRank) throw ParseError("form rank out of range");
    if (expected_rank >= 0 && n != expected_rank)
      throw ParseError("form rank " + std::to_string(n) + " does not match " + std::to_string(expected_rank));
    Form<S> f(n);
    for (const auto& t : j.at("terms")) {
      std::vector<Generator> gens;
      for (int i : t.value("holo", std::vector<int>{})) gens.push_back(holo(i));
      for (int i : t.value("anti", std::vector<int>{})) gens.push_back(anti(i));
      auto [m, sign] = normalize_monomial(n, std::span<const Generator>(gens));
      if (sign == 0) continue;
      json c = json::object();
      if (t.contains("re")) c["re"] = t.at("re");
      if (t.contains("im")) c["im"] = t.at("im");
      S coeff = scalar_from_json<S>(c, "form coefficient");
      f.add_term(m, sign > 0 ? coeff : -coeff);
    }
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("form: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(std::string("form: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Structure files: {"name", "n", "dphi": [forms], "backend"} or the real variant
// {"name", "real_dim", "de": [[{"a","b","re","im"}]], "pairing": [[a,b]], "backend"}.

template <Scalar S>
json presentation_to_json(const StructurePresentation<S>& p) {
  json d = json::array();
  for (const auto& f : p.dphi()) d.push_back(form_to_json(f));
  return json{{"name", p.name()}, {"n", p.rank()}, {"dphi", d}, {"backend", backend_name<S>()}};
}

template <Scalar S>
json real_presentation_to_json(const RealPresentation<S>& rp) {
  json de = json::array();
  for (const auto& eq : rp.de) {
    json row = json::array();
    for (const auto& t : eq) {
      json term = scalar_to_json(t.coeff);
      term["a"] = t.a;
      term["b"] = t.b;
      row.push_back(term);
    }
    de.push_back(row);
  }
  json pairing = json::array();
  for (auto [a, b] : rp.pairing) pairing.push_back({a, b});
  return json{{"name", rp.name}, {"real_dim", rp.real_dim}, {"de", de}, {"pairing", pairing},
              {"backend", backend_name<S>()}};
}

inline std::string document_backend(const json& j) {
  if (!j.is_object()) throw ParseError("structure document must be a JSON object");
  return j.value("backend", std::string("exact"));
}

template <Scalar S>
StructurePresentation<S> presentation_from_json(const json& j) {
  try {
    const std::string backend = document_backend(j);
    if (backend != "exact" && backend != "float") throw ParseError("unknown backend '" + backend + "'");
    if constexpr (S::is_exact)
      if (backend == "float") throw ParseError("structure is float-only and cannot be read on the exact backend");
    const std::string name = j.value("name", std::string("unnamed"));
    if (j.contains("de")) {
      RealPresentation<S> rp;
      rp.name = name;
      rp.real_dim = j.at("real_dim").get<int>();
      for (const auto& eq : j.at("de")) {
        std::vector<typename RealPresentation<S>::Term> row;
        for (const auto& t : eq) {
          json c = json::object();
          if (t.contains("re")) c["re"] = t.at("re");
          if (t.contains("im")) c["im"] = t.at("im");
          row.push_back({t.at("a").get<int>(), t.at("b").get<int>(), scalar_from_json<S>(c, "structure constant")});
        }
        rp.de.push_back(std::move(row));
      }
      for (const auto& pr : j.at("pairing")) rp.pairing.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
      return complexify_real_presentation(rp);
    }
    const int n = j.at("n").get<int>();
    std::vector<Form<S>> d;
    for (const auto& f : j.at("dphi")) d.push_back(form_from_json<S>(f, n));
    return StructurePresentation<S>(name, n, std::move(d));
  } catch (const json::exception& e) {
    throw ParseError(std::string("structure: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("structure: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Metrics: {"n": int, "H": [[{re, im}]], "backend"}.

template <Scalar S>
json metric_to_json(const HermitianMetric<S>& m) {
  json h = json::array();
  for (const auto& row : m.matrix()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(scalar_to_json(x));
    h.push_back(r);
  }
  return json{{"n", m.rank()}, {"H", h}, {"backend", backend_name<S>()}};
}

template <Scalar S>
HermitianMetric<S> metric_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<std::vector<S>> h;
    for (const auto& row : j.at("H")) {
      std::vector<S> r;
      for (const auto& x : row) r.push_back(scalar_from_json<S>(x, "metric entry"));
      h.push_back(std::move(r));
    }
    return HermitianMetric<S>(n, std::move(h));
  } catch (const json::exception& e) {
    throw ParseError(std::string("metric: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("metric: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports.

template <Scalar S>
json validation_to_json(const ValidationReport<S>& r) {
  json res = json::array();
  for (std::size_t k = 0; k < r.residuals.size(); ++k)
    res.push_back({{"generator", k + 1},
                   {"d_squared", r.residuals[k].empty() ? std::string("0") : r.residuals[k]},
                   {"magnitude", r.residual_magnitudes[k]}});
  return json{{"ok", r.ok()},
              {"d_squared_zero", r.d_squared_zero},
              {"integrable", r.integrable},
              {"exhaustive", r.exhaustive_checked},
              {"max_residual", r.max_residual},
              {"residuals", res},
              {"notes", r.notes},
              {"warnings", r.warnings}};
}

inline json metric_report_to_json(const MetricReport& r) {
  auto flag = [](const MetricFlag& f) { return json{{"value", f.value}, {"evidence", f.evidence}}; };
  return json{{"kahler", flag(r.kahler)},
              {"skt", flag(r.skt)},
              {"astheno_kahler", flag(r.astheno)},
              {"balanced", flag(r.balanced)},
              {"gauduchon", flag(r.gauduchon)},
              {"strongly_gauduchon", flag(r.strongly_gauduchon)},
              {"tolerance_dependent", r.tolerance_dependent},
              {"notes", r.notes}};
}

inline json complex_to_json(cplx z) { return json{{"re", decimal_string(z.real())}, {"im", decimal_string(z.imag())}}; }

inline cplx complex_from_json(const json& j) {
  return {std::stod(j.at("re").get<std::string>()), std::stod(j.at("im").get<std::string>())};
}

inline json verdict_to_json(const TransversalityVerdict& v) {
  json w = json::array();
  for (const auto& row : v.witness_factors) {
    json r = json::array();
    for (auto z : row) r.push_back(complex_to_json(z));
    w.push_back(r);
  }
  json pt = json::array();
  for (auto z : v.witness_point) pt.push_back(complex_to_json(z));
  json j{{"kind", to_string(v.kind)}, {"method", v.method},  {"value", decimal_string(v.value)},
         {"samples", v.samples},      {"seed", v.seed},      {"witness_factors", w},
         {"witness_point", pt}};
  if (!v.certificate.empty()) j["certificate"] = v.certificate;
  return j;
}

inline TransversalityVerdict verdict_from_json(const json& j) {
  TransversalityVerdict v;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "CertifiedPositive") v.kind = VerdictKind::CertifiedPositive;
  else if (kind == "Falsified") v.kind = VerdictKind::Falsified;
  else if (kind == "NotFalsified") v.kind = VerdictKind::NotFalsified;
  else throw ParseError("unknown verdict kind '" + kind + "'");
  v.method = j.at("method").get<std::string>();
  v.value = std::stod(j.at("value").get<std::string>());
  v.samples = j.at("samples").get<long>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.certificate = j.value("certificate", std::string());
  for (const auto& row : j.at("witness_factors")) {
    std::vector<cplx> r;
    for (const auto& z : row) r.push_back(complex_from_json(z));
    v.witness_factors.push_back(std::move(r));
  }
  for (const auto& z : j.at("witness_point")) v.witness_point.push_back(complex_from_json(z));
  return v;
}

// ---------------------------------------------------------------------------
// Certificates: {"beta": form, "mode": "d" | "delbar-del", "p": int,
//                "decomposition": [{"coefficient": scalar, "factors": [[scalar, ...], ...]}]}

template <Scalar S>
json certificate_to_json(const ObstructionCertificate<S>& c) {
  json dec = json::array();
  for (const auto& [coeff, sf] : c.decomposition) {
    json factors = json::array();
    for (const auto& f : sf.factors) {
      json row = json::array();
      for (const auto& x : f) row.push_back(scalar_to_json(x));
      factors.push_back(row);
    }
    dec.push_back({{"coefficient", scalar_to_json(coeff)}, {"factors", factors}});
  }
  return json{{"beta", form_to_json(c.beta)}, {"mode", to_string(c.mode)}, {"p", c.p}, {"decomposition", dec}};
}

template <Scalar S>
ObstructionCertificate<S> certificate_from_json(const json& j) {
  try {
    ObstructionCertificate<S> c;
    c.beta = form_from_json<S>(j.at("beta"));
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "d") c.mode = CertificateMode::D;
    else if (mode == "delbar-del") c.mode = CertificateMode::DelbarDel;
    else throw ParseError("unknown certificate mode '" + mode + "'");
    c.p = j.at("p").get<int>();
    for (const auto& e : j.at("decomposition")) {
      SimpleForm<S> sf;
      for (const auto& row : e.at("factors")) {
        std::vector<S> r;
        for (const auto& x : row) r.push_back(scalar_from_json<S>(x, "factor entry"));
        sf.factors.push_back(std::move(r));
      }
      c.decomposition.emplace_back(scalar_from_json<S>(e.at("coefficient"), "coefficient"), std::move(sf));
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

template <Scalar S>
json certificate_report_to_json(const CertificateReport<S>& r) {
  json raw = json::array(), norm = json::array();
  for (const auto& c : r.raw_coefficients) raw.push_back(scalar_to_json(c));
  for (const auto& c : r.normalized_coefficients) norm.push_back(scalar_to_json(c));
  return json{{"valid", r.valid},
              {"reason", r.reason},
              {"conclusion", r.conclusion},
              {"computed", form_to_json(r.computed)},
              {"claimed", form_to_json(r.claimed)},
              {"coefficients", raw},
              {"sigma_normalized_coefficients", norm},
              {"scope", "invariant-level"}};
}

inline json ddbar_report_to_json(const DdbarReport& r) {
  return json{{"holds", r.holds}, {"exact_dimension", r.exact_dimension}, {"ddbar_rank", r.ddbar_rank},
              {"scope", r.scope}};
}

}  // namespace geowb::io
