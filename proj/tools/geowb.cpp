// geowb: command-line front end for the invariant-form analyses.
//
// Exit codes: 0 holds / success, 1 checked and fails, 2 usage or parse error,
// 3 internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "geowb/geowb.hpp"
#include "json.hpp"

namespace {

using namespace geowb;
using json = nlohmann::json;

enum Exit { kHolds = 0, kFails = 1, kUsage = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string backend = "auto";
  double epsilon = 1e-12;
  long samples = 10000;
  std::uint64_t seed = 0;
  bool json = false;
};

struct Source {
  std::string file, catalog, params_file, param_set;
  bool given() const { return !file.empty() || !catalog.empty(); }
};

struct Outcome {
  int code = kHolds;
  json doc;
  std::string text;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::ParseError(path + ": " + e.what());
  }
}

bool use_float(const Globals& g, const Source& src) {
  if (g.backend == "exact") return false;
  if (g.backend == "float") return true;
  if (!src.catalog.empty()) return !catalog_entry(src.catalog).exact;
  if (!src.file.empty()) return io::document_backend(read_json_file(src.file)) == "float";
  return false;
}

/// Runs fn.template operator()<S>() on the selected backend.
template <class Fn>
Outcome on_backend(bool is_float, Fn&& fn) {
  if (is_float) return fn.template operator()<ComplexFloat>();
  return fn.template operator()<GaussianRational>();
}

template <Scalar S>
ParamMap<S> load_params(const std::string& family, const Source& src) {
  ParamMap<S> params;
  if (!src.param_set.empty()) {
    auto sets = catalog_parameter_sets<S>(family);
    auto it = sets.find(src.param_set);
    if (it == sets.end()) throw UsageError("no parameter set '" + src.param_set + "' for " + family);
    params = it->second;
  }
  if (!src.params_file.empty())
    for (auto& [k, v] : io::params_from_json<S>(read_json_file(src.params_file))) params[k] = v;
  return params;
}

template <Scalar S>
StructurePresentation<S> load_structure(const Source& src) {
  if (!src.file.empty()) return io::presentation_from_json<S>(read_json_file(src.file));
  if (!src.catalog.empty()) return build_catalog<S>(src.catalog, load_params<S>(src.catalog, src));
  throw UsageError("a structure is required (--structure FILE or --catalog KEY)");
}

std::string yes_no(bool b) { return b ? "YES" : "NO"; }

void add_source_options(CLI::App* sub, Source& src) {
  auto* f = sub->add_option("--structure", src.file, "structure JSON file");
  auto* c = sub->add_option("--catalog", src.catalog, "catalog key");
  f->excludes(c);
  sub->add_option("--params", src.params_file, "JSON object of named parameters");
  sub->add_option("--param-set", src.param_set, "named parameter tuple from the catalog");
}

// ---------------------------------------------------------------------------

template <Scalar S>
Outcome cmd_validate(const Source& src, bool exhaustive) {
  auto pres = load_structure<S>(src);
  auto rep = validate(pres, exhaustive);
  Outcome out;
  out.doc = io::validation_to_json(rep);
  out.doc["structure"] = pres.name();
  out.doc["backend"] = io::backend_name<S>();
  std::ostringstream t;
  t << "structure: " << pres.name() << " (rank " << pres.rank() << ", " << io::backend_name<S>() << " backend)\n";
  t << "d^2 = 0: " << yes_no(rep.d_squared_zero);
  if (!S::is_exact) t << " (max residual " << rep.max_residual << ")";
  t << "\n";
  for (std::size_t k = 0; k < rep.residuals.size(); ++k)
    if (!rep.residuals[k].empty()) t << "  d(d phi^" << k + 1 << ") = " << rep.residuals[k] << "\n";
  t << "integrable: " << yes_no(rep.integrable) << "\n";
  for (const auto& n : rep.notes) t << "note: " << n << "\n";
  for (const auto& w : rep.warnings) t << "warning: " << w << "\n";
  out.text = t.str();
  out.code = rep.ok() ? kHolds : kFails;
  return out;
}

template <Scalar S>
Outcome cmd_classify(const Source& src, const std::string& metric_file) {
  auto pres = load_structure<S>(src);
  auto metric = metric_file.empty() ? HermitianMetric<S>::identity(pres.rank())
                                    : io::metric_from_json<S>(read_json_file(metric_file));
  if (metric.rank() != pres.rank()) throw UsageError("metric rank differs from structure rank");
  auto rep = classify(pres, metric);
  Outcome out;
  out.doc = io::metric_report_to_json(rep);
  out.doc["structure"] = pres.name();
  out.doc["backend"] = io::backend_name<S>();
  std::ostringstream t;
  t << "structure: " << pres.name() << "\n";
  auto line = [&](const char* name, const MetricFlag& f) {
    t << "  " << name << ": " << yes_no(f.value) << "  [" << f.evidence << "]\n";
  };
  line("Kahler", rep.kahler);
  line("SKT", rep.skt);
  line("astheno-Kahler", rep.astheno);
  line("balanced", rep.balanced);
  line("Gauduchon", rep.gauduchon);
  line("strongly Gauduchon", rep.strongly_gauduchon);
  for (const auto& n : rep.notes) t << "note: " << n << "\n";
  out.text = t.str();
  return out;
}

struct TransverseArgs {
  std::string form_file, named_form;
  std::string a_re = "0", a_im = "0";
  int slot = 2;
  int p = 0;
};

template <Scalar S>
S scalar_arg(const std::string& re, const std::string& im) {
  return io::scalar_from_json<S>(json{{"re", re}, {"im", im}}, "--a");
}

template <Scalar S>
Outcome cmd_transverse(const Source& src, const TransverseArgs& a, const SamplingConfig& cfg) {
  Form<S> psi;
  int p = a.p;
  if (!a.form_file.empty()) {
    psi = io::form_from_json<S>(read_json_file(a.form_file));
  } else if (a.named_form == "eta-beta-5-omega") {
    psi = eta_beta5_three_kahler_form<S>();
    if (p == 0) p = 3;
  } else if (a.named_form == "omega-a") {
    psi = omega_a_form(scalar_arg<S>(a.a_re, a.a_im), a.slot);
    if (p == 0) p = 2;
  } else {
    throw UsageError("give --form FILE or --named-form eta-beta-5-omega|omega-a");
  }
  if (p == 0) {
    if (psi.is_zero()) throw UsageError("--p is required for the zero form");
    auto bd = psi.bidegree();
    if (!bd || bd->first != bd->second) throw UsageError("form is not of a single bidegree (p,p)");
    p = bd->first;
  }
  Outcome out;
  std::ostringstream t;
  TransversalityVerdict v;
  if (psi.is_zero()) {
    v.kind = VerdictKind::Falsified;
    v.method = "zero form";
    v.value = 0.0;
  } else {
    v = assess_transversality(psi, p, cfg);
  }
  out.doc["verdict"] = io::verdict_to_json(v);
  out.doc["p"] = p;
  out.doc["backend"] = io::backend_name<S>();
  t << "transversality of a real (" << p << "," << p << ")-form on rank " << psi.rank() << ": " << to_string(v.kind)
    << "\n  method: " << v.method << "\n";
  if (!v.certificate.empty()) t << "  certificate: " << v.certificate << "\n";
  t << "  value: " << v.value << "\n";
  if (v.samples > 0) t << "  samples: " << v.samples << ", seed: " << v.seed << "\n";
  for (std::size_t r = 0; r < v.witness_factors.size(); ++r) {
    t << "  witness factor " << r + 1 << ":";
    for (auto z : v.witness_factors[r]) t << " (" << z.real() << "," << z.imag() << ")";
    t << "\n";
  }
  if (src.given()) {
    auto pres = load_structure<S>(src);
    if (pres.rank() != psi.rank()) throw UsageError("form rank differs from structure rank");
    bool closed = differential(pres, psi).is_zero();
    bool ddbar = del(pres, delbar(pres, psi)).is_zero();
    out.doc["d_closed"] = closed;
    out.doc["ddbar_closed"] = ddbar;
    t << "  d-closed on " << pres.name() << ": " << yes_no(closed) << "\n";
    t << "  ddbar-closed on " << pres.name() << ": " << yes_no(ddbar) << "\n";
  }
  out.text = t.str();
  out.code = v.falsified() ? kFails : kHolds;
  return out;
}

// ---------------------------------------------------------------------------
// p-symplectic existence for the three families.

const std::vector<std::string>& ansatz_letters(const std::string& family) {
  static const std::vector<std::string> fps = {"L", "M", "N"};
  static const std::vector<std::string> ft8l = {"L1", "L2", "L3", "M1", "M2", "N"};
  static const std::vector<std::string> st10l = {"L1", "L2", "L3", "M1", "M2", "N1", "S1", "S2", "S3", "P"};
  if (family == "fps6") return fps;
  if (family == "ft8") return ft8l;
  if (family == "st10") return st10l;
  throw UsageError("unknown family '" + family + "' (fps6, ft8, st10)");
}

template <Scalar S>
Outcome cmd_psymplectic(const std::string& family, const Source& src, const std::string& metric_file,
                        const std::string& ansatz_file) {
  const auto& letters = ansatz_letters(family);
  ParamMap<S> params = load_params<S>(family, src);
  if (!metric_file.empty() && family != "fps6") throw UsageError("--metric is only used by fps6");

  MetricLetters<S> ml;
  if (!metric_file.empty()) {
    auto m = io::metric_from_json<S>(read_json_file(metric_file));
    auto l = m.letters();
    ml = MetricLetters<S>{l[0], l[1], l[2], l[3], l[4], l[5]};
  }
  auto pres = build_catalog<S>(family, params);
  const int p = pres.rank() - 1;
  auto metric = family == "fps6" ? ml.metric() : standard_metric<S>(pres.rank());
  AnsatzSolution<S> sol = family == "fps6" ? fps_closure(FpsParams<S>::from_map(params), ml)
                          : family == "ft8" ? ft8_closure(params)
                                            : st10_closure(params);

  std::vector<S> lambda;
  bool given = !ansatz_file.empty();
  if (given) {
    auto a = io::params_from_json<S>(read_json_file(ansatz_file));
    for (const auto& [k, v] : a)
      if (std::find(letters.begin(), letters.end(), k) == letters.end())
        throw UsageError("unknown ansatz letter '" + k + "' for " + family);
    for (const auto& l : letters) lambda.push_back(a.count(l) ? a.at(l) : S::zero());
  } else if (sol.consistent) {
    lambda = sol.particular;
  }
  auto at = [&](const std::string& l) {
    auto it = std::find(letters.begin(), letters.end(), l);
    return lambda[it - letters.begin()];
  };

  Outcome out;
  std::ostringstream t;
  out.doc["family"] = family;
  out.doc["p"] = p;
  out.doc["parameters"] = io::params_to_json(params);
  out.doc["ansatz_label"] = sol.label;
  out.doc["closure_system_consistent"] = sol.consistent;
  out.doc["solution_real_dimension"] = sol.real_dimension();
  auto rep = classify(pres, metric);
  out.doc["metric"] = io::metric_report_to_json(rep);

  bool exists = false;
  if (lambda.empty()) {
    t << p << "-symplectic: NO within the " << sol.label << " (closure system inconsistent)\n";
    out.doc["p_symplectic"] = false;
  } else {
    S condition = family == "fps6" ? fps_psymplectic_condition(FpsParams<S>::from_map(params), ml, at("N"))
                  : family == "ft8" ? ft8_3symplectic_condition(params, at("L3"), at("M2"), at("N"))
                                    : st10_4symplectic_condition(params, St10Ansatz<S>{at("L1"), at("L2"), at("L3"),
                                                                                       at("M1"), at("M2"), at("N1"),
                                                                                       at("S1"), at("S2"), at("S3"),
                                                                                       at("P")});
    Form<S> psi = sol.psi(lambda);
    bool closed = differential(pres, psi).is_zero();
    if (closed != condition.is_zero())
      throw InternalError("closed-form condition and direct closure disagree (condition = " + condition.to_string() +
                          ")");
    exists = closed;
    json ans = json::object();
    for (std::size_t k = 0; k < letters.size(); ++k) ans[letters[k]] = io::scalar_to_json(lambda[k]);
    out.doc["ansatz"] = ans;
    out.doc["ansatz_source"] = given ? "file" : "particular solution";
    out.doc["condition"] = io::scalar_to_json(condition);
    out.doc["direct_closure"] = closed;
    out.doc["p_symplectic"] = exists;
    if (exists)
      out.doc["transversality"] = io::verdict_to_json(metric_power_verdict());
    t << p << "-symplectic: " << yes_no(exists) << " (condition = " << condition.to_string()
      << (exists ? "; transversality: metric-power certificate)" : ")") << "\n";
    t << "  direct d(Psi) = 0: " << yes_no(closed) << "\n";
    t << "  ansatz (" << (given ? "from file" : "particular solution") << "):";
    for (std::size_t k = 0; k < letters.size(); ++k)
      if (!lambda[k].is_zero()) t << " " << letters[k] << "=" << lambda[k].to_string();
    t << "\n";
  }
  t << "SKT: " << yes_no(rep.skt.value) << "\n";
  t << "astheno-Kahler: " << yes_no(rep.astheno.value) << "\n";
  if (family == "fps6" && !lambda.empty()) {
    auto f = FpsParams<S>::from_map(params);
    if (metric.is_diagonal()) {
      bool sys = fps_skt_2symplectic_system(f, at("N"));
      out.doc["skt_2symplectic_system"] = sys;
      t << "SKT + 2-symplectic system (diagonal metric): " << yes_no(sys) << "\n";
    }
  }
  if (family == "ft8") {
    bool asth = ft8_astheno_identity(params);
    out.doc["astheno_identity"] = asth;
    if (detail::param(params, "a8", S::zero()).is_zero() && !lambda.empty()) {
      bool comb = ft8_combined_system(params, at("M2"));
      out.doc["combined_system"] = comb;
      t << "combined SKT + astheno + 3-symplectic system: " << yes_no(comb) << "\n";
    }
    if (exists && rep.skt.value && rep.astheno.value) t << "3-symplectic + SKT + astheno: YES\n";
  }
  if (family == "st10" && !lambda.empty()) {
    try {
      auto lines = st10_combined_lines(params, at("L3"), at("P"));
      out.doc["combined_lines"] = lines;
      t << "combined system lines:";
      for (bool b : lines) t << " " << (b ? "true" : "false");
      t << "\n";
    } catch (const std::invalid_argument& e) {
      t << "combined system: not applicable (" << e.what() << ")\n";
    }
  }
  out.text = t.str();
  out.code = exists ? kHolds : kFails;
  return out;
}

// ---------------------------------------------------------------------------

struct ObstructArgs {
  std::string cert_file, library;
  bool search = false;
  long budget = 10000;
  int p = 0;
  std::string mode = "d";
};

template <Scalar S>
Outcome certificate_outcome(const StructurePresentation<S>& pres, const ObstructionCertificate<S>& cert) {
  auto rep = verify_obstruction_certificate(pres, cert);
  Outcome out;
  out.doc = io::certificate_report_to_json(rep);
  out.doc["structure"] = pres.name();
  out.doc["certificate"] = io::certificate_to_json(cert);
  std::ostringstream t;
  t << pres.name() << ": " << (rep.valid ? rep.conclusion : "certificate invalid") << "\n";
  if (!rep.valid) t << "  reason: " << rep.reason << "\n";
  t << "  computed: " << rep.computed.to_string() << "\n";
  t << "  claimed:  " << rep.claimed.to_string() << "\n";
  out.text = t.str();
  out.code = rep.valid ? kHolds : kFails;
  return out;
}

template <Scalar S>
Outcome cmd_obstruct(const Source& src, const ObstructArgs& a) {
  if (!a.library.empty()) {
    const auto& lib = library_certificate(a.library);
    auto params = ParamMap<S>{};
    for (const auto& [k, v] : lib.params) {
      if constexpr (S::is_exact) params[k] = v;
      else params[k] = S(v.to_complex());
    }
    auto pres = build_catalog<S>(lib.structure, params);
    return certificate_outcome(pres, convert_certificate<S>(lib.certificate));
  }
  auto pres = load_structure<S>(src);
  if (!a.cert_file.empty())
    return certificate_outcome(pres, io::certificate_from_json<S>(read_json_file(a.cert_file)));
  if (!a.search) throw UsageError("give --library NAME, --cert FILE or --search");
  if (a.p <= 0) throw UsageError("--search needs --p");
  CertificateMode mode;
  if (a.mode == "d") mode = CertificateMode::D;
  else if (a.mode == "delbar-del") mode = CertificateMode::DelbarDel;
  else throw UsageError("--mode is d or delbar-del");
  auto found = search_obstruction_certificates(pres, a.p, mode, a.budget);
  if (!found.empty()) {
    Outcome out = certificate_outcome(pres, found.front());
    out.doc["search_budget"] = a.budget;
    return out;
  }
  Outcome out;
  out.doc = json{{"structure", pres.name()}, {"found", false}, {"search_budget", a.budget}};
  out.text = pres.name() + ": no certificate found within budget " + std::to_string(a.budget) +
             " (inconclusive)\n";
  out.code = kFails;
  return out;
}

template <Scalar S>
Outcome cmd_holomorphic(const Source& src, int q, const std::string& hint_file) {
  auto pres = load_structure<S>(src);
  std::optional<Form<S>> hint;
  if (!hint_file.empty()) hint = io::form_from_json<S>(read_json_file(hint_file), pres.rank());
  auto res = exact_simple_holomorphic_search(pres, q, hint);
  Outcome out;
  out.doc = json{{"structure", pres.name()},
                 {"q", q},
                 {"verdict", to_string(res.verdict)},
                 {"method", res.method},
                 {"detail", res.detail},
                 {"exact_dimension", static_cast<long>(res.exact_basis.size())},
                 {"scope", "invariant-level"}};
  if (res.witness) out.doc["witness"] = io::form_to_json(*res.witness);
  if (res.primitive) out.doc["primitive"] = io::form_to_json(*res.primitive);
  std::ostringstream t;
  t << pres.name() << ": exact simple holomorphic " << q << "-form: " << to_string(res.verdict) << "\n";
  t << "  method: " << res.method << "\n";
  if (!res.detail.empty()) t << "  " << res.detail << "\n";
  if (res.witness) t << "  witness: " << res.witness->to_string() << "\n";
  if (res.primitive) t << "  primitive: " << res.primitive->to_string() << "\n";
  out.text = t.str();
  out.code = res.verdict == HolomorphicVerdict::NoObstruction ? kHolds : kFails;
  return out;
}

template <Scalar S>
Outcome cmd_bc_dims(const Source& src) {
  auto pres = load_structure<S>(src);
  auto h = bott_chern_dimensions(pres);
  Outcome out;
  out.doc = json{{"structure", pres.name()}, {"bott_chern", h}, {"scope", "invariant-level"}};
  std::ostringstream t;
  t << "invariant Bott-Chern dimensions of " << pres.name() << " (row p, column q):\n";
  for (const auto& row : h) {
    t << " ";
    for (auto d : row) t << " " << d;
    t << "\n";
  }
  out.text = t.str();
  return out;
}

template <Scalar S>
Outcome cmd_ddbar(const Source& src, int p, int q) {
  auto pres = load_structure<S>(src);
  auto rep = invariant_ddbar_lemma_check(pres, p, q);
  Outcome out;
  out.doc = io::ddbar_report_to_json(rep);
  out.doc["structure"] = pres.name();
  out.doc["p"] = p;
  out.doc["q"] = q;
  std::ostringstream t;
  t << pres.name() << ": ddbar-lemma in bidegree (" << p << "," << q << "): " << (rep.holds ? "holds" : "fails")
    << " (exact " << rep.exact_dimension << ", ddbar-image " << rep.ddbar_rank << "; " << rep.scope << ")\n";
  out.text = t.str();
  out.code = rep.holds ? kHolds : kFails;
  return out;
}

Outcome cmd_catalog_list() {
  Outcome out;
  out.doc = json::array();
  std::ostringstream t;
  for (const auto& e : catalog()) {
    out.doc.push_back(json{{"key", e.key},
                           {"rank", e.rank},
                           {"kind", e.kind},
                           {"provenance", e.provenance},
                           {"parameters", e.parameters},
                           {"notes", e.notes},
                           {"backend", e.exact ? "exact" : "float"}});
    t << e.key << "  rank " << e.rank << "  " << e.kind;
    if (!e.parameters.empty()) {
      t << "  params:";
      for (const auto& p : e.parameters) t << " " << p;
    }
    if (!e.exact) t << "  (float only)";
    t << "\n";
    for (const auto& n : e.notes) t << "    " << n << "\n";
  }
  out.text = t.str();
  return out;
}

template <Scalar S>
Outcome cmd_catalog_show(const Source& src) {
  auto pres = load_structure<S>(src);
  Outcome out;
  out.doc = io::presentation_to_json(pres);
  out.text = out.doc.dump(2) + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant forms, Hermitian metrics and p-Kahler existence on Lie algebras"};
  app.require_subcommand(1);
  Globals g;
  bool seed_given = false;
  app.add_option("--backend", g.backend, "exact, float, or auto (float only when the structure needs it)")
      ->check(CLI::IsMember({"auto", "exact", "float"}))
      ->capture_default_str();
  app.add_option("--epsilon", g.epsilon, "float-backend zero tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", g.samples, "sample count for randomized transversality")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t s) { g.seed = s, seed_given = true; }, "RNG seed (falls back to GEOWB_SEED)");
  app.add_flag("--json", g.json, "emit a JSON report");
  app.fallthrough();

  Source src;

  auto* validate_cmd = app.add_subcommand("validate", "check d^2 = 0 and integrability");
  bool exhaustive = false;
  add_source_options(validate_cmd, src);
  validate_cmd->add_flag("--exhaustive", exhaustive, "also check d^2 on all degree-1 conjugates");

  auto* classify_cmd = app.add_subcommand("classify", "evaluate the Hermitian metric conditions");
  std::string metric_file;
  add_source_options(classify_cmd, src);
  classify_cmd->add_option("--metric", metric_file, "metric JSON file (default: identity)");

  auto* transverse_cmd = app.add_subcommand("transverse", "test transversality of a real (p,p)-form");
  TransverseArgs targs;
  add_source_options(transverse_cmd, src);
  transverse_cmd->add_option("--form", targs.form_file, "form JSON file");
  transverse_cmd->add_option("--named-form", targs.named_form, "eta-beta-5-omega or omega-a")
      ->check(CLI::IsMember({"eta-beta-5-omega", "omega-a"}));
  transverse_cmd->add_option("--p", targs.p, "bidegree (p,p); inferred when omitted");
  transverse_cmd->add_option("--a", targs.a_re, "real part of the omega-a parameter");
  transverse_cmd->add_option("--a-im", targs.a_im, "imaginary part of the omega-a parameter");
  transverse_cmd->add_option("--slot", targs.slot, "omega-a off-diagonal slot (1..3)")->check(CLI::Range(1, 3));

  auto* psym_cmd = app.add_subcommand("psymplectic", "p-symplectic existence on fps6, ft8 or st10");
  std::string family, ansatz_file;
  psym_cmd->add_option("--family", family, "fps6, ft8 or st10")->required();
  psym_cmd->add_option("--params", src.params_file, "JSON object of family parameters");
  psym_cmd->add_option("--param-set", src.param_set, "named parameter tuple");
  psym_cmd->add_option("--metric", metric_file, "rank-3 metric JSON file (fps6 only)");
  psym_cmd->add_option("--ansatz", ansatz_file, "JSON object of ansatz coefficients");

  auto* obstruct_cmd = app.add_subcommand("obstruct", "verify or search an obstruction certificate");
  ObstructArgs oargs;
  add_source_options(obstruct_cmd, src);
  obstruct_cmd->add_option("--cert", oargs.cert_file, "certificate JSON file");
  obstruct_cmd->add_option("--library", oargs.library, "built-in certificate name");
  obstruct_cmd->add_flag("--search", oargs.search, "search for a certificate");
  obstruct_cmd->add_option("--budget", oargs.budget, "search budget")->check(CLI::PositiveNumber);
  obstruct_cmd->add_option("--p", oargs.p, "p for the search");
  obstruct_cmd->add_option("--mode", oargs.mode, "d or delbar-del");

  auto* holo_cmd = app.add_subcommand("holomorphic", "search an exact simple holomorphic q-form");
  int holo_q = 2;
  std::string holo_cert;
  add_source_options(holo_cmd, src);
  holo_cmd->add_option("--q", holo_q, "degree")->check(CLI::PositiveNumber);
  holo_cmd->add_option("--hint", holo_cert, "candidate exact simple q-form (form JSON) tried first");

  auto* bc_cmd = app.add_subcommand("bc-dims", "invariant Bott-Chern dimensions");
  add_source_options(bc_cmd, src);

  auto* ddbar_cmd = app.add_subcommand("ddbar-lemma", "invariant ddbar-lemma check in one bidegree");
  int dd_p = 1, dd_q = 1;
  add_source_options(ddbar_cmd, src);
  ddbar_cmd->add_option("--p", dd_p, "holomorphic degree")->required();
  ddbar_cmd->add_option("--q", dd_q, "antiholomorphic degree")->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "list or show catalog structures");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "list catalog keys");
  auto* show_cmd = catalog_cmd->add_subcommand("show", "print a structure as JSON");
  show_cmd->add_option("key", src.catalog, "catalog key")->required();
  show_cmd->add_option("--params", src.params_file, "JSON object of parameters");
  show_cmd->add_option("--param-set", src.param_set, "named parameter tuple");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (!seed_given) {
    if (const char* env = std::getenv("GEOWB_SEED")) {
      try {
        std::size_t used = 0;
        g.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        std::cerr << "error: GEOWB_SEED is not an unsigned integer\n";
        return kUsage;
      }
    }
  }
  set_float_tolerance(g.epsilon);
  SamplingConfig cfg;
  cfg.samples = g.samples;
  cfg.seed = g.seed;

  try {
    Outcome out;
    if (*validate_cmd) {
      out = on_backend(use_float(g, src), [&]<Scalar S>() { return cmd_validate<S>(src, exhaustive); });
    } else if (*classify_cmd) {
      out = on_backend(use_float(g, src), [&]<Scalar S>() { return cmd_classify<S>(src, metric_file); });
    } else if (*transverse_cmd) {
      out = on_backend(use_float(g, src), [&]<Scalar S>() { return cmd_transverse<S>(src, targs, cfg); });
      out.doc["config"] = json{{"samples", cfg.samples}, {"seed", cfg.seed}, {"tolerance", cfg.tolerance}};
    } else if (*psym_cmd) {
      ansatz_letters(family);
      out = on_backend(g.backend == "float",
                       [&]<Scalar S>() { return cmd_psymplectic<S>(family, src, metric_file, ansatz_file); });
    } else if (*obstruct_cmd) {
      bool is_float = g.backend == "float" ||
                      (g.backend == "auto" &&
                       (!oargs.library.empty() ? !catalog_entry(library_certificate(oargs.library).structure).exact
                                               : use_float(g, src)));
      out = on_backend(is_float, [&]<Scalar S>() { return cmd_obstruct<S>(src, oargs); });
    } else if (*holo_cmd) {
      out = on_backend(use_float(g, src), [&]<Scalar S>() { return cmd_holomorphic<S>(src, holo_q, holo_cert); });
    } else if (*bc_cmd) {
      out = on_backend(use_float(g, src), [&]<Scalar S>() { return cmd_bc_dims<S>(src); });
    } else if (*ddbar_cmd) {
      out = on_backend(use_float(g, src), [&]<Scalar S>() { return cmd_ddbar<S>(src, dd_p, dd_q); });
    } else if (*list_cmd) {
      out = cmd_catalog_list();
    } else if (*show_cmd) {
      out = on_backend(use_float(g, src), [&]<Scalar S>() { return cmd_catalog_show<S>(src); });
      out.text = out.doc.dump(2) + "\n";
    }
    if (g.json) std::cout << out.doc.dump(2) << "\n";
    else std::cout << out.text;
    return out.code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    // Bad parameters, unknown keys, backend mismatches, malformed certificates.
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
