// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace geowb;
using namespace geowb::testing;

namespace {

/// Collects the first failure of a criterion.
struct Check {
  std::ostringstream why;
  bool ok = true;

  void operator()(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why << what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) c(secs < limit_s, "runtime " + std::to_string(secs) + " s over the " + std::to_string(limit_s) + " s limit");
  std::printf("%s %2d  %-44s %7.2f s%s%s\n", c.ok ? "PASS" : "FAIL", id, name.c_str(), secs, c.ok ? "" : "  -- ",
              c.ok ? "" : c.why.str().c_str());
  std::fflush(stdout);
  if (!c.ok) ++failures;
}

std::vector<std::vector<Q>> identity_matrix(int n) {
  std::vector<std::vector<Q>> h(n, std::vector<Q>(n, Q(0)));
  for (int j = 0; j < n; ++j) h[j][j] = Q(1);
  return h;
}

void lex_subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    lex_subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// d(lambda + omega^p + conj(lambda)) computed in the oracle algebra, lambda on
/// phi^{1..n} ^ conj(phi^J), J lexicographic.
Oracle::Vec oracle_closure(const StructurePresentation<Q>& pres, const std::vector<std::vector<Q>>& h, int p,
                           const std::vector<Q>& coeffs) {
  Oracle o{pres.rank()};
  std::vector<std::vector<int>> js;
  std::vector<int> cur;
  lex_subsets(o.n, p - 1, 1, cur, js);
  if (js.size() != coeffs.size()) throw std::logic_error("ansatz length mismatch");
  Oracle::Vec lambda;
  for (std::size_t k = 0; k < js.size(); ++k) {
    Oracle::Mono m;
    for (int i = 1; i <= o.n; ++i) m.push_back(i);
    for (int j : js[k]) m.push_back(j + o.n);
    Oracle::add(lambda, m, coeffs[k]);
  }
  auto psi = Oracle::sum(Oracle::sum(lambda, Oracle::power(o.fundamental(h), p)), o.conj(lambda));
  return o.d(psi, o.dgen_of(pres));
}

bool all_true(const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); }

int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int main() {
  std::printf("geowb acceptance run\n");

  criterion(1, "catalog soundness", 5.0, [](Check& c) {
    std::vector<std::pair<std::string, ParamMap<Q>>> cases;
    for (int k = 1; k <= 7; ++k) {
      ParamMap<Q> p;
      if (k == 5) p["alpha"] = Q(1);
      cases.emplace_back("nakamura-iv-" + std::to_string(k), p);
    }
    for (int k = 1; k <= 20; ++k) {
      ParamMap<Q> p;
      if (k == 13) p["alpha"] = Q(1);
      if (k == 17) p = {{"gamma", Q(1)}, {"beta", Q(1)}};
      if (k == 20) p["eta"] = Q(1);
      cases.emplace_back("nakamura-v-" + std::to_string(k), p);
    }
    for (const std::string fam : {"fps6", "ft8", "st10"}) {
      cases.emplace_back(fam, ParamMap<Q>{});
      for (const auto& [name, p] : catalog_parameter_sets<Q>(fam)) cases.emplace_back(fam, p);
    }
    cases.emplace_back("eta-beta-5", ParamMap<Q>{});
    for (const auto& [key, p] : cases) c(validate(build_catalog<Q>(key, p)).ok(), key + " fails d^2 = 0");
    auto s = validate(build_catalog<F>("s1-pi2"));
    c(s.ok() && s.max_residual < 1e-10, "s1-pi2 residual " + std::to_string(s.max_residual));
  });

  criterion(2, "closed transverse (3,3)-form on eta-beta-5", 10.0, [](Check& c) {
    auto omega = eta_beta5_three_kahler_form<Q>();
    c(differential(eta_beta5<Q>(), omega).is_zero(), "d Omega != 0");
    auto v = assess_transversality(omega, 3, SamplingConfig{10000, 20240601});
    c(v.kind == VerdictKind::NotFalsified, "verdict " + to_string(v.kind));
    c(v.samples == 10000, "sample count " + std::to_string(v.samples));
    c(v.value > 0, "minimum " + std::to_string(v.value));
  });

  criterion(3, "Omega_a quadric criterion", 0, [](Check& c) {
    const std::vector<Q> as = {Q(0), Q(1), gq(3, 0, 2), Q(2), gq(5, 0, 2)};
    for (const Q& a : as) {
      const std::string tag = "a=" + a.to_string() + ": ";
      const bool inside = a.norm() < 4;
      auto qt = quadric_transversality(omega_a_matrix(a), 1e-6);
      c((qt.kind == VerdictKind::CertifiedPositive) == inside, tag + "verdict " + to_string(qt.kind));
      auto an = omega_a_analytic(a);
      auto nu = quadric_numeric(omega_a_matrix(a), 1e-6, 64, 17);
      // The analytic value is the exact minimum of the Rayleigh quotient on the quadric.
      c(std::abs(an.value - nu.value) <= 1e-6, tag + "analytic " + std::to_string(an.value) + " vs numeric " +
                                                    std::to_string(nu.value));
      c(nu.falsified() == an.falsified(), tag + "numeric verdict " + to_string(nu.kind));
      if (a == Q(2)) c(std::abs(nu.value) <= 1e-6, tag + "numeric minimum " + std::to_string(nu.value));
    }
  });

  criterion(4, "fps6 witness", 0, [](Check& c) {
    // Independent solve: with A = D = 0 the first equation is |E|^2 + 2 Re(conj(B) C) = 0,
    // the second fixes N = (conj(C) - conj(B)) / (2 conj(E)).
    const Q B = gq(0, -2), C = gq(0, 1), E = gq(0, 2);
    c((E * E.conj() + Q(2) * Q((B.conj() * C).real())).is_zero(), "first equation");
    const Q N = (C.conj() - B.conj()) / (Q(2) * E.conj());
    c(N == gq(3, 0, 4), "N = " + N.to_string());
    FpsParams<Q> f{Q(0), B, C, Q(0), E};
    auto pres = fps6<Q>(f.as_map());
    auto omega = fundamental_form(HermitianMetric<Q>::identity(3));
    c(del(pres, delbar(pres, omega)).is_zero(), "ddbar omega != 0");
    MetricLetters<Q> id;
    c(fps_psymplectic_condition(f, id, N).is_zero(), "condition != 0");
    auto sol = fps_closure(f, id);
    c(sol.contains({Q(0), Q(0), N}), "closure system rejects the witness");
    c(differential(pres, sol.psi({Q(0), Q(0), N})).is_zero(), "d Psi != 0");
    c(oracle_closure(pres, identity_matrix(3), 2, {Q(0), Q(0), N}).empty(), "oracle d Psi != 0");
    // Perturbation N -> 1 breaks both checks.
    c(!fps_psymplectic_condition(f, id, Q(1)).is_zero(), "perturbed condition still 0");
    c(!differential(pres, sol.psi({Q(0), Q(0), Q(1)})).is_zero(), "perturbed d Psi still 0");
    c(!oracle_closure(pres, identity_matrix(3), 2, {Q(0), Q(0), Q(1)}).empty(), "perturbed oracle still 0");
  });

  criterion(5, "ft8 witnesses", 0, [](Check& c) {
    ParamMap<Q> a{{"a2", gq(1, -1)}, {"a3", Q(1)}, {"a12", Q(1)}};
    const Q M2 = gq(3, 3, 4);
    // (3/4) i (a3 + a12) + conj(M2) a2 = 0 with a2 = 1 - i gives conj(M2) = -(3/2) i / (1 - i).
    c(M2.conj() == -(gq(0, 3, 2) / gq(1, -1)), "M2 does not solve the linear line");
    c(M2.norm() == mpq_class(9, 8), "|M2|^2 = " + M2.norm().get_str());
    auto pres = ft8<Q>(a);
    auto rep = classify(pres, HermitianMetric<Q>::identity(4));
    c(rep.astheno.value, "witness not astheno");
    c(rep.skt.value, "witness not SKT");
    c(ft8_3symplectic_condition(a, Q(0), M2, Q(0)).is_zero(), "condition != 0");
    c(ft8_combined_system(a, M2), "combined system false");
    std::vector<Q> lam{Q(0), Q(0), Q(0), Q(0), M2, Q(0)};
    auto sol = ft8_closure(a);
    c(sol.contains(lam), "closure system rejects the witness");
    c(differential(pres, sol.psi(lam)).is_zero(), "d Psi != 0");
    c(oracle_closure(pres, identity_matrix(4), 3, lam).empty(), "oracle d Psi != 0");

    ParamMap<Q> b{{"a4", gq(1, 1)}, {"a3", Q(1)}, {"a12", Q(1)}};
    auto rb = classify(ft8<Q>(b), HermitianMetric<Q>::identity(4));
    c(rb.astheno.value, "second tuple not astheno");
    c(!rb.skt.value, "second tuple is SKT");
    auto pb = ft8<Q>(b);
    c(!del(pb, delbar(pb, fundamental_form(HermitianMetric<Q>::identity(4)))).is_zero(), "ddbar omega = 0");
  });

  criterion(6, "st10 witness", 0, [](Check& c) {
    ParamMap<Q> l{{"c4", gq(0, 1)}, {"b4", Q(1)}, {"a4", Q(1)}, {"a1", gq(1, 1)}};
    // Second line: 2 Re(c4 conj(a4) + c4 conj(b4) + b4 conj(a4)) = 2 = |a1|^2; fifth:
    // conj(P) = (3/2)(a4 + b4 + c4) / a1.
    const Q P = (gq(3, 0, 2) * (Q(1) + Q(1) + gq(0, 1)) / gq(1, 1)).conj();
    c(P == gq(9, 3, 4), "P = " + P.to_string());
    auto sol = st10_closure(l);
    for (const Q& L3 : {Q(0), Q(1), gq(-2, 5, 3), gq(4, -7)}) {
      c(all_true(st10_combined_lines(l, L3, P)), "combined lines at L3 = " + L3.to_string());
      St10Ansatz<Q> x;
      x.L3 = L3;
      x.P = P;
      c(st10_4symplectic_condition(l, x).is_zero(), "condition != 0");
      c(sol.contains(x.as_vector()), "closure system rejects L3 = " + L3.to_string());
      c(differential(st10<Q>(l), sol.psi(x.as_vector())).is_zero(), "d Psi != 0");
      c(oracle_closure(st10<Q>(l), identity_matrix(5), 4, x.as_vector()).empty(), "oracle d Psi != 0");
    }
  });

  criterion(7, "obstruction certificates", 0, [](Check& c) {
    for (const std::string name : {"nakamura-iv-6", "nakamura-v-5", "nakamura-v-14", "s1-pi2"}) {
      const auto& lib = library_certificate(name);
      auto run = [&](auto pres, auto cert) {
        c(verify_obstruction_certificate(pres, cert).valid, name + " does not verify");
        for (std::size_t k = 0; k < cert.decomposition.size(); ++k) {
          auto bad = cert;
          bad.decomposition[k].first = bad.decomposition[k].first + decltype(bad.decomposition[k].first)(1);
          c(!verify_obstruction_certificate(pres, bad).valid, name + " perturbed coefficient still verifies");
        }
        auto bad_beta = cert;
        bad_beta.beta = bad_beta.beta * decltype(bad_beta.decomposition[0].first)(2);
        c(!verify_obstruction_certificate(pres, bad_beta).valid, name + " scaled beta still verifies");
      };
      if (name == "s1-pi2") run(build_catalog<F>(name), convert_certificate<F>(lib.certificate));
      else run(build_catalog<Q>(lib.structure, lib.params), lib.certificate);
    }
    auto v5 = verify_obstruction_certificate(nakamura_v<Q>(5), library_certificate("nakamura-v-5").certificate);
    c(v5.computed == Form<Q>::monomial(5, Monomial{0b00110, 0b00110}, Q(-1)), "V5: d beta differs");
  });

  criterion(8, "formula versus oracle closure", 0, [](Check& c) {
    int disagreements = 0;
    {
      Rng rng(8001);
      for (int t = 0; t < 100; ++t) {
        auto params = rng.params(fps6_parameter_names());
        if (t % 2 == 0) params["E"] = rng.nonzero_scalar();
        auto f = FpsParams<Q>::from_map(params);
        MetricLetters<Q> m{gq(40 + rng.integer(0, 9)), gq(50 + rng.integer(0, 9)), gq(60 + rng.integer(0, 9)),
                           rng.scalar(), rng.scalar(), rng.scalar()};
        Q N = rng.scalar();
        if (t % 2 == 0) N = fps_psymplectic_condition(f, m, Q(0)) / f.E.conj();
        const std::vector<Q> lam{rng.scalar(), rng.scalar(), N};
        const bool formula = fps_psymplectic_condition(f, m, N).is_zero();
        disagreements += formula != oracle_closure(fps6<Q>(params), m.metric().matrix(), 2, lam).empty();
      }
    }
    {
      Rng rng(8002);
      for (int t = 0; t < 100; ++t) {
        auto a = rng.params(ft8_parameter_names(), 0.5);
        if (t % 2 == 0) a["a1"] = rng.nonzero_scalar();
        std::vector<Q> lam(6);
        for (auto& x : lam) x = rng.scalar();
        if (t % 2 == 0) lam[5] = (ft8_3symplectic_condition(a, lam[2], lam[4], Q(0)) / a.at("a1")).conj();
        const bool formula = ft8_3symplectic_condition(a, lam[2], lam[4], lam[5]).is_zero();
        disagreements += formula != oracle_closure(ft8<Q>(a), identity_matrix(4), 3, lam).empty();
      }
    }
    {
      Rng rng(8003);
      for (int t = 0; t < 100; ++t) {
        auto l = rng.params(st10_parameter_names(), 0.4);
        if (t % 2 == 0) l["a1"] = rng.nonzero_scalar();
        St10Ansatz<Q> x{rng.scalar(), rng.scalar(), rng.scalar(), rng.scalar(), rng.scalar(),
                        rng.scalar(), rng.scalar(), rng.scalar(), rng.scalar(), rng.scalar()};
        if (t % 2 == 0) {
          St10Ansatz<Q> y = x;
          y.P = Q(0);
          x.P = (st10_4symplectic_condition(l, y) / l.at("a1")).conj();
        }
        const bool formula = st10_4symplectic_condition(l, x).is_zero();
        disagreements += formula != oracle_closure(st10<Q>(l), identity_matrix(5), 4, x.as_vector()).empty();
      }
    }
    c(disagreements == 0, std::to_string(disagreements) + " disagreements");
  });

  criterion(9, "property suites (1000 cases each)", 60.0, [](Check& c) {
    const int N = 1000;
    Rng rng(9001);
    for (int t = 0; t < N; ++t) {
      const int n = rng.integer(1, 5);
      const int a = rng.integer(0, 2 * n), b = rng.integer(0, 2 * n);
      auto f = rng.form(n, 3, a), g = rng.form(n, 3, b);
      c(wedge(f, g) == wedge(g, f) * ((a * b) % 2 ? Q(-1) : Q(1)), "graded anticommutativity");
      c(conjugate(wedge(f, g)) == wedge(conjugate(f), conjugate(g)), "conjugation morphism");
      auto h = rng.form(n, 6);
      Form<Q> sum(n);
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) sum += bidegree_project(h, p, q);
      c(sum == h, "bidegree partition");
    }
    for (int t = 0; t < N; ++t) {
      auto pres = random_structure(rng);
      auto f = rng.form(pres.rank(), 2);
      auto df = del(pres, f), dbf = delbar(pres, f);
      c(differential(pres, f) == df + dbf, "d = del + delbar");
      c(del(pres, df).is_zero() && delbar(pres, dbf).is_zero(), "del^2 = delbar^2 = 0");
      c(del(pres, dbf) == -delbar(pres, df), "del delbar = -delbar del");
    }
    for (int t = 0; t < N; ++t) {
      const int n = rng.integer(2, 5), p = rng.integer(1, n - 1);
      auto psi = rng.real_pp_form(n, p, 4);
      SimpleForm<Q> beta;
      for (int r = 0; r < n - p; ++r) {
        std::vector<Q> row(n);
        for (auto& x : row) x = rng.scalar();
        beta.factors.push_back(row);
      }
      c(pairing(psi, beta).is_real(), "pairing realness");
    }
    for (int n = 1; n <= 3; ++n) {
      auto h = bott_chern_dimensions(StructurePresentation<Q>::torus(n));
      for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
          c(h[p][q] == static_cast<std::size_t>(binom(n, p) * binom(n, q)), "torus Bott-Chern numbers");
    }
  });

  criterion(10, "exact simple holomorphic forms", 0, [](Check& c) {
    auto eta = exact_simple_holomorphic_search(eta_beta5<Q>(), 2);
    c(eta.verdict == HolomorphicVerdict::NoObstruction, "eta-beta-5 verdict " + to_string(eta.verdict));
    c(eta.exact_basis.size() == 1, "eta-beta-5 exact space dimension");
    if (!eta.exact_basis.empty())
      c(!wedge(eta.exact_basis[0], eta.exact_basis[0]).is_zero(), "eta-beta-5 exact form is simple");
    auto v5 = exact_simple_holomorphic_search(nakamura_v<Q>(5), 2);
    c(v5.verdict == HolomorphicVerdict::ObstructionFound, "V5 verdict " + to_string(v5.verdict));
    auto phi23 = Form<Q>::wedge_of(5, {holo(2), holo(3)});
    auto phi4 = Form<Q>::generator(5, holo(4));
    c(differential(nakamura_v<Q>(5), phi4) == -phi23, "d phi^4 != -phi^23");
    c(v5.witness && wedge(*v5.witness, *v5.witness).is_zero(), "V5 witness not simple");
    auto cert = exact_simple_holomorphic_search(nakamura_v<Q>(5), 2, std::optional<Form<Q>>(phi23));
    c(cert.verdict == HolomorphicVerdict::ObstructionFound, "phi^23 certificate rejected");
    // Consistent with the other invariant-level verdicts: no 3-symplectic form on V5,
    // a closed transverse (3,3)-form on eta-beta-5.
    c(verify_obstruction_certificate(nakamura_v<Q>(5), library_certificate("nakamura-v-5").certificate).valid,
      "V5 certificate");
    c(differential(eta_beta5<Q>(), eta_beta5_three_kahler_form<Q>()).is_zero(), "eta-beta-5 form not closed");
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
