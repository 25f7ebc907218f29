#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace geowb;
using namespace geowb::testing;

TEST_CASE("metric construction checks Hermitian and positivity", "[metric]") {
  CHECK_THROWS_AS(HermitianMetric<Q>(2, {{Q(1), gq(0, 1)}, {gq(0, 1), Q(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMetric<Q>(2, {{Q(1)}}), std::invalid_argument);
  HermitianMetric<Q> indefinite(2, {{Q(1), Q(2)}, {Q(2), Q(1)}});
  CHECK_FALSE(indefinite.is_positive_definite());
  CHECK_THROWS_AS(fundamental_form(indefinite), std::invalid_argument);
  CHECK(HermitianMetric<Q>::diagonal({Q(1), Q(2), Q(3)}).is_positive_definite());
}

TEST_CASE("metric letters round trip", "[metric]") {
  auto m = HermitianMetric<Q>::from_letters(Q(2), Q(3), Q(5), gq(1, 1), gq(0, -1), gq(1, 0, 2));
  auto l = m.letters();
  CHECK(l[0] == Q(2));
  CHECK(l[3] == gq(1, 1));
  CHECK(l[4] == gq(0, -1));
  CHECK(l[5] == gq(1, 0, 2));
  CHECK(m(0, 1) == m(1, 0).conj());
  CHECK_THROWS_AS(HermitianMetric<Q>::identity(4).letters(), std::invalid_argument);
}

TEST_CASE("fundamental form of the identity", "[metric]") {
  auto omega = fundamental_form(HermitianMetric<Q>::identity(2));
  CHECK(omega.coefficient(Monomial{0b01, 0b01}) == gq(0, 1, 2));
  CHECK(omega.coefficient(Monomial{0b10, 0b10}) == gq(0, 1, 2));
  CHECK(omega.size() == 2);
  CHECK(form_power(omega, 0) == Form<Q>::one(2));
  CHECK_THROWS_AS(form_power(omega, -1), std::invalid_argument);
}

TEST_CASE("torus: every condition holds", "[metric]") {
  for (int n = 2; n <= 4; ++n) {
    auto rep = classify(StructurePresentation<Q>::torus(n), HermitianMetric<Q>::diagonal(std::vector<Q>(n, Q(3))));
    CHECK(rep.kahler.value);
    CHECK(rep.skt.value);
    CHECK(rep.astheno.value);
    CHECK(rep.balanced.value);
    CHECK(rep.gauduchon.value);
    CHECK(rep.strongly_gauduchon.value);
    CHECK_FALSE(rep.tolerance_dependent);
  }
}

TEST_CASE("fps6 witness metric is SKT but not Kahler", "[metric]") {
  auto p = fps6<Q>(catalog_parameter_sets<Q>("fps6").at("witness"));
  auto rep = classify(p, HermitianMetric<Q>::identity(3));
  CHECK(rep.skt.value);
  CHECK_FALSE(rep.kahler.value);
  CHECK(rep.gauduchon.value);  // n = 3: SKT coincides with Gauduchon
}

TEST_CASE("ft8: astheno-Kahler without SKT", "[metric]") {
  auto p = ft8<Q>(catalog_parameter_sets<Q>("ft8").at("astheno-not-skt"));
  auto rep = classify(p, HermitianMetric<Q>::identity(4));
  CHECK(rep.astheno.value);
  CHECK_FALSE(rep.skt.value);
  auto w = classify(ft8<Q>(catalog_parameter_sets<Q>("ft8").at("witness")), HermitianMetric<Q>::identity(4));
  CHECK(w.astheno.value);
  CHECK(w.skt.value);
}

TEST_CASE("balanced metric on a complex-parallelizable nilmanifold", "[metric]") {
  // Holomorphic dphi: d(omega^{n-1}) vanishes for the identity metric on the Iwasawa-type row.
  auto rep = classify(nakamura_v<Q>(2), HermitianMetric<Q>::identity(5));
  CHECK(rep.balanced.value);
  CHECK_FALSE(rep.kahler.value);
  CHECK(rep.strongly_gauduchon.value);
}

TEST_CASE("s1-pi2 diagonal metric is SKT within tolerance", "[metric]") {
  auto rep = classify(s1_pi2(), HermitianMetric<F>::identity(3));
  CHECK(rep.skt.value);
  CHECK_FALSE(rep.kahler.value);
  CHECK(rep.tolerance_dependent);
}

TEST_CASE("rank mismatch is rejected", "[metric]") {
  CHECK_THROWS_AS(classify(nakamura_iv<Q>(2), HermitianMetric<Q>::identity(3)), std::invalid_argument);
}
