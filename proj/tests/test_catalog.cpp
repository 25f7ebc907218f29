#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace geowb;
using namespace geowb::testing;

TEST_CASE("every exact catalog entry is a Lie algebra with integrable J", "[catalog]") {
  for (const auto& e : catalog()) {
    if (!e.exact) continue;
    INFO(e.key);
    auto p = build_catalog<Q>(e.key);
    CHECK(p.rank() == e.rank);
    auto rep = validate(p);
    CHECK(rep.ok());
    CHECK(rep.integrable);
    if (e.kind == "nilpotent" || e.kind == "abelian") CHECK(is_J_nilpotent(p, true));
    if (e.key.rfind("nakamura", 0) == 0) CHECK(p.is_complex_parallelizable());
  }
}

TEST_CASE("constrained rows at their non-default parameters", "[catalog]") {
  CHECK(validate(nakamura_iv<Q>(5, {{"alpha", Q(1)}})).ok());
  CHECK(validate(nakamura_v<Q>(13, {{"alpha", Q(1)}})).ok());
  CHECK(validate(nakamura_v<Q>(17, {{"gamma", Q(1)}, {"beta", Q(1)}})).ok());
  CHECK(validate(nakamura_v<Q>(20, {{"eta", Q(1)}})).ok());
  CHECK(validate(nakamura_iv<Q>(5, {{"alpha", gq(2, 1)}})).ok());
}

TEST_CASE("parameter names and ranges are checked", "[catalog]") {
  CHECK_THROWS_AS(build_catalog<Q>("fps6", {{"Z", Q(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog<Q>("nakamura-v-2", {{"alpha", Q(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog<Q>("no-such-key"), std::invalid_argument);
  CHECK_THROWS_AS(nakamura_iv<Q>(8), std::invalid_argument);
  CHECK_THROWS_AS(nakamura_v<Q>(0), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog<Q>("eta-beta-5", {{"a", Q(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(nakamura_iv<Q>(5, {{"alpha", Q(-1)}}), ConstraintError);
  CHECK_THROWS_AS(nakamura_v<Q>(13, {{"alpha", Q(0)}}), ConstraintError);
  CHECK_THROWS_AS(nakamura_v<Q>(17, {{"gamma", Q(1)}, {"beta", Q(-2)}}), ConstraintError);
  CHECK_THROWS_AS(nakamura_v<Q>(20, {{"eta", Q(-2)}}), ConstraintError);
}

TEST_CASE("s1-pi2 is float only", "[catalog]") {
  CHECK_THROWS_AS(build_catalog<Q>("s1-pi2"), BackendError);
  auto p = build_catalog<F>("s1-pi2");
  CHECK(p.rank() == 3);
  CHECK(validate(p).max_residual < 1e-10);
  CHECK_FALSE(catalog_entry("s1-pi2").exact);
}

TEST_CASE("families validate at random parameters", "[catalog]") {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    CHECK(validate(fps6<Q>(rng.params(fps6_parameter_names(), 1.0))).ok());
    CHECK(validate(ft8<Q>(rng.params(ft8_parameter_names(), 1.0))).ok());
    CHECK(validate(st10<Q>(rng.params(st10_parameter_names(), 1.0))).ok());
  }
}

TEST_CASE("eta-beta-5 and its closed transverse form", "[catalog]") {
  auto p = eta_beta5<Q>();
  CHECK(p.name() == "eta-beta-5");
  CHECK(p.dphi() == nakamura_v<Q>(3).dphi());
  auto omega = eta_beta5_three_kahler_form<Q>();
  CHECK(is_real(omega));
  CHECK(omega.bidegree() == std::make_pair(3, 3));
  CHECK(differential(p, omega).is_zero());
}

TEST_CASE("registry metadata", "[catalog]") {
  CHECK(catalog().size() == 32);
  CHECK(catalog_entry("nakamura-iv-7").notes.size() == 1);
  CHECK(catalog_entry("nakamura-v-15").notes.size() == 1);
  CHECK(catalog_entry("nakamura-v-13").parameters == std::vector<std::string>{"alpha"});
  CHECK(catalog_entry("ft8").parameters.size() == 12);
  CHECK(catalog_entry("nakamura-v-1").kind == "abelian");
  auto sets = catalog_parameter_sets<Q>("ft8");
  CHECK(sets.count("witness") == 1);
  CHECK(sets.count("astheno-not-skt") == 1);
  CHECK(catalog_parameter_sets<Q>("nakamura-v-5").empty());
}
