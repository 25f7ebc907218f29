#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace geowb;
using namespace geowb::testing;

TEST_CASE("torus has d = 0 and is trivially adapted", "[presentation]") {
  auto t = StructurePresentation<Q>::torus(3);
  Rng rng(1);
  auto f = rng.form(3, 10);
  CHECK(differential(t, f).is_zero());
  CHECK(validate(t).ok());
  CHECK(t.is_integrable());
  CHECK(t.is_complex_parallelizable());
  CHECK(is_J_nilpotent(t));
}

TEST_CASE("constructor rejects malformed structure equations", "[presentation]") {
  CHECK_THROWS_AS(StructurePresentation<Q>("x", 2, {Form<Q>(2)}), std::invalid_argument);
  CHECK_THROWS_AS(StructurePresentation<Q>("x", 2, {Form<Q>::generator(2, holo(1)), Form<Q>(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StructurePresentation<Q>("x", 2, {Form<Q>(3), Form<Q>(3)}), std::invalid_argument);
}

TEST_CASE("d^2 failure is reported per generator", "[presentation]") {
  auto base = nakamura_v<Q>(5);
  auto dphi = base.dphi();
  dphi[1] += Form<Q>::wedge_of(5, {holo(3), anti(3)});
  StructurePresentation<Q> bad("corrupted", 5, dphi);
  auto rep = validate(bad);
  CHECK_FALSE(rep.ok());
  CHECK(rep.residuals[0].empty());
  CHECK_FALSE(rep.residuals[4].empty());
  CHECK(rep.residual_magnitudes[4] > 0);
  auto ex = validate(bad, true);
  CHECK(ex.exhaustive_checked);
  CHECK_FALSE(ex.warnings.empty());
}

TEST_CASE("non-integrable structure is flagged and del refuses it", "[presentation]") {
  StructurePresentation<Q> p("nonint", 3, {Form<Q>::wedge_of(3, {anti(2), anti(3)}), Form<Q>(3), Form<Q>(3)});
  auto rep = validate(p);
  CHECK(rep.ok());
  CHECK_FALSE(rep.integrable);
  CHECK_THROWS_AS(del(p, Form<Q>::generator(3, holo(1))), std::domain_error);
  CHECK_NOTHROW(differential(p, Form<Q>::generator(3, holo(1))));
}

TEST_CASE("del and delbar split d on a mixed structure", "[presentation]") {
  auto p = fps6<Q>(catalog_parameter_sets<Q>("fps6").at("witness"));
  auto f = Form<Q>::generator(3, holo(3));
  CHECK(differential(p, f) == del(p, f) + delbar(p, f));
  CHECK_FALSE(delbar(p, f).is_zero());
  CHECK_FALSE(p.is_complex_parallelizable());
}

TEST_CASE("J-nilpotency with and without relabelling", "[presentation]") {
  StructurePresentation<Q> p("rev", 3, {Form<Q>::wedge_of(3, {holo(2), holo(3)}), Form<Q>(3), Form<Q>(3)});
  CHECK(validate(p).ok());
  CHECK_FALSE(is_J_nilpotent(p));
  CHECK(is_J_nilpotent(p, true));
  CHECK_FALSE(validate(p).warnings.empty());
}

TEST_CASE("real presentations complexify", "[presentation]") {
  // R^2 with de^1 = de^2 = 0, and a Heisenberg-type real algebra of dimension 4.
  RealPresentation<F> flat{"flat", 2, {{}, {}}, {{1, 2}}};
  auto c = complexify_real_presentation(flat);
  CHECK(c.rank() == 1);
  CHECK(c.dphi()[0].is_zero());

  auto s = s1_pi2();
  auto rep = validate(s);
  CHECK(rep.ok());
  CHECK(rep.max_residual < 1e-10);
  CHECK(s.is_integrable());

  RealPresentation<F> bad{"bad", 2, {{}, {}}, {{1, 1}}};
  CHECK_THROWS_AS(complexify_real_presentation(bad), std::invalid_argument);
  RealPresentation<F> odd{"odd", 3, {{}, {}, {}}, {{1, 2}}};
  CHECK_THROWS_AS(complexify_real_presentation(odd), std::invalid_argument);
}

TEST_CASE("exact to float conversion preserves structure equations", "[presentation]") {
  auto p = ft8<Q>(catalog_parameter_sets<Q>("ft8").at("witness"));
  auto f = convert_presentation<F>(p);
  REQUIRE(f.rank() == 4);
  for (int i = 0; i < 4; ++i)
    for (const auto& [m, c] : p.dphi()[i].terms())
      CHECK(std::abs(f.dphi()[i].coefficient(m).to_complex() - c.to_complex()) < 1e-15);
  CHECK(validate(f).ok());
}
