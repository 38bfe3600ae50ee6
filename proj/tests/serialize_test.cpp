#include "scsamp/serialize.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace scsamp {
namespace {

using nlohmann::json;
using scsamp::testing::random_mixture;
using scsamp::testing::random_pure;

TEST(Serialize, PureRoundTrip) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 10; ++i) {
    const PureCSS s = random_pure(rng, 1 + i % 3, 4);
    const PureCSS back = pure_from_json(json::parse(to_json(s).dump()));
    ASSERT_EQ(back.size(), s.size());
    ASSERT_EQ(back.modes(), s.modes());
    for (std::size_t t = 0; t < s.size(); ++t) {
      EXPECT_EQ(back.terms()[t].coeff, s.terms()[t].coeff);
      EXPECT_EQ(back.terms()[t].labels, s.terms()[t].labels);
    }
  }
}

TEST(Serialize, DyadRoundTrip) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 10; ++i) {
    const DyadMix m = random_mixture(rng, 1 + i % 2);
    const DyadMix back = dyads_from_json(json::parse(to_json(m).dump()));
    ASSERT_EQ(back.size(), m.size());
    for (std::size_t t = 0; t < m.size(); ++t) {
      EXPECT_EQ(back.terms()[t].coeff, m.terms()[t].coeff);
      EXPECT_EQ(back.terms()[t].ket, m.terms()[t].ket);
      EXPECT_EQ(back.terms()[t].bra, m.terms()[t].bra);
    }
  }
}

TEST(Serialize, Layout) {
  const json j = to_json(scs_state(1.0, Parity::odd));
  EXPECT_EQ(j.at("kind"), "pure");
  EXPECT_EQ(j.at("modes"), 1);
  EXPECT_EQ(j.at("terms").size(), 2u);
  EXPECT_EQ(to_json(DyadMix::from_pure(PureCSS::coherent(0.5))).at("kind"), "dyads");
}

TEST(Serialize, RejectsMalformed) {
  EXPECT_THROW(pure_from_json(json::object()), std::invalid_argument);
  EXPECT_THROW(pure_from_json(json::parse(R"({"kind":"dyads","modes":1,"terms":[]})")), std::invalid_argument);
  EXPECT_THROW(pure_from_json(json::parse(R"({"kind":"pure","modes":1,"terms":[{"coeff":[1],"labels":[[0,0]]}]})")),
               std::invalid_argument);
  EXPECT_THROW(pure_from_json(json::parse(R"({"kind":"pure","modes":2,"terms":[{"coeff":[1,0],"labels":[[0,0]]}]})")),
               std::invalid_argument);
  EXPECT_THROW(pure_from_json(json::parse(R"({"kind":"pure","modes":1,"terms":[{"coeff":"x","labels":[[0,0]]}]})")),
               std::invalid_argument);
  EXPECT_THROW(dyads_from_json(json::parse(R"({"kind":"dyads","modes":1,"terms":[{"coeff":[1,0],"ket":[[0,0]]}]})")),
               std::invalid_argument);
  EXPECT_THROW(dyads_from_json(json::parse(R"([1,2,3])")), std::invalid_argument);
}

}  // namespace
}  // namespace scsamp
