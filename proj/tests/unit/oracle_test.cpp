#include "oracle.hpp"

#include <gtest/gtest.h>

#include "constraints.hpp"
#include "mereology/lattice.hpp"
#include "mereology/modalities.hpp"
#include "mereology/models.hpp"
#include "mereology/relations.hpp"

using namespace mereology;

TEST(Oracle, TrivialIdentities) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = random_system(seed);
    for (const auto& np : m.parts) {
      EXPECT_TRUE(oracle::meet(np.part, np.part).same_partition(np.part));
      EXPECT_TRUE(oracle::join(np.part, top(m.system)).same_partition(top(m.system)));
      const auto yes = Constraint::constant(np.part.codomain_ptr(), true);
      EXPECT_TRUE(oracle::allows(np.part, top(m.system), yes).bits().all());
    }
  }
}

TEST(Oracle, AgreesWithCoreOnBicycle) {
  const auto bike = build_bicycle(2);
  const auto parts = oracle::parts_with_bounds({bike.part("Pedal"), bike.part("Wheel")});
  ASSERT_EQ(parts.size(), 4U);
  for (const auto& p : parts) {
    for (const auto& q : parts) {
      EXPECT_TRUE(meet(p, q).same_partition(oracle::meet(p, q)));
      EXPECT_TRUE(join(p, q).same_partition(oracle::join(p, q)));
      EXPECT_EQ(part_leq(q, p).has_value(), oracle::part_of(q, p));
      for (const auto& phi : oracle::constraints_on(p, 5, 6, 16)) {
        EXPECT_EQ(allows(p, q, phi), oracle::allows(p, q, phi));
        EXPECT_EQ(ensures(p, q, phi), oracle::ensures(p, q, phi));
      }
    }
  }
}

TEST(Oracle, AgreesWithCoreOnRandomSystems) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto m = random_system(seed);
    for (const auto& p : m.parts) {
      for (const auto& q : m.parts) {
        for (std::size_t a = 0; a < p.part.size(); ++a) {
          for (std::size_t b = 0; b < q.part.size(); ++b) {
            ASSERT_EQ(compatible(p.part, a, q.part, b), oracle::compatible(p.part, a, q.part, b));
            ASSERT_EQ(determines(p.part, a, q.part, b), oracle::determines(p.part, a, q.part, b));
          }
        }
        ASSERT_TRUE(meet(p.part, q.part).same_partition(oracle::meet(p.part, q.part)));
        ASSERT_EQ(strongly_disjoint(p.part, q.part), oracle::strongly_disjoint(p.part, q.part));
      }
    }
  }
}

TEST(Oracle, ConstraintEnumeration) {
  const auto m = random_system(3, 8, 2);
  const Part whole = top(m.system);
  EXPECT_EQ(oracle::constraints_on(whole, 0, 8).size(), 256U);
  EXPECT_EQ(oracle::constraints_on(whole, 0, 4, 10).size(), 2U + 8U + 10U);
  EXPECT_EQ(oracle::constraints_on(whole, 1, 4, 10).size(), 20U);
}
