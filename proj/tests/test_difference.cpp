#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"
#include "urp/difference.hpp"

using namespace urp;
using urp::test::set_of;

namespace {

const PairDescriptor kAllTwo{RadixSequence::constant(2), SideFlag::EvenInA};

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

BasePair all_two_base(const Integer& bound) {
  return {urp::test::moser_a(bound.convert_to<std::uint64_t>()), urp::test::moser_b(bound.convert_to<std::uint64_t>())};
}

}  // namespace

TEST(Interval, Examples) {
  EXPECT_EQ(interval_bounds(kAllTwo, 1), (DiffInterval{1, -2, 1}));
  EXPECT_EQ(interval_bounds(kAllTwo, 2), (DiffInterval{2, -10, 5}));
  EXPECT_EQ(interval_bounds(kAllTwo, 3), (DiffInterval{3, -42, 21}));
  EXPECT_EQ(interval_bounds(kAllTwo, 3).size(), 64);
  PairDescriptor swapped{RadixSequence::constant(2), SideFlag::EvenInB};
  EXPECT_EQ(interval_bounds(swapped, 3), (DiffInterval{3, -21, 42}));
  EXPECT_THROW(interval_bounds(kAllTwo, 0), InvalidInput);
}

TEST(Interval, SizeIsTheBlockWeight) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    PairDescriptor pd{urp::test::random_sequence(rng, 5), trial % 2 ? SideFlag::EvenInA : SideFlag::EvenInB};
    for (std::size_t k = 1; k <= 12; ++k) ASSERT_EQ(interval_bounds(pd, k).size(), weight(pd, 2 * k));
  }
}

TEST(Interval, EveryDifferenceHitOnce) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 6; ++trial) {
    auto radices = urp::test::random_radices(rng, 10, 2, 4);
    for (SideFlag side : {SideFlag::EvenInA, SideFlag::EvenInB}) {
      PairDescriptor pd{RadixSequence(radices), side};
      for (std::size_t k = 1; k <= 5; ++k) {
        Integer top = weight(pd, 2 * k) - 1;
        auto a = elements_up_to(pd, Which::A, top);
        auto b = elements_up_to(pd, Which::B, top);
        ASSERT_EQ(Integer(a.size()) * b.size(), top + 1);
        auto iv = interval_bounds(pd, k);
        auto h = oracle::diff_census(a, b, {iv.lo, iv.hi}, {.witness_limit = 0});
        // |A_k| |B_k| = |I_k| pairs and every value of I_k hit once: nothing falls outside.
        ASSERT_EQ(h.counts.size(), 1u);
        ASSERT_EQ(Integer(h.counts.at(1).total), iv.size());
      }
    }
  }
}

TEST(SolveDifference, Examples) {
  EXPECT_EQ(solve_difference(kAllTwo, 0), (DifferencePair{0, 0}));
  EXPECT_EQ(solve_difference(kAllTwo, 3), (DifferencePair{5, 2}));
  EXPECT_EQ(solve_difference(kAllTwo, -7), (DifferencePair{1, 8}));
}

TEST(SolveDifference, AgreesWithOracleOnI3) {
  auto a = urp::test::moser_a(255);
  auto b = urp::test::moser_b(255);
  auto reps = oracle::representations(oracle::Kind::Difference, a, b, {-42, 21});
  ASSERT_EQ(reps.size(), 64u);
  for (int n = -42; n <= 21; ++n) {
    const auto& r = reps[n + 42];
    ASSERT_EQ(r.size(), 1u) << n;
    ASSERT_EQ(solve_difference(kAllTwo, n), (DifferencePair{r[0].a, r[0].b})) << n;
  }
}

TEST(SolveDifference, AgreesWithOracleOnRandomI2) {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 20; ++trial) {
    PairDescriptor pd{urp::test::random_sequence(rng, 6), trial % 2 ? SideFlag::EvenInA : SideFlag::EvenInB};
    auto iv = interval_bounds(pd, 2);
    Integer top = weight(pd, 6) - 1;
    auto a = elements_up_to(pd, Which::A, top);
    auto b = elements_up_to(pd, Which::B, top);
    auto reps = oracle::representations(oracle::Kind::Difference, a, b, {iv.lo, iv.hi});
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Integer n = iv.lo + i;
      ASSERT_EQ(reps[i].size(), 1u) << n;
      ASSERT_EQ(solve_difference(pd, n), (DifferencePair{reps[i][0].a, reps[i][0].b})) << n;
    }
  }
}

TEST(SolveDifference, LargeValuesAreWitnessed) {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 50; ++trial) {
    PairDescriptor pd{urp::test::random_sequence(rng, 4), trial % 2 ? SideFlag::EvenInA : SideFlag::EvenInB};
    Integer n = Integer(rng()) * rng();
    if (trial % 3 == 0) n = -n;
    auto s = solve_difference(pd, n);
    ASSERT_EQ(s.a - s.b, n);
    ASSERT_TRUE(member(pd, Which::A, s.a));
    ASSERT_TRUE(member(pd, Which::B, s.b));
  }
}

TEST(Gadget, OffsetExamples) {
  auto g3 = gadget_offsets(3);
  EXPECT_EQ(g3.c_offsets_raw, ints({2, 3, 4, 12}));
  EXPECT_EQ(g3.d_offsets_raw, ints({2, 2, 2, 9}));
  EXPECT_EQ(g3.c_offsets, ints({2, 3, 4, 12}));
  EXPECT_EQ(g3.d_offsets, ints({2, 9}));
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(g3.c_offsets_raw[k] - g3.d_offsets_raw[k], k);

  auto g0 = gadget_offsets(0);
  EXPECT_EQ(g0.c_offsets, ints({2}));
  EXPECT_EQ(g0.d_offsets, ints({2}));

  auto shifted = gadget_offsets(1, 100);
  EXPECT_EQ(shifted.c_elements(), ints({102, 103}));
  EXPECT_EQ(shifted.d_elements(), ints({102}));
}

TEST(Gadget, DiagonalProperty) {
  auto g = gadget_offsets(12);
  for (std::size_t k = 0; k <= 12; ++k) {
    Integer u = pow2(2 * k) / 2 + 2 - pow2(k) / 2;  // integer at k = 0 too: 0 + 2 - 0
    if (k == 0) u = 2;
    ASSERT_EQ(g.c_offsets_raw[k], u - (pow2(k) - 2) * k);
    ASSERT_EQ(g.c_offsets_raw[k] - g.d_offsets_raw[k], k);
  }
}

TEST(Gadget, OffDiagonalDifferencesAreDistinct) {
  for (std::size_t n = 0; n <= 8; ++n) {
    auto g = gadget_offsets(n);
    std::set<std::pair<Integer, Integer>> diagonal;
    std::set<Integer> diagonal_diffs;
    for (std::size_t k = 0; k <= n; ++k) {
      diagonal.emplace(g.c_offsets_raw[k], g.d_offsets_raw[k]);
      diagonal_diffs.insert(g.c_offsets_raw[k] - g.d_offsets_raw[k]);
    }
    std::set<Integer> seen;
    for (const auto& c : g.c_offsets)
      for (const auto& d : g.d_offsets) {
        if (diagonal.contains({c, d})) continue;
        ASSERT_TRUE(seen.insert(c - d).second) << "n=" << n << " diff " << c - d;
        ASSERT_FALSE(diagonal_diffs.contains(c - d)) << "n=" << n;
      }
  }
}

TEST(Gadget, PlacementWithNothingToPlace) {
  auto base = all_two_base(1000);
  auto p = place_gadgets(base, 0);
  EXPECT_EQ(p.a, base.a);
  EXPECT_EQ(p.b, base.b);
  EXPECT_TRUE(p.families.empty());
  EXPECT_TRUE(p.collisions.empty());
}

TEST(Gadget, FirstGadgetSitsAtZero) {
  auto p = place_gadgets(all_two_base(1000000), 1, 4);
  ASSERT_EQ(p.families.size(), 1u);
  EXPECT_EQ(p.families[0].t, 0);
  EXPECT_EQ(p.families[0].c_offsets, ints({2, 3}));
  EXPECT_EQ(p.families[0].d_offsets, ints({2}));
  // 2 is already in the base B: one copy kept, collision reported.
  ASSERT_EQ(p.collisions.size(), 1u);
  EXPECT_EQ(p.collisions[0].set, Which::B);
  EXPECT_EQ(p.collisions[0].value, 2);
  EXPECT_TRUE(p.a.contains(2));
  EXPECT_TRUE(p.a.contains(3));
}

TEST(Gadget, PlacementOffsetUsesOneIndexedElements) {
  auto base = all_two_base(1000000);
  auto p = place_gadgets(base, 4, 4);
  EXPECT_EQ(p.families[3].t, std::max(nth_element(kAllTwo, Which::A, 255), nth_element(kAllTwo, Which::B, 255)));
  auto q = place_gadgets(base, 4, 2);
  std::vector<Integer> ts;
  for (const auto& g : q.families) ts.push_back(g.t);
  EXPECT_EQ(ts, ints({0, 10, 128, 170}));
}

TEST(Gadget, OffsetsAreMonotone) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    PairDescriptor pd{urp::test::random_sequence(rng, 4), SideFlag::EvenInA};
    BasePair base{elements_up_to(pd, Which::A, 2000000), elements_up_to(pd, Which::B, 2000000)};
    for (unsigned e : {1u, 2u, 3u}) {
      std::size_t n_max = 1;
      while (true) {
        try {
          place_gadgets(base, n_max + 1, e);
          ++n_max;
        } catch (const IndexOutOfRange&) {
          break;
        }
        if (n_max > 12) break;
      }
      auto p = place_gadgets(base, n_max, e);
      for (std::size_t i = 1; i < p.families.size(); ++i) ASSERT_LE(p.families[i - 1].t, p.families[i].t);
    }
  }
}

TEST(Gadget, BaseTooSmall) {
  auto base = all_two_base(100);
  EXPECT_THROW(place_gadgets(base, 3, 4), IndexOutOfRange);
  // Enough indices but the gadget spills past the bound.
  EXPECT_THROW(place_gadgets(all_two_base(15), 3, 1), IndexOutOfRange);
  EXPECT_THROW(place_gadgets({set_of({1}, 5), set_of({0}, 5)}, 1), InvalidInput);
}

TEST(Gadget, SlackIsReported) {
  auto p = place_gadgets(all_two_base(1000000), 4, 2);
  EXPECT_EQ(p.slack_a.added, p.a.size() - p.base.a.size());
  EXPECT_EQ(p.slack_b.added, p.b.size() - p.base.b.size());
  // Gadget 1 at T = 0 adds 2 and 3 to A while A1(3) = 2.
  EXPECT_EQ(p.slack_a.added, 14u);
  ASSERT_FALSE(p.slack_a.holds());
  EXPECT_EQ(*p.slack_a.first_violation, 3);
  // B gains 12, 137, 172, 179, 232; the fifth outruns B1(232) = 16.
  EXPECT_EQ(p.slack_b.added, 5u);
  ASSERT_FALSE(p.slack_b.holds());
  EXPECT_EQ(*p.slack_b.first_violation, 232);

  auto sparse = place_gadgets(all_two_base(1000000), 2, 4);
  EXPECT_EQ(sparse.slack_b.added, 1u);
  EXPECT_TRUE(sparse.slack_b.holds());

  // A1(3) = 1, so a second added element below 4 breaks (A - A1)^2 <= A1.
  auto tight = place_gadgets({set_of({0, 10}, 20), set_of({0, 5}, 20)}, 1, 1);
  EXPECT_EQ(tight.slack_a.added, 2u);
  ASSERT_FALSE(tight.slack_a.holds());
  EXPECT_EQ(*tight.slack_a.first_violation, 3);
}

TEST(Multiplicity, PureRadixPairIsUnique) {
  auto a = urp::test::moser_a(4095);
  auto b = urp::test::moser_b(4095);
  auto r = multiplicity_report(a, b, {-42, 21}, 1);
  EXPECT_EQ(r.census.counts.at(1).total, 64u);
  EXPECT_EQ(r.above_c_max, 0u);
  EXPECT_TRUE(r.checks.empty());
}

TEST(Multiplicity, TinyExample) {
  auto r = multiplicity_report(set_of({0}, 2), set_of({0, 2}, 2), {-2, 0}, 3);
  EXPECT_EQ(r.census.counts.at(0).witnesses, ints({-1}));
}

TEST(Multiplicity, GadgetsRaiseTheLowerBound) {
  auto p = place_gadgets(all_two_base(1000000), 4, 2);
  EXPECT_TRUE(p.unresolved.empty());
  auto r = multiplicity_report(p.a, p.b, {-300, 300}, 8, &p);
  ASSERT_EQ(r.checks.size(), 5u);  // k = 0..4
  for (const auto& c : r.checks) {
    EXPECT_TRUE(c.sound);
    EXPECT_TRUE(c.holds()) << "k=" << c.k << " expected " << c.expected << " observed " << c.observed;
  }
  EXPECT_EQ(r.checks[1].k, 1);
  EXPECT_EQ(r.checks[1].expected, 5u);
  EXPECT_GE(r.checks[1].observed, 5u);
  EXPECT_EQ(r.checks[4].expected, 2u);
}

TEST(Multiplicity, CsvOutputs) {
  auto p = place_gadgets(all_two_base(1000000), 2, 2);
  std::ostringstream g;
  write_gadget_csv(g, p);
  EXPECT_EQ(g.str(), "n,T_n,c_offsets,d_offsets,collisions\n1,0,2;3,2,B:2@base\n2,10,2;3;4,2,\n");

  std::ostringstream c;
  write_census_csv(c, oracle::diff_census(set_of({0}, 2), set_of({0, 2}, 2), {-2, 0}));
  EXPECT_EQ(c.str(), "n,d(n)\n-2,1\n-1,0\n0,1\n");
}
