/*
 * Copyright 2026 The longtail authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <doctest.h>

#include "longtail/dataset/parse.hpp"
#include "longtail/dataset/prepare.hpp"
#include "longtail/util/rng.hpp"
#include "support/synthetic.hpp"

using namespace longtail;

namespace {

Rating mk(UserId u, ItemId i, double v) { return Rating{u, i, v, std::nullopt}; }

// n distinct ratings for one user over items first..first+n-1
void add_profile(std::vector<Rating>& out, UserId u, ItemId first, int n, double value = 3) {
  for (int j = 0; j < n; ++j) out.push_back(mk(u, first + j, value));
}

}  // namespace

TEST_CASE("movielens line maps fields directly") {
  std::istringstream in("1::1193::5::978300760\n");
  const ParseResult r = parse_ratings(in, RatingsFormat::MovieLens1M);
  REQUIRE(r.ratings.size() == 1);
  CHECK(r.ratings[0].user == 1);
  CHECK(r.ratings[0].item == 1193);
  CHECK(r.ratings[0].value == 5.0);
  REQUIRE(r.ratings[0].timestamp.has_value());
  CHECK(*r.ratings[0].timestamp == 978300760);
  CHECK(r.skipped == 0);
}

TEST_CASE("epinions whitespace triple maps fields directly") {
  std::istringstream in("42 7 4\n");
  const ParseResult r = parse_ratings(in, RatingsFormat::EpinionsTabular);
  REQUIRE(r.ratings.size() == 1);
  CHECK(r.ratings[0].user == 42);
  CHECK(r.ratings[0].item == 7);
  CHECK(r.ratings[0].value == 4.0);
  CHECK_FALSE(r.ratings[0].timestamp.has_value());
}

TEST_CASE("epinions parser accepts commas and ignores extra fields") {
  std::istringstream in("1,2,3,999\n4\t5\t2\tstuff here\n");
  const ParseResult r = parse_ratings(in, RatingsFormat::EpinionsTabular);
  CHECK(r.ratings.size() == 2);
  CHECK(r.skipped == 0);
}

TEST_CASE("malformed and out-of-scale lines are counted, never silently dropped") {
  std::istringstream in(
      "1::2::5::100\n"
      "garbage\n"
      "3::4::17::100\n"     // rating outside the 1..5 scale
      "5::6::x::100\n"      // non-numeric rating
      "7::8::4::100\n");
  const ParseResult r = parse_ratings(in, RatingsFormat::MovieLens1M);
  CHECK(r.ratings.size() == 2);
  CHECK(r.skipped == 3);
  CHECK(r.lines == 5);
}

TEST_CASE("unreadable file raises an io error") {
  CHECK_THROWS_AS(parse_ratings("/nonexistent/ratings.dat", RatingsFormat::MovieLens1M),
                  IoError);
}

TEST_CASE("filtering drops sparse users then sparse items, one pass each") {
  std::vector<Rating> ratings;
  // users 1..3 rate 5 items each; user 4 has a single rating
  add_profile(ratings, 1, 100, 5);
  add_profile(ratings, 2, 100, 5);
  add_profile(ratings, 3, 100, 5);
  ratings.push_back(mk(4, 100, 3));
  // item 200 is rated only by user 1
  ratings.push_back(mk(1, 200, 4));

  const Interactions inter = filter_interactions(std::move(ratings), 5, 3);
  CHECK(inter.users().size() == 3);        // user 4 dropped (|profile| < 5)
  CHECK(inter.items().size() == 5);        // item 200 dropped (support < 3)
  CHECK(inter.num_ratings() == 15);
  // single-pass contract: user 1 slid to 5 ratings and stays
  CHECK(inter.profile_of(1).size() == 5);
}

TEST_CASE("item pass may leave users below the user threshold (documented single pass)") {
  std::vector<Rating> ratings;
  add_profile(ratings, 1, 100, 4);        // items 100..103
  ratings.push_back(mk(1, 300, 3));       // 5th rating on a rare item
  add_profile(ratings, 2, 100, 4);
  ratings.push_back(mk(2, 301, 3));
  add_profile(ratings, 3, 100, 4);
  ratings.push_back(mk(3, 302, 3));

  const Interactions first = filter_interactions(ratings, 5, 2);
  // items 300..302 vanish, leaving each user at 4 < 5 ratings
  CHECK(first.num_ratings() == 12);
  for (UserId u : {1, 2, 3}) CHECK(first.profile_of(u).size() == 4);

  // a second application would shrink further: the first pass is the contract
  std::vector<Rating> again(first.ratings().begin(), first.ratings().end());
  CHECK_THROWS_AS(filter_interactions(std::move(again), 5, 2), EmptyDatasetError);
}

TEST_CASE("all-sparse input yields an explicit empty-dataset error") {
  std::vector<Rating> ratings{mk(1, 10, 3), mk(2, 11, 3), mk(3, 12, 3)};
  CHECK_THROWS_AS(filter_interactions(std::move(ratings), 20, 0), EmptyDatasetError);
}

TEST_CASE("duplicate (user,item) pairs keep the last occurrence") {
  std::vector<Rating> ratings;
  add_profile(ratings, 1, 100, 3);
  ratings.push_back(mk(1, 100, 1));  // duplicate of the first pair, later in input
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);
  CHECK(inter.num_ratings() == 3);
  for (const Rating& r : inter.profile_of(1)) {
    if (r.item == 100) CHECK(r.value == 1.0);
  }
}

TEST_CASE("popularity counts the exact per-item rating totals") {
  std::vector<Rating> ratings{mk(1, 7, 3), mk(2, 7, 4), mk(3, 7, 5), mk(1, 8, 2)};
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);
  CHECK(inter.popularity_of(7) == 3);
  CHECK(inter.popularity_of(8) == 1);
}

TEST_CASE("one-item catalog is all short head") {
  std::vector<Rating> ratings;
  for (UserId u = 1; u <= 5; ++u) ratings.push_back(mk(u, 42, 4));
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);
  const CategorySplit split = split_categories(inter, 0.8);
  CHECK(split.short_head.count(42) == 1);
  CHECK(split.long_tail.empty());
  CHECK(split.threshold == 4);  // popularity 5 > 4
}

TEST_CASE("split threshold separates head and tail strictly") {
  // popularities: item 1 -> 6, item 2 -> 3, item 3 -> 1; total 10, target 8
  std::vector<Rating> ratings;
  for (UserId u = 1; u <= 6; ++u) ratings.push_back(mk(u, 1, 4));
  for (UserId u = 1; u <= 3; ++u) ratings.push_back(mk(u, 2, 4));
  ratings.push_back(mk(1, 3, 4));
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);

  const CategorySplit split = split_categories(inter, 0.8);
  // minimal prefix is {1, 2} (mass 9 >= 8); first excluded popularity is 1
  CHECK(split.threshold == 1);
  CHECK(split.short_head == std::unordered_set<ItemId>{1, 2});
  CHECK(split.long_tail == std::unordered_set<ItemId>{3});
  CHECK(split.tail_ratings == 1);
  CHECK(split.total_ratings == 10);
}

TEST_CASE("boundary popularity ties fall to the long tail") {
  // popularities: 4, 2, 2; total 8, head_mass 0.6 -> target 4.8; the minimal
  // prefix would split the tie at popularity 2, so both tied items go tail.
  std::vector<Rating> ratings;
  for (UserId u = 1; u <= 4; ++u) ratings.push_back(mk(u, 1, 4));
  for (UserId u = 1; u <= 2; ++u) ratings.push_back(mk(u, 2, 4));
  for (UserId u = 1; u <= 2; ++u) ratings.push_back(mk(u, 3, 4));
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);

  const CategorySplit split = split_categories(inter, 0.6);
  CHECK(split.threshold == 2);
  CHECK(split.short_head == std::unordered_set<ItemId>{1});
  CHECK(split.long_tail == std::unordered_set<ItemId>{2, 3});
}

TEST_CASE("every item lands in exactly one category and mass is minimal") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rating> ratings;
    const int items = 5 + static_cast<int>(rng.next_below(40));
    UserId user = 1;
    for (int v = 1; v <= items; ++v) {
      const int pop = 1 + static_cast<int>(rng.next_below(30));
      for (int c = 0; c < pop; ++c) ratings.push_back(mk(user++, v, 3));
    }
    const Interactions inter = filter_interactions(std::move(ratings), 0, 0);
    const CategorySplit split = split_categories(inter, 0.8);

    for (int d = 0; d < inter.items().size(); ++d) {
      const ItemId id = inter.items().id_of(d);
      CHECK(split.long_tail.count(id) + split.short_head.count(id) == 1);
      if (split.short_head.count(id) != 0) {
        CHECK(inter.popularity(d) > split.threshold);
      } else {
        CHECK(inter.popularity(d) <= split.threshold);
      }
    }

    // recompute the minimal prefix independently to spot boundary straddles,
    // where the tie-to-tail rule deliberately shaves the mass target
    std::vector<std::pair<std::int64_t, ItemId>> by_pop;
    for (int d = 0; d < inter.items().size(); ++d) {
      by_pop.emplace_back(-inter.popularity(d), inter.items().id_of(d));
    }
    std::sort(by_pop.begin(), by_pop.end());
    const double target = 0.8 * static_cast<double>(inter.num_ratings());
    std::int64_t cum = 0;
    std::size_t prefix = 0;
    while (prefix < by_pop.size() && static_cast<double>(cum) < target) {
      cum += -by_pop[prefix].first;
      ++prefix;
    }
    const bool straddle = prefix < by_pop.size() &&
                          by_pop[prefix - 1].first == by_pop[prefix].first;

    if (!straddle) {
      std::int64_t head_mass_sum = 0;
      std::int64_t min_head_pop = -1;
      for (ItemId id : split.short_head) {
        const auto pop = inter.popularity_of(id);
        head_mass_sum += pop;
        if (min_head_pop < 0 || pop < min_head_pop) min_head_pop = pop;
      }
      REQUIRE_FALSE(split.short_head.empty());
      CHECK(static_cast<double>(head_mass_sum) >= target);
      // removing the least popular head item breaks the inequality
      CHECK(static_cast<double>(head_mass_sum - min_head_pop) < target);
    }
  }
}

TEST_CASE("per-user holdout takes the ceiling of the test fraction") {
  std::vector<Rating> ratings;
  add_profile(ratings, 1, 100, 20);
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);
  const SplitData split = split_train_test(inter, 0.2, 99);
  CHECK(split.test.num_ratings() == 4);
  CHECK(split.train.num_ratings() == 16);
  CHECK(split.train.users().size() == 1);
}

TEST_CASE("holdout is deterministic and disjoint and covers the input") {
  std::vector<Rating> ratings;
  for (UserId u = 1; u <= 12; ++u) add_profile(ratings, u, 100 + u, 8 + static_cast<int>(u) % 5);
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);

  const SplitData a = split_train_test(inter, 0.25, 7);
  const SplitData b = split_train_test(inter, 0.25, 7);
  CHECK(a.train.num_ratings() == b.train.num_ratings());
  CHECK(a.train.num_ratings() + a.test.num_ratings() == inter.num_ratings());

  auto key = [](const Rating& r) { return std::make_pair(r.user, r.item); };
  std::set<std::pair<UserId, ItemId>> train_keys, test_keys, union_keys;
  for (const Rating& r : a.train.ratings()) train_keys.insert(key(r));
  for (const Rating& r : a.test.ratings()) test_keys.insert(key(r));
  for (const Rating& r : b.train.ratings()) CHECK(train_keys.count(key(r)) == 1);
  for (const auto& k : test_keys) CHECK(train_keys.count(k) == 0);
  union_keys = train_keys;
  union_keys.insert(test_keys.begin(), test_keys.end());
  CHECK(union_keys.size() == inter.num_ratings());

  // every test user appears in train
  for (int u = 0; u < a.test.users().size(); ++u) {
    CHECK(a.train.users().contains(a.test.users().id_of(u)));
  }

  // test size equals the sum of per-user ceilings
  std::size_t expected = 0;
  for (int u = 0; u < inter.users().size(); ++u) {
    const auto n = inter.profile(u).size();
    const auto t = static_cast<std::size_t>(std::ceil(0.25 * static_cast<double>(n)));
    expected += t < n ? t : 0;
  }
  CHECK(a.test.num_ratings() == expected);
}

TEST_CASE("single-rating users keep their rating in train") {
  std::vector<Rating> ratings{mk(1, 5, 3), mk(2, 5, 4), mk(2, 6, 4), mk(2, 7, 4),
                              mk(2, 8, 4), mk(2, 9, 4)};
  const Interactions inter = filter_interactions(std::move(ratings), 0, 0);
  const SplitData split = split_train_test(inter, 0.5, 1);
  CHECK_FALSE(split.test.users().contains(1));
  CHECK(split.train.users().contains(1));
}

TEST_CASE("epoch assignment divides evenly when possible") {
  std::vector<UserId> users;
  for (UserId u = 1; u <= 100; ++u) users.push_back(u);
  const EpochPlan plan = assign_epochs(users, 50, 3);
  for (const auto& epoch : plan.epochs) CHECK(epoch.size() == 2);
  CHECK(plan.assignment.size() == 100);
}

TEST_CASE("epoch remainder spreads one extra user per epoch") {
  std::vector<UserId> users;
  for (UserId u = 1; u <= 101; ++u) users.push_back(u);
  const EpochPlan plan = assign_epochs(users, 50, 3);
  int threes = 0, twos = 0;
  for (const auto& epoch : plan.epochs) {
    if (epoch.size() == 3) ++threes;
    if (epoch.size() == 2) ++twos;
  }
  CHECK(threes == 1);
  CHECK(twos == 49);
}

TEST_CASE("epoch assignment is deterministic and total") {
  std::vector<UserId> users;
  for (UserId u = 1; u <= 604; ++u) users.push_back(u * 10);
  const EpochPlan a = assign_epochs(users, 50, 42);
  const EpochPlan b = assign_epochs(users, 50, 42);
  CHECK(a.epochs == b.epochs);
  std::set<UserId> seen;
  for (const auto& epoch : a.epochs) seen.insert(epoch.begin(), epoch.end());
  CHECK(seen.size() == users.size());
}

TEST_CASE("more epochs than users is an error") {
  std::vector<UserId> users{1, 2, 3};
  CHECK_THROWS(assign_epochs(users, 4, 0));
}

TEST_CASE("synthetic world: prepared pipeline invariants hold end to end") {
  testsupport::SyntheticSpec spec;
  spec.n_users = 120;
  spec.n_items = 90;
  spec.median_profile = 30;
  spec.min_profile = 21;
  spec.max_profile = 60;
  const auto ratings = testsupport::generate_ratings(spec);

  const Interactions inter = filter_interactions(ratings, 20, 5);
  const CategorySplit split = split_categories(inter, 0.8);
  CHECK_FALSE(split.long_tail.empty());
  CHECK_FALSE(split.short_head.empty());
  CHECK(split.tail_mass_fraction() > 0.0);
  CHECK(split.tail_mass_fraction() < 0.5);

  const SplitData sd = split_train_test(inter, 0.2, 17);
  // mean long-tail preference sits strictly between 0 and 0.5 in an 80/20 world
  double p_long_sum = 0.0;
  for (int u = 0; u < sd.train.users().size(); ++u) {
    std::size_t tail = 0;
    const auto prof = sd.train.profile(u);
    for (const Rating& r : prof) {
      if (split.is_long_tail(r.item)) ++tail;
    }
    p_long_sum += static_cast<double>(tail) / static_cast<double>(prof.size());
  }
  const double mean_p_long = p_long_sum / sd.train.users().size();
  CHECK(mean_p_long > 0.0);
  CHECK(mean_p_long < 0.5);
}
