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
#pragma once

#include <cstdint>
#include <vector>

#include "longtail/dataset/types.hpp"

namespace longtail {

/// Deduplicates (user, item) pairs keeping the last occurrence, drops users
/// with fewer than `min_user` ratings, then drops items with fewer than
/// `min_item` ratings among what remains. One pass each, users first, no
/// fixed-point iteration: the item pass may leave some users below
/// `min_user` again, which is the documented behaviour. Throws
/// EmptyDatasetError when nothing survives.
Interactions filter_interactions(std::vector<Rating> ratings, int min_user, int min_item);

/// Splits the catalog so that the short head is the smallest
/// popularity-aligned prefix holding at least `head_mass` of the rating
/// mass. threshold = popularity of the most popular excluded item; the head
/// is exactly {items with popularity > threshold}, so boundary ties fall to
/// the long tail.
CategorySplit split_categories(const Interactions& inter, double head_mass);

/// Per-user random holdout: ceil(test_fraction * |profile|) ratings go to
/// test unless that would empty the train share, in which case the user
/// keeps everything in train. Deterministic in (inter, seed).
SplitData split_train_test(const Interactions& inter, double test_fraction,
                           std::uint64_t seed);

/// Seeded uniform shuffle of the users, chunked into n_epochs nearly equal
/// groups (sizes differ by at most one). Throws if some epoch would be empty.
EpochPlan assign_epochs(std::vector<UserId> test_users, int n_epochs, std::uint64_t seed);

}  // namespace longtail
