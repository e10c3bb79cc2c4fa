#pragma once

#include "fixtures.hpp"
#include "olac/aggregator.hpp"
#include "olac/search.hpp"

namespace olac::testing {

/// A catalog snapshot of `n` random live entries spread over `archives`
/// archives, plus a few tombstones.
catalog::Snapshot random_snapshot(Rng& rng, std::size_t n, std::size_t archives,
                                  const Profile& profile = Profile::builtin());

/// A query built from values that occur in the snapshot, with some noise.
search::Query random_query(Rng& rng, const catalog::Snapshot& snapshot, const Profile& profile = Profile::builtin());

/// Linear scan over the snapshot applying the documented matching rules
/// element by element; shares no state with the index.
search::ResultSet oracle_search(const catalog::Snapshot& snapshot, const search::Query& query,
                                const Profile& profile = Profile::builtin());

}  // namespace olac::testing
