#ifndef FSS_PARTITION_HPP
#define FSS_PARTITION_HPP

#include <string>
#include <vector>

#include "fss/element.hpp"

namespace fss {

/// A finite partition of the space into balls, kept sorted by address.
struct Partition {
    std::vector<Address> parts;
    bool operator==(const Partition&) const = default;
};

bool is_ball_partition(const Structure& st, const Partition& p);

/// Every part of `fine` lies inside a part of `coarse`.
bool refines(const Partition& fine, const Partition& coarse);

/// Coarsest partition by balls refining every generator's region
/// partition; each part then sits inside a unique region of every
/// generator.
Partition big_partition(const Structure& st, const std::vector<GroupElement>& generators);

/// Splits each big part down to the detection depth of its type, so every
/// nontrivial self-similarity of a big part moves one of the small parts
/// inside it.
Partition small_partition(const Structure& st, const std::vector<GroupElement>& generators);

/// Exhaustive desk-scale test of the defining property: every word of
/// length <= max_len over the generators, all of whose cyclic shifts fix
/// every part, is the identity. When a counterexample word exists it is
/// reported through `counterexample` (space-joined) if non-null.
bool verify_test_partition(const Structure& st, const Partition& p, const GeneratorSet& gens,
                           int max_len, std::string* counterexample = nullptr);

std::string format_partition(const Partition& p);

}  // namespace fss

#endif
