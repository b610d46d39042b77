#ifndef FSS_ELEMENT_HPP
#define FSS_ELEMENT_HPP

#include <string>
#include <vector>

#include "fss/address.hpp"
#include "fss/structure.hpp"

namespace fss {

/// A homeomorphism locally determined by the similarity structure, stored
/// as a chart of (source ball, target ball, symbol) triples. The sources
/// partition the space, as do the targets; each triple's endpoints and
/// symbol share one type. Charts are not canonical: equality is equality
/// of the induced action.
struct GroupElement {
    std::vector<BallMap> chart;
    bool operator==(const GroupElement&) const = default;
};

GroupElement identity_element(const Structure& st);

/// Throws when the chart is not a valid element description.
void check_chart(const Structure& st, const GroupElement& g);

/// g after h (h applied first). h's chart is refined until every target
/// lies inside a source region of g, then symbols are composed through the
/// canonical identifications.
GroupElement compose(const Structure& st, const GroupElement& g, const GroupElement& h);

GroupElement invert(const Structure& st, const GroupElement& g);

/// Image of a ball: a single ball when b lies inside a source region,
/// otherwise the images of all regions inside b (they partition g(b)).
std::vector<Address> image_of_ball(const Structure& st, const GroupElement& g, const Address& b);

/// Exact triviality test: every triple fixes its region and carries a
/// semantically trivial symbol.
bool is_identity(const Structure& st, const GroupElement& g);

/// Same images on every ball down to the given depth.
bool action_equal(const Structure& st, const GroupElement& g, const GroupElement& h, int depth);

/// g(b) = b as a set.
bool fixes_ball(const Structure& st, const GroupElement& g, const Address& b);

bool balls_intersect(const Address& a, const Address& b);

std::vector<Address> all_addresses(const Structure& st, int max_depth);

/// A monoid generating set: named charts, order-preserving.
struct GeneratorSet {
    std::vector<std::string> names;
    std::vector<GroupElement> elements;

    int index_of(const std::string& name) const;
    size_t size() const { return names.size(); }
};

/// Parses the generator format: `gen <name>` lines, each followed by its
/// chart as `map /path -> /path via <symbol>` lines. Charts are validated
/// on load.
GeneratorSet parse_generators(const Structure& st, const std::string& text);

std::string format_generators(const Structure& st, const GeneratorSet& gens);

/// Chart of s1 ∘ ... ∘ sn (sn applied first). The empty word gives the
/// identity. Unknown names throw.
GroupElement from_word(const Structure& st, const GeneratorSet& gens,
                       const std::vector<std::string>& word);

std::vector<std::string> split_word(const std::string& text);

}  // namespace fss

#endif
