#include "fss/partition.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace fss {

bool is_ball_partition(const Structure& st, const Partition& p) {
    for (const Address& a : p.parts)
        if (!address_valid(st, a)) return false;
    for (size_t i = 0; i < p.parts.size(); ++i)
        for (size_t j = i + 1; j < p.parts.size(); ++j)
            if (balls_intersect(p.parts[i], p.parts[j])) return false;
    // coverage
    int max_depth = 0;
    for (const Address& a : p.parts) max_depth = std::max(max_depth, a.depth());
    std::deque<Address> todo{Address{}};
    while (!todo.empty()) {
        Address b = todo.front();
        todo.pop_front();
        bool inside = false;
        for (const Address& a : p.parts)
            if (is_prefix(a, b)) inside = true;
        if (inside) continue;
        if (b.depth() >= max_depth) return false;
        int t = address_type(st, b);
        for (int slot = 0; slot < st.arity(t); ++slot) {
            Address c = b;
            c.path.push_back(slot);
            todo.push_back(c);
        }
    }
    return true;
}

bool refines(const Partition& fine, const Partition& coarse) {
    for (const Address& f : fine.parts) {
        bool found = false;
        for (const Address& c : coarse.parts)
            if (is_prefix(c, f)) found = true;
        if (!found) return false;
    }
    return true;
}

Partition big_partition(const Structure& st, const std::vector<GroupElement>& generators) {
    if (generators.empty()) throw Error("big_partition: no generators");
    // Descend from the root; emit a ball once it sits inside a region of
    // every generator (region partitions never straddle a ball).
    Partition out;
    std::deque<Address> todo{Address{}};
    while (!todo.empty()) {
        Address b = todo.front();
        todo.pop_front();
        bool everywhere_inside = true;
        for (const GroupElement& g : generators) {
            bool inside = false;
            for (const BallMap& f : g.chart)
                if (is_prefix(f.source, b)) inside = true;
            if (!inside) {
                everywhere_inside = false;
                break;
            }
        }
        if (everywhere_inside) {
            out.parts.push_back(b);
            continue;
        }
        int t = address_type(st, b);
        for (int slot = 0; slot < st.arity(t); ++slot) {
            Address c = b;
            c.path.push_back(slot);
            todo.push_back(c);
        }
    }
    std::sort(out.parts.begin(), out.parts.end());
    return out;
}

namespace {

void descend(const Structure& st, const Address& base, int levels, std::vector<Address>& out) {
    if (levels == 0) {
        out.push_back(base);
        return;
    }
    int t = address_type(st, base);
    for (int slot = 0; slot < st.arity(t); ++slot) {
        Address c = base;
        c.path.push_back(slot);
        descend(st, c, levels - 1, out);
    }
}

}  // namespace

Partition small_partition(const Structure& st, const std::vector<GroupElement>& generators) {
    Partition big = big_partition(st, generators);
    Partition out;
    for (const Address& part : big.parts)
        descend(st, part, st.detection_depth(address_type(st, part)), out.parts);
    std::sort(out.parts.begin(), out.parts.end());
    return out;
}

bool verify_test_partition(const Structure& st, const Partition& p, const GeneratorSet& gens,
                           int max_len, std::string* counterexample) {
    std::vector<std::vector<std::string>> words{{}};
    for (size_t i = 0; i < words.size(); ++i) {
        std::vector<std::string> word = words[i];
        bool all_shifts_fix = true;
        for (size_t j = 0; all_shifts_fix && j < std::max<size_t>(word.size(), 1); ++j) {
            std::vector<std::string> shift(word.begin() + j, word.end());
            shift.insert(shift.end(), word.begin(), word.begin() + j);
            GroupElement g = from_word(st, gens, shift);
            for (const Address& part : p.parts)
                if (!fixes_ball(st, g, part)) {
                    all_shifts_fix = false;
                    break;
                }
        }
        if (all_shifts_fix && !is_identity(st, from_word(st, gens, word))) {
            if (counterexample) {
                std::string text;
                for (const std::string& s : word) text += (text.empty() ? "" : " ") + s;
                *counterexample = text;
            }
            return false;
        }
        if (static_cast<int>(word.size()) < max_len)
            for (const std::string& name : gens.names) {
                auto longer = word;
                longer.push_back(name);
                words.push_back(std::move(longer));
            }
    }
    return true;
}

std::string format_partition(const Partition& p) {
    std::ostringstream out;
    for (const Address& a : p.parts) out << format_address(a) << "\n";
    return out.str();
}

}  // namespace fss
